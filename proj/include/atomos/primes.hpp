#pragma once

/// Small prime utilities for the generator families. Trial division is
/// plenty at the scales the families are ever instantiated at.

#include "atomos/exact.hpp"

#include <vector>

namespace atomos {

inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (BigInt d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline BigInt next_prime_after(BigInt n) {
    if (n < 2) return 2;
    ++n;
    while (!is_prime(n)) ++n;
    return n;
}

/// First `count` primes: 2, 3, 5, 7, ...
inline std::vector<BigInt> primes(unsigned count) {
    std::vector<BigInt> out;
    BigInt p = 1;
    while (out.size() < count) out.push_back(p = next_prime_after(p));
    return out;
}

/// First `count` odd primes: 3, 5, 7, 11, ...
inline std::vector<BigInt> odd_primes(unsigned count) {
    std::vector<BigInt> out;
    BigInt p = 2;
    while (out.size() < count) out.push_back(p = next_prime_after(p));
    return out;
}

inline std::vector<BigInt> primes_up_to(const BigInt& bound) {
    std::vector<BigInt> out;
    for (BigInt p = 2; p <= bound; p = next_prime_after(p)) out.push_back(p);
    return out;
}

}  // namespace atomos
