#ifndef MOOREL_NUMUTIL_HPP
#define MOOREL_NUMUTIL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "moorel/rational.hpp"

namespace moorel {

inline bool is_prime(std::uint64_t n) {
    mpz_class z(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

inline bool is_odd_prime(std::uint64_t n) { return n > 2 && is_prime(n); }

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t acc = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) acc = mul_mod(acc, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

/// Order of a in (Z/m)^x by direct iteration; fine for the desk-scale moduli
/// used here (m = p^2 with small p), where the order is at most p(p-1).
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
    a %= m;
    if (m < 2 || std::gcd(a, m) != 1)
        throw std::invalid_argument("multiplicative_order: a not a unit mod m");
    std::uint64_t x = a % m, order = 1;
    while (x != 1) {
        x = mul_mod(x, a, m);
        ++order;
        if (order > m) throw std::logic_error("multiplicative_order: no order found");
    }
    return order;
}

/// Euler phi by trial-division factorization (desk-scale arguments only).
inline std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

/// All primes <= bound, ascending (simple Eratosthenes).
inline std::vector<std::uint64_t> sieve_primes(std::uint64_t bound) {
    std::vector<std::uint64_t> primes;
    if (bound < 2) return primes;
    std::vector<std::uint8_t> composite(bound + 1, 0);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = 1;
        }
    }
    return primes;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace moorel

#endif  // MOOREL_NUMUTIL_HPP
