#ifndef MOOREL_TESTS_SUPPORT_HPP
#define MOOREL_TESTS_SUPPORT_HPP

#include <cstdint>
#include <vector>

#include "moorel/cyclotomic.hpp"
#include "moorel/rational.hpp"

namespace testsupport {

/// Deterministic splitmix64 stream: every property test fixes its seed, so
/// failures are reproducible by rerunning the same binary.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t x = (state_ += 0x9E3779B97F4A7C15ULL);
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    /// uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// uniform in [lo, hi] inclusive
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// rational with numerator in [-height, height] and denominator in [1, height]
    moorel::Rational rational(long height) {
        return {int_in(-height, height), int_in(1, height)};
    }

    /// element of Q(zeta_m) with small random coefficients
    moorel::Cyclotomic cyclotomic(unsigned order, long height) {
        const std::size_t degree = moorel::CyclotomicField::get(order).degree();
        std::vector<moorel::Rational> coeffs;
        coeffs.reserve(degree);
        for (std::size_t i = 0; i < degree; ++i) coeffs.emplace_back(rational(height));
        return {order, std::move(coeffs)};
    }

    /// element of Z[zeta_m] with integer coefficients in [-height, height]
    moorel::Cyclotomic integral_cyclotomic(unsigned order, long height) {
        const std::size_t degree = moorel::CyclotomicField::get(order).degree();
        std::vector<moorel::Rational> coeffs;
        coeffs.reserve(degree);
        for (std::size_t i = 0; i < degree; ++i)
            coeffs.emplace_back(moorel::Rational(int_in(-height, height)));
        return {order, std::move(coeffs)};
    }

private:
    std::uint64_t state_;
};

}  // namespace testsupport

#endif  // MOOREL_TESTS_SUPPORT_HPP
