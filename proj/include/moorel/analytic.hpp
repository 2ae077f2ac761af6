#ifndef MOOREL_ANALYTIC_HPP
#define MOOREL_ANALYTIC_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "moorel/bernoulli.hpp"
#include "moorel/cyclotomic.hpp"
#include "moorel/dirichlet.hpp"
#include "moorel/lvalues.hpp"
#include "moorel/numutil.hpp"

namespace moorel {

/// A floating approximation together with an a-priori bound on its error
/// (truncation tail plus rounding slop where computable).
struct RealApprox {
    double value = 0.0;
    double error_bound = 0.0;
};

struct ComplexApprox {
    std::complex<double> value;
    double error_bound = 0.0;
};

/// How a rational prime sits in the degree-p subfield F of Q(zeta_{p^2})
/// wildly ramified at p. For the order-p character subgroup mod p^2 this is
/// equivalent to: split <=> chi(ell) = 1 <=> ell^{p-1} = 1 mod p^2; inert <=>
/// chi(ell) is a primitive p-th root <=> p divides ord_{p^2}(ell).
enum class PrimeClass { split, inert, ramified };

struct PrimeClassification {
    std::uint64_t ell = 0;
    PrimeClass cls = PrimeClass::split;
};

inline const char* prime_class_name(PrimeClass c) {
    switch (c) {
        case PrimeClass::split: return "split";
        case PrimeClass::inert: return "inert";
        default: return "ramified";
    }
}

/// Classify a prime ell by its multiplicative order mod p^2. Note that ell
/// being a primitive root mod p^2 is sufficient but NOT necessary for inert:
/// any order divisible by p gives a nontrivial character value.
inline PrimeClassification classify_prime(std::uint64_t ell, std::uint64_t p) {
    if (!is_odd_prime(p)) throw std::invalid_argument("classify_prime: p must be an odd prime");
    if (ell == p) return {ell, PrimeClass::ramified};
    const std::uint64_t p2 = p * p;
    return {ell, pow_mod(ell % p2, p - 1, p2) == 1 ? PrimeClass::split : PrimeClass::inert};
}

/// Riemann zeta for real s > 1 by Euler-Maclaurin summation. With M = 64 and
/// six correction terms the remainder is far below double precision for all
/// s of interest here.
inline RealApprox riemann_zeta_real(double s) {
    if (s <= 1.0) throw std::invalid_argument("riemann_zeta_real: s must be > 1");
    constexpr unsigned M = 64, K = 6;
    double sum = 0.0;
    for (unsigned k = 1; k < M; ++k) sum += std::pow(static_cast<double>(k), -s);
    const double Md = M;
    sum += std::pow(Md, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Md, -s);
    double rising = s;  // s (s+1) ... (s + 2i - 2)
    for (unsigned i = 1; i <= K; ++i) {
        const double b2i = classical_bernoulli(2 * i).to_double();
        double fact = 1.0;
        for (unsigned t = 2; t <= 2 * i; ++t) fact *= t;
        sum += b2i / fact * rising * std::pow(Md, -s - 2.0 * i + 1.0);
        rising *= (s + 2.0 * i - 1.0) * (s + 2.0 * i);
    }
    // First omitted correction term bounds the remainder for real s > 0.
    const double b_next = std::fabs(classical_bernoulli(2 * (K + 1)).to_double());
    double fact_next = 1.0;
    for (unsigned t = 2; t <= 2 * (K + 1); ++t) fact_next *= t;
    const double rem = b_next / fact_next * std::fabs(rising) * std::pow(Md, -s - 2.0 * K - 1.0);
    return {sum, rem + 1e-15 * sum};
}

/// Truncated Euler product for L(s, S/p):
///   1 / ((1 - p^{-s}) zeta(s)) * prod_{split ell <= B} (1 - ell^{-s})^{-p}
///                              * prod_{inert ell <= B} (1 - ell^{-ps})^{-1}.
/// The error bound covers the omitted tail ell > B of both products.
inline RealApprox euler_L_moore(double s, std::uint64_t p, std::uint64_t prime_bound) {
    if (s <= 1.0) throw std::invalid_argument("euler_L_moore: s must be > 1");
    if (!is_odd_prime(p)) throw std::invalid_argument("euler_L_moore: p must be an odd prime");
    if (prime_bound < 2) throw std::invalid_argument("euler_L_moore: prime_bound must be >= 2");

    long double product = 1.0L;
    for (std::uint64_t ell : sieve_primes(prime_bound)) {
        if (ell == p) continue;  // ramified: no Euler factor beyond the prefactor
        if (classify_prime(ell, p).cls == PrimeClass::split) {
            const long double factor = 1.0L - std::pow(static_cast<long double>(ell),
                                                       -static_cast<long double>(s));
            long double power = 1.0L;
            for (std::uint64_t k = 0; k < p; ++k) power *= factor;
            product /= power;
        } else {
            product /= 1.0L - std::pow(static_cast<long double>(ell),
                                       -static_cast<long double>(s) * static_cast<long double>(p));
        }
    }
    const RealApprox zeta = riemann_zeta_real(s);
    const double prefactor = 1.0 / ((1.0 - std::pow(static_cast<double>(p), -s)) * zeta.value);
    const double value = static_cast<double>(product) * prefactor;

    // log of the omitted tail: sum_{ell > B} [p ell^{-s} + ell^{-ps}] + higher
    // powers, generously bounded by 1.2 (p+1) B^{1-s}/(s-1).
    const double tail_rel = 1.2 * (static_cast<double>(p) + 1.0) *
                            std::pow(static_cast<double>(prime_bound), 1.0 - s) / (s - 1.0);
    const double zeta_rel = zeta.error_bound / zeta.value;
    return {value, std::fabs(value) * (tail_rel + zeta_rel + 1e-14)};
}

/// Numeric embedding of a cyclotomic number under zeta_m -> e^{2 pi i / m}.
inline std::complex<double> to_complex(const Cyclotomic& a) {
    const double m = static_cast<double>(a.order());
    std::complex<double> acc;
    const auto& coeffs = a.coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        acc += coeffs[i].to_double() *
               std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / m);
    }
    return acc;
}

/// Truncated Dirichlet series sum_{n <= n_max} chi(n) n^{-s}.
inline ComplexApprox series_L(const DirichletCharacter& chi, double s, std::uint64_t n_max) {
    if (s <= 1.0) throw std::invalid_argument("series_L: s must be > 1");
    const double d = static_cast<double>(chi.order());
    std::complex<double> sum;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (!chi.unit_arg(static_cast<long long>(n))) continue;
        const double e = static_cast<double>(chi.value_exponent(static_cast<long long>(n)));
        sum += std::polar(std::pow(static_cast<double>(n), -s), 2.0 * std::numbers::pi * e / d);
    }
    const double tail = std::pow(static_cast<double>(n_max), 1.0 - s) / (s - 1.0);
    return {sum, tail + 1e-14 * std::abs(sum)};
}

struct FunctionalEquationReport {
    std::uint64_t p = 0;
    unsigned n = 0;
    std::uint64_t prime_bound = 0;
    double tolerance = 0.0;
    double lhs = 0.0;         // euler_L_moore(n, p, prime_bound)
    double lhs_error = 0.0;   // its truncation bound
    double factor = 0.0;      // (2^{n-1} pi^n / (p^{2n-1} (n-1)!))^{p-1}
    Rational exact_value;     // L(1-n, S/p)
    double rhs = 0.0;         // factor * |exact_value|
    bool pass = false;
};

/// Compares the Euler-product value of L(n, S/p) against the closed-form
/// reflection of the exact special value L(1-n, S/p). The sign of the
/// reflection is not pinned down, so absolute values are compared.
inline FunctionalEquationReport functional_equation_check(std::uint64_t p, unsigned n,
                                                          std::uint64_t prime_bound, double tolerance) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("functional_equation_check: n must be even and >= 2");
    FunctionalEquationReport rep;
    rep.p = p;
    rep.n = n;
    rep.prime_bound = prime_bound;
    rep.tolerance = tolerance;

    const RealApprox lhs = euler_L_moore(static_cast<double>(n), p, prime_bound);
    rep.lhs = lhs.value;
    rep.lhs_error = lhs.error_bound;
    const double log_factor = (static_cast<double>(n) - 1.0) * std::log(2.0) +
                              static_cast<double>(n) * std::log(std::numbers::pi) -
                              (2.0 * n - 1.0) * std::log(static_cast<double>(p)) -
                              std::lgamma(static_cast<double>(n));
    rep.factor = std::exp((static_cast<double>(p) - 1.0) * log_factor);
    rep.exact_value = moore_L_special(p, 1 - static_cast<long>(n));
    rep.rhs = rep.factor * std::fabs(rep.exact_value.to_double());
    rep.pass = std::fabs(rep.lhs - rep.rhs) <= tolerance * std::fabs(rep.rhs) + rep.lhs_error;
    return rep;
}

/// |G(1, chi)| for a primitive character: the magnitude of
/// sum_{r=1}^{f} chi(r) e^{2 pi i r / f}; equals sqrt(f) = p for modulus p^2.
inline RealApprox gauss_sum_magnitude(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw std::invalid_argument("gauss_sum_magnitude: character must be primitive");
    const std::uint64_t f = chi.modulus();
    const double d = static_cast<double>(chi.order());
    std::complex<double> sum;
    for (std::uint64_t r = 1; r <= f; ++r) {
        if (!chi.unit_arg(static_cast<long long>(r))) continue;
        const double e = static_cast<double>(chi.value_exponent(static_cast<long long>(r)));
        sum += std::polar(1.0, 2.0 * std::numbers::pi * (e / d + static_cast<double>(r) /
                                                                     static_cast<double>(f)));
    }
    return {std::abs(sum), static_cast<double>(f) * 4e-16};
}

/// Exact Gauss sum as a cyclotomic number of order lcm(order(chi), f): each
/// term chi(r) zeta_f^r is a single root of unity. Useful for exact
/// |G|^2 = G * conj(G) = f verification; conj is the Galois map zeta -> zeta^{-1}.
inline Cyclotomic gauss_sum_exact(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw std::invalid_argument("gauss_sum_exact: character must be primitive");
    const std::uint64_t f = chi.modulus();
    const std::uint64_t d = chi.order();
    const std::uint64_t L = std::lcm(d, f);
    Cyclotomic sum(static_cast<unsigned>(L));
    for (std::uint64_t r = 1; r <= f; ++r) {
        if (!chi.unit_arg(static_cast<long long>(r))) continue;
        const std::uint64_t e = chi.value_exponent(static_cast<long long>(r));
        const std::uint64_t exponent = (e * (L / d) + r * (L / f)) % L;
        sum = sum + root_of_unity(static_cast<unsigned>(L), static_cast<long>(exponent));
    }
    return sum;
}

struct ProbabilityResult {
    double value = 0.0;        // 1 / ((1 - p^{-2}) zeta(2) L(2, S/p))
    double error_bound = 0.0;
    std::optional<double> closed_form;  // 59049/(64 pi^6) when p = 3
    bool closed_form_agrees = true;
};

/// The coprimality probability 1/((1 - p^{-2}) zeta(2) L(2, S/p)), which by
/// the Euler product equals prod_split (1 - ell^{-2})^p * prod_inert (1 - ell^{-2p}).
/// For p = 3 the closed form 59049/(64 pi^6) is also evaluated and compared.
inline ProbabilityResult coprimality_probability(std::uint64_t p, std::uint64_t prime_bound) {
    const RealApprox L = euler_L_moore(2.0, p, prime_bound);
    const RealApprox zeta2 = riemann_zeta_real(2.0);
    ProbabilityResult res;
    res.value = 1.0 / ((1.0 - 1.0 / static_cast<double>(p * p)) * zeta2.value * L.value);
    res.error_bound = res.value * (L.error_bound / std::fabs(L.value) + 1e-13);
    if (p == 3) {
        const double pi6 = std::pow(std::numbers::pi, 6.0);
        res.closed_form = 59049.0 / (64.0 * pi6);
        res.closed_form_agrees = std::fabs(*res.closed_form - res.value) < 1e-4;
    }
    return res;
}

struct MonteCarloResult {
    double frequency = 0.0;
    double std_error = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    std::uint64_t range = 0;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// True when no prime factor of g falls in the rejected class. `small` and
/// `small_class` are the sieved primes below sqrt(range) and their classes;
/// any cofactor surviving them is prime and classified directly.
inline bool gcd_avoids_class(std::uint64_t g, PrimeClass rejected, std::uint64_t p,
                             const std::vector<std::uint64_t>& small,
                             const std::vector<PrimeClass>& small_class) {
    for (std::size_t i = 0; i < small.size() && small[i] * small[i] <= g; ++i) {
        if (g % small[i] != 0) continue;
        if (small_class[i] == rejected) return false;
        do g /= small[i];
        while (g % small[i] == 0);
    }
    if (g > 1) {
        // remaining cofactor is prime (possibly one of the small primes itself)
        if (g == p) return true;
        if (classify_prime(g, p).cls == rejected) return false;
    }
    return true;
}

}  // namespace detail

/// Samples p pairs of uniform integers in [1, range_bound] and counts how
/// often (1) no inert prime divides all 2p entries and (2) no pair shares a
/// split prime (p itself is unrestricted). Batches have fixed contents derived
/// from (seed, batch index), so the count is bit-identical for any thread
/// count. The finite range introduces a small bias against the natural-density
/// limit; it is reported via `range`, not corrected.
inline MonteCarloResult monte_carlo_probability(std::uint64_t p, std::uint64_t samples,
                                                std::uint64_t range_bound, std::uint64_t seed,
                                                unsigned threads = 1) {
    if (!is_odd_prime(p)) throw std::invalid_argument("monte_carlo_probability: p must be an odd prime");
    if (samples == 0) throw std::invalid_argument("monte_carlo_probability: samples must be positive");
    if (range_bound < 2) throw std::invalid_argument("monte_carlo_probability: range must be >= 2");

    std::uint64_t sieve_to = 2;
    while (sieve_to * sieve_to < range_bound) ++sieve_to;
    const std::vector<std::uint64_t> small = sieve_primes(sieve_to);
    std::vector<PrimeClass> small_class;
    small_class.reserve(small.size());
    for (std::uint64_t q : small) small_class.push_back(classify_prime(q, p).cls);

    constexpr std::uint64_t batch_size = 1 << 16;
    const std::uint64_t batches = (samples + batch_size - 1) / batch_size;
    std::vector<std::uint64_t> batch_hits(batches, 0);

    auto run_batch = [&](std::uint64_t b) {
        std::mt19937_64 rng(detail::splitmix64(seed ^ (0x5851F42D4C957F2DULL * (b + 1))));
        const std::uint64_t lo = b * batch_size;
        const std::uint64_t hi = std::min(samples, lo + batch_size);
        std::uint64_t hits = 0;
        std::vector<std::uint64_t> pair_gcds(p);
        for (std::uint64_t s = lo; s < hi; ++s) {
            bool ok = true;
            std::uint64_t all_gcd = 0;
            for (std::uint64_t i = 0; i < p; ++i) {
                const std::uint64_t m = rng() % range_bound + 1;
                const std::uint64_t n = rng() % range_bound + 1;
                pair_gcds[i] = std::gcd(m, n);
                all_gcd = std::gcd(all_gcd, pair_gcds[i]);
            }
            for (std::uint64_t i = 0; i < p && ok; ++i)
                if (pair_gcds[i] > 1)
                    ok = detail::gcd_avoids_class(pair_gcds[i], PrimeClass::split, p, small, small_class);
            if (ok && all_gcd > 1)
                ok = detail::gcd_avoids_class(all_gcd, PrimeClass::inert, p, small, small_class);
            if (ok) ++hits;
        }
        batch_hits[b] = hits;
    };

    if (threads <= 1) {
        for (std::uint64_t b = 0; b < batches; ++b) run_batch(b);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::uint64_t b = t; b < batches; b += threads) run_batch(b);
            });
        for (auto& th : pool) th.join();
    }

    MonteCarloResult res;
    res.samples = samples;
    res.range = range_bound;
    res.seed = seed;
    for (std::uint64_t b = 0; b < batches; ++b) res.hits += batch_hits[b];
    res.frequency = static_cast<double>(res.hits) / static_cast<double>(samples);
    res.std_error = std::sqrt(res.frequency * (1.0 - res.frequency) / static_cast<double>(samples));
    return res;
}

}  // namespace moorel

#endif  // MOOREL_ANALYTIC_HPP
