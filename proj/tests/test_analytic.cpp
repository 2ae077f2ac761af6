// Floating-point side: prime classification, zeta and Euler products with
// tracked error bounds, Dirichlet series cross-checks, Gauss sums, the
// coprimality probability, and the deterministic Monte Carlo sampler.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "moorel/analytic.hpp"
#include "moorel/lvalues.hpp"

using namespace moorel;

TEST_CASE("prime classification by multiplicative order mod p^2") {
    REQUIRE(classify_prime(3, 3).cls == PrimeClass::ramified);
    REQUIRE(classify_prime(2, 3).cls == PrimeClass::inert);
    // order 3 mod 9, not a primitive root, still inert
    REQUIRE(classify_prime(7, 3).cls == PrimeClass::inert);
    REQUIRE(classify_prime(17, 3).cls == PrimeClass::split);
    // 7^4 = 2401 = 1 mod 25
    REQUIRE(classify_prime(7, 5).cls == PrimeClass::split);
    REQUIRE(classify_prime(2, 5).cls == PrimeClass::inert);

    std::vector<std::uint64_t> split3;
    for (std::uint64_t ell : sieve_primes(130))
        if (ell != 3 && classify_prime(ell, 3).cls == PrimeClass::split) split3.push_back(ell);
    REQUIRE(split3 == std::vector<std::uint64_t>{17, 19, 37, 53, 71, 73, 89, 107, 109, 127});

    REQUIRE(std::string(prime_class_name(PrimeClass::split)) == "split");
    REQUIRE(std::string(prime_class_name(PrimeClass::inert)) == "inert");
    REQUIRE(std::string(prime_class_name(PrimeClass::ramified)) == "ramified");
    REQUIRE_THROWS_AS(classify_prime(7, 4), std::invalid_argument);
}

TEST_CASE("riemann zeta on the real axis") {
    const double pi = std::numbers::pi;
    const RealApprox z2 = riemann_zeta_real(2.0);
    REQUIRE(std::fabs(z2.value - pi * pi / 6.0) <= z2.error_bound + 1e-12);
    const RealApprox z4 = riemann_zeta_real(4.0);
    REQUIRE(std::fabs(z4.value - std::pow(pi, 4.0) / 90.0) <= z4.error_bound + 1e-12);
    const RealApprox z3 = riemann_zeta_real(3.0);
    REQUIRE(std::fabs(z3.value - 1.2020569031595943) < 1e-12);
    REQUIRE_THROWS_AS(riemann_zeta_real(1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(riemann_zeta_real(0.5), std::invalid_argument);
}

TEST_CASE("euler product values are consistent across truncation bounds") {
    for (std::uint64_t p : {3ULL, 5ULL}) {
        const RealApprox a = euler_L_moore(2.0, p, 1000);
        const RealApprox b = euler_L_moore(2.0, p, 10000);
        const RealApprox c = euler_L_moore(2.0, p, 100000);
        // error bounds shrink as the truncation grows
        REQUIRE(b.error_bound < a.error_bound);
        REQUIRE(c.error_bound < b.error_bound);
        // successive values agree within the coarser bound
        REQUIRE(std::fabs(a.value - b.value) <= a.error_bound);
        REQUIRE(std::fabs(b.value - c.value) <= b.error_bound);
    }
    REQUIRE_THROWS_AS(euler_L_moore(1.0, 3, 1000), std::invalid_argument);
    REQUIRE_THROWS_AS(euler_L_moore(2.0, 4, 1000), std::invalid_argument);
}

TEST_CASE("the character-series product matches the euler product") {
    const RealApprox euler = euler_L_moore(2.0, 3, 1000000);
    std::complex<double> product(1.0, 0.0);
    for (const auto& chi : galois_orbit(torsion_generator(3))) {
        const ComplexApprox term = series_L(chi, 2.0, 100000);
        product *= term.value;
    }
    REQUIRE(std::fabs(product.imag()) < 1e-8);
    REQUIRE(std::fabs(product.real() - euler.value) < 1e-3 * euler.value);
    REQUIRE_THROWS_AS(series_L(torsion_generator(3), 1.0, 100), std::invalid_argument);
}

TEST_CASE("gauss sum magnitudes and the exact norm identity") {
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
        for (const auto& chi : torsion_subgroup(p).elements) {
            if (chi == DirichletCharacter::principal(p * p)) continue;
            const RealApprox mag = gauss_sum_magnitude(chi);
            REQUIRE(std::fabs(mag.value - static_cast<double>(p)) < 1e-9);
            // exact: G * conj(G) = f
            const Cyclotomic G = gauss_sum_exact(chi);
            REQUIRE(G * galois_conj(G, -1) == Cyclotomic::rational(Rational(Int(p * p))));
        }
    }
    // a full-order primitive character mod 9 (order 6) satisfies the same identity
    const DirichletCharacter full(9, 1);
    REQUIRE(full.is_primitive());
    const Cyclotomic G9 = gauss_sum_exact(full);
    REQUIRE(G9 * galois_conj(G9, -1) == Cyclotomic::rational(Rational(9)));
    REQUIRE(std::fabs(gauss_sum_magnitude(full).value - 3.0) < 1e-9);

    REQUIRE_THROWS_AS(gauss_sum_magnitude(DirichletCharacter::principal(9)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(gauss_sum_exact(DirichletCharacter(9, 3)), std::invalid_argument);
}

TEST_CASE("coprimality probability with closed form at p = 3") {
    const ProbabilityResult res = coprimality_probability(3, 100000);
    REQUIRE(res.closed_form.has_value());
    REQUIRE(std::fabs(*res.closed_form - 0.9596952318226060) < 1e-12);
    REQUIRE(res.closed_form_agrees);
    REQUIRE(std::fabs(res.value - *res.closed_form) < 1e-4);

    const ProbabilityResult res5 = coprimality_probability(5, 100000);
    REQUIRE_FALSE(res5.closed_form.has_value());
    REQUIRE(res5.value > 0.0);
    REQUIRE(res5.value < 1.0);
}

TEST_CASE("monte carlo sampling is deterministic for any thread count") {
    const MonteCarloResult one = monte_carlo_probability(3, 200000, 1000000, 42, 1);
    const MonteCarloResult two = monte_carlo_probability(3, 200000, 1000000, 42, 2);
    const MonteCarloResult five = monte_carlo_probability(3, 200000, 1000000, 42, 5);
    REQUIRE(one.hits == two.hits);
    REQUIRE(one.hits == five.hits);
    REQUIRE(one.samples == 200000);
    REQUIRE(one.frequency == two.frequency);
    // the sampled frequency sits near the limiting probability
    REQUIRE(std::fabs(one.frequency - 0.9597) < 0.005);
    REQUIRE(one.std_error > 0.0);
    REQUIRE(one.std_error < 0.002);
    // a different seed draws a different stream
    const MonteCarloResult other = monte_carlo_probability(3, 200000, 1000000, 43, 1);
    REQUIRE(one.hits != other.hits);

    REQUIRE_THROWS_AS(monte_carlo_probability(3, 0, 1000000, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(monte_carlo_probability(3, 100, 1, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(monte_carlo_probability(4, 100, 1000, 1), std::invalid_argument);
}

TEST_CASE("numeric embedding of cyclotomic values") {
    const std::complex<double> i_unit = to_complex(root_of_unity(4, 1));
    REQUIRE(std::abs(i_unit - std::complex<double>(0.0, 1.0)) < 1e-12);
    const std::complex<double> sixth = to_complex(root_of_unity(6, 1));
    REQUIRE(std::abs(sixth - std::polar(1.0, std::numbers::pi / 3.0)) < 1e-12);
    REQUIRE(std::abs(to_complex(Cyclotomic::rational(Rational(5, 2))) -
                     std::complex<double>(2.5, 0.0)) < 1e-15);
}

TEST_CASE("functional equation at accessible even arguments") {
    const FunctionalEquationReport rep = functional_equation_check(3, 2, 100000, 1e-3);
    REQUIRE(rep.pass);
    REQUIRE(rep.exact_value == Rational(4, 3));
    REQUIRE(rep.p == 3);
    REQUIRE(rep.n == 2);
    REQUIRE(rep.lhs > 0.0);
    REQUIRE(std::fabs(rep.lhs - rep.rhs) < 1e-3 * rep.rhs);
    REQUIRE_THROWS_AS(functional_equation_check(3, 3, 1000, 1e-3), std::invalid_argument);
    REQUIRE_THROWS_AS(functional_equation_check(3, 1, 1000, 1e-3), std::invalid_argument);
}
