// KU-local stable homotopy of the mod-p Moore spectrum: the (2p-2)-periodic
// order pattern, its pairing with even/odd degrees, and the constant sequence
// in degrees 2(p-1)p^j - 1.
#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "moorel/homotopy.hpp"
#include "support.hpp"

using namespace moorel;
using testsupport::Rng;

TEST_CASE("homotopy orders for small degrees and primes") {
    // p = 3, period 4: nontrivial in degrees == 0, 3 mod 4
    REQUIRE(homotopy_order(3, 0) == 3);
    REQUIRE(homotopy_order(3, 1) == 1);
    REQUIRE(homotopy_order(3, 2) == 1);
    REQUIRE(homotopy_order(3, 3) == 3);
    REQUIRE(homotopy_order(3, 4) == 3);
    REQUIRE(homotopy_order(3, -1) == 3);
    REQUIRE(homotopy_order(3, -2) == 1);
    // p = 5, period 8
    REQUIRE(homotopy_order(5, 7) == 5);
    REQUIRE(homotopy_order(5, 8) == 5);
    REQUIRE(homotopy_order(5, 9) == 1);
    REQUIRE(homotopy_order(5, 15) == 5);
    REQUIRE_THROWS_AS(homotopy_order(2, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(homotopy_order(9, 0), std::invalid_argument);
}

TEST_CASE("exactly two nontrivial groups per period window") {
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        const long long period = static_cast<long long>(2 * p - 2);
        for (long long base : {0LL, -period, 3 * period, 1000LL * period}) {
            unsigned nontrivial = 0;
            for (long long k = 0; k < period; ++k) {
                const std::uint64_t o = homotopy_order(p, base + k);
                REQUIRE((o == 1 || o == p));
                if (o == p) ++nontrivial;
            }
            REQUIRE(nontrivial == 2);
        }
    }
}

TEST_CASE("degrees 2n and 2n-1 always carry equal orders") {
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL})
        for (long long n = 1; n <= 200; ++n) {
            const std::uint64_t even = homotopy_order(p, 2 * n);
            REQUIRE(even == homotopy_order(p, 2 * n - 1));
            const bool divisible = n % static_cast<long long>(p - 1) == 0;
            REQUIRE(even == (divisible ? p : 1));
        }
}

TEST_CASE("the pattern is periodic under random shifts") {
    Rng rng(0x5EED0301);
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
        const long long period = static_cast<long long>(2 * p - 2);
        for (int trial = 0; trial < 50; ++trial) {
            const long long n = rng.int_in(-100000, 100000);
            const long long shift = rng.int_in(-500, 500);
            REQUIRE(homotopy_order(p, n) == homotopy_order(p, n + shift * period));
            REQUIRE(periodicity_witness(p, n, 5));
        }
    }
    REQUIRE_THROWS_AS(periodicity_witness(3, 0, 0), std::invalid_argument);
}

TEST_CASE("big-integer degrees agree with the built-in overload") {
    Rng rng(0x5EED0302);
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL})
        for (int trial = 0; trial < 50; ++trial) {
            const long long n = rng.int_in(-1000000, 1000000);
            REQUIRE(homotopy_order(p, n) == homotopy_order(p, Int(static_cast<long>(n))));
        }
    // degree 2(p-1)p^50 - 1 is far outside built-in range
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
        const Int degree = Int(2 * (p - 1)) * pow_int(Int(p), 50) - 1;
        REQUIRE(homotopy_order(p, degree) == p);
        REQUIRE(homotopy_order(p, degree + 1) == p);
        REQUIRE(homotopy_order(p, degree + 2) == 1);
    }
}

TEST_CASE("leopoldt sequence is constant at p") {
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL}) {
        const auto seq = leopoldt_sequence(p, 12);
        REQUIRE(seq.size() == 13);
        for (const std::uint64_t o : seq) REQUIRE(o == p);
    }
}

TEST_CASE("pattern descriptors expose the period and generator degrees") {
    const HomotopyPattern pat = homotopy_pattern(5);
    REQUIRE(pat.p == 5);
    REQUIRE(pat.period == 8);
    REQUIRE(pat.alpha1_degree == 7);
    REQUIRE(pat.v1_degree == 8);
    REQUIRE(homotopy_order(5, static_cast<long long>(pat.alpha1_degree)) == 5);
    REQUIRE(homotopy_order(5, static_cast<long long>(pat.v1_degree)) == 5);
    REQUIRE_THROWS_AS(homotopy_pattern(2), std::invalid_argument);
    REQUIRE_THROWS_AS(homotopy_pattern(9), std::invalid_argument);
}
