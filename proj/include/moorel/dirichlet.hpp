#ifndef MOOREL_DIRICHLET_HPP
#define MOOREL_DIRICHLET_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "moorel/cyclotomic.hpp"
#include "moorel/numutil.hpp"
#include "moorel/rational.hpp"

namespace moorel {

namespace detail {

/// Decompose f as q^k for an odd prime q; returns {0, 0} if f has no such form.
inline std::pair<std::uint64_t, unsigned> odd_prime_power(std::uint64_t f) {
    if (f < 3 || f % 2 == 0) return {0, 0};
    std::uint64_t q = 3;
    while (q * q <= f && f % q != 0) q += 2;
    if (q * q > f) q = f;  // f itself is prime
    unsigned k = 0;
    std::uint64_t rest = f;
    while (rest % q == 0) {
        rest /= q;
        ++k;
    }
    if (rest != 1 || !is_prime(q)) return {0, 0};
    return {q, k};
}

}  // namespace detail

/// Discrete-log machinery for the cyclic unit group (Z/f)^* where f is 1 or an
/// odd prime power. Logs are taken against the smallest primitive root and
/// resolved by baby-step giant-step against a precomputed baby table.
class UnitGroupTable {
public:
    static std::shared_ptr<const UnitGroupTable> get(std::uint64_t f) {
        static std::map<std::uint64_t, std::shared_ptr<const UnitGroupTable>> registry;
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        auto it = registry.find(f);
        if (it == registry.end())
            it = registry.emplace(f, std::shared_ptr<const UnitGroupTable>(new UnitGroupTable(f))).first;
        return it->second;
    }

    std::uint64_t modulus() const { return f_; }
    std::uint64_t group_order() const { return phi_; }
    std::uint64_t generator() const { return g_; }

    bool is_unit(std::uint64_t a) const { return f_ == 1 || std::gcd(a % f_, f_) == 1; }

    /// Discrete log of a unit a: the e in [0, phi) with g^e = a mod f.
    std::uint64_t dlog(std::uint64_t a) const {
        if (f_ == 1) return 0;
        a %= f_;
        if (!is_unit(a)) throw std::invalid_argument("UnitGroupTable::dlog: argument not a unit");
        std::uint64_t x = a;
        for (std::uint64_t q = 0; q * baby_count_ < phi_ + baby_count_; ++q) {
            auto it = baby_.find(x);
            if (it != baby_.end()) {
                std::uint64_t e = q * baby_count_ + it->second;
                return e % phi_;
            }
            x = mul_mod(x, giant_mult_, f_);
        }
        throw std::logic_error("UnitGroupTable::dlog: not found (table corrupt?)");
    }

private:
    explicit UnitGroupTable(std::uint64_t f) : f_(f) {
        if (f == 1) {
            phi_ = 1;
            g_ = 1;
            baby_count_ = 1;
            giant_mult_ = 0;
            return;
        }
        auto [p, k] = detail::odd_prime_power(f);
        if (p == 0)
            throw std::invalid_argument("UnitGroupTable: modulus must be 1 or an odd prime power");
        phi_ = euler_phi(f);
        // Smallest primitive root; for k >= 2 it must also generate mod p
        // (automatic, but checked since downstream congruences lean on it).
        for (g_ = 2; g_ < f; ++g_) {
            if (std::gcd(g_, f) != 1) continue;
            if (multiplicative_order(g_, f) == phi_) break;
        }
        if (g_ >= f) throw std::logic_error("UnitGroupTable: no primitive root found");
        if (k >= 2 && multiplicative_order(g_ % p, p) != p - 1)
            throw std::logic_error("UnitGroupTable: generator fails mod p");

        baby_count_ = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(phi_))));
        std::uint64_t x = 1;
        for (std::uint64_t i = 0; i < baby_count_; ++i) {
            baby_.emplace(x, i);
            x = mul_mod(x, g_, f_);
        }
        // x = g^baby_count; invert to get the giant-step multiplier g^{-baby_count}.
        giant_mult_ = pow_mod(x, phi_ - 1, f_);  // x^{phi-1} = x^{-1} in a group of order phi
    }

    std::uint64_t f_, phi_, g_;
    std::uint64_t baby_count_, giant_mult_;
    std::unordered_map<std::uint64_t, std::uint64_t> baby_;
};

/// Smallest primitive root modulo an odd prime power.
inline std::uint64_t primitive_root(std::uint64_t f) {
    if (f == 1) throw std::invalid_argument("primitive_root: modulus must be an odd prime power > 1");
    return UnitGroupTable::get(f)->generator();
}

/// Dirichlet character of modulus 1 or an odd prime power f, stored by its
/// discrete log: chi(g) = zeta_{phi(f)}^{log_value} for the canonical
/// primitive root g. Completely multiplicative, periodic mod f, and zero on
/// residues sharing a factor with f.
class DirichletCharacter {
public:
    DirichletCharacter(std::uint64_t modulus, std::uint64_t log_value)
        : table_(UnitGroupTable::get(modulus)), j_(log_value % table_->group_order()) {}

    static DirichletCharacter principal(std::uint64_t modulus) { return {modulus, 0}; }

    std::uint64_t modulus() const { return table_->modulus(); }
    std::uint64_t log_value() const { return j_; }
    std::uint64_t group_order() const { return table_->group_order(); }
    std::uint64_t generator() const { return table_->generator(); }
    bool is_principal() const { return j_ == 0; }

    /// Multiplicative order of the character: phi(f)/gcd(j, phi(f)).
    std::uint64_t order() const { return table_->group_order() / std::gcd(j_, table_->group_order()); }

    /// chi(n) as an element of Q(zeta_{phi(f)}): zeta^{j*dlog(n)}, or 0 on non-units.
    Cyclotomic eval(long long n) const {
        const std::uint64_t phi = table_->group_order();
        if (!unit_arg(n)) return Cyclotomic(static_cast<unsigned>(phi));
        const std::uint64_t e = mul_mod(j_ % phi, table_->dlog(reduce(n)), phi);
        return root_of_unity(static_cast<unsigned>(phi), static_cast<long>(e));
    }

    /// chi(n) at the character's own order d = phi/gcd(j, phi) — the minimal
    /// cyclotomic field containing every value. Equal to eval(n) under the
    /// zeta_d = zeta_{phi}^{phi/d} embedding.
    Cyclotomic value(long long n) const {
        const std::uint64_t d = order();
        if (!unit_arg(n)) return Cyclotomic(static_cast<unsigned>(d));
        return root_of_unity(static_cast<unsigned>(d), static_cast<long>(value_exponent(n)));
    }

    /// Exponent e in [0, order) with chi(n) = zeta_order^e; requires a unit argument.
    std::uint64_t value_exponent(long long n) const {
        if (!unit_arg(n)) throw std::invalid_argument("DirichletCharacter: chi(n) = 0 has no exponent");
        const std::uint64_t phi = table_->group_order();
        const std::uint64_t d = order();
        return mul_mod(j_ / std::gcd(j_, phi), table_->dlog(reduce(n)), d) % d;
    }

    bool unit_arg(long long n) const { return table_->is_unit(reduce(n)); }

    /// Smallest induced modulus: the least divisor d of f such that chi is
    /// trivial on every unit congruent to 1 mod d.
    std::uint64_t conductor() const {
        const std::uint64_t f = table_->modulus();
        for (std::uint64_t d = 1; d <= f; ++d) {
            if (f % d != 0) continue;
            bool induced = true;
            for (std::uint64_t a = 1; a < f && induced; ++a) {
                if (a % d != 1 % d || !table_->is_unit(a)) continue;
                const std::uint64_t phi = table_->group_order();
                if (mul_mod(j_ % phi, table_->dlog(a), phi) != 0) induced = false;
            }
            if (induced) return d;
        }
        return f;  // unreachable: d = f always qualifies
    }

    bool is_primitive() const { return conductor() == modulus(); }

    /// chi^k (the Galois twist zeta -> zeta^k on values).
    DirichletCharacter power(std::uint64_t k) const {
        const std::uint64_t phi = table_->group_order();
        return {modulus(), mul_mod(j_ % phi, k % phi, phi)};
    }

    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
        if (a.modulus() != b.modulus())
            throw std::invalid_argument("DirichletCharacter: product requires equal moduli");
        return {a.modulus(), (a.j_ + b.j_) % a.table_->group_order()};
    }

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus() == b.modulus() && a.j_ == b.j_;
    }
    friend bool operator!=(const DirichletCharacter& a, const DirichletCharacter& b) { return !(a == b); }

private:
    std::uint64_t reduce(long long n) const {
        const long long f = static_cast<long long>(table_->modulus());
        long long r = n % f;
        if (r < 0) r += f;
        return static_cast<std::uint64_t>(r);
    }

    std::shared_ptr<const UnitGroupTable> table_;
    std::uint64_t j_;
};

/// A finite set of characters sharing one modulus (the full dual group, or a
/// subgroup of it such as the p-torsion).
struct CharacterGroup {
    std::uint64_t modulus;
    std::vector<DirichletCharacter> elements;

    /// All phi(f) characters mod f, ordered by log_value.
    static CharacterGroup full(std::uint64_t f) {
        CharacterGroup grp{f, {}};
        const std::uint64_t phi = UnitGroupTable::get(f)->group_order();
        grp.elements.reserve(phi);
        for (std::uint64_t j = 0; j < phi; ++j) grp.elements.emplace_back(f, j);
        return grp;
    }
};

/// The unique order-p subgroup of the characters mod p^2: log_values t(p-1)
/// for t = 0..p-1. Exactly one member (t = 0) is principal; the rest have
/// order exactly p and conductor p^2.
inline CharacterGroup torsion_subgroup(std::uint64_t p) {
    if (!is_odd_prime(p)) throw std::invalid_argument("torsion_subgroup: p must be an odd prime");
    CharacterGroup grp{p * p, {}};
    grp.elements.reserve(p);
    for (std::uint64_t t = 0; t < p; ++t) grp.elements.emplace_back(p * p, t * (p - 1));
    return grp;
}

/// Canonical generator of the order-p subgroup mod p^2 (t = 1: chi(g) = zeta_p).
inline DirichletCharacter torsion_generator(std::uint64_t p) {
    if (!is_odd_prime(p)) throw std::invalid_argument("torsion_generator: p must be an odd prime");
    return {p * p, p - 1};
}

/// Galois orbit {chi^k : k = 1..p-1} of a nonprincipal order-p character mod
/// p^2; equals the set of all nonprincipal members of the order-p subgroup.
inline std::vector<DirichletCharacter> galois_orbit(const DirichletCharacter& chi) {
    if (chi.is_principal()) throw std::invalid_argument("galois_orbit: principal character has no orbit");
    const std::uint64_t p = chi.order();
    if (!is_odd_prime(p) || chi.modulus() != p * p)
        throw std::invalid_argument("galois_orbit: character must be an order-p member of the mod-p^2 torsion");
    std::vector<DirichletCharacter> orbit;
    orbit.reserve(p - 1);
    for (std::uint64_t k = 1; k < p; ++k) orbit.push_back(chi.power(k));
    return orbit;
}

/// Returns the first n_max values of the Dirichlet convolution chi1 * chi2:
/// slot n-1 of the result holds sum_{d | n} chi1(d) * chi2(n/d) for n = 1..n_max,
/// each factor embedded into Q(zeta_lcm) before multiplying.
inline std::vector<Cyclotomic> dirichlet_convolution(const DirichletCharacter& chi1,
                                                     const DirichletCharacter& chi2, unsigned n_max) {
    const unsigned m = static_cast<unsigned>(std::lcm(chi1.order(), chi2.order()));
    std::vector<Cyclotomic> out;
    out.reserve(n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        Cyclotomic acc(m);
        for (unsigned d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            if (!chi1.unit_arg(d) || !chi2.unit_arg(n / d)) continue;
            acc = acc + Cyclotomic::embed(chi1.value(d), m) * Cyclotomic::embed(chi2.value(n / d), m);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

}  // namespace moorel

#endif  // MOOREL_DIRICHLET_HPP
