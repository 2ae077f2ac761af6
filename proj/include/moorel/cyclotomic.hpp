#ifndef MOOREL_CYCLOTOMIC_HPP
#define MOOREL_CYCLOTOMIC_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "moorel/numutil.hpp"
#include "moorel/rational.hpp"

namespace moorel {

namespace detail {

/// Exact division of integer polynomials, ascending coefficients, monic divisor.
inline std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
    const std::size_t dn = num.size() - 1, dd = den.size() - 1;
    if (dn < dd) throw std::logic_error("poly_divide_exact: degree underflow");
    std::vector<Int> quot(dn - dd + 1);
    for (std::size_t k = dn - dd + 1; k-- > 0;) {
        Int c = num[k + dd];  // den is monic
        quot[k] = c;
        if (c != 0)
            for (std::size_t i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
    }
    for (const Int& c : num)
        if (c != 0) throw std::logic_error("poly_divide_exact: nonzero remainder");
    return quot;
}

}  // namespace detail

/// Coefficients of the m-th cyclotomic polynomial Phi_m, ascending, monic,
/// degree phi(m). Computed as (x^m - 1) / prod_{d | m, d < m} Phi_d and memoized.
inline const std::vector<Int>& cyclotomic_polynomial(unsigned m) {
    if (m == 0) throw std::invalid_argument("cyclotomic_polynomial: m must be positive");
    static std::map<unsigned, std::vector<Int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // Iterative fill in increasing m so every divisor is already present.
    std::function<const std::vector<Int>&(unsigned)> get = [&](unsigned k) -> const std::vector<Int>& {
        auto found = cache.find(k);
        if (found != cache.end()) return found->second;
        std::vector<Int> num(k + 1);
        num[0] = -1;
        num[k] = 1;  // x^k - 1
        for (unsigned d = 1; d < k; ++d)
            if (k % d == 0) num = detail::poly_divide_exact(std::move(num), get(d));
        return cache.emplace(k, std::move(num)).first->second;
    };
    return get(m);
}

/// Shared immutable context for Q(zeta_m): Phi_m, the reduction rows for
/// products (x^{phi+k} mod Phi_m), and the full power table (x^e mod Phi_m,
/// 0 <= e < m) used by Galois maps and embeddings.
class CyclotomicField {
public:
    static const CyclotomicField& get(unsigned m) {
        static std::map<unsigned, std::unique_ptr<CyclotomicField>> registry;
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        auto it = registry.find(m);
        if (it == registry.end())
            it = registry.emplace(m, std::unique_ptr<CyclotomicField>(new CyclotomicField(m))).first;
        return *it->second;
    }

    unsigned order() const { return m_; }
    unsigned degree() const { return deg_; }
    const std::vector<Int>& modulus_poly() const { return phi_poly_; }
    /// x^{degree + k} mod Phi_m, 0 <= k <= degree - 2.
    const std::vector<Int>& reduction_row(unsigned k) const { return red_rows_[k]; }
    /// x^e mod Phi_m, 0 <= e < m.
    const std::vector<Int>& power(unsigned e) const { return pow_table_[e]; }

private:
    explicit CyclotomicField(unsigned m) : m_(m), phi_poly_(cyclotomic_polynomial(m)) {
        deg_ = static_cast<unsigned>(phi_poly_.size() - 1);
        // x^deg = -(Phi_0 + ... + Phi_{deg-1} x^{deg-1})  (Phi_m is monic)
        std::vector<Int> top(deg_);
        for (unsigned i = 0; i < deg_; ++i) top[i] = -phi_poly_[i];
        if (deg_ >= 1) {
            red_rows_.push_back(top);
            for (unsigned k = 1; k + 1 < deg_; ++k) red_rows_.push_back(shift_reduced(red_rows_.back(), top));
        }
        pow_table_.reserve(m_);
        std::vector<Int> cur(deg_);
        cur[0] = 1;
        pow_table_.push_back(cur);
        for (unsigned e = 1; e < m_; ++e) {
            cur = shift_reduced(cur, top);
            pow_table_.push_back(cur);
        }
    }

    /// Multiply a fully reduced row by x and reduce again.
    static std::vector<Int> shift_reduced(const std::vector<Int>& row, const std::vector<Int>& top) {
        const std::size_t deg = row.size();
        std::vector<Int> out(deg);
        for (std::size_t i = deg; i-- > 1;) out[i] = row[i - 1];
        const Int& overflow = row[deg - 1];
        if (overflow != 0)
            for (std::size_t i = 0; i < deg; ++i) out[i] += overflow * top[i];
        return out;
    }

    unsigned m_, deg_;
    std::vector<Int> phi_poly_;
    std::vector<std::vector<Int>> red_rows_;
    std::vector<std::vector<Int>> pow_table_;
};

/// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}
/// (coefficients reduced mod Phi_m; the representation is canonical per order).
/// Binary operations accept equal orders or orders m | M, embedding the smaller
/// via zeta_m = zeta_M^{M/m}; no other coercion happens implicitly.
class Cyclotomic {
public:
    explicit Cyclotomic(unsigned order = 1)
        : order_(order), coeffs_(CyclotomicField::get(order).degree()) {}

    Cyclotomic(unsigned order, std::vector<Rational> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != CyclotomicField::get(order_).degree())
            throw std::invalid_argument("Cyclotomic: coefficient count != phi(order)");
    }

    /// Rational constant as an order-1 element.
    static Cyclotomic rational(const Rational& q) {
        Cyclotomic c(1);
        c.coeffs_[0] = q;
        return c;
    }

    unsigned order() const { return order_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// True when every basis coefficient above the constant vanishes.
    bool is_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return false;
        return true;
    }

    Rational rational_value() const {
        if (!is_rational()) throw std::logic_error("Cyclotomic: not a rational value");
        return coeffs_[0];
    }

    /// All power-basis coefficients integral. For cyclotomic fields Z[zeta_m]
    /// is the maximal order, so this is exactly algebraic integrality.
    bool is_integral() const {
        for (const auto& c : coeffs_)
            if (!c.is_integer()) return false;
        return true;
    }

    Cyclotomic operator-() const {
        Cyclotomic r(*this);
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
        return x;
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] -= y.coeffs_[i];
        return x;
    }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        // Scalar fast paths keep series arithmetic cheap.
        if (a.order_ == 1) return b.scaled(a.coeffs_[0]);
        if (b.order_ == 1) return a.scaled(b.coeffs_[0]);
        auto [x, y] = align(a, b);
        const auto& field = CyclotomicField::get(x.order_);
        const unsigned deg = field.degree();
        std::vector<Rational> prod(2 * deg - 1);
        for (unsigned i = 0; i < deg; ++i) {
            if (x.coeffs_[i].is_zero()) continue;
            for (unsigned j = 0; j < deg; ++j) {
                if (y.coeffs_[j].is_zero()) continue;
                prod[i + j] += x.coeffs_[i] * y.coeffs_[j];
            }
        }
        Cyclotomic r(x.order_);
        for (unsigned i = 0; i < deg; ++i) r.coeffs_[i] = std::move(prod[i]);
        for (unsigned d = deg; d <= 2 * deg - 2; ++d) {
            if (prod[d].is_zero()) continue;
            const auto& row = field.reduction_row(d - deg);
            for (unsigned i = 0; i < deg; ++i)
                if (row[i] != 0) r.coeffs_[i] += prod[d] * Rational(row[i]);
        }
        return r;
    }

    Cyclotomic scaled(const Rational& q) const {
        Cyclotomic r(*this);
        for (auto& c : r.coeffs_) c *= q;
        return r;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
        unsigned common = std::lcm(a.order_, b.order_);
        return embed(a, common).coeffs_ == embed(b, common).coeffs_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// Image under zeta_m -> zeta_M^{M/m}; requires order | M.
    static Cyclotomic embed(const Cyclotomic& a, unsigned M) {
        if (M % a.order_ != 0)
            throw std::invalid_argument("Cyclotomic::embed: target order not a multiple");
        if (M == a.order_) return a;
        const auto& field = CyclotomicField::get(M);
        const unsigned step = M / a.order_;
        Cyclotomic r(M);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            const auto& row = field.power(static_cast<unsigned>(i * step % M));
            for (unsigned k = 0; k < field.degree(); ++k)
                if (row[k] != 0) r.coeffs_[k] += a.coeffs_[i] * Rational(row[k]);
        }
        return r;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            os << (i ? ", " : "") << coeffs_[i].to_string();
        os << "] (order " << order_ << ")";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.to_string(); }

private:
    static std::pair<Cyclotomic, Cyclotomic> align(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ == b.order_) return {a, b};
        if (b.order_ % a.order_ == 0) return {embed(a, b.order_), b};
        if (a.order_ % b.order_ == 0) return {a, embed(b, a.order_)};
        throw std::invalid_argument("Cyclotomic: incompatible orders " + std::to_string(a.order_) +
                                    " and " + std::to_string(b.order_) + " (no divisibility embedding)");
    }

    unsigned order_;
    std::vector<Rational> coeffs_;
};

/// zeta_m^e as an order-m element.
inline Cyclotomic root_of_unity(unsigned m, long e) {
    const auto& field = CyclotomicField::get(m);
    long em = e % static_cast<long>(m);
    if (em < 0) em += m;
    const auto& row = field.power(static_cast<unsigned>(em));
    std::vector<Rational> coeffs(field.degree());
    for (unsigned i = 0; i < field.degree(); ++i) coeffs[i] = Rational(row[i]);
    return Cyclotomic(m, std::move(coeffs));
}

/// Galois conjugate zeta_m -> zeta_m^t for t coprime to m.
inline Cyclotomic galois_conj(const Cyclotomic& a, long t) {
    const unsigned m = a.order();
    if (m == 1) return a;
    long tm = t % static_cast<long>(m);
    if (tm < 0) tm += m;
    if (std::gcd(static_cast<unsigned long>(tm), static_cast<unsigned long>(m)) != 1)
        throw std::invalid_argument("galois_conj: exponent not coprime to the order");
    const auto& field = CyclotomicField::get(m);
    Cyclotomic r(m);
    const auto& coeffs = a.coefficients();
    std::vector<Rational> acc(field.degree());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        const auto& row = field.power(static_cast<unsigned>(i * tm % m));
        for (unsigned k = 0; k < field.degree(); ++k)
            if (row[k] != 0) acc[k] += coeffs[i] * Rational(row[k]);
    }
    return Cyclotomic(m, std::move(acc));
}

/// Product of all Galois conjugates; the result must be rational and is
/// asserted to be so before returning.
inline Rational field_norm(const Cyclotomic& a) {
    const unsigned m = a.order();
    if (m == 1) return a.coefficients()[0];
    Cyclotomic acc = Cyclotomic::rational(Rational(1));
    for (unsigned t = 1; t < m; ++t) {
        if (std::gcd(t, m) != 1) continue;
        acc = acc * galois_conj(a, t);
    }
    if (!acc.is_rational()) throw std::logic_error("field_norm: product of conjugates not rational");
    return acc.rational_value();
}

/// Multiplicative inverse via the extended Euclidean algorithm against Phi_m
/// over Q (Phi_m is irreducible, so any nonzero element is a unit).
inline Cyclotomic inverse(const Cyclotomic& a) {
    if (a.is_zero()) throw std::invalid_argument("inverse: zero has no inverse");
    const unsigned m = a.order();
    if (m == 1) return Cyclotomic::rational(Rational(1) / a.coefficients()[0]);

    using Poly = std::vector<Rational>;
    auto degree = [](const Poly& p) -> long {
        for (std::size_t i = p.size(); i-- > 0;)
            if (!p[i].is_zero()) return static_cast<long>(i);
        return -1;
    };
    const auto& phim = cyclotomic_polynomial(m);
    Poly r0(phim.size()), r1(a.coefficients());
    for (std::size_t i = 0; i < phim.size(); ++i) r0[i] = Rational(phim[i]);
    Poly s0{Rational(0)}, s1{Rational(1)};  // s tracks the coefficient of a

    while (degree(r1) > 0) {
        // r0 = q * r1 + r2
        Poly q(r0.size());
        Poly rem = r0;
        long d1 = degree(r1);
        const Rational lead = r1[static_cast<std::size_t>(d1)];
        for (long d0 = degree(rem); d0 >= d1; d0 = degree(rem)) {
            Rational c = rem[static_cast<std::size_t>(d0)] / lead;
            q[static_cast<std::size_t>(d0 - d1)] = c;
            for (long i = 0; i <= d1; ++i)
                rem[static_cast<std::size_t>(d0 - d1 + i)] -= c * r1[static_cast<std::size_t>(i)];
            rem[static_cast<std::size_t>(d0)] = Rational(0);  // clamp rounding of the cancelled lead
        }
        Poly s2(std::max(s0.size(), q.size() + s1.size()));
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i].is_zero()) continue;
            for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    long d = degree(r1);
    if (d != 0) throw std::logic_error("inverse: gcd with Phi_m not a unit");
    const Rational scale = Rational(1) / r1[0];
    const unsigned deg = CyclotomicField::get(m).degree();
    std::vector<Rational> out(deg);
    for (std::size_t i = 0; i < s1.size() && i < deg; ++i) out[i] = s1[i] * scale;
    // s1 has degree < deg(Phi) by the invariants of the remainder sequence.
    for (std::size_t i = deg; i < s1.size(); ++i)
        if (!s1[i].is_zero()) throw std::logic_error("inverse: cofactor degree overflow");
    return Cyclotomic(m, std::move(out));
}

/// Residue of an element of Z[zeta_p] under zeta_p -> 1 followed by reduction
/// mod p; the value lies in [0, p).
struct ResidueModLambda {
    unsigned long value;
    unsigned long p;
    friend bool operator==(const ResidueModLambda& a, const ResidueModLambda& b) {
        return a.value == b.value && a.p == b.p;
    }
};

/// Image of a in Z[zeta_p]/(1 - zeta_p) = F_p. Requires integral coefficients
/// and order p (order-1 integers are accepted and reduced mod p).
inline ResidueModLambda reduce_mod_lambda(const Cyclotomic& a, unsigned long p) {
    if (!is_odd_prime(p)) throw std::invalid_argument("reduce_mod_lambda: p must be an odd prime");
    if (a.order() != 1 && a.order() != p)
        throw std::invalid_argument("reduce_mod_lambda: element order must be 1 or p");
    if (!a.is_integral()) throw std::invalid_argument("reduce_mod_lambda: element not integral");
    Int sum(0);
    for (const auto& c : a.coefficients()) sum += c.numerator();
    Int r = sum % Int(p);
    if (r < 0) r += Int(p);
    return ResidueModLambda{r.get_ui(), p};
}

/// lambda-adic valuation in Z[zeta_p], lambda = 1 - zeta_p, computed by
/// repeated residue test and exact division. The prime above p is totally
/// ramified with (p) = (lambda)^{p-1}, so nu_p(field_norm(a)) bounds the loop.
inline Valuation lambda_valuation(const Cyclotomic& a_in, unsigned long p) {
    if (!is_odd_prime(p)) throw std::invalid_argument("lambda_valuation: p must be an odd prime");
    Cyclotomic a = a_in.order() == 1 ? Cyclotomic::embed(a_in, static_cast<unsigned>(p)) : a_in;
    if (a.order() != p) throw std::invalid_argument("lambda_valuation: element order must be 1 or p");
    if (!a.is_integral()) throw std::invalid_argument("lambda_valuation: element not integral");
    if (a.is_zero()) return Valuation::infinity();

    const Valuation norm_bound = padic_valuation(field_norm(a), Int(static_cast<unsigned long>(p)));
    const long bound = norm_bound.value();  // finite since a != 0
    const Cyclotomic lambda_inv =
        inverse(Cyclotomic::rational(Rational(1)) - root_of_unity(static_cast<unsigned>(p), 1));
    long v = 0;
    while (reduce_mod_lambda(a, p).value == 0) {
        a = a * lambda_inv;
        if (!a.is_integral()) throw std::logic_error("lambda_valuation: inexact division by lambda");
        ++v;
        if (v > bound) throw std::logic_error("lambda_valuation: exceeded norm bound");
    }
    return Valuation::of(v);
}

}  // namespace moorel

#endif  // MOOREL_CYCLOTOMIC_HPP
