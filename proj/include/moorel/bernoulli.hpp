#ifndef MOOREL_BERNOULLI_HPP
#define MOOREL_BERNOULLI_HPP

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "moorel/cyclotomic.hpp"
#include "moorel/dirichlet.hpp"
#include "moorel/numutil.hpp"
#include "moorel/rational.hpp"

namespace moorel {

/// Truncated power series with cyclotomic coefficients. The truncation degree
/// is explicit: reading past it throws instead of silently returning zero.
class PowerSeries {
public:
    PowerSeries(unsigned order, unsigned truncation)
        : order_(order), coeffs_(truncation + 1, Cyclotomic(1)) {}

    unsigned order() const { return order_; }
    unsigned truncation() const { return static_cast<unsigned>(coeffs_.size() - 1); }

    const Cyclotomic& coeff(unsigned k) const {
        if (k >= coeffs_.size()) throw std::out_of_range("PowerSeries: coefficient past truncation");
        return coeffs_[k];
    }
    void set_coeff(unsigned k, Cyclotomic v) {
        if (k >= coeffs_.size()) throw std::out_of_range("PowerSeries: coefficient past truncation");
        coeffs_[k] = std::move(v);
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries r(std::lcm(a.order_, b.order_), std::min(a.truncation(), b.truncation()));
        for (unsigned k = 0; k <= r.truncation(); ++k) r.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
        return r;
    }

    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries r(std::lcm(a.order_, b.order_), std::min(a.truncation(), b.truncation()));
        for (unsigned k = 0; k <= r.truncation(); ++k) {
            Cyclotomic acc(1);
            for (unsigned i = 0; i <= k; ++i) acc = acc + a.coeffs_[i] * b.coeffs_[k - i];
            r.coeffs_[k] = std::move(acc);
        }
        return r;
    }

    /// Long division: returns q with q * den = *this up to the common
    /// truncation. Requires an invertible constant term in den.
    PowerSeries divide(const PowerSeries& den) const {
        if (den.coeff(0).is_zero())
            throw std::invalid_argument("PowerSeries::divide: divisor constant term is zero");
        const Cyclotomic inv0 = inverse(den.coeff(0));
        PowerSeries q(std::lcm(order_, den.order_), std::min(truncation(), den.truncation()));
        for (unsigned k = 0; k <= q.truncation(); ++k) {
            Cyclotomic acc = coeffs_[k];
            for (unsigned i = 1; i <= k; ++i) acc = acc - den.coeffs_[i] * q.coeffs_[k - i];
            q.coeffs_[k] = acc * inv0;
        }
        return q;
    }

private:
    unsigned order_;
    std::vector<Cyclotomic> coeffs_;
};

namespace detail {

/// Bernoulli numbers in the MINUS convention (generating function
/// t/(e^t - 1), so B_1 = -1/2); memoized. This is the convention Bernoulli
/// polynomials are built from.
inline Rational bernoulli_minus(unsigned n) {
    static std::vector<Rational> cache{Rational(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        const unsigned m = static_cast<unsigned>(cache.size());
        Rational acc(0);
        for (unsigned k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * cache[k];
        cache.push_back(-acc / Rational(Int(m + 1)));
    }
    return cache[n];
}

}  // namespace detail

/// Classical Bernoulli numbers in the PLUS convention: generating function
/// t*e^t/(e^t - 1), i.e. B_1 = +1/2. This sign choice makes the modulus-1
/// principal character a literal special case of the generalized Bernoulli
/// generating function, so zeta(1-n) = -B_n/n holds verbatim for ALL n >= 1
/// (including n = 1: zeta(0) = -1/2). Most references use B_1 = -1/2; the two
/// conventions differ only at n = 1.
inline Rational classical_bernoulli(unsigned n) {
    if (n == 1) return {1, 2};
    return detail::bernoulli_minus(n);
}

/// Coefficients (ascending) of the Bernoulli polynomial B_n(x) in the standard
/// convention (B_1(x) = x - 1/2): B_n(x) = sum_k C(n,k) B_k x^{n-k} with the
/// minus-convention numbers. Note B_n(1) = (-1)^n B_n(0), which reconciles the
/// two conventions above.
inline std::vector<Rational> bernoulli_polynomial(unsigned n) {
    std::vector<Rational> coeffs(n + 1);
    for (unsigned m = 0; m <= n; ++m)
        coeffs[m] = Rational(binomial(n, n - m)) * detail::bernoulli_minus(n - m);
    return coeffs;
}

/// zeta(1 - n) = -B_n/n for n >= 1 (plus convention); the argument is 1-n.
inline Rational riemann_zeta_special(long one_minus_n) {
    if (one_minus_n >= 1)
        throw std::invalid_argument("riemann_zeta_special: argument must be a nonpositive integer");
    const unsigned n = static_cast<unsigned>(1 - one_minus_n);
    return -classical_bernoulli(n) / Rational(Int(n));
}

namespace detail {

struct BernoulliMemo {
    // (modulus, log_value, n) -> B_n^chi at the character's value order
    std::map<std::tuple<std::uint64_t, std::uint64_t, unsigned>, Cyclotomic> entries;
    std::shared_mutex mu;
    static BernoulliMemo& instance() {
        static BernoulliMemo memo;
        return memo;
    }
};

/// Generating-function route: with f the modulus, expand
///   sum_{r=1}^{f} chi(r) e^{rt}  divided by  (e^{ft} - 1)/t
/// to degree N; the quotient's k-th coefficient is B_k^chi / k!.
/// The divisor has RATIONAL coefficients f^{i+1}/(i+1)!, so every division
/// step costs only scalar-times-cyclotomic work.
inline std::vector<Cyclotomic> bernoulli_series_prefix(const DirichletCharacter& chi, unsigned N) {
    const std::uint64_t f = chi.modulus();
    const unsigned d = static_cast<unsigned>(chi.order());

    // Bucket the exponential sum by character value: the t^i coefficient of
    // the numerator is (1/i!) * sum_c zeta_d^c * S_{i,c}, S_{i,c} = sum of r^i
    // over units r in [1, f] with chi(r) = zeta_d^c.
    std::vector<std::uint64_t> units, buckets;
    for (std::uint64_t r = 1; r <= f; ++r) {
        if (!chi.unit_arg(static_cast<long long>(r))) continue;
        units.push_back(r);
        buckets.push_back(chi.value_exponent(static_cast<long long>(r)));
    }
    std::vector<Int> r_pow(units.size(), Int(1));

    PowerSeries num(d, N), den(1, N);
    Rational fact(1);
    Int f_pow(f);
    for (unsigned i = 0; i <= N; ++i) {
        if (i > 0) fact *= Rational(Int(i));
        std::vector<Int> bucket_sums(d);
        for (std::size_t u = 0; u < units.size(); ++u) {
            bucket_sums[buckets[u]] += r_pow[u];
            r_pow[u] *= Int(units[u]);
        }
        Cyclotomic acc(d);
        for (unsigned c = 0; c < d; ++c)
            if (bucket_sums[c] != 0) acc = acc + root_of_unity(d, c).scaled(Rational(bucket_sums[c]));
        num.set_coeff(i, acc.scaled(Rational(1) / fact));
        // (e^{ft} - 1)/t: coefficient of t^i is f^{i+1}/(i+1)!
        den.set_coeff(i, Cyclotomic::rational(Rational(f_pow) / (fact * Rational(Int(i + 1)))));
        f_pow *= Int(f);
    }

    const PowerSeries q = num.divide(den);
    std::vector<Cyclotomic> prefix;
    prefix.reserve(N);
    Rational kfact(1);
    for (unsigned k = 0; k + 1 <= N; ++k) {
        if (k > 0) kfact *= Rational(Int(k));
        prefix.push_back(q.coeff(k).scaled(kfact));  // B_k^chi = k! * q_k
    }
    return prefix;
}

}  // namespace detail

/// B_n^chi by the generating-function route (memoized). Computing degree n
/// fills the memo for every k <= n of the same character.
inline Cyclotomic generalized_bernoulli(const DirichletCharacter& chi, unsigned n) {
    if (n < 1) throw std::invalid_argument("generalized_bernoulli: n must be positive");
    auto& memo = detail::BernoulliMemo::instance();
    const std::tuple<std::uint64_t, std::uint64_t, unsigned> key{chi.modulus(), chi.log_value(), n};
    {
        std::shared_lock lock(memo.mu);
        auto it = memo.entries.find(key);
        if (it != memo.entries.end()) return it->second;
    }
    auto prefix = detail::bernoulli_series_prefix(chi, n + 1);
    Cyclotomic result = prefix[n];
    {
        std::unique_lock lock(memo.mu);
        for (unsigned k = 1; k <= n; ++k)
            memo.entries.try_emplace({chi.modulus(), chi.log_value(), k}, prefix[k]);
    }
    return result;
}

/// Independent second route for cross-validation:
///   B_n^chi = f^{n-1} * sum_{a=1}^{f} chi(a) * B_n(a/f)
/// with B_n(x) the standard Bernoulli polynomial. Deliberately shares no code
/// with the generating-function path.
inline Cyclotomic generalized_bernoulli_oracle(const DirichletCharacter& chi, unsigned n) {
    if (n < 1) throw std::invalid_argument("generalized_bernoulli_oracle: n must be positive");
    const std::uint64_t f = chi.modulus();
    const unsigned d = static_cast<unsigned>(chi.order());
    const std::vector<Rational> poly = bernoulli_polynomial(n);

    Cyclotomic acc(d);
    for (std::uint64_t a = 1; a <= f; ++a) {
        if (!chi.unit_arg(static_cast<long long>(a))) continue;
        const Rational x{Int(a), Int(f)};
        Rational value(0);
        for (std::size_t k = poly.size(); k-- > 0;) value = value * x + poly[k];
        acc = acc + chi.value(static_cast<long long>(a)).scaled(value);
    }
    Rational scale(1);
    for (unsigned i = 1; i < n; ++i) scale *= Rational(Int(f));
    return acc.scaled(scale);
}

/// Insert an externally provided B_n^chi (e.g. from a disk cache) into the
/// memo. The value must sit at the character's value order; inconsistent
/// entries are rejected so a stale cache can never change results.
inline bool bernoulli_memo_insert(std::uint64_t modulus, std::uint64_t log_value, unsigned n,
                                  const Cyclotomic& value) {
    if (n < 1) return false;
    DirichletCharacter chi(modulus, log_value);
    if (value.order() != chi.order()) return false;
    auto& memo = detail::BernoulliMemo::instance();
    std::unique_lock lock(memo.mu);
    memo.entries.try_emplace({modulus, chi.log_value(), n}, value);
    return true;
}

/// Snapshot of all memoized entries for one modulus, for cache persistence.
inline std::vector<std::tuple<std::uint64_t, std::uint64_t, unsigned, Cyclotomic>>
bernoulli_memo_entries(std::uint64_t modulus) {
    auto& memo = detail::BernoulliMemo::instance();
    std::shared_lock lock(memo.mu);
    std::vector<std::tuple<std::uint64_t, std::uint64_t, unsigned, Cyclotomic>> out;
    for (const auto& [key, value] : memo.entries)
        if (std::get<0>(key) == modulus)
            out.emplace_back(std::get<0>(key), std::get<1>(key), std::get<2>(key), value);
    return out;
}

}  // namespace moorel

#endif  // MOOREL_BERNOULLI_HPP
