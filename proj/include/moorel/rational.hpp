#ifndef MOOREL_RATIONAL_HPP
#define MOOREL_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace moorel {

using Int = mpz_class;

/// Exact rational number, canonical form maintained at all times:
/// numerator and denominator coprime, denominator positive, zero is 0/1.
/// GMP's mpq invariants guarantee this for every arithmetic result; the
/// constructors canonicalize explicitly.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(const Int& n) : q_(n) {}
    Rational(const Int& num, const Int& den) {
        if (den == 0)
            throw std::invalid_argument("Rational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Int(num), Int(den)) {}

    /// Parses "n" or "n/d" in base 10. Inverse of to_string().
    static Rational from_string(const std::string& s) {
        mpq_class q;
        if (s.empty() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
            throw std::invalid_argument("Rational: bad literal '" + s + "'");
        if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
            throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
        q.canonicalize();
        Rational r;
        r.q_ = q;
        return r;
    }

    Int numerator() const { return q_.get_num(); }
    Int denominator() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return mpq_sgn(q_.get_mpq_t()); }

    /// "n" when the denominator is 1, otherwise "n/d".
    std::string to_string() const { return q_.get_str(); }

    double to_double() const { return q_.get_d(); }

    Rational operator-() const { return wrap(-q_); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

private:
    static Rational wrap(mpq_class q) {
        Rational r;
        r.q_ = std::move(q);
        return r;
    }
    mpq_class q_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

/// Integer power with exact arithmetic; e < 0 inverts (throws on base 0).
inline Rational pow(const Rational& a, long e) {
    if (e < 0) {
        if (a.is_zero()) throw std::invalid_argument("pow: 0 to negative power");
        return Rational(1) / pow(a, -e);
    }
    Rational acc(1), base = a;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

/// Value of a p-adic (or lambda-adic) valuation: an integer or +infinity.
/// +infinity is the valuation of 0 and compares greater than every integer.
class Valuation {
public:
    static Valuation infinity() { return Valuation(); }
    static Valuation of(long v) { return Valuation(v); }

    bool is_infinite() const { return !v_.has_value(); }
    long value() const {
        if (is_infinite()) throw std::logic_error("Valuation: value() of +infinity");
        return *v_;
    }

    std::string to_string() const {
        return is_infinite() ? "+inf" : std::to_string(*v_);
    }

    friend bool operator==(const Valuation& a, const Valuation& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Valuation& a, const Valuation& b) { return a.v_ != b.v_; }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return *a.v_ < *b.v_;
    }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }

private:
    Valuation() = default;
    explicit Valuation(long v) : v_(v) {}
    std::optional<long> v_;
};

/// nu_p of an integer; nu_p(0) = +infinity.
inline Valuation padic_valuation(const Int& n, const Int& p) {
    if (p < 2) throw std::invalid_argument("padic_valuation: p must be >= 2");
    if (n == 0) return Valuation::infinity();
    Int reduced;
    mp_bitcnt_t v = mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    return Valuation::of(static_cast<long>(v));
}

/// nu_p of a rational: nu_p(num) - nu_p(den); nu_p(0) = +infinity.
inline Valuation padic_valuation(const Rational& q, const Int& p) {
    if (q.is_zero()) return Valuation::infinity();
    Int num = q.numerator(), den = q.denominator(), scratch;
    long vn = static_cast<long>(mpz_remove(scratch.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(scratch.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()));
    return Valuation::of(vn - vd);
}

}  // namespace moorel

#endif  // MOOREL_RATIONAL_HPP
