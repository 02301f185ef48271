#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "walkgf/errors.hpp"

namespace walkgf {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Thin wrapper over GMP's mpq_class that pins down the
/// invariants and the "p/q" string form used everywhere in the tool.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}                // NOLINT: implicit by design
    Rational(long n) : v_(n) {}               // NOLINT
    Rational(long long n) : v_(static_cast<long>(n)) {}  // NOLINT
    Rational(const mpz_class& n) : v_(n) {}   // NOLINT
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw Error("rational with zero denominator", 2);
        v_.canonicalize();
    }
    Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
        if (den == 0) throw Error("rational with zero denominator", 2);
        v_.canonicalize();
    }

    static Rational from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw Error("cannot parse rational '" + s + "'", 2);
        q.canonicalize();
        Rational r;
        r.v_ = q;
        return r;
    }

    /// 2^e for any integer e (negative exponents give exact fractions).
    static Rational pow2(long e) {
        mpz_class p = 1;
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e >= 0 ? e : -e));
        return e >= 0 ? Rational(p) : Rational(1, p);
    }

    const mpz_class num() const { return v_.get_num(); }
    const mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("rational division by zero", 3);
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    double to_double() const { return v_.get_d(); }

    /// "p/q", or just "p" when the denominator is 1.
    std::string str() const {
        return v_.get_den() == 1 ? v_.get_num().get_str() : v_.get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    explicit Rational(mpq_class q) : v_(std::move(q)) {}
    mpq_class v_;
};

/// Generalized binomial coefficient: prod_{i=0}^{k-1}(top - i) / k!.
inline Rational binom_general(const Rational& top, long k) {
    if (k < 0) throw Error("binomial with negative lower index", 3);
    Rational r = 1;
    for (long i = 0; i < k; ++i) {
        r *= top - Rational(i);
        r /= Rational(i + 1);
    }
    return r;
}

inline Rational binom_general(long top, long k) { return binom_general(Rational(top), k); }

/// Element of Q(sqrt2): a + b*sqrt(2). Powers of the cubic's large roots
/// (and single small-root branches of the b = 2 trinomials) live here;
/// everything fed back into the rational pipelines must have b = 0.
struct Sqrt2 {
    Rational rat;   // a
    Rational irr;   // b

    Sqrt2() = default;
    Sqrt2(Rational a) : rat(std::move(a)) {}  // NOLINT
    Sqrt2(Rational a, Rational b) : rat(std::move(a)), irr(std::move(b)) {}

    /// sqrt2^e for integer e, exact: even e -> rational, odd e -> sqrt2 part.
    static Sqrt2 pow_sqrt2(long e) {
        if (e % 2 == 0) return Sqrt2(Rational::pow2(e / 2));
        return Sqrt2(0, Rational::pow2((e - 1) / 2));  // e odd: e-1 is even, division exact
    }

    bool is_zero() const { return rat.is_zero() && irr.is_zero(); }
    bool is_rational() const { return irr.is_zero(); }

    Sqrt2 operator-() const { return {-rat, -irr}; }
    Sqrt2& operator+=(const Sqrt2& o) { rat += o.rat; irr += o.irr; return *this; }
    Sqrt2& operator-=(const Sqrt2& o) { rat -= o.rat; irr -= o.irr; return *this; }
    Sqrt2& operator*=(const Sqrt2& o) {
        Rational a = rat * o.rat + Rational(2) * irr * o.irr;
        Rational b = rat * o.irr + irr * o.rat;
        rat = a;
        irr = b;
        return *this;
    }
    Sqrt2& operator/=(const Sqrt2& o) {
        Rational n = o.rat * o.rat - Rational(2) * o.irr * o.irr;
        if (n.is_zero()) throw Error("division by zero in Q(sqrt2)", 3);
        Sqrt2 conj{o.rat / n, -o.irr / n};
        return *this *= conj;
    }

    friend Sqrt2 operator+(Sqrt2 a, const Sqrt2& b) { return a += b; }
    friend Sqrt2 operator-(Sqrt2 a, const Sqrt2& b) { return a -= b; }
    friend Sqrt2 operator*(Sqrt2 a, const Sqrt2& b) { return a *= b; }
    friend Sqrt2 operator/(Sqrt2 a, const Sqrt2& b) { return a /= b; }
    friend bool operator==(const Sqrt2& a, const Sqrt2& b) { return a.rat == b.rat && a.irr == b.irr; }
    friend bool operator!=(const Sqrt2& a, const Sqrt2& b) { return !(a == b); }

    double to_double() const { return rat.to_double() + irr.to_double() * 1.41421356237309504880; }

    std::string str() const {
        if (irr.is_zero()) return rat.str();
        std::string s = rat.is_zero() ? "" : rat.str() + " + ";
        return s + "(" + irr.str() + ")*sqrt2";
    }
};

}  // namespace walkgf
