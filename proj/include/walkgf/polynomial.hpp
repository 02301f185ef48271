#pragma once

#include <map>
#include <optional>
#include <string>

#include "walkgf/puiseux.hpp"
#include "walkgf/rational.hpp"

namespace walkgf {

/// Dense-degree-sparse polynomial over Q: exponent -> coefficient, no stored
/// zeros. Degree is the largest stored exponent.
class Polynomial {
public:
    using Coeffs = std::map<long, Rational>;

    Polynomial() = default;
    static Polynomial constant(Rational c) {
        Polynomial p;
        p.set(0, std::move(c));
        return p;
    }
    static Polynomial monomial(Rational c, long e) {
        Polynomial p;
        p.set(e, std::move(c));
        return p;
    }

    const Coeffs& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
    long low_exponent() const { return c_.empty() ? 0 : c_.begin()->first; }

    Rational at(long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rational(0) : it->second;
    }
    void set(long e, Rational v) {
        if (e < 0) throw Error("polynomial exponent must be nonnegative", 3);
        if (v.is_zero())
            c_.erase(e);
        else
            c_[e] = std::move(v);
    }
    void add(long e, const Rational& v) { set(e, at(e) + v); }

    Polynomial operator-() const {
        Polynomial p = *this;
        for (auto& [e, v] : p.c_) v = -v;
        return p;
    }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial p = a;
        for (const auto& [e, v] : b.c_) p.add(e, v);
        return p;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial p = a;
        for (const auto& [e, v] : b.c_) p.add(e, -v);
        return p;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial p;
        for (const auto& [e1, v1] : a.c_)
            for (const auto& [e2, v2] : b.c_) p.add(e1 + e2, v1 * v2);
        return p;
    }
    friend Polynomial operator*(const Polynomial& a, const Rational& s) {
        Polynomial p;
        if (s.is_zero()) return p;
        for (const auto& [e, v] : a.c_) p.c_[e] = v * s;
        return p;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Quotient and remainder of exact division by b (b nonzero).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& b) const {
        if (b.is_zero()) throw Error("polynomial division by zero", 3);
        Polynomial q, r = *this;
        Rational lead = b.c_.rbegin()->second;
        long db = b.degree();
        while (!r.is_zero() && r.degree() >= db) {
            long e = r.degree() - db;
            Rational c = r.c_.rbegin()->second / lead;
            q.add(e, c);
            for (const auto& [eb, vb] : b.c_) r.add(eb + e, -(vb * c));
        }
        return {q, r};
    }

    /// Monic gcd via Euclid.
    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = a * (Rational(1) / a.c_.rbegin()->second);
        return a;
    }

    /// Numeric evaluation (T is double or complex<double>).
    template <typename T>
    T eval(const T& z) const {
        T sum{};
        for (const auto& [e, v] : c_) sum += T(v.to_double()) * power(z, e);
        return sum;
    }

    Rational eval_rational(const Rational& z) const {
        Rational sum = 0, zp = 1;
        long last = 0;
        for (const auto& [e, v] : c_) {
            for (; last < e; ++last) zp *= z;
            sum += v * zp;
        }
        return sum;
    }

    PuiseuxSeries to_series(std::optional<Rational> trunc = std::nullopt) const {
        PuiseuxSeries s(1, std::move(trunc));
        for (const auto& [e, v] : c_) {
            if (!s.truncation() || Rational(e) < *s.truncation()) s.set(Rational(e), v);
        }
        return s;
    }

    /// True when a == s*b for some nonzero rational s (reported through `scale`).
    static bool proportional(const Polynomial& a, const Polynomial& b, Rational* scale = nullptr) {
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        if (a.c_.size() != b.c_.size()) return false;
        auto ia = a.c_.begin();
        auto ib = b.c_.begin();
        Rational s = ia->second / ib->second;
        for (; ia != a.c_.end(); ++ia, ++ib) {
            if (ia->first != ib->first || ia->second != ib->second * s) return false;
        }
        if (scale) *scale = s;
        return true;
    }

    std::string str(const std::string& var = "z") const {
        if (c_.empty()) return "0";
        std::string out;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            out += it->second.str();
            if (it->first != 0) out += "*" + var + "^" + std::to_string(it->first);
        }
        return out;
    }

private:
    template <typename T>
    static T power(T z, long e) {
        T r = T(1);
        for (long i = 0; i < e; ++i) r = r * z;
        return r;
    }

    Coeffs c_;
};

}  // namespace walkgf
