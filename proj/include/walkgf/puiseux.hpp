#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <utility>

#include "walkgf/errors.hpp"
#include "walkgf/rational.hpp"

namespace walkgf {

/// Truncated series in z with exponents on the grid (1/g)*Z and coefficients
/// in K. Terms with exponent >= the truncation order are unknown (not zero);
/// arithmetic propagates the minimum truncation and is exact below it.
/// An absent truncation means the series is exact at all orders (e.g. it came
/// from a polynomial).
template <typename K>
class Series {
public:
    using Coeffs = std::map<long, K>;  // key k represents exponent k/grid

    Series() : grid_(1) {}
    explicit Series(long grid, std::optional<Rational> trunc = std::nullopt)
        : grid_(grid), trunc_(std::move(trunc)) {
        if (grid_ < 1) throw Error("series grid must be positive", 3);
    }

    static Series constant(K c) {
        Series s(1);
        if (!c.is_zero()) s.coeffs_[0] = std::move(c);
        return s;
    }
    static Series zero(std::optional<Rational> trunc = std::nullopt) {
        return Series(1, std::move(trunc));
    }
    /// c * z^(num/den)
    static Series monomial(K c, long num, long den = 1,
                           std::optional<Rational> trunc = std::nullopt) {
        if (den < 1) throw Error("monomial exponent denominator must be positive", 3);
        Series s(den, std::move(trunc));
        if (!c.is_zero()) s.coeffs_[num] = std::move(c);
        s.check_trunc();
        return s;
    }

    long grid() const { return grid_; }
    const std::optional<Rational>& truncation() const { return trunc_; }
    const Coeffs& raw_coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Rational exponent_of(long key) const { return Rational(key, grid_); }

    /// Coefficient at exponent e (exact rational); zero for absent terms
    /// below truncation, error if the exponent is at or past it.
    K at(const Rational& e) const {
        if (trunc_ && e >= *trunc_) throw Error("coefficient beyond truncation order requested", 3);
        Rational scaled = e * Rational(grid_);
        if (!scaled.is_integer()) return K{};
        long key = static_cast<long>(mpz_get_si(scaled.num().get_mpz_t()));
        auto it = coeffs_.find(key);
        return it == coeffs_.end() ? K{} : it->second;
    }
    K at(long e) const { return at(Rational(e)); }

    void set(const Rational& e, K c) {
        Rational scaled = e * Rational(grid_);
        if (!scaled.is_integer()) throw Error("exponent off the series grid", 3);
        long key = static_cast<long>(mpz_get_si(scaled.num().get_mpz_t()));
        if (c.is_zero())
            coeffs_.erase(key);
        else
            coeffs_[key] = std::move(c);
        check_trunc();
    }

    std::optional<Rational> min_exponent() const {
        if (coeffs_.empty()) return std::nullopt;
        return exponent_of(coeffs_.begin()->first);
    }

    void set_truncation(std::optional<Rational> t) {
        trunc_ = std::move(t);
        if (trunc_) {
            for (auto it = coeffs_.begin(); it != coeffs_.end();) {
                if (exponent_of(it->first) >= *trunc_)
                    it = coeffs_.erase(it);
                else
                    ++it;
            }
        }
    }

    Series rescaled_to_grid(long g) const {
        if (g % grid_ != 0) throw Error("incompatible grid rescale", 3);
        long f = g / grid_;
        Series s(g, trunc_);
        for (const auto& [k, c] : coeffs_) s.coeffs_[k * f] = c;
        return s;
    }

    /// Smallest grid that still represents every stored exponent.
    Series reduced() const {
        if (coeffs_.empty()) {
            Series s(1, trunc_);
            return s;
        }
        long d = grid_;
        for (const auto& [k, c] : coeffs_) d = std::gcd(d, k);
        if (d <= 1) return *this;
        Series s(grid_ / d, trunc_);
        for (const auto& [k, c] : coeffs_) s.coeffs_[k / d] = c;
        return s;
    }

    Series operator-() const {
        Series s = *this;
        for (auto& [k, c] : s.coeffs_) c = -c;
        return s;
    }

    friend Series operator+(const Series& a, const Series& b) { return combined(a, b, false); }
    friend Series operator-(const Series& a, const Series& b) { return combined(a, b, true); }

    friend Series operator*(const Series& a, const Series& b) {
        long g = std::lcm(a.grid_, b.grid_);
        Series A = a.rescaled_to_grid(g), B = b.rescaled_to_grid(g);
        // A's unknown tail (>= T_A) meets B's lowest term at T_A + min_exp(B),
        // so that is where the product stops being exact (and vice versa).
        // For an empty factor the earliest unknown term is its truncation.
        auto first_unknown = [](const Series& s) -> std::optional<Rational> {
            if (auto e = s.min_exponent()) return e;
            return s.trunc_;
        };
        std::optional<Rational> t;
        if (a.trunc_ && first_unknown(b))
            t = min_trunc(t, std::optional<Rational>(*a.trunc_ + *first_unknown(b)));
        if (b.trunc_ && first_unknown(a))
            t = min_trunc(t, std::optional<Rational>(*b.trunc_ + *first_unknown(a)));
        Series out(g, t);
        for (const auto& [k1, c1] : A.coeffs_) {
            for (const auto& [k2, c2] : B.coeffs_) {
                long k = k1 + k2;
                if (t && Rational(k, g) >= *t) continue;  // map is ordered; later k2 only grow
                auto [it, fresh] = out.coeffs_.try_emplace(k, c1 * c2);
                if (!fresh) it->second += c1 * c2;
            }
        }
        out.prune();
        return out;
    }

    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    friend Series operator*(const Series& a, const K& c) {
        Series s = a;
        if (c.is_zero()) {
            s.coeffs_.clear();
            return s;
        }
        for (auto& [k, v] : s.coeffs_) v = v * c;
        return s;
    }

    /// Termwise d/dz.
    Series differentiated() const {
        std::optional<Rational> t = trunc_;
        if (t) *t = *t - 1;
        Series s(grid_, t);
        for (const auto& [k, c] : coeffs_) {
            if (k == 0) continue;
            s.coeffs_[k - grid_] = c * K(Rational(k, grid_));
        }
        s.check_trunc();
        return s;
    }

    /// Multiply by z^(num/den).
    Series shifted(long num, long den = 1) const {
        long g = std::lcm(grid_, den);
        Series s = rescaled_to_grid(g);
        long dk = num * (g / den);
        Series out(g, trunc_ ? std::optional<Rational>(*trunc_ + Rational(num, den)) : std::nullopt);
        for (const auto& [k, c] : s.coeffs_) out.coeffs_[k + dk] = c;
        return out;
    }

    /// Substitute z -> z^f for positive integer f.
    Series exponents_scaled(long f) const {
        if (f < 1) throw Error("exponent scale must be positive", 3);
        Series s(grid_, trunc_ ? std::optional<Rational>(*trunc_ * Rational(f)) : std::nullopt);
        for (const auto& [k, c] : coeffs_) s.coeffs_[k * f] = c;
        return s.reduced();
    }

    friend bool operator==(const Series& a, const Series& b) {
        long g = std::lcm(a.grid_, b.grid_);
        return a.rescaled_to_grid(g).coeffs_ == b.rescaled_to_grid(g).coeffs_;
    }

private:
    static std::optional<Rational> min_trunc(const std::optional<Rational>& a,
                                             const std::optional<Rational>& b) {
        if (!a) return b;
        if (!b) return a;
        return *a < *b ? a : b;
    }

    static Series combined(const Series& a, const Series& b, bool sub) {
        long g = std::lcm(a.grid_, b.grid_);
        Series out = a.rescaled_to_grid(g);
        out.trunc_ = min_trunc(a.trunc_, b.trunc_);
        Series B = b.rescaled_to_grid(g);
        for (const auto& [k, c] : B.coeffs_) {
            auto [it, fresh] = out.coeffs_.try_emplace(k, sub ? -c : c);
            if (!fresh) it->second += (sub ? -c : c);
        }
        out.prune();
        return out;
    }

    void prune() {
        check_trunc();
        for (auto it = coeffs_.begin(); it != coeffs_.end();)
            it = it->second.is_zero() ? coeffs_.erase(it) : std::next(it);
    }

    void check_trunc() {
        if (!trunc_) return;
        for (auto it = coeffs_.begin(); it != coeffs_.end();) {
            if (exponent_of(it->first) >= *trunc_)
                it = coeffs_.erase(it);
            else
                ++it;
        }
    }

    long grid_;
    Coeffs coeffs_;
    std::optional<Rational> trunc_;
};

using PuiseuxSeries = Series<Rational>;
using Sqrt2Series = Series<Sqrt2>;

/// Multiplicative inverse: a * result = 1 + O(z^order). The constant term
/// must be present and nonzero.
template <typename K>
Series<K> series_invert(const Series<K>& a, const Rational& order) {
    K c0 = [&] {
        auto e0 = a.min_exponent();
        if (!e0 || !(*e0 == Rational(0))) throw ZeroLeadingTerm();
        return a.at(Rational(0));
    }();
    if (c0.is_zero()) throw ZeroLeadingTerm();

    long g = a.grid();
    Series<K> out(g, order);
    K inv0 = K(Rational(1)) / c0;
    out.set(Rational(0), inv0);
    // Newton-free long division: coefficients in increasing exponent order.
    // out[e] = -inv0 * sum_{0<f<=e} a[f] * out[e-f]
    Rational lim = order;
    for (long k = 1; Rational(k, g) < lim; ++k) {
        K acc{};
        for (const auto& [j, aj] : a.raw_coeffs()) {
            if (j <= 0 || j > k) continue;
            K prev = out.at(Rational(k - j, g));
            if (!prev.is_zero()) acc += aj * prev;
        }
        if (!acc.is_zero()) out.set(Rational(k, g), -(inv0 * acc));
    }
    return out;
}

/// num/den as a series to z^order (exclusive), den constant term nonzero.
template <typename K>
Series<K> series_divide(const Series<K>& num, const Series<K>& den, const Rational& order) {
    return num * series_invert(den, order);
}

/// Extract the rational part of a Q(sqrt2) series, requiring the sqrt2
/// component to vanish identically.
inline PuiseuxSeries require_rational(const Sqrt2Series& s, const char* what) {
    PuiseuxSeries out(s.grid(), s.truncation());
    for (const auto& [k, c] : s.raw_coeffs()) {
        if (!c.irr.is_zero())
            throw IrrationalCoefficients(std::string(what) + ": sqrt2 component survives at z^(" +
                                          Rational(k, s.grid()).str() + ")");
        if (!c.rat.is_zero()) out.set(Rational(k, s.grid()), c.rat);
    }
    return out;
}

inline Sqrt2Series to_sqrt2(const PuiseuxSeries& s) {
    Sqrt2Series out(s.grid(), s.truncation());
    for (const auto& [k, c] : s.raw_coeffs()) out.set(Rational(k, s.grid()), Sqrt2(c));
    return out;
}

}  // namespace walkgf
