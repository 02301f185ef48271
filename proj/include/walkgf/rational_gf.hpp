#pragma once

#include <utility>

#include "walkgf/polynomial.hpp"
#include "walkgf/puiseux.hpp"

namespace walkgf {

/// Ratio of two polynomials plus an explicit exponent normalization that ties
/// the formula's own z-convention to the oracle's back-step marking:
///
///     raw_expansion(z) = z^shift * oracle_series(z^scale)
///
/// shift may be negative (the one-back left GFs sit below the oracle's
/// leading exponent); scale > 1 absorbs "per leaving person" style markings.
/// After construction numerator and denominator share no polynomial factor
/// and the denominator has a nonzero constant term.
class RationalGF {
public:
    RationalGF(Polynomial num, Polynomial den, long shift, long scale = 1)
        : num_(std::move(num)), den_(std::move(den)), shift_(shift), scale_(scale) {
        if (scale_ < 1) throw Error("exponent scale must be positive", 3);
        if (den_.is_zero()) throw Error("zero denominator", 3);
        reduce();
        if (den_.at(0).is_zero())
            throw Error("denominator has zero constant term after normalization", 3);
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    long shift() const { return shift_; }
    long scale() const { return scale_; }

    /// Formal expansion of num/den in the formula's own variable, exact
    /// coefficients for exponents < order.
    PuiseuxSeries expand_raw(long order) const {
        return series_divide(num_.to_series(), den_.to_series(), Rational(order));
    }

    /// Expansion mapped into the oracle's frame: exponent e of the raw
    /// expansion lands at (e - shift)/scale. Coefficients exact below order.
    PuiseuxSeries expand_oracle_frame(long order) const {
        PuiseuxSeries raw = expand_raw(order * scale_ + shift_);
        PuiseuxSeries out(scale_, Rational(order));
        for (const auto& [k, c] : raw.raw_coeffs()) {
            Rational e = (raw.exponent_of(k) - Rational(shift_)) / Rational(scale_);
            if (!out.truncation() || e < *out.truncation()) out.set(e, c);
        }
        return out.reduced();
    }

private:
    void reduce() {
        Polynomial g = Polynomial::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
        // cancel a common power of z; the ratio (and hence the shift) is unchanged
        long low = std::min(num_.is_zero() ? 0 : num_.low_exponent(), den_.low_exponent());
        if (low > 0) {
            Polynomial n2, d2;
            for (const auto& [e, v] : num_.coeffs()) n2.set(e - low, v);
            for (const auto& [e, v] : den_.coeffs()) d2.set(e - low, v);
            num_ = std::move(n2);
            den_ = std::move(d2);
        }
    }

    Polynomial num_, den_;
    long shift_, scale_;
};

/// Formal expansion of numerator/denominator in the GF's own variable.
inline PuiseuxSeries gf_expand(const RationalGF& f, long order) { return f.expand_raw(order); }

}  // namespace walkgf
