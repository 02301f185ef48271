#pragma once

#include <complex>
#include <string>
#include <vector>

#include "walkgf/polynomial.hpp"
#include "walkgf/puiseux.hpp"
#include "walkgf/rational.hpp"

namespace walkgf {

/// Characteristic trinomial x^v - j x^u + z = 0. The walks use j = 2; the
/// string calculus works in the j = 1 normalization.
struct TrinomialSpec {
    long v;
    long u;
    Rational j = Rational(2);

    void validate() const {
        if (u < 1 || v <= u) throw PreconditionViolation("trinomial needs v > u >= 1");
        if (j.is_zero()) throw PreconditionViolation("trinomial needs j != 0");
    }
    long small_branches() const { return u; }
    long large_branches() const { return v - u; }
};

enum class RootKind { Small, Large };

/// Series for one branch of r^k, held over Q(sqrt2). Branches whose
/// coefficients genuinely involve sqrt2 (e.g. the cubic's large roots,
/// Eqs. 2-3 style) expose the split; rational() demands a clean series.
struct RootPowerSeries {
    TrinomialSpec spec;
    long k = 0;
    long branch = 0;
    RootKind kind = RootKind::Small;
    Sqrt2Series series;

    PuiseuxSeries rational() const { return require_rational(series, "root power series"); }
    bool is_rational() const;

    /// Largest exponent E such that series^v - j*series^u + z = O(z^E) was
    /// verified; throws if a nonzero residual appears below the truncation.
    Rational verify_defining_equation() const;
};

/// Lagrange-Buermann series for powers of the u small roots (leading
/// exponent k/u). Branch phases must be real (u <= 2); otherwise the
/// numeric path is the only option.
RootPowerSeries small_root_series(const TrinomialSpec& spec, long k, long branch,
                                  const Rational& order);

/// Series for powers of the v-u large roots (constant leading term).
/// Real phases require v-u <= 2.
RootPowerSeries large_root_series(const TrinomialSpec& spec, long k, long branch,
                                  const Rational& order);

/// Sum of the k-th powers of the three large roots of x^5 - 2x^2 + z
/// (rational for every integer k; only n with (2(1+n)-k) = 0 mod 3 survive).
PuiseuxSeries phi_sum_series(long k, long order);

struct CubicRoots {
    double a, b, c;  // a = -b-c large positive, b small, c large negative
};

/// Trigonometric roots of x^3 - 2x + z (positive discriminant: 27 z^2 < 32).
CubicRoots cubic_roots_numeric(double z);

/// All complex roots of x^v - j x^u + z by Durand-Kerner, sorted by
/// (real, imaginary) part.
std::vector<std::complex<double>> trinomial_roots_numeric(const TrinomialSpec& spec, double z);

struct IdentityReport {
    bool pass = false;
    double max_deviation = 0.0;
    std::string detail;
};

/// Reduction identity: (v-u) r^{v-1} - u z / r  ==  prod_{j != i}(r_i - r_j)
/// for every root, checked numerically at the given z.
IdentityReport check_reduction_identity(const TrinomialSpec& spec, double z);

struct ConjectureReport {
    bool agree = false;
    long checked_order = 0;
    std::optional<Rational> first_mismatch;  // exponent of first disagreement
    Rational mismatch_delta = 0;
};

/// Series comparison of the conjectured derivative identity for the cubic:
///   -r^m / ((r-r2)(r-r3))  vs  d/dz [ r^{m+1} / (m+1) ]
/// with r the small root of x^3 - 2x + z. Both sides are built from
/// independent series pipelines; nothing downstream assumes the identity.
ConjectureReport check_conjecture_19_20(long m, long order);

/// Termwise collapse of the m = 2u denominator pair of binomial sums: the
/// C(3n - 2u, n) terms with u > n > 2u/3 must vanish, and the reindexed tail
/// cancels the companion sum, leaving a finite head equal to z^{-2u} u[2u].
struct Eq22Report {
    bool middle_terms_vanish = false;
    Polynomial head;  // finite head of the second sum, aligned to z^0 (times 2^{2u-1} scale)
};
Eq22Report check_eq22_cancellation(long u);

}  // namespace walkgf
