#pragma once

#include <optional>

#include "walkgf/chain.hpp"
#include "walkgf/polynomial.hpp"
#include "walkgf/puiseux.hpp"
#include "walkgf/rational_gf.hpp"

namespace walkgf {

/// Left-absorption series for the single-barrier 2-forward/1-back walk
/// started at k: sum_n k z^n / (2^k 8^n (3n+k)) C(3n+k, n). At z = 1 the sum
/// converges to (phi-1)^k.
PuiseuxSeries fuss_single_barrier(long k, long order);

/// Floating partial sum of the single-barrier series at z = 1.
double fuss_partial_sum_at_one(long k, long terms);

/// The finite u-polynomial of the one-back constructions:
///   u[y,m] = sum_n z^{yn} 2^{m-1-(y+1)n} C((y+1)n - m, n), (y+1)n - m < 0.
struct UPolynomial {
    long y;
    long m;
    Polynomial poly;
};
UPolynomial u_poly(long y, long m);

/// Exact left-barrier GF for the y-forward/1-back walk from s = m-1:
/// 1/u[y,m]. Stored shift is -(m-1): the oracle's leading back-step count.
RationalGF p_left_one_back(long y, long m);

/// Exact right-block GF from s = m-1:
///   (z u[y,m-1] + ... + z^y u[y,m-y]) / u[y,m], shift 1.
RationalGF p_right_one_back(long y, long m);

/// The truncated Fuss-like approximations of the two-barrier walk (y=2, b=1):
/// s = m-1 uses r(r+1)/z, s = m-2 uses (-r^4 + r^3 + 4r^2 - zr)/z^2, with r
/// the small root of the cubic. Valid only until a path can cross the left
/// barrier; the report carries the first oracle mismatch.
struct ApproxReport {
    PuiseuxSeries series;
    long declared_horizon;              // exact for exponents <= this
    std::optional<long> first_mismatch;  // exponent of first disagreement with the oracle
    Rational mismatch_delta;             // approximation minus oracle there
};
ApproxReport approx_horizon_series(long m, long s, long order);

/// Numeric two-barrier GF evaluation via the root/Cramer systems, Eqs. 5-9.
/// side left: f(0) = 1, f(m) = f(m+1) = 0; side right: complementary.
enum class BarrierSide { Left, Right };
struct CramerEval {
    double value;
    double boundary_residual;  // max violation of the three defining rows
};
CramerEval cramer_gf_numeric(long m, long s, BarrierSide side, double z);

/// Absorption series on the two left barriers {0,1} of the v-forward... the
/// x^v - 2x^2 + z walk started at s, built from the symmetric functions of
/// the two small roots (no division by a-b):
///   ((1-b)a^s + b^s(a-1))/(a-b) = h_{s-1}(a,b) - ab h_{s-2}(a,b).
PuiseuxSeries duchon_two_left(long v, long s, long order);

/// Closed-form series for absorption on the inner cell {1} of the
/// 3-forward/2-back walk from
/// s = 2, z marking leaving people: sum_n z^{6n+4}/(2^{5n+3}(2n+1)) C(5n+2, 2n).
PuiseuxSeries duchon_inner_series(long order);

}  // namespace walkgf
