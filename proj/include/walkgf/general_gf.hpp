#pragma once

#include <optional>
#include <vector>

#include "walkgf/polynomial.hpp"
#include "walkgf/puiseux.hpp"
#include "walkgf/rational_gf.hpp"

namespace walkgf {

/// Residue triples of the mu2 congruences for b = 2, smallest nonnegative
/// representatives: (2v0+m+1), (2v1+m), (2v2+m-1) all = 0 mod y, v2 = v0+1.
struct ResidueTriple {
    long v0, v1, v2;
};
ResidueTriple solve_residues(long y, long m);

/// mu1 as the explicit double sum (the singularity-free variant), truncated
/// to the polynomial degree bound y*u.
Polynomial mu1_poly(long y, long m);

/// Same block through the alternate double sum with the rational-function
/// bracket; nullopt when one of its denominators vanishes for this (y, m).
std::optional<Polynomial> mu1_poly_variant(long y, long m);

/// mu1 as a series including the tail beyond the degree bound (the part that
/// must cancel against mu2).
PuiseuxSeries mu1_series(long y, long m, long order);

/// The mu2 block aligned to the denominator's frame (the a1+a2+a3 series),
/// built from the derivative-operator route: products of small-root pair
/// sums with large-root power sums. Exact for all orders below `order`.
PuiseuxSeries mu2_poly(long y, long m, long order);

/// Numerator series for s = m-1 (leading block plus its tail-cancelling
/// partner sum).
PuiseuxSeries numerator_series(long y, long m, long order);

/// Degree bound u (largest u with u(y+b)+b-1-m < 0) and how many mu blocks
/// can contribute at or below degree y*u.
struct OverlapBound {
    long u = 0;
    long needed_mu = 1;
    Rational c_threshold;  // b^2/(b+y): mu blocks with fewer small roots never matter
};
OverlapBound overlap_bound(long y, long b, long m);

/// The mu blocks, degree bound, and assembled denominator for b = 2.
struct MuDecomposition {
    long y = 3, b = 2, m = 0;
    long degree_bound_u = 0;
    long needed_mu = 1;
    Polynomial mu1;            // Eq-54 block through degree y*u
    PuiseuxSeries mu2_block;   // aligned mu2 series (may start beyond y*u)
    Polynomial denominator;    // (mu1 + mu2) restricted to degree y*u
};
MuDecomposition mu_decompose(long y, long m, long window_margin = 0);

/// Complete GF for the y-forward/2-back walk from s = m-1 to the inner-most
/// left barrier (cell 1), y odd and m even; raw expansion = z * oracle(z).
RationalGF gf_two_back(long y, long m);

/// u[m] / g[m] of the two-back derivation: the differentiated, scaled powers
/// of the two small branches of x^(y+2) - 2x^2 + z, over Q(sqrt2).
Sqrt2Series ug_u_series(long y, long m, const Rational& order);
Sqrt2Series ug_g_series(long y, long m, const Rational& order);

/// z^m (2 u[m-2]g[m-2] - u[m-1]g[m-3] - u[m-3]g[m-1]): the mu1 block through
/// the root-product route. The sqrt2 components must cancel in this
/// symmetrized combination; that cancellation is verified, not assumed.
PuiseuxSeries mu1_block_ug(long y, long m, long order);

/// The m = 6*kappa exact pipeline for the 3-forward/2-back walk: mu1 from the
/// u/g route, mu2 from the explicit A-term products, numerator from the
/// shared formula. Equals gf_two_back(3, 6 kappa).
RationalGF gf_exact_3f2b(long kappa);

/// z^(6 kappa) (A1 + A2 + A3) with the A-terms' explicit binomial products.
PuiseuxSeries a_terms_3f2b(long kappa, long order);

/// One product of root powers in the denominator expansion: g large-root
/// weights and j = b - g small-root weights summing to b(b-1), with its
/// partition constant and permutation count.
struct StringTerm {
    long y = 3, b = 2;
    long mu_index = 1;
    std::vector<long> small_weights;
    std::vector<long> large_weights;
    long lambda = 0;  // signed coefficient from the squared Vandermonde
    long p_count = 0; // distinct root assignments realizing this weight split
};

/// All strings of mu_{mu_index}, deterministically ordered (lexicographic on
/// the weight vectors).
std::vector<StringTerm> enumerate_strings(long y, long b, long mu_index);

/// Partition constants of the squared Vandermonde in b variables, keyed by
/// decreasing weight pattern; P = number of patterns.
std::vector<std::pair<std::vector<long>, long>> vandermonde_sq_partitions(long b);

struct ResidueSolution {
    std::vector<long> v;   // one residue per small slot, 0 <= v_i < b
    std::vector<long> V;   // one residue per large slot, 0 <= V_i < y
    Rational theta;        // rational cosine factor
    Rational Q;            // leading exponent contribution
};

struct StringSeriesResult {
    PuiseuxSeries series;                   // j = 1 normalization
    std::vector<ResidueSolution> solutions;
    long dropped_irrational = 0;            // residue tuples with irrational theta
};

/// Series contribution of one string in the j = 1 normalization of the
/// characteristic trinomial, multiplied by its permutation count.
StringSeriesResult string_series(const StringTerm& term, long m, long order);

/// Sum of all mu_1..mu_k string series (j = 1 land). For b = 2 and even m the
/// degree-y*u head rescaled by 2^{m-2-(y+b)n} reproduces the real denominator.
PuiseuxSeries string_denominator_j1(long y, long b, long m, long order, long max_mu);

}  // namespace walkgf
