#pragma once

#include <set>
#include <string>
#include <vector>

#include "walkgf/polynomial.hpp"
#include "walkgf/puiseux.hpp"
#include "walkgf/rational.hpp"

namespace walkgf {

/// Walk parameters: y cells forward with probability p, b cells back with
/// probability 1-p, absorbing blocks {0..b-1} and {m..m+y-1}, start s.
struct WalkSpec {
    long y = 2;
    long b = 1;
    long m = 5;
    long s = 1;
    Rational p = Rational(1, 2);

    void validate() const;
};

/// How a path's z-exponent is accumulated. The closed forms speak three
/// dialects: z per backward step, z^b per backward step (one per leaving
/// club member), or z per trial.
enum class Marking {
    BackSteps,      // z per backward step
    TotalSteps,     // z per step
    PeopleLeaving,  // z^b per backward step
};

Marking marking_from_string(const std::string& name);
std::string to_string(Marking m);

/// Explicit absorbing chain on states 0..m+y-1. Transient rows have exactly
/// two entries; absorbing rows are identity.
class AbsorbingChain {
public:
    explicit AbsorbingChain(WalkSpec spec);

    const WalkSpec& spec() const { return spec_; }
    long states() const { return spec_.m + spec_.y; }
    bool is_absorbing(long s) const { return s < spec_.b || s >= spec_.m; }
    bool is_left(long s) const { return s < spec_.b; }
    bool is_right(long s) const { return s >= spec_.m && s < states(); }

    std::set<long> left_set() const;
    std::set<long> right_set() const;
    /// {b-1}: the absorbing cell adjacent to the transient block.
    std::set<long> inner_left() const { return {spec_.b - 1}; }

    /// Dense row-stochastic transition matrix (tests and JSON dumps).
    std::vector<std::vector<Rational>> dense_matrix() const;

private:
    WalkSpec spec_;
};

AbsorbingChain build_chain(const WalkSpec& spec);

/// Exact first-passage series: coefficient of z^k is the probability that
/// the walk from `start` is first absorbed in `target` with marking weight k.
/// Exact for all exponents < order; computed by propagating the distribution
/// vector with truncated polynomial entries.
PuiseuxSeries first_passage_series(const AbsorbingChain& chain, long start,
                                   const std::set<long>& target, long order,
                                   Marking marking = Marking::BackSteps);

/// Exact probability of eventual absorption in `target`, via the linear
/// first-passage system over the rationals.
Rational total_absorption(const AbsorbingChain& chain, long start, const std::set<long>& target);

/// Probability of absorption in `target` within the first `steps` trials.
Rational absorption_within_steps(const AbsorbingChain& chain, long start,
                                 const std::set<long>& target, long steps);

/// Dense linear solve over Q with partial pivoting (throws SingularSystem).
std::vector<Rational> solve_rational_system(std::vector<std::vector<Rational>> a,
                                            std::vector<Rational> rhs);

}  // namespace walkgf
