#pragma once

#include <optional>
#include <string>
#include <vector>

#include "walkgf/chain.hpp"
#include "walkgf/puiseux.hpp"

namespace walkgf {

/// One verification cell: a constructed formula checked coefficientwise
/// against the chain oracle.
struct VerifyCell {
    std::string formula;  // one-back-left | one-back-right | two-back | exact-3f2b |
                          // duchon-inner | duchon-two-left | single-barrier | approx-right
    long y = 2;
    long b = 1;
    long m = 0;       // barrier (ignored by the single-barrier/duchon formulas)
    long s = -1;      // start; -1 means the formula's default (m-1, or 2 for duchon)
    long k = 1;       // single-barrier start
    long order = 30;  // oracle orders to compare
};

struct VerifyReport {
    VerifyCell cell;
    bool pass = false;
    long orders_checked = 0;
    std::optional<Rational> first_mismatch;  // oracle-frame exponent
    Rational mismatch_delta;                 // formula minus oracle there
    long norm_shift = 0;                     // raw = z^shift * oracle(z^scale)
    long norm_scale = 1;
    double wall_ms = 0;
    std::string error;  // construction failure, if any
};

/// Run one cell.
VerifyReport verify_cell(const VerifyCell& cell);

/// Run many cells with up to `jobs` worker threads; the report order always
/// matches the input order.
std::vector<VerifyReport> verify_grid(const std::vector<VerifyCell>& cells, long jobs);

/// Derive the exponent normalization raw = z^shift * oracle(z^scale) from two
/// series by matching their nonzero support; nullopt when no integer pair
/// works. `scale` is required to be a positive integer.
std::optional<std::pair<long, long>> derive_normalization(const PuiseuxSeries& raw,
                                                          const PuiseuxSeries& oracle);

}  // namespace walkgf
