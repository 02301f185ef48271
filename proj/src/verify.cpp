#include "walkgf/verify.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "walkgf/barrier_gf.hpp"
#include "walkgf/general_gf.hpp"
#include "walkgf/rational_gf.hpp"

namespace walkgf {

std::optional<std::pair<long, long>> derive_normalization(const PuiseuxSeries& raw,
                                                          const PuiseuxSeries& oracle) {
    if (raw.grid() != 1 || oracle.grid() != 1) return std::nullopt;
    std::vector<long> re, oe;
    for (const auto& [k, c] : raw.raw_coeffs()) re.push_back(k);
    for (const auto& [k, c] : oracle.raw_coeffs()) oe.push_back(k);
    if (re.empty() || oe.empty()) return std::nullopt;
    if (re.size() < 2 || oe.size() < 2) return {{re[0] - oe[0], 1}};
    long num = re[1] - re[0], den = oe[1] - oe[0];
    if (den == 0 || num % den != 0 || num / den < 1) return std::nullopt;
    long scale = num / den;
    return {{re[0] - scale * oe[0], scale}};
}

namespace {

struct Comparison {
    bool pass = true;
    long orders = 0;
    std::optional<Rational> first_mismatch;
    Rational delta;
};

/// Compare coefficientwise over the oracle frame; both series grid 1.
Comparison compare_series(const PuiseuxSeries& got, const PuiseuxSeries& want, long order) {
    Comparison c;
    c.orders = order;
    for (long e = 0; e < order; ++e) {
        Rational g = got.at(Rational(e));
        Rational w = want.at(Rational(e));
        if (g != w) {
            c.pass = false;
            c.first_mismatch = Rational(e);
            c.delta = g - w;
            return c;
        }
    }
    return c;
}

/// A barrier far enough away that no path with oracle weight < order can
/// touch it (single-barrier and Duchon-club cells).
long unreachable_m(long y, long b, long s, long order) {
    // forward steps before weight `order` accrues are at most order * (y+b)
    return s + y * (order + 2) * (y + b) + y + b + 2;
}

VerifyReport run_cell(const VerifyCell& cell) {
    VerifyReport rep;
    rep.cell = cell;
    auto t0 = std::chrono::steady_clock::now();
    try {
        const long order = cell.order;
        if (cell.formula == "one-back-left" || cell.formula == "one-back-right") {
            bool left = cell.formula == "one-back-left";
            RationalGF gf = left ? p_left_one_back(cell.y, cell.m) : p_right_one_back(cell.y, cell.m);
            rep.norm_shift = gf.shift();
            rep.norm_scale = gf.scale();
            WalkSpec w{cell.y, 1, cell.m, cell.s >= 0 ? cell.s : cell.m - 1};
            auto chain = build_chain(w);
            auto oracle = first_passage_series(chain, w.s, left ? chain.left_set() : chain.right_set(),
                                               order);
            auto cmp = compare_series(gf.expand_oracle_frame(order), oracle, order);
            rep.pass = cmp.pass;
            rep.orders_checked = cmp.orders;
            rep.first_mismatch = cmp.first_mismatch;
            rep.mismatch_delta = cmp.delta;
            // the stored normalization must also be the one the support implies
            auto derived = derive_normalization(gf.expand_raw(order + std::labs(gf.shift()) + 2), oracle);
            if (derived && (derived->first != gf.shift() || derived->second != gf.scale()))
                rep.pass = false;
        } else if (cell.formula == "two-back" || cell.formula == "exact-3f2b") {
            RationalGF gf = cell.formula == "two-back" ? gf_two_back(cell.y, cell.m)
                                                       : gf_exact_3f2b(cell.m / 6);
            rep.norm_shift = gf.shift();
            rep.norm_scale = gf.scale();
            WalkSpec w{cell.y, 2, cell.m, cell.s >= 0 ? cell.s : cell.m - 1};
            auto chain = build_chain(w);
            auto oracle = first_passage_series(chain, w.s, chain.inner_left(), order);
            auto cmp = compare_series(gf.expand_oracle_frame(order), oracle, order);
            rep.pass = cmp.pass;
            rep.orders_checked = cmp.orders;
            rep.first_mismatch = cmp.first_mismatch;
            rep.mismatch_delta = cmp.delta;
        } else if (cell.formula == "duchon-inner") {
            long s = cell.s >= 0 ? cell.s : 2;
            long m = unreachable_m(3, 2, s, order);
            auto chain = build_chain(WalkSpec{3, 2, m, s});
            auto oracle = first_passage_series(chain, s, {1}, order, Marking::PeopleLeaving);
            auto cmp = compare_series(duchon_inner_series(order), oracle, order);
            rep.norm_scale = 2;  // people marking = back-step marking scaled by b
            rep.pass = cmp.pass;
            rep.orders_checked = cmp.orders;
            rep.first_mismatch = cmp.first_mismatch;
            rep.mismatch_delta = cmp.delta;
        } else if (cell.formula == "duchon-two-left") {
            long s = cell.s >= 0 ? cell.s : 2;
            long v = cell.y + 2;
            long m = unreachable_m(cell.y, 2, s, order);
            auto chain = build_chain(WalkSpec{cell.y, 2, m, s});
            auto oracle = first_passage_series(chain, s, {0, 1}, order);
            auto cmp = compare_series(duchon_two_left(v, s, order), oracle, order);
            rep.pass = cmp.pass;
            rep.orders_checked = cmp.orders;
            rep.first_mismatch = cmp.first_mismatch;
            rep.mismatch_delta = cmp.delta;
        } else if (cell.formula == "single-barrier") {
            // fuss series marks forward steps: F[n] versus oracle back-step
            // weight 2n + k, oracle support exactly that lattice
            long m = unreachable_m(2, 1, cell.k, 2 * order + cell.k + 2);
            auto chain = build_chain(WalkSpec{2, 1, m, cell.k});
            auto oracle = first_passage_series(chain, cell.k, {0}, 2 * order + cell.k, Marking::BackSteps);
            PuiseuxSeries fuss = fuss_single_barrier(cell.k, order);
            rep.norm_shift = cell.k;
            rep.norm_scale = 2;
            rep.pass = true;
            rep.orders_checked = order;
            for (long n = 0; n < order && rep.pass; ++n) {
                Rational g = fuss.at(Rational(n));
                Rational w = oracle.at(Rational(2 * n + cell.k));
                if (g != w) {
                    rep.pass = false;
                    rep.first_mismatch = Rational(2 * n + cell.k);
                    rep.mismatch_delta = g - w;
                }
            }
            for (const auto& [e, c] : oracle.raw_coeffs())
                if ((e - cell.k) % 2 != 0 && rep.pass) rep.pass = false;  // off-lattice mass
        } else if (cell.formula == "approx-right") {
            long s = cell.s >= 0 ? cell.s : cell.m - 1;
            auto ap = approx_horizon_series(cell.m, s, order);
            rep.orders_checked = order;
            rep.first_mismatch =
                ap.first_mismatch ? std::optional<Rational>(Rational(*ap.first_mismatch)) : std::nullopt;
            rep.mismatch_delta = ap.mismatch_delta;
            // the approximation passes when it is exact through its declared horizon
            rep.pass = !ap.first_mismatch || *ap.first_mismatch > ap.declared_horizon;
        } else {
            rep.error = "unknown formula '" + cell.formula + "'";
        }
    } catch (const std::exception& e) {
        rep.pass = false;
        rep.error = e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

}  // namespace

VerifyReport verify_cell(const VerifyCell& cell) { return run_cell(cell); }

std::vector<VerifyReport> verify_grid(const std::vector<VerifyCell>& cells, long jobs) {
    std::vector<VerifyReport> out(cells.size());
    if (jobs < 1) jobs = 1;
    if (jobs == 1 || cells.size() <= 1) {
        for (size_t i = 0; i < cells.size(); ++i) out[i] = run_cell(cells[i]);
        return out;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            out[i] = run_cell(cells[i]);
        }
    };
    std::vector<std::thread> pool;
    long n = std::min<long>(jobs, static_cast<long>(cells.size()));
    pool.reserve(n);
    for (long i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace walkgf
