#include "walkgf/chain.hpp"

#include <algorithm>

#include "walkgf/errors.hpp"

namespace walkgf {

void WalkSpec::validate() const {
    if (y < 1) throw InvalidSpec("y must be a positive integer");
    if (b < 1) throw InvalidSpec("b must be a positive integer");
    if (m <= b) throw InvalidSpec("m must exceed b (the barriers must not touch)");
    if (s < b || s > m - 1) throw InvalidSpec("start must satisfy b <= s <= m-1");
    if (p <= Rational(0) || p >= Rational(1)) throw InvalidSpec("p must lie strictly in (0,1)");
}

Marking marking_from_string(const std::string& name) {
    if (name == "back" || name == "backsteps") return Marking::BackSteps;
    if (name == "total" || name == "steps") return Marking::TotalSteps;
    if (name == "people" || name == "leaving") return Marking::PeopleLeaving;
    throw InvalidSpec("unknown marking '" + name + "' (want back|total|people)");
}

std::string to_string(Marking m) {
    switch (m) {
        case Marking::BackSteps: return "back";
        case Marking::TotalSteps: return "total";
        case Marking::PeopleLeaving: return "people";
    }
    return "?";
}

AbsorbingChain::AbsorbingChain(WalkSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

AbsorbingChain build_chain(const WalkSpec& spec) { return AbsorbingChain(spec); }

std::set<long> AbsorbingChain::left_set() const {
    std::set<long> s;
    for (long i = 0; i < spec_.b; ++i) s.insert(i);
    return s;
}

std::set<long> AbsorbingChain::right_set() const {
    std::set<long> s;
    for (long i = spec_.m; i < states(); ++i) s.insert(i);
    return s;
}

std::vector<std::vector<Rational>> AbsorbingChain::dense_matrix() const {
    long n = states();
    std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n, Rational(0)));
    for (long s = 0; s < n; ++s) {
        if (is_absorbing(s)) {
            mat[s][s] = 1;
        } else {
            mat[s][s + spec_.y] = spec_.p;
            mat[s][s - spec_.b] = Rational(1) - spec_.p;
        }
    }
    return mat;
}

namespace {

struct StepWeights {
    long forward;
    long backward;
};

StepWeights weights_for(Marking m, long b) {
    switch (m) {
        case Marking::BackSteps: return {0, 1};
        case Marking::TotalSteps: return {1, 1};
        case Marking::PeopleLeaving: return {0, b};
    }
    return {0, 1};
}

}  // namespace

PuiseuxSeries first_passage_series(const AbsorbingChain& chain, long start,
                                   const std::set<long>& target, long order,
                                   Marking marking) {
    const WalkSpec& w = chain.spec();
    if (start < 0 || start >= chain.states()) throw InvalidSpec("start state out of range");
    for (long t : target)
        if (!chain.is_absorbing(t)) throw InvalidSpec("target contains a transient state");
    if (order < 1) throw InvalidSpec("order must be at least 1");

    PuiseuxSeries out(1, Rational(order));
    if (chain.is_absorbing(start)) {
        // absorbed at step 0 with weight 0
        if (target.count(start)) out.set(Rational(0), Rational(1));
        return out;
    }

    StepWeights sw = weights_for(marking, w.b);
    const Rational q = Rational(1) - w.p;

    // distribution over transient states; each entry is a truncated
    // polynomial in z stored densely by exponent
    long n = chain.states();
    std::vector<std::vector<Rational>> cur(n), nxt(n);
    cur[start] = {Rational(1)};
    std::vector<Rational> absorbed(order, Rational(0));

    // Forward steps may carry weight 0, but any weight-0 stretch is cut short
    // by the right barrier, so mass below the truncation order drains in a
    // bounded number of steps.
    long max_steps = (sw.backward > 0 ? (order / sw.backward + 1) : order) * (w.y + w.b) / w.y +
                     (w.m + w.y) / w.y + order + 4;
    for (long step = 0; step < max_steps; ++step) {
        bool any = false;
        for (long s = 0; s < n; ++s) {
            if (cur[s].empty()) continue;
            any = true;
            auto push = [&](long dst, long wgt, const Rational& prob) {
                for (long e = 0; e < static_cast<long>(cur[s].size()); ++e) {
                    if (cur[s][e].is_zero()) continue;
                    long e2 = e + wgt;
                    if (e2 >= order) continue;
                    Rational val = cur[s][e] * prob;
                    if (chain.is_absorbing(dst)) {
                        if (target.count(dst)) absorbed[e2] += val;
                    } else {
                        auto& vec = nxt[dst];
                        if (static_cast<long>(vec.size()) <= e2) vec.resize(e2 + 1, Rational(0));
                        vec[e2] += val;
                    }
                }
            };
            push(s + w.y, sw.forward, w.p);
            push(s - w.b, sw.backward, q);
            cur[s].clear();
        }
        if (!any) break;
        std::swap(cur, nxt);
    }
    // all transient mass below the order bound must have drained
    for (long s = 0; s < n; ++s)
        if (!cur[s].empty() && std::any_of(cur[s].begin(), cur[s].end(),
                                           [](const Rational& r) { return !r.is_zero(); }))
            throw Error("first-passage propagation did not drain; step bound too small", 3);

    for (long e = 0; e < order; ++e)
        if (!absorbed[e].is_zero()) out.set(Rational(e), absorbed[e]);
    return out;
}

std::vector<Rational> solve_rational_system(std::vector<std::vector<Rational>> a,
                                            std::vector<Rational> rhs) {
    const long n = static_cast<long>(a.size());
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long r = col; r < n; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw SingularSystem();
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (long r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rational f = a[r][col] / a[col][col];
            for (long c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (long i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
    return x;
}

Rational total_absorption(const AbsorbingChain& chain, long start, const std::set<long>& target) {
    const WalkSpec& w = chain.spec();
    for (long t : target)
        if (!chain.is_absorbing(t)) throw InvalidSpec("target contains a transient state");
    auto boundary = [&](long s) { return Rational(target.count(s) ? 1 : 0); };
    if (chain.is_absorbing(start)) return boundary(start);

    // unknowns: h(s) for transient s in [b, m-1]
    long nt = w.m - w.b;
    auto idx = [&](long s) { return s - w.b; };
    std::vector<std::vector<Rational>> a(nt, std::vector<Rational>(nt, Rational(0)));
    std::vector<Rational> rhs(nt, Rational(0));
    for (long s = w.b; s <= w.m - 1; ++s) {
        long r = idx(s);
        a[r][r] = 1;
        long up = s + w.y, dn = s - w.b;
        if (chain.is_absorbing(up))
            rhs[r] += w.p * boundary(up);
        else
            a[r][idx(up)] -= w.p;
        Rational q = Rational(1) - w.p;
        if (chain.is_absorbing(dn))
            rhs[r] += q * boundary(dn);
        else
            a[r][idx(dn)] -= q;
    }
    return solve_rational_system(std::move(a), std::move(rhs))[idx(start)];
}

Rational absorption_within_steps(const AbsorbingChain& chain, long start,
                                 const std::set<long>& target, long steps) {
    PuiseuxSeries s = first_passage_series(chain, start, target, steps + 1, Marking::TotalSteps);
    Rational sum = 0;
    for (const auto& [k, c] : s.raw_coeffs()) sum += c;
    return sum;
}

}  // namespace walkgf
