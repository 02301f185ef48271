#include "walkgf/barrier_gf.hpp"

#include <cmath>

#include "walkgf/root_series.hpp"

namespace walkgf {

PuiseuxSeries fuss_single_barrier(long k, long order) {
    if (k < 1) throw PreconditionViolation("single-barrier start k must be >= 1");
    PuiseuxSeries s(1, Rational(order));
    for (long n = 0; n < order; ++n) {
        Rational c = Rational(k) * binom_general(3 * n + k, n) /
                     (Rational::pow2(k + 3 * n) * Rational(3 * n + k));
        if (!c.is_zero()) s.set(Rational(n), c);
    }
    return s;
}

double fuss_partial_sum_at_one(long k, long terms) {
    // iterate the term ratio to dodge overflowing binomials
    double t = 1.0 / std::pow(2.0, static_cast<double>(k));  // n = 0 term
    double sum = t;
    for (long n = 0; n + 1 < terms; ++n) {
        double num = (3.0 * n + k + 1) * (3.0 * n + k + 2) * (3.0 * n + k + 3);
        double den = (n + 1.0) * (2.0 * n + k + 1) * (2.0 * n + k + 2);
        t *= num / den / 8.0 * (3.0 * n + k) / (3.0 * n + k + 3);
        sum += t;
    }
    return sum;
}

UPolynomial u_poly(long y, long m) {
    if (y < 1 || m < 1) throw PreconditionViolation("u[y,m] needs y >= 1, m >= 1");
    Polynomial p;
    for (long n = 0; (y + 1) * n - m < 0; ++n) {
        Rational c = Rational::pow2(m - 1 - (y + 1) * n) * binom_general((y + 1) * n - m, n);
        if (!c.is_zero()) p.add(y * n, c);
    }
    return {y, m, p};
}

RationalGF p_left_one_back(long y, long m) {
    if (m < 2) throw PreconditionViolation("p_l needs m >= 2");
    // lowest oracle term: m-1 straight back-steps, weight z^{m-1}; the raw
    // expansion starts at z^0, so the stored shift is -(m-1)
    return RationalGF(Polynomial::constant(1), u_poly(y, m).poly, -(m - 1), 1);
}

RationalGF p_right_one_back(long y, long m) {
    if (m <= y) throw PreconditionViolation("p_r needs m > y");
    Polynomial num;
    for (long i = 1; i <= y; ++i) {
        UPolynomial ui = u_poly(y, m - i);
        for (const auto& [e, c] : ui.poly.coeffs()) num.add(e + i, c);
    }
    // lowest oracle term: one forward step (0 back-steps) with weight z^0,
    // while the raw expansion starts at z^1
    return RationalGF(std::move(num), u_poly(y, m).poly, 1, 1);
}

ApproxReport approx_horizon_series(long m, long s, long order) {
    if (s != m - 1 && s != m - 2) throw PreconditionViolation("approximation is stated for s = m-1 or m-2");
    if (m < 4) throw PreconditionViolation("approximation needs m >= 4");
    Rational T(order + 3);
    TrinomialSpec cubic{3, 1, Rational(2)};
    PuiseuxSeries r = small_root_series(cubic, 1, 0, T).rational();
    PuiseuxSeries r2 = r * r, r3 = r2 * r;
    PuiseuxSeries approx;
    if (s == m - 1) {
        approx = (r2 + r).shifted(-1);  // r(r+1)/z
    } else {
        PuiseuxSeries zr = r.shifted(1);
        approx = (-(r2 * r2) + r3 + r2 * Rational(4) - zr).shifted(-2);
    }
    approx.set_truncation(Rational(order));

    ApproxReport rep{approx, s - 1, std::nullopt, Rational(0)};
    WalkSpec w{2, 1, m, s};
    auto chain = build_chain(w);
    PuiseuxSeries oracle = first_passage_series(chain, s, chain.right_set(), order);
    PuiseuxSeries diff = approx - oracle;
    if (!diff.is_zero()) {
        Rational e = *diff.min_exponent();
        rep.first_mismatch = static_cast<long>(e.num().get_si());
        rep.mismatch_delta = diff.at(e);
    }
    return rep;
}

CramerEval cramer_gf_numeric(long m, long s, BarrierSide side, double z) {
    if (s < 0 || s > m + 1) throw PreconditionViolation("cramer evaluation needs 0 <= s <= m+1");
    CubicRoots r = cubic_roots_numeric(z);
    double sep = std::min({std::fabs(r.a - r.b), std::fabs(r.b - r.c), std::fabs(r.a - r.c)});
    if (sep < 1e-6) throw NearDegenerateRoots();

    auto powm = [](double x, long e) { return std::pow(x, static_cast<double>(e)); };
    double am = powm(r.a, m), bm = powm(r.b, m), cm = powm(r.c, m);
    double am1 = am * r.a, bm1 = bm * r.b, cm1 = cm * r.c;
    // Cramer on [[1,1,1],[a^m,b^m,c^m],[a^{m+1},b^{m+1},c^{m+1}]] kappa = rhs;
    // the boundary rows are re-checked on the way out.
    double detM = (bm * cm1 - cm * bm1) - (am * cm1 - cm * am1) + (am * bm1 - bm * am1);
    if (std::fabs(detM) < 1e-14) throw NearDegenerateRoots("Cramer matrix nearly singular");

    // rhs is e1 for the left system (f(0)=1, f(m)=f(m+1)=0) and (0,1,1) for
    // the right one; f_left + f_right interpolates the all-ones boundary.
    double r1 = side == BarrierSide::Left ? 1.0 : 0.0;
    double r2 = 1.0 - r1, r3 = 1.0 - r1;
    double ka = (r1 * (bm * cm1 - cm * bm1) - (r2 * cm1 - cm * r3) + (r2 * bm1 - bm * r3)) / detM;
    double kb = ((r2 * cm1 - cm * r3) - r1 * (am * cm1 - cm * am1) + (am * r3 - r2 * am1)) / detM;
    double kc = ((bm * r3 - r2 * bm1) - (am * r3 - r2 * am1) + r1 * (am * bm1 - bm * am1)) / detM;

    auto f = [&](long pos) { return ka * powm(r.a, pos) + kb * powm(r.b, pos) + kc * powm(r.c, pos); };
    double want0 = side == BarrierSide::Left ? 1.0 : 0.0;
    double wantm = 1.0 - want0;
    double resid = std::max({std::fabs(f(0) - want0), std::fabs(f(m) - wantm),
                             std::fabs(f(m + 1) - wantm)});
    return {f(s), resid};
}

namespace {

/// Rational power sums p_k = a^k + b^k of the two small roots of
/// x^v - 2 x^2 + z; the sqrt2 parts of the branches cancel.
PuiseuxSeries small_pair_power_sum(long v, long k, const Rational& order) {
    TrinomialSpec spec{v, 2, Rational(2)};
    Sqrt2Series sum = small_root_series(spec, k, 0, order).series +
                      small_root_series(spec, k, 1, order).series;
    return require_rational(sum, "small-root power sum").reduced();
}

}  // namespace

PuiseuxSeries duchon_two_left(long v, long s, long order) {
    if (v <= 2) throw PreconditionViolation("duchon walk needs v > 2");
    if (s < 2) throw PreconditionViolation("duchon start must be s >= 2 (cells 0,1 absorb)");
    Rational T(order);
    // elementary symmetric functions from power sums
    PuiseuxSeries p1 = small_pair_power_sum(v, 1, T + 1);
    PuiseuxSeries p2 = small_pair_power_sum(v, 2, T + 1);
    PuiseuxSeries e1 = p1;
    PuiseuxSeries e2 = (p1 * p1 - p2) * Rational(1, 2);
    // h_k = e1 h_{k-1} - e2 h_{k-2}
    PuiseuxSeries hk_2 = PuiseuxSeries::monomial(1, 0, 1, T + 1);  // h_0
    PuiseuxSeries hk_1 = e1;                                       // h_1
    if (s == 2) {
        PuiseuxSeries out = e1 - e2;  // a + b - ab
        out.set_truncation(T);
        return out;
    }
    for (long k = 2; k <= s - 1; ++k) {
        PuiseuxSeries hk = e1 * hk_1 - e2 * hk_2;
        hk_2 = std::move(hk_1);
        hk_1 = std::move(hk);
    }
    PuiseuxSeries out = hk_1 - e2 * hk_2;  // h_{s-1} - ab h_{s-2}
    out.set_truncation(T);
    return out;
}

PuiseuxSeries duchon_inner_series(long order) {
    PuiseuxSeries s(1, Rational(order));
    for (long n = 0; 6 * n + 4 < order; ++n) {
        Rational c = binom_general(5 * n + 2, 2 * n) /
                     (Rational::pow2(5 * n + 3) * Rational(2 * n + 1));
        s.set(Rational(6 * n + 4), c);
    }
    return s;
}

}  // namespace walkgf
