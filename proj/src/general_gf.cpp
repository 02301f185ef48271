#include "walkgf/general_gf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "walkgf/errors.hpp"

namespace walkgf {

namespace {

long mod(long a, long m) { return ((a % m) + m) % m; }

void require_regime(long y, long m) {
    if (y < 3 || y % 2 == 0) throw PreconditionViolation("rational two-back regime needs odd y >= 3");
    if (m % 2 != 0 || m < 4) throw PreconditionViolation("rational two-back regime needs even m >= 4");
    if (m <= 2) throw PreconditionViolation("m must exceed b = 2");
}

}  // namespace

ResidueTriple solve_residues(long y, long m) {
    require_regime(y, m);
    ResidueTriple r{-1, -1, -1};
    for (long v = 0; v < y; ++v) {
        if (r.v0 < 0 && mod(2 * v + m + 1, y) == 0) r.v0 = v;
        if (r.v1 < 0 && mod(2 * v + m, y) == 0) r.v1 = v;
    }
    if (r.v0 < 0 || r.v1 < 0) throw NoResidueSolution();
    r.v2 = r.v0 + 1;
    if (mod(2 * r.v2 + m - 1, y) != 0) throw NoResidueSolution("v2 = v0+1 fails its congruence");
    return r;
}

PuiseuxSeries mu1_series(long y, long m, long order) {
    require_regime(y, m);
    PuiseuxSeries s(1, Rational(order));
    Rational pref = Rational::pow2(m) / Rational(8);  // (-2)^m / 8, m even
    for (long K = 0; y * K < order; ++K) {
        Rational acc = 0;
        for (long L = 0; L <= 2 * K; ++L) {
            Rational s1 = binom_general(Rational(-y * L + m - 1, 2), L) *
                          binom_general(Rational(-y * (2 * K - L) + m - 3, 2), 2 * K - L);
            Rational s2 = binom_general(Rational(-y * L, 2) + Rational(m - 2, 2), L) *
                          binom_general(Rational(-y * (2 * K - L), 2) + Rational(m - 2, 2),
                                        2 * K - L);
            Rational t = s1 + s2;
            acc += (L % 2 == 0) ? t : -t;
        }
        Rational c = pref * acc / Rational::pow2(K * (y + 2));
        if (!c.is_zero()) s.set(Rational(y * K), c);
    }
    return s;
}

Polynomial mu1_poly(long y, long m) {
    long u = overlap_bound(y, 2, m).u;
    PuiseuxSeries s = mu1_series(y, m, y * u + 1);
    Polynomial p;
    for (const auto& [k, c] : s.raw_coeffs()) p.set(k, c);
    return p;
}

std::optional<Polynomial> mu1_poly_variant(long y, long m) {
    require_regime(y, m);
    long u = overlap_bound(y, 2, m).u;
    Polynomial p;
    Rational pref = Rational::pow2(m) / Rational(8);
    for (long K = 0; K <= u; ++K) {
        Rational acc = 0;
        for (long L = 0; L <= K; ++L) {
            long d1 = (y + 2) * L - m + 1;
            long d2 = (y + 2) * (2 * K - L) - m + 1;
            if (d1 == 0 || d2 == 0) return std::nullopt;  // the singular variant
            Rational weight(1, 1 + (1 + L) / (1 + K));    // halves the L = K diagonal
            Rational bracket = (Rational(L * y - m + 1, d1) +
                                Rational((2 * K - L) * y - m + 1, d2)) *
                                   binom_general(Rational(-y * L + m - 3, 2), L) *
                                   binom_general(Rational(-y * (2 * K - L) + m - 3, 2), 2 * K - L) +
                               Rational(2) * binom_general(Rational(-y * L, 2) + Rational(m - 2, 2), L) *
                                   binom_general(Rational(-y * (2 * K - L), 2) + Rational(m - 2, 2),
                                                 2 * K - L);
            Rational t = weight * bracket;
            acc += (L % 2 == 0) ? t : -t;
        }
        Rational c = pref * acc / Rational::pow2(K * (y + 2));
        if (!c.is_zero()) p.set(y * K, c);
    }
    return p;
}

namespace {

/// d/dz[(a^k + b^k)/k] with a, b the small branches of x^(y+2) - 2x^2 + z,
/// for k = w + 1 - m. Rational: only n = k (mod 2) survives the branch sum,
/// and the would-be singular slot yn + k = 0 carries binom C(n-1, n) = 0.
PuiseuxSeries small_pair_op(long y, long m, long w, long order) {
    long k = w + 1 - m;
    PuiseuxSeries s(2, Rational(order));
    for (long n = 0;; ++n) {
        Rational e = Rational(y * n + k, 2) - 1;
        if (e >= Rational(order)) break;
        if (mod(n - k, 2) != 0) continue;
        Rational bin = binom_general(Rational((y + 2) * n + k, 2) - 1, n);
        if (bin.is_zero()) continue;
        long tw = ((y + 2) * n + k) / 2;  // exponent even on surviving terms
        s.set(e, s.at(e) + bin / Rational::pow2(tw));
    }
    return s.reduced();
}

/// d/dz[Phi^k / k] with Phi^k the sum of k-th powers of the y large branches,
/// k = W + 1 - m. Only n with y | (2n + 2 - k) survive (rational theta).
PuiseuxSeries large_sum_op(long y, long m, long W, long order) {
    long k = W + 1 - m;
    PuiseuxSeries s(1, Rational(order));
    for (long n = 0; n < order; ++n) {
        if (mod(2 * n + 2 - k, y) != 0) continue;
        long e2 = k - (y + 2) * (n + 1);  // divisible by y on surviving terms
        Rational c = -binom_general(Rational((y + 2) * n + 2 - k, y), n) *
                     Rational::pow2(e2 / y);
        if (!c.is_zero()) s.set(Rational(n), s.at(Rational(n)) + c);
    }
    return s;
}

}  // namespace

PuiseuxSeries mu2_poly(long y, long m, long order) {
    require_regime(y, m);
    solve_residues(y, m);  // rejects impossible inputs early
    long rel = order;  // factors lead near z^{-m/2}, so the shifted block stays exact
    PuiseuxSeries a1 = -(small_pair_op(y, m, 2, rel) * large_sum_op(y, m, 0, rel));
    PuiseuxSeries a2 = -(small_pair_op(y, m, 0, rel) * large_sum_op(y, m, 2, rel));
    PuiseuxSeries a3 = (small_pair_op(y, m, 1, rel) * large_sum_op(y, m, 1, rel)) * Rational(2);
    PuiseuxSeries sum = (a1 + a2 + a3).shifted(m);
    sum.set_truncation(Rational(order));
    return sum;
}

PuiseuxSeries numerator_series(long y, long m, long order) {
    require_regime(y, m);
    ResidueTriple r = solve_residues(y, m);
    PuiseuxSeries s(1, Rational(order));
    long e2 = (-y * r.v1 - y - 2 * r.v1 - m);
    if (mod(e2, y) != 0) throw NoResidueSolution("numerator 2-power exponent not integral");
    Rational pref = -Rational::pow2(e2 / y);
    for (long n = 0; r.v1 + m + y * n < order; ++n) {
        Rational c = pref * binom_general(Rational((y + 2) * n) + Rational((y + 2) * r.v1 + m, y),
                                          y * n + r.v1) /
                     Rational::pow2((y + 2) * n);
        Rational e(r.v1 + m + y * n);
        if (!c.is_zero()) s.set(e, s.at(e) + c);
    }
    for (long n = 0; y * n + m / 2 < order; ++n) {
        Rational c = binom_general(Rational((2 + y) * n) - Rational(m / 2), 2 * n) /
                     Rational::pow2((y + 2) * n - m / 2 + 1);
        Rational e(y * n + m / 2);
        if (!c.is_zero()) s.set(e, s.at(e) + c);
    }
    return s;
}

OverlapBound overlap_bound(long y, long b, long m) {
    if (y <= b || b < 1) throw PreconditionViolation("overlap analysis needs y > b >= 1");
    OverlapBound out;
    out.c_threshold = Rational(b * b, b + y);
    long u = 0;
    while ((u + 1) * (y + b) + b - 1 - m < 0) ++u;
    out.u = u;
    out.needed_mu = 1;
    for (long k = 2; k <= b; ++k) {
        long c = b - (k - 1);  // small roots per string of mu_k
        if (Rational(c) < out.c_threshold) break;  // never contributes, nor do deeper blocks
        // onset exponent of mu_k is at least (m(b-c) + c(1-b))/b
        if (Rational(y * u) >= Rational(m * (b - c) + c * (1 - b), b)) out.needed_mu = k;
    }
    return out;
}

MuDecomposition mu_decompose(long y, long m, long window_margin) {
    require_regime(y, m);
    MuDecomposition d;
    d.y = y;
    d.m = m;
    OverlapBound ob = overlap_bound(y, 2, m);
    d.degree_bound_u = ob.u;
    d.needed_mu = ob.needed_mu;
    long deg = y * ob.u;
    long m_next = ((m + y - 1) / y) * y;  // first multiple of y at or past m: mu3 onset
    long top = m_next + window_margin;
    PuiseuxSeries m1 = mu1_series(y, m, top);
    PuiseuxSeries m2 = mu2_poly(y, m, top);
    d.mu2_block = m2;
    PuiseuxSeries total = m1 + m2;
    for (const auto& [k, c] : m1.raw_coeffs())
        if (k <= deg) d.mu1.set(k, c);
    for (const auto& [k, c] : total.raw_coeffs()) {
        if (k <= deg) {
            d.denominator.set(k, c);
        } else if (k < m_next) {
            throw Error("mu1 tail not cancelled by mu2 at z^" + std::to_string(k) +
                            " (denominator would not be polynomial)",
                        3);
        }
    }
    return d;
}

RationalGF gf_two_back(long y, long m) {
    MuDecomposition d = mu_decompose(y, m);
    long deg = y * d.degree_bound_u;
    long m_next = ((m + y - 1) / y) * y;
    PuiseuxSeries nu = numerator_series(y, m, m / 2 + m_next);
    Polynomial num;
    for (const auto& [k, c] : nu.raw_coeffs()) {
        if (k <= m / 2 + deg)
            num.set(k, c);
        else
            throw Error("numerator tail not cancelled at z^" + std::to_string(k), 3);
    }
    // raw expansion = z * oracle(z): the fastest path is (m-2)/2 straight
    // back-steps and the raw leading exponent is m/2 = (m-2)/2 + 1
    return RationalGF(std::move(num), d.denominator, 1, 1);
}

namespace {

/// Shared kernel of the u/g definitions: term n carries
/// z^{(yn-m')/2-1} * sign / 2^{((y+2)n-m')/2+1} * C((y+2)n/2 - m'/2 - 1, n),
/// with sign = (-1)^{n-m'} for u[m'] and +1 for g[m'].
Sqrt2Series ug_series(long y, long mp, bool alternating, const Rational& order) {
    Sqrt2Series s(2, order);
    for (long n = 0;; ++n) {
        Rational e = Rational(y * n - mp, 2) - 1;
        if (e >= order) break;
        Rational bin = binom_general(Rational((y + 2) * n - mp, 2) - 1, n);
        if (bin.is_zero()) continue;
        Sqrt2 tw = Sqrt2::pow_sqrt2(-((y + 2) * n - mp) - 2);  // 1/2^{((y+2)n-m')/2+1}
        Sqrt2 c = tw * Sqrt2(bin);
        if (alternating && mod(n - mp, 2) == 1) c = -c;
        s.set(e, s.at(e) + c);
    }
    return s;
}

}  // namespace

Sqrt2Series ug_u_series(long y, long m, const Rational& order) {
    return ug_series(y, m, true, order);
}

Sqrt2Series ug_g_series(long y, long m, const Rational& order) {
    return ug_series(y, m, false, order);
}

PuiseuxSeries mu1_block_ug(long y, long m, long order) {
    require_regime(y, m);
    // products need relative precision order - m + (leading exponents ~ -m)
    Rational T = Rational(order - m) + Rational(m + 6);
    Sqrt2Series um2 = ug_u_series(y, m - 2, T), gm2 = ug_g_series(y, m - 2, T);
    Sqrt2Series um1 = ug_u_series(y, m - 1, T), gm1 = ug_g_series(y, m - 1, T);
    Sqrt2Series um3 = ug_u_series(y, m - 3, T), gm3 = ug_g_series(y, m - 3, T);
    Sqrt2Series block = um2 * gm2 * Sqrt2(Rational(2)) - um1 * gm3 - um3 * gm1;
    PuiseuxSeries rat = require_rational(block, "u/g mu1 block").reduced();
    PuiseuxSeries out = rat.shifted(m);
    out.set_truncation(Rational(order));
    return out;
}

PuiseuxSeries a_terms_3f2b(long kappa, long order) {
    if (kappa < 1) throw PreconditionViolation("kappa must be a positive integer");
    const long m = 6 * kappa;
    PuiseuxSeries out(1, Rational(order));
    long N = order / 3 + 3;
    auto conv = [&](const Rational& pref, long base, auto topA, long lowA_off, bool lowA_3n,
                    auto topB, long lowB_off, bool lowB_3n) {
        std::vector<Rational> A(N), B(N);
        for (long n = 0; n < N; ++n) {
            long lowA = (lowA_3n ? 3 * n : 2 * n) + lowA_off;
            long lowB = (lowB_3n ? 3 * n : 2 * n) + lowB_off;
            A[n] = binom_general(Rational(topA(n)), lowA) / Rational::pow2(5 * n);
            B[n] = binom_general(Rational(topB(n)), lowB) / Rational::pow2(5 * n);
        }
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < N; ++j) {
                long e = base + 3 * (i + j);
                if (e >= order) continue;
                Rational c = pref * A[i] * B[j];
                if (!c.is_zero()) out.set(Rational(e), out.at(Rational(e)) + c);
            }
    };
    // A3 = -z^{-3k} 2^{k-1} [sum C(2k+5n, 3n)] [sum C(5n-3k, 2n)]
    conv(-Rational::pow2(kappa - 1), -3 * kappa + m,
         [&](long n) { return 2 * kappa + 5 * n; }, 0, true,
         [&](long n) { return 5 * n - 3 * kappa; }, 0, false);
    // A2 = z^{-3k+3} 2^{k-7} [sum C(2k+3+5n, 3n+2)] [sum C(5n-3k+2, 2n+1)]
    conv(Rational::pow2(kappa - 7), -3 * kappa + 3 + m,
         [&](long n) { return 2 * kappa + 3 + 5 * n; }, 2, true,
         [&](long n) { return 5 * n - 3 * kappa + 2; }, 1, false);
    // A1 = z^{-3k+3} 2^{k-7} [sum C(2k+2+5n, 3n+1)] [sum C(5n-3k+3, 2n+1)]
    conv(Rational::pow2(kappa - 7), -3 * kappa + 3 + m,
         [&](long n) { return 2 * kappa + 2 + 5 * n; }, 1, true,
         [&](long n) { return 5 * n - 3 * kappa + 3; }, 1, false);
    return out;
}

RationalGF gf_exact_3f2b(long kappa) {
    if (kappa < 1) throw PreconditionViolation("kappa must be a positive integer");
    const long y = 3, m = 6 * kappa;
    OverlapBound ob = overlap_bound(y, 2, m);
    long deg = y * ob.u;
    long m_next = m;  // m = 6 kappa is already a multiple of y
    PuiseuxSeries m1 = mu1_block_ug(y, m, m_next);
    PuiseuxSeries a = a_terms_3f2b(kappa, m_next);
    PuiseuxSeries total = m1 + a;
    Polynomial den;
    for (const auto& [k, c] : total.raw_coeffs()) {
        if (k <= deg)
            den.set(k, c);
        else
            throw Error("3f2b denominator tail survives at z^" + std::to_string(k), 3);
    }
    PuiseuxSeries nu = numerator_series(y, m, m / 2 + m_next);
    Polynomial num;
    for (const auto& [k, c] : nu.raw_coeffs()) {
        if (k <= m / 2 + deg)
            num.set(k, c);
        else
            throw Error("3f2b numerator tail survives at z^" + std::to_string(k), 3);
    }
    return RationalGF(std::move(num), std::move(den), 1, 1);
}

// ---------------------------------------------------------------------------
// string calculus

std::vector<std::pair<std::vector<long>, long>> vandermonde_sq_partitions(long b) {
    if (b < 1 || b > 6) throw PreconditionViolation("string calculus supports 1 <= b <= 6");
    // expand prod_{i<j} (x_i - x_j)^2 over exponent vectors
    std::map<std::vector<long>, long> poly;
    poly[std::vector<long>(b, 0)] = 1;
    for (long i = 0; i < b; ++i) {
        for (long j = i + 1; j < b; ++j) {
            for (int rep = 0; rep < 2; ++rep) {
                std::map<std::vector<long>, long> next;
                for (const auto& [mono, c] : poly) {
                    auto mi = mono;
                    mi[i] += 1;
                    next[mi] += c;
                    auto mj = mono;
                    mj[j] += 1;
                    next[mj] -= c;
                }
                std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
                poly = std::move(next);
            }
        }
    }
    std::map<std::vector<long>, long> by_pattern;
    for (const auto& [mono, c] : poly) {
        std::vector<long> key = mono;
        std::sort(key.begin(), key.end(), std::greater<>());
        auto it = by_pattern.find(key);
        if (it == by_pattern.end())
            by_pattern[key] = c;
        else if (it->second != c)
            throw Error("squared Vandermonde is not symmetric per pattern", 3);
    }
    std::vector<std::pair<std::vector<long>, long>> out(by_pattern.begin(), by_pattern.end());
    return out;
}

namespace {

long multiset_orderings(const std::vector<long>& w) {
    long f = 1;
    for (size_t i = 2; i <= w.size(); ++i) f *= static_cast<long>(i);
    std::map<long, long> reps;
    for (long x : w) reps[x]++;
    for (const auto& [x, r] : reps)
        for (long i = 2; i <= r; ++i) f /= i;
    return f;
}

long choose_ll(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// cos(2 pi q) when rational (Niven), else nullopt.
std::optional<Rational> rational_cos(const Rational& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
    Rational f = q - Rational(fl);
    if (f == Rational(0)) return Rational(1);
    if (f == Rational(1, 2)) return Rational(-1);
    if (f == Rational(1, 3) || f == Rational(2, 3)) return Rational(-1, 2);
    if (f == Rational(1, 4) || f == Rational(3, 4)) return Rational(0);
    if (f == Rational(1, 6) || f == Rational(5, 6)) return Rational(1, 2);
    return std::nullopt;
}

}  // namespace

std::vector<StringTerm> enumerate_strings(long y, long b, long mu_index) {
    if (mu_index < 1 || mu_index > b) throw PreconditionViolation("mu index must lie in [1, b]");
    if (y < 1) throw PreconditionViolation("y must be positive");
    const long g = mu_index - 1;
    const long j = b - g;
    auto partitions = vandermonde_sq_partitions(b);
    std::vector<StringTerm> out;
    for (const auto& [pattern, lambda] : partitions) {
        // all distinct (small multiset | large multiset) splits of the pattern
        std::set<std::pair<std::vector<long>, std::vector<long>>> seen;
        std::vector<long> comb(g);
        std::iota(comb.begin(), comb.end(), 0);
        bool more = true;
        if (g == 0) {
            std::vector<long> small = pattern;
            out.push_back({y, b, mu_index, small, {}, lambda,
                           choose_ll(b, j) * choose_ll(y, g) * multiset_orderings(small)});
            continue;
        }
        while (more) {
            std::vector<long> large, small;
            std::vector<bool> in(b, false);
            for (long c : comb) in[c] = true;
            for (long i = 0; i < b; ++i) (in[i] ? large : small).push_back(pattern[i]);
            std::sort(large.begin(), large.end(), std::greater<>());
            std::sort(small.begin(), small.end(), std::greater<>());
            if (seen.insert({small, large}).second) {
                long count = choose_ll(b, j) * choose_ll(y, g) * multiset_orderings(small) *
                             multiset_orderings(large);
                out.push_back({y, b, mu_index, small, large, lambda, count});
            }
            // next combination
            long i = g - 1;
            while (i >= 0 && comb[i] == b - g + i) --i;
            if (i < 0) {
                more = false;
            } else {
                ++comb[i];
                for (long k2 = i + 1; k2 < g; ++k2) comb[k2] = comb[k2 - 1] + 1;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const StringTerm& a, const StringTerm& b2) {
        if (a.small_weights != b2.small_weights) return a.small_weights < b2.small_weights;
        return a.large_weights < b2.large_weights;
    });
    return out;
}

namespace {

std::optional<Rational> theta_for(const StringTerm& t, long m, const std::vector<long>& v,
                                  const std::vector<long>& V, const std::vector<long>& Ismall,
                                  const std::vector<long>& Ilarge) {
    const long y = t.y, b = t.b;
    long num = 0;
    for (size_t i = 0; i < t.large_weights.size(); ++i) {
        num += b * (b - 1 + m) * Ilarge[i];
        num += b * b * V[i] * Ilarge[i];
        num -= b * t.large_weights[i] * Ilarge[i];
    }
    for (size_t i = 0; i < t.small_weights.size(); ++i) {
        num += y * y * Ismall[i] * v[i];
        num += y * (1 - m) * Ismall[i];
        num += y * Ismall[i] * t.small_weights[i];
    }
    return rational_cos(Rational(num, y * b));
}

/// theta over every assignment of distinct branch indices to the string's
/// slots. The residue conditions make it assignment independent; a genuine
/// conflict means the term was mis-enumerated, so it is an error, while a
/// uniformly irrational theta means the tuple is dropped.
std::optional<Rational> theta_checked(const StringTerm& t, long m, const std::vector<long>& v,
                                      const std::vector<long>& V) {
    const long y = t.y, b = t.b;
    const long j = static_cast<long>(t.small_weights.size());
    const long g = static_cast<long>(t.large_weights.size());
    std::vector<std::optional<Rational>> seen;
    std::vector<long> small_sel, large_sel;
    std::vector<bool> used_s(b, false), used_l(y, false);
    std::function<void()> rec = [&]() {
        if (static_cast<long>(small_sel.size()) < j) {
            for (long c = 0; c < b; ++c) {
                if (used_s[c]) continue;
                used_s[c] = true;
                small_sel.push_back(c);
                rec();
                small_sel.pop_back();
                used_s[c] = false;
            }
            return;
        }
        if (static_cast<long>(large_sel.size()) < g) {
            for (long c = 0; c < y; ++c) {
                if (used_l[c]) continue;
                used_l[c] = true;
                large_sel.push_back(c);
                rec();
                large_sel.pop_back();
                used_l[c] = false;
            }
            return;
        }
        seen.push_back(theta_for(t, m, v, V, small_sel, large_sel));
    };
    rec();
    bool any_rational = false, any_irrational = false;
    std::optional<Rational> agreed;
    for (const auto& th : seen) {
        if (!th) {
            any_irrational = true;
        } else {
            any_rational = true;
            if (!agreed) agreed = th;
            if (!(*agreed == *th)) throw Error("theta varies across branch assignments", 3);
        }
    }
    if (any_rational && any_irrational)
        throw Error("theta rational for some branch assignments only", 3);
    return agreed;
}

}  // namespace

StringSeriesResult string_series(const StringTerm& term, long m, long order) {
    const long y = term.y, b = term.b;
    const long j = static_cast<long>(term.small_weights.size());
    const long g = static_cast<long>(term.large_weights.size());
    StringSeriesResult res;
    res.series = PuiseuxSeries(1, Rational(order));

    std::vector<long> v(j, 0), V(g, 0);
    auto advance = [&](std::vector<long>& t, long base) {
        for (size_t i = 0; i < t.size(); ++i) {
            if (++t[i] < base) return true;
            t[i] = 0;
        }
        return t.empty() ? false : false;
    };

    // iterate all residue tuples
    bool more_v = true;
    while (more_v) {
        bool more_V = true;
        std::fill(V.begin(), V.end(), 0);
        while (more_V) {
            long s = j * (1 - b - m);
            for (long i = 0; i < j; ++i) s += y * v[i] + term.small_weights[i];
            if (mod(s, b) == 0) {
                Rational Q = Rational(s, b);
                for (long i = 0; i < g; ++i) Q += V[i];
                Rational Qm = Q + Rational(m);
                if (Qm.is_integer() && mod(Qm.num().get_si(), y) == 0 && Qm >= Rational(0)) {
                    auto th = theta_checked(term, m, v, V);
                    if (!th) {
                        res.dropped_irrational++;
                    } else if (!th->is_zero()) {
                        // product of the per-slot binomial sums
                        PuiseuxSeries prod = PuiseuxSeries::monomial(1, 0, 1, Rational(order));
                        for (long i = 0; i < j; ++i) {
                            PuiseuxSeries f(1, Rational(order));
                            for (long n = 0; y * n < order; ++n) {
                                Rational top((b * n + v[i]) * (y + b) + 1 + term.small_weights[i] -
                                                 m - b,
                                             b);
                                Rational c = binom_general(top, b * n + v[i]);
                                if (!c.is_zero()) f.set(Rational(y * n), c);
                            }
                            prod = prod * f;
                        }
                        for (long i = 0; i < g; ++i) {
                            PuiseuxSeries f(1, Rational(order));
                            for (long n = 0; y * n < order; ++n) {
                                Rational top((y * n + V[i]) * (y + b) + b + m - 1 -
                                                 term.large_weights[i],
                                             y);
                                Rational c = binom_general(top, y * n + V[i]);
                                if (!c.is_zero()) f.set(Rational(y * n), c);
                            }
                            prod = prod * f;
                        }
                        long denom = 1;
                        for (long i = 0; i < j; ++i) denom *= b;
                        for (long i = 0; i < g; ++i) denom *= y;
                        Rational pref = Rational(term.lambda * term.p_count, denom) * (*th);
                        if ((g + 1 + m) % 2 != 0) pref = -pref;
                        long base = Qm.num().get_si();
                        PuiseuxSeries shifted = prod.shifted(base);
                        shifted.set_truncation(Rational(order));
                        res.series += shifted * pref;
                        res.solutions.push_back({v, V, *th, Q});
                    }
                }
            }
            more_V = advance(V, y);
        }
        more_v = advance(v, b);
    }
    return res;
}

PuiseuxSeries string_denominator_j1(long y, long b, long m, long order, long max_mu) {
    PuiseuxSeries total(1, Rational(order));
    for (long mu = 1; mu <= max_mu; ++mu) {
        for (const auto& t : enumerate_strings(y, b, mu)) {
            total += string_series(t, m, order).series;
        }
    }
    return total;
}

}  // namespace walkgf
