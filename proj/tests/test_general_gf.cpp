#include <doctest.h>

#include "walkgf/barrier_gf.hpp"
#include "walkgf/chain.hpp"
#include "walkgf/general_gf.hpp"

using namespace walkgf;

namespace {

Polynomial poly_from(std::initializer_list<std::pair<long, Rational>> cs) {
    Polynomial p;
    for (const auto& [e, c] : cs) p.set(e, c);
    return p;
}

bool same_gf(const RationalGF& gf, const Polynomial& num, const Polynomial& den) {
    return gf.num() * den == gf.den() * num && !den.is_zero();
}

}  // namespace

TEST_SUITE("residues and overlap") {
    TEST_CASE("residue triples") {
        ResidueTriple r = solve_residues(3, 12);
        CHECK(r.v0 == 1);
        CHECK(r.v1 == 0);
        CHECK(r.v2 == 2);
        ResidueTriple q = solve_residues(5, 22);
        CHECK(q.v0 == 1);
        CHECK(q.v1 == 4);
        CHECK(q.v2 == 2);
    }

    TEST_CASE("degree bound and needed blocks") {
        auto ob = overlap_bound(3, 2, 26);
        CHECK(ob.u == 4);
        CHECK(ob.needed_mu == 1);
        CHECK(overlap_bound(3, 2, 28).needed_mu == 2);  // 26 is the last overlap-free m
        CHECK(ob.c_threshold == Rational(4, 5));
        // mu blocks beyond the second never matter for these walks
        for (long m = 6; m <= 60; m += 2) CHECK(overlap_bound(3, 2, m).needed_mu <= 2);
        CHECK(overlap_bound(4, 3, 40).c_threshold == Rational(9, 7));
        for (long m = 8; m <= 80; ++m) CHECK(overlap_bound(4, 3, m).needed_mu <= 2);
    }

    TEST_CASE("unique-pair bookkeeping behind the mu1 block") {
        for (long y = 3; y <= 7; ++y) {
            long g1 = (y - 1) * (y - 2) / 2;   // small-root Vandermonde pairs
            long g2 = y * (y - 1) / 2;         // large-root Vandermonde pairs
            long g3 = (2 * y - 1) * (y - 1);   // all pairs of the full discriminant
            CHECK(g1 + g2 == (y - 1) * (y - 1));
            CHECK(g3 - g1 - g2 == (y - 1) * y);  // the mixed pairs
        }
    }
}

TEST_SUITE("mu blocks") {
    TEST_CASE("mu1 reproduces the displayed denominators, up to scalars") {
        CHECK(mu1_poly(3, 14) == poly_from({{0, 4096}, {3, -1792}, {6, 36}}));
        Rational s;
        CHECK(Polynomial::proportional(mu1_poly(3, 20),
                                       poly_from({{9, 5}, {6, -492}, {3, 3328}, {0, -4096}}), &s));
        CHECK(Polynomial::proportional(mu1_poly(5, 22),
                                       poly_from({{10, 93}, {5, -4608}, {0, 16384}}), &s));
    }

    TEST_CASE("both double-sum variants agree where defined") {
        for (auto [y, m] : {std::pair<long, long>{3, 12}, {3, 14}, {3, 18}, {3, 20}, {5, 18}}) {
            auto v = mu1_poly_variant(y, m);
            REQUIRE(v.has_value());
            CHECK(*v == mu1_poly(y, m));
        }
        // (5, 22) hits a vanishing denominator in the bracket variant
        CHECK_FALSE(mu1_poly_variant(5, 22).has_value());
    }

    TEST_CASE("mu1 tails carry the known coefficients") {
        auto t18 = mu1_series(3, 18, 16);
        CHECK(t18.at(Rational(12)) == Rational(325, 8));
        CHECK(t18.at(Rational(15)) == Rational(9443, 128));
        auto t22 = mu1_series(5, 22, 21);
        CHECK(t22.at(Rational(15)) == Rational(315));
        CHECK(t22.at(Rational(20)) == Rational(92309, 256));
    }

    TEST_CASE("mu2 cancels the tails exactly") {
        auto m2_18 = mu2_poly(3, 18, 16);
        CHECK(m2_18.at(Rational(12)) == -Rational(325, 8));
        CHECK(m2_18.at(Rational(15)) == -Rational(9443, 128));
        auto m2_22 = mu2_poly(5, 22, 21);
        CHECK(m2_22.at(Rational(15)) == Rational(-315));
        CHECK(m2_22.at(Rational(20)) == Rational(-92309, 256));
    }

    TEST_CASE("beyond the second block the third one is genuinely needed") {
        // at z^25 the mu1 + mu2 residual survives; only mu3 would clear it
        auto m1 = mu1_series(5, 22, 26);
        auto m2 = mu2_poly(5, 22, 26);
        CHECK(m1.at(Rational(25)) + m2.at(Rational(25)) == Rational(63, 16384));
    }

    TEST_CASE("no overlap means mu2 is silent on the polynomial support") {
        for (auto [y, m] : {std::pair<long, long>{3, 14}, {3, 20}, {5, 22}, {3, 26}}) {
            auto ob = overlap_bound(y, 2, m);
            if (ob.needed_mu != 1) continue;
            auto m2 = mu2_poly(y, m, y * ob.u + 1);
            CHECK(m2.is_zero());
        }
    }

    TEST_CASE("decomposition assembles the displayed m = 18 denominator") {
        MuDecomposition d = mu_decompose(3, 18);
        CHECK(d.degree_bound_u == 3);
        CHECK(d.needed_mu == 2);
        CHECK(d.denominator ==
              poly_from({{9, -8}, {6, 4416}, {3, -45056}, {0, 65536}}));
        CHECK(d.mu2_block.at(Rational(9)) == Rational(-4));
    }
}

TEST_SUITE("numerator") {
    TEST_CASE("displayed numerator blocks, up to scalars") {
        auto n20 = numerator_series(3, 20, 20);
        Polynomial got;
        for (const auto& [k, c] : n20.raw_coeffs()) got.set(k, c);
        Rational s;
        CHECK(Polynomial::proportional(got, poly_from({{10, 32}, {13, 15}}), &s));

        auto n18 = numerator_series(3, 18, 16);
        Polynomial got18;
        for (const auto& [k, c] : n18.raw_coeffs()) got18.set(k, c);
        CHECK(Polynomial::proportional(got18, poly_from({{9, 16 * 16}, {12, 16 * 5}}), &s));
        CHECK(s == Rational(1));  // no residual scalar on this one

        auto n22 = numerator_series(5, 22, 30);
        Polynomial got22;
        for (const auto& [k, c] : n22.raw_coeffs()) got22.set(k, c);
        CHECK(Polynomial::proportional(got22, poly_from({{11, 1024}, {16, 80}}), &s));
    }

    TEST_CASE("the two numerator sums cancel beyond the support") {
        // orders past the polynomial support stay empty well into the tail
        auto n14 = numerator_series(3, 14, 22);
        for (long e = 11; e < 22; ++e) CHECK(n14.at(Rational(e)) == Rational(0));
    }
}

TEST_SUITE("two-back GF") {
    TEST_CASE("m = 18: the full display with its expansion") {
        auto gf = gf_two_back(3, 18);
        CHECK(same_gf(gf, poly_from({{9, 256}, {12, 80}}),
                      poly_from({{9, -8}, {6, 4416}, {3, -45056}, {0, 65536}})));
        auto e = gf.expand_raw(16);
        CHECK(e.at(Rational(9)) == Rational(1, 256));
        CHECK(e.at(Rational(12)) == Rational(1, 256));
        CHECK(e.at(Rational(15)) == Rational(635, 262144));
    }

    TEST_CASE("m = 14: GF and expansion") {
        auto gf = gf_two_back(3, 14);
        CHECK(same_gf(gf, poly_from({{7, 64}, {10, 6}}),
                      poly_from({{0, 4096}, {3, -1792}, {6, 36}})));
        auto e = gf.expand_raw(14);
        CHECK(e.at(Rational(7)) == Rational(1, 64));
        CHECK(e.at(Rational(10)) == Rational(17, 2048));
        CHECK(e.at(Rational(13)) == Rational(229, 65536));
    }

    TEST_CASE("m = 20: GF and expansion") {
        auto gf = gf_two_back(3, 20);
        Polynomial num = poly_from({{10, -32}, {13, -15}});                       // -z^10 (15z^3+32)
        Polynomial den = poly_from({{9, 20}, {6, -1968}, {3, 13312}, {0, -16384}});  // 4(...)
        CHECK(same_gf(gf, num, den));
        auto e = gf.expand_raw(17);
        CHECK(e.at(Rational(10)) == Rational(1, 512));
        CHECK(e.at(Rational(13)) == Rational(41, 16384));
        CHECK(e.at(Rational(16)) == Rational(943, 524288));
    }

    TEST_CASE("y = 5, m = 22: GF and expansion") {
        auto gf = gf_two_back(5, 22);
        Polynomial num = poly_from({{11, 1024}, {16, 80}});
        Polynomial den = poly_from({{10, 93 * 64}, {5, -4608 * 64}, {0, 16384 * 64}});
        CHECK(same_gf(gf, num, den));
        auto e = gf.expand_raw(22);
        CHECK(e.at(Rational(11)) == Rational(1, 1024));
        CHECK(e.at(Rational(16)) == Rational(23, 65536));
    }

    TEST_CASE("expansion equals the oracle through order 30") {
        for (auto [y, m] : {std::pair<long, long>{3, 20}, {3, 12}, {3, 16}, {5, 12}}) {
            auto gf = gf_two_back(y, m);
            auto chain = build_chain(WalkSpec{y, 2, m, m - 1});
            auto oracle = first_passage_series(chain, m - 1, chain.inner_left(), 30);
            CHECK(gf.expand_oracle_frame(30) == oracle);
        }
    }

    TEST_CASE("regime sweep: degenerate, overlap-free and overlapping sizes") {
        // covers u = 0 (m = 6), the last overlap-free m, and overlap cases
        for (auto [y, m] : {std::pair<long, long>{3, 6}, {3, 8}, {3, 26}, {3, 28},
                            {5, 14}, {7, 20}}) {
            auto gf = gf_two_back(y, m);
            auto chain = build_chain(WalkSpec{y, 2, m, m - 1});
            auto oracle = first_passage_series(chain, m - 1, chain.inner_left(), 24);
            CHECK(gf.expand_oracle_frame(24) == oracle);
        }
    }

    TEST_CASE("regime preconditions") {
        CHECK_THROWS_AS(gf_two_back(4, 14), PreconditionViolation);  // even y
        CHECK_THROWS_AS(gf_two_back(3, 13), PreconditionViolation);  // odd m
    }
}

TEST_SUITE("exact 3f2b pipeline") {
    TEST_CASE("the u/g block equals the double-sum mu1 through the window") {
        for (long m : {12L, 18L, 24L}) {
            auto ug = mu1_block_ug(3, m, m);
            auto ds = mu1_series(3, m, m);
            CHECK(ug == ds);
        }
    }

    TEST_CASE("A-terms equal the operator-route mu2 block") {
        for (long kappa : {1L, 2L, 3L}) {
            auto a = a_terms_3f2b(kappa, 6 * kappa + 9);
            auto op = mu2_poly(3, 6 * kappa, 6 * kappa + 9);
            CHECK(a == op);
        }
    }

    TEST_CASE("kappa = 3 collapses onto the generic two-back GF") {
        auto a = gf_exact_3f2b(3);
        auto b = gf_two_back(3, 18);
        CHECK(a.num() == b.num());
        CHECK(a.den() == b.den());
        CHECK(a.shift() == b.shift());
    }

    TEST_CASE("kappa = 2 equals the oracle through order 30") {
        auto gf = gf_exact_3f2b(2);
        auto chain = build_chain(WalkSpec{3, 2, 12, 11});
        CHECK(gf.expand_oracle_frame(30) ==
              first_passage_series(chain, 11, chain.inner_left(), 30));
    }
}

TEST_SUITE("string calculus") {
    TEST_CASE("partition constants from the squared Vandermonde") {
        auto p2 = vandermonde_sq_partitions(2);
        REQUIRE(p2.size() == 2);  // P = 2
        CHECK(p2[0] == std::pair<std::vector<long>, long>{{1, 1}, -2});
        CHECK(p2[1] == std::pair<std::vector<long>, long>{{2, 0}, 1});

        auto p3 = vandermonde_sq_partitions(3);
        REQUIRE(p3.size() == 5);  // P = 5
        std::map<std::vector<long>, long> want{{{4, 2, 0}, 1},
                                               {{4, 1, 1}, -2},
                                               {{3, 3, 0}, -2},
                                               {{3, 2, 1}, 2},
                                               {{2, 2, 2}, -6}};
        for (const auto& [pat, lam] : p3) CHECK(want.at(pat) == lam);
    }

    TEST_CASE("weights obey the string rules") {
        for (long mu = 1; mu <= 3; ++mu) {
            for (const auto& t : enumerate_strings(4, 3, mu)) {
                long sum = 0, len = 0;
                for (long w : t.small_weights) sum += w, ++len;
                for (long w : t.large_weights) sum += w, ++len;
                CHECK(sum == 3 * (3 - 1));  // rule 1
                CHECK(len == 3);            // rule 3
                for (long w : t.small_weights) CHECK(w <= 2 * (3 - 1));  // rule 2
                for (long w : t.large_weights) CHECK(w <= 2 * (3 - 1));
                CHECK(t.lambda != 0);  // rule 4 via the Vandermonde expansion
            }
        }
    }

    TEST_CASE("element counts for y = 4, b = 3") {
        long c2 = 0, c3 = 0;
        for (const auto& t : enumerate_strings(4, 3, 2)) c2 += t.p_count;
        for (const auto& t : enumerate_strings(4, 3, 3)) c3 += t.p_count;
        CHECK(c2 == 228);
        CHECK(c3 == 342);
    }

    TEST_CASE("the worked m = 12 string series") {
        auto terms = enumerate_strings(3, 2, 1);
        REQUIRE(terms.size() == 2);
        PuiseuxSeries mu1_strings(1, Rational(13));
        for (const auto& t : terms) mu1_strings += string_series(t, 12, 13).series;
        CHECK(mu1_strings.at(Rational(0)) == Rational(1));
        CHECK(mu1_strings.at(Rational(3)) == Rational(-10));
        CHECK(mu1_strings.at(Rational(6)) == Rational(3));

        auto mu2_terms = enumerate_strings(3, 2, 2);
        // the mixed split r^1 R^1 leads with -2 z^6 across its six strings
        for (const auto& t : mu2_terms) {
            if (t.small_weights == std::vector<long>{1}) {
                CHECK(t.p_count == 6);
                auto r = string_series(t, 12, 8);
                CHECK(r.series.at(Rational(6)) == Rational(-2));
            }
        }

        auto total = string_denominator_j1(3, 2, 12, 13, 2);
        CHECK(total.at(Rational(0)) == Rational(1));
        CHECK(total.at(Rational(3)) == Rational(-10));
        CHECK(total.at(Rational(6)) == Rational(1));
        CHECK(total.at(Rational(9)) == Rational(0));  // cancelled between the blocks
        // every emitted exponent sits on the y-lattice after the z^{Q+m} shift
        for (const auto& t : terms)
            for (const auto& [e, c] : string_series(t, 12, 13).series.raw_coeffs())
                CHECK(e % 3 == 0);
        for (const auto& t : mu2_terms)
            for (const auto& [e, c] : string_series(t, 12, 13).series.raw_coeffs())
                CHECK(e % 3 == 0);
    }

    TEST_CASE("residue solutions carry the worked thetas") {
        StringTerm rr;  // r_1^1 r_2^1
        for (const auto& t : enumerate_strings(3, 2, 1))
            if (t.small_weights == std::vector<long>{1, 1}) rr = t;
        auto res = string_series(rr, 12, 10);
        REQUIRE(res.solutions.size() == 2);
        for (const auto& sol : res.solutions) {
            if (sol.v == std::vector<long>{0, 0}) {
                CHECK(sol.theta == Rational(1));
                CHECK(sol.Q == Rational(-12));
            } else {
                CHECK(sol.v == std::vector<long>{1, 1});
                CHECK(sol.theta == Rational(-1));
                CHECK(sol.Q == Rational(-9));
            }
        }
    }

    TEST_CASE("rescaled strings reproduce the real denominator") {
        // z^{yn} coefficient maps by 2^{m-2-(y+b)n}
        for (long m : {12L, 14L}) {
            auto j1 = string_denominator_j1(3, 2, m, 3 * overlap_bound(3, 2, m).u + 1, 2);
            MuDecomposition d = mu_decompose(3, m);
            Polynomial rescaled;
            for (const auto& [k, c] : j1.raw_coeffs()) {
                long n = k / 3;
                rescaled.set(k, c * Rational::pow2(m - 2 - 5 * n));
            }
            CHECK(rescaled == d.denominator);
        }
    }

    TEST_CASE("b = 1 degenerates to the u-polynomial") {
        for (auto [y, m] : {std::pair<long, long>{2, 8}, {3, 9}}) {
            auto terms = enumerate_strings(y, 1, 1);
            REQUIRE(terms.size() == 1);
            CHECK(terms[0].lambda == 1);
            CHECK(terms[0].small_weights == std::vector<long>{0});
            auto r = string_series(terms[0], m, y * m);
            auto u = u_poly(y, m);
            // j = 1 coefficients rescale by 2^{m-1-(y+1)n} below z^m, where the
            // single higher block (one large root swapped in) takes over
            Rational sign = 0;
            for (const auto& [k, c] : r.series.raw_coeffs()) {
                if (k >= m) continue;
                long n = k / y;
                Rational want = u.poly.at(k);
                Rational got = c * Rational::pow2(m - 1 - (y + 1) * n);
                if (sign.is_zero()) sign = want / got;
                CHECK(got * sign == want);
            }
            CHECK((sign == Rational(1) || sign == Rational(-1)));
            // every u-polynomial exponent is hit
            for (const auto& [e, c] : u.poly.coeffs())
                CHECK(r.series.at(Rational(e)) != Rational(0));
        }
    }
}
