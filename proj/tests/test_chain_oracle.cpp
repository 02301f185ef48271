#include <doctest.h>

#include "walkgf/chain.hpp"

using namespace walkgf;

namespace {

Rational coeff(const PuiseuxSeries& s, long e) { return s.at(Rational(e)); }

}  // namespace

TEST_SUITE("chain construction") {
    TEST_CASE("the 7x7 heptadiagonal matrix for y=2, b=1, m=5") {
        auto chain = build_chain(WalkSpec{2, 1, 5, 1});
        auto mat = chain.dense_matrix();
        REQUIRE(mat.size() == 7);
        Rational h(1, 2);
        std::vector<std::vector<Rational>> want = {
            {1, 0, 0, 0, 0, 0, 0},
            {h, 0, 0, h, 0, 0, 0},
            {0, h, 0, 0, h, 0, 0},
            {0, 0, h, 0, 0, h, 0},
            {0, 0, 0, h, 0, 0, h},
            {0, 0, 0, 0, 0, 1, 0},
            {0, 0, 0, 0, 0, 0, 1},
        };
        CHECK(mat == want);
        // transient rows sum to one
        for (long s = 1; s <= 4; ++s) {
            Rational sum = 0;
            for (const auto& v : mat[s]) sum += v;
            CHECK(sum == Rational(1));
        }
    }

    TEST_CASE("absorbing blocks for y=3, b=2, m=9") {
        auto chain = build_chain(WalkSpec{3, 2, 9, 2});
        CHECK(chain.left_set() == std::set<long>{0, 1});
        CHECK(chain.right_set() == std::set<long>{9, 10, 11});
        CHECK(chain.inner_left() == std::set<long>{1});
    }

    TEST_CASE("symmetric ruin on three cells") {
        auto chain = build_chain(WalkSpec{1, 1, 2, 1});
        CHECK(chain.states() == 3);
        auto s = first_passage_series(chain, 1, {0}, 3);
        CHECK(coeff(s, 1) == Rational(1, 2));  // one fair step to the left barrier
    }

    TEST_CASE("invalid specifications are rejected") {
        CHECK_THROWS_AS(build_chain(WalkSpec{2, 1, 1, 0}), InvalidSpec);   // m <= b
        CHECK_THROWS_AS(build_chain(WalkSpec{2, 1, 5, 0}), InvalidSpec);   // s < b
        CHECK_THROWS_AS(build_chain(WalkSpec{2, 1, 5, 5}), InvalidSpec);   // s > m-1
        CHECK_THROWS_AS(build_chain(WalkSpec{0, 1, 5, 1}), InvalidSpec);
        CHECK_THROWS_AS(build_chain(WalkSpec{2, 1, 5, 1, Rational(1)}), InvalidSpec);
    }
}

TEST_SUITE("first passage") {
    TEST_CASE("right-block series from s = 7, m = 8 under back-step marking") {
        auto chain = build_chain(WalkSpec{2, 1, 8, 7});
        auto s = first_passage_series(chain, 7, chain.right_set(), 8);
        // the first seven coefficients agree with the horizon approximation;
        // at z^7 the true walk loses the barrier-crossing path of probability
        // 2^-11, so 15/1024 would be an over-count
        CHECK(coeff(s, 0) == Rational(1, 2));
        CHECK(coeff(s, 1) == Rational(1, 4));
        CHECK(coeff(s, 2) == Rational(1, 16));
        CHECK(coeff(s, 3) == Rational(1, 16));
        CHECK(coeff(s, 4) == Rational(3, 128));
        CHECK(coeff(s, 5) == Rational(7, 256));
        CHECK(coeff(s, 6) == Rational(3, 256));
        CHECK(coeff(s, 7) == Rational(15, 1024) - Rational(1, 2048));
    }

    TEST_CASE("start inside the target is absorbed at once") {
        auto chain = build_chain(WalkSpec{2, 1, 8, 7});
        auto s = first_passage_series(chain, 8, chain.right_set(), 4);
        CHECK(coeff(s, 0) == Rational(1));
        CHECK(coeff(s, 1) == Rational(0));
    }

    TEST_CASE("left-barrier leading term is the straight back-step path") {
        auto chain = build_chain(WalkSpec{2, 1, 8, 7});
        auto s = first_passage_series(chain, 7, {0}, 9);
        for (long e = 0; e < 7; ++e) CHECK(coeff(s, e) == Rational(0));
        CHECK(coeff(s, 7) == Rational(1, 128));
    }

    TEST_CASE("coefficients are probabilities with monotone partial sums") {
        for (auto w : {WalkSpec{2, 1, 7, 4}, WalkSpec{3, 2, 9, 5}, WalkSpec{1, 1, 4, 2}}) {
            auto chain = build_chain(w);
            auto s = first_passage_series(chain, w.s, chain.right_set(), 25);
            Rational partial = 0;
            for (long e = 0; e < 25; ++e) {
                Rational c = coeff(s, e);
                CHECK(c >= Rational(0));
                CHECK(c <= Rational(1));
                partial += c;
                CHECK(partial <= Rational(1));
            }
        }
    }

    TEST_CASE("conservation: cellwise series sum to the all-absorbing series") {
        WalkSpec w{3, 2, 9, 5};
        auto chain = build_chain(w);
        PuiseuxSeries total(1, Rational(20));
        std::set<long> all;
        for (long c : chain.left_set()) all.insert(c);
        for (long c : chain.right_set()) all.insert(c);
        for (long cell : all)
            total += first_passage_series(chain, w.s, {cell}, 20, Marking::TotalSteps);
        auto direct = first_passage_series(chain, w.s, all, 20, Marking::TotalSteps);
        CHECK(total == direct);
        // and the all-absorbing series is the step distribution of the
        // absorption time, so its partial sums grow toward one
        Rational sum = 0;
        for (long e = 0; e < 20; ++e) sum += coeff(direct, e);
        CHECK(sum <= Rational(1));
        CHECK(sum > Rational(9, 10));
    }

    TEST_CASE("markings are consistent: total steps rebin to back-steps") {
        WalkSpec w{2, 1, 8, 5};
        auto chain = build_chain(w);
        for (long cell : {0L, 8L, 9L}) {
            auto back = first_passage_series(chain, w.s, {cell}, 20);
            auto tot = first_passage_series(chain, w.s, {cell}, 40, Marking::TotalSteps);
            long d = cell - w.s;  // displacement fixes N = (d + (y+b)k)/y
            for (long k = 0; k < 20; ++k) {
                long num = d + 3 * k;
                if (num % 2 != 0 || num < 0) {
                    CHECK(coeff(back, k) == Rational(0));
                } else {
                    CHECK(coeff(back, k) == coeff(tot, num / 2));
                }
            }
        }
    }

    TEST_CASE("club walk: inner-cell absorption weight") {
        auto chain = build_chain(WalkSpec{3, 2, 9, 2});
        auto s = first_passage_series(chain, 2, {1}, 12, Marking::PeopleLeaving);
        CHECK(coeff(s, 4) == Rational(1, 8));  // leave, enter, leave, leave
        for (long e = 0; e < 4; ++e) CHECK(coeff(s, e) == Rational(0));
    }

    TEST_CASE("people marking doubles the back-step exponents") {
        WalkSpec w{3, 2, 11, 7};
        auto chain = build_chain(w);
        auto back = first_passage_series(chain, w.s, {1}, 15);
        auto people = first_passage_series(chain, w.s, {1}, 30, Marking::PeopleLeaving);
        for (long k = 0; k < 15; ++k) CHECK(coeff(back, k) == coeff(people, 2 * k));
        for (long e = 1; e < 30; e += 2) CHECK(coeff(people, e) == Rational(0));
    }

    TEST_CASE("one contributing step count per back-step count when y=2, b=1") {
        WalkSpec w{2, 1, 8, 5};
        auto chain = build_chain(w);
        auto tot = first_passage_series(chain, w.s, {0}, 40, Marking::TotalSteps);
        // displacement to the single cell fixes 2N - 3k, so the total-step
        // support is an arithmetic progression
        long seen = 0;
        for (long e = 0; e < 40; ++e)
            if (coeff(tot, e) != Rational(0)) {
                CHECK((2 * e + w.s) % 3 == 0);
                ++seen;
            }
        CHECK(seen > 3);
    }
}

TEST_SUITE("total absorption") {
    TEST_CASE("finite-horizon and eventual probabilities at m = 8") {
        auto chain = build_chain(WalkSpec{2, 1, 8, 7});
        CHECK(absorption_within_steps(chain, 7, chain.right_set(), 11) == Rational(1949, 2048));
        // summing the first seven back-step coefficients reproduces 15/16
        auto s = first_passage_series(chain, 7, chain.right_set(), 7);
        Rational sum = 0;
        for (long e = 0; e < 7; ++e) sum += coeff(s, e);
        CHECK(sum == Rational(15, 16));
    }

    TEST_CASE("absorption somewhere is certain") {
        for (auto w : {WalkSpec{2, 1, 8, 7}, WalkSpec{3, 2, 9, 4}, WalkSpec{5, 2, 11, 9},
                       WalkSpec{2, 1, 5, 2, Rational(2, 3)}}) {
            auto chain = build_chain(w);
            Rational l = total_absorption(chain, w.s, chain.left_set());
            Rational r = total_absorption(chain, w.s, chain.right_set());
            CHECK(l + r == Rational(1));
        }
    }

    TEST_CASE("linear solver rejects singular systems") {
        std::vector<std::vector<Rational>> a = {{1, 2}, {2, 4}};
        CHECK_THROWS_AS(solve_rational_system(a, {1, 2}), SingularSystem);
    }
}
