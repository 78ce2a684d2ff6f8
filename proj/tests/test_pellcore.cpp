#include <doctest.h>

#include <algorithm>
#include <vector>

#include "pelltri/oracle.hpp"
#include "pelltri/pellcore.hpp"

using namespace pelltri;

namespace {

// Independent CF oracle: partial quotients of sqrt(D) from the plain
// Euclidean expansion of the rational isqrt(D * 10^80) / 10^40. Valid as
// long as the convergent denominators stay far below 10^40.
std::vector<Int> cf_oracle(const Int& D, std::size_t count) {
    Int scale = 1;
    for (int i = 0; i < 40; ++i) scale *= 10;
    Int num = isqrt(D * scale * scale);
    Int den = scale;
    std::vector<Int> terms;
    while (terms.size() < count + 1 && den != 0) {
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        terms.push_back(q);
        num = den;
        den = r;
    }
    terms.erase(terms.begin());  // drop a0, keep a_1..a_count
    terms.resize(count);
    return terms;
}

// Expand (x + y*sqrt(D))^n as a + b*sqrt(D) with the binomial theorem;
// a second route for the power recurrences.
std::pair<Int, Int> binomial_power(const Int& x, const Int& y, const Int& D, unsigned long n) {
    Int a = 0, b = 0;
    for (unsigned long i = 0; i <= n; ++i) {
        Int c;
        mpz_bin_uiui(c.get_mpz_t(), n, i);
        Int xp = 1, yp = 1, dp = 1;
        for (unsigned long j = 0; j < n - i; ++j) xp *= x;
        for (unsigned long j = 0; j < i; ++j) yp *= y;
        for (unsigned long j = 0; j < i / 2; ++j) dp *= D;
        Int term = c * xp * yp * dp;
        if (i % 2 == 0) a += term;
        else b += term;
    }
    return {a, b};
}

}  // namespace

TEST_CASE("isqrt") {
    CHECK(isqrt(Int(0)) == 0);
    CHECK(isqrt(Int(102)) == 10);
    Int big("226153980");
    CHECK(isqrt(big * big) == big);
    CHECK(isqrt(big * big - 1) == big - 1);
}

TEST_CASE("cf_sqrt basic periods") {
    CFExpansion cf2 = cf_sqrt(Int(2));
    CHECK(cf2.a0 == 1);
    REQUIRE(cf2.period.size() == 1);
    CHECK(cf2.period[0] == 2);

    CFExpansion cf3 = cf_sqrt(Int(3));
    CHECK(cf3.a0 == 1);
    REQUIRE(cf3.period.size() == 2);
    CHECK(cf3.period[0] == 1);
    CHECK(cf3.period[1] == 2);

    CHECK_THROWS_AS(cf_sqrt(Int(4)), PerfectSquareError);
}

TEST_CASE("cf_sqrt against the long-division oracle") {
    for (long D = 2; D <= 102; ++D) {
        if (is_perfect_square(Int(D))) continue;
        std::vector<Int> got = cf_terms(Int(D), 10);
        std::vector<Int> want = cf_oracle(Int(D), 10);
        CAPTURE(D);
        CHECK(got == want);
    }
}

TEST_CASE("cf period is purely periodic and ends at 2*a0") {
    for (long D = 2; D <= 500; ++D) {
        if (is_perfect_square(Int(D))) continue;
        CFExpansion cf = cf_sqrt(Int(D));
        CAPTURE(D);
        REQUIRE(!cf.period.empty());
        CHECK(cf.period.back() == 2 * cf.a0);
        CHECK(cf.a0 * cf.a0 < cf.D);
        CHECK(cf.D < (cf.a0 + 1) * (cf.a0 + 1));
        // The walk continued past the period reproduces the period.
        std::vector<Int> twice = cf_terms(Int(D), 2 * cf.period.size());
        for (std::size_t i = 0; i < cf.period.size(); ++i) {
            CHECK(twice[i] == cf.period[i]);
            CHECK(twice[i + cf.period.size()] == cf.period[i]);
        }
    }
}

TEST_CASE("cf period last term for D up to 10^4") {
    for (long D = 2; D <= 10000; ++D) {
        if (is_perfect_square(Int(D))) continue;
        CFExpansion cf = cf_sqrt(Int(D));
        if (cf.period.back() != 2 * cf.a0) {
            CAPTURE(D);
            CHECK(cf.period.back() == 2 * cf.a0);
        }
    }
}

TEST_CASE("simple_fundamental known values") {
    PellPair f6 = simple_fundamental(Int(6));
    CHECK(f6.x == 5);
    CHECK(f6.y == 2);
    PellPair f61 = simple_fundamental(Int(61));
    CHECK(f61.x == Int("1766319049"));
    CHECK(f61.y == Int("226153980"));
    PellPair f8 = simple_fundamental(Int(8));
    CHECK(f8.x == 3);
    CHECK(f8.y == 1);
    CHECK_THROWS_AS(simple_fundamental(Int(9)), PerfectSquareError);
}

TEST_CASE("simple_fundamental is minimal (direct scan)") {
    for (long D = 2; D <= 102; ++D) {
        if (is_perfect_square(Int(D))) continue;
        PellPair f = simple_fundamental(Int(D));
        CAPTURE(D);
        for (Int y = 1; y < f.y; ++y) {
            Int x2 = 1 + Int(D) * y * y;
            CHECK(!is_perfect_square(x2));
        }
    }
}

TEST_CASE("PellPair rejects non-solutions") {
    CHECK_THROWS_AS(PellPair(Int(3), Int(1), Int(6)), std::logic_error);
}

TEST_CASE("nth_simple_solution") {
    PellPair f2 = simple_fundamental(Int(2));
    PellPair n0 = nth_simple_solution(f2, 0);
    CHECK(n0.x == 1);
    CHECK(n0.y == 0);
    PellPair n2 = nth_simple_solution(f2, 2);
    CHECK(n2.x == 17);
    CHECK(n2.y == 12);
    PellPair f6 = simple_fundamental(Int(6));
    PellPair m2 = nth_simple_solution(f6, 2);
    CHECK(m2.x == 49);  // (5 + 2*sqrt(6))^2 = 49 + 20*sqrt(6)
    CHECK(m2.y == 20);
}

TEST_CASE("nth_simple_solution equals the binomial expansion") {
    for (long D = 2; D <= 102; ++D) {
        if (is_perfect_square(Int(D))) continue;
        PellPair f = simple_fundamental(Int(D));
        for (unsigned long n = 0; n <= 10; ++n) {
            PellPair got = nth_simple_solution(f, n);
            auto [a, b] = binomial_power(f.x, f.y, f.D, n);
            CAPTURE(D);
            CAPTURE(n);
            CHECK(got.x == a);
            CHECK(got.y == b);
        }
    }
}

TEST_CASE("generalized_fundamentals known sets") {
    auto set13 = generalized_fundamentals(Int(13), Int(-12));
    CHECK(set13.rho() == 6);
    std::vector<GenPair> want13 = {{Int(1), Int(1)},  {Int(-1), Int(1)}, {Int(25), Int(7)},
                                   {Int(-25), Int(7)}, {Int(14), Int(4)}, {Int(-14), Int(4)}};
    std::sort(want13.begin(), want13.end());
    auto got13 = set13.fundamentals;
    std::sort(got13.begin(), got13.end());
    CHECK(got13 == want13);

    auto set2 = generalized_fundamentals(Int(2), Int(-1));
    REQUIRE(set2.rho() == 1);
    CHECK(set2.fundamentals[0] == GenPair{Int(1), Int(1)});

    auto set40 = generalized_fundamentals(Int(40), Int(-39));
    CHECK(set40.rho() == 4);
    std::vector<GenPair> want40 = {{Int(1), Int(1)},   {Int(-1), Int(1)},
                                   {Int(11), Int(2)},  {Int(-11), Int(2)}};
    std::sort(want40.begin(), want40.end());
    auto got40 = set40.fundamentals;
    std::sort(got40.begin(), got40.end());
    CHECK(got40 == want40);
}

TEST_CASE("every listed fundamental satisfies its equation") {
    for (long D = 2; D <= 102; ++D) {
        if (is_perfect_square(Int(D))) continue;
        Int N(1 - D);
        auto set = generalized_fundamentals(Int(D), N);
        for (const GenPair& g : set.fundamentals) {
            CAPTURE(D);
            CHECK(g.X * g.X - Int(D) * g.Y * g.Y == N);
            CHECK(g.Y > 0);
        }
    }
}

TEST_CASE("scan and cf enumerations agree with the brute oracle") {
    for (long D = 2; D <= 102; ++D) {
        if (is_perfect_square(Int(D))) continue;
        Int N(1 - D);
        auto a = generalized_fundamentals_scan(Int(D), N).fundamentals;
        auto b = generalized_fundamentals_cf(Int(D), N).fundamentals;
        PellPair f = simple_fundamental(Int(D));
        Int bound = isqrt(Int(D - 1) * (f.x + 1) / (2 * Int(D))) + 2;
        auto c = brute_generalized_fundamentals(Int(D), N, bound);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::sort(c.begin(), c.end());
        CAPTURE(D);
        CHECK(a == b);
        CHECK(a == c);
    }
}

TEST_CASE("branch_equivalent") {
    PellPair f2 = simple_fundamental(Int(2));
    CHECK(branch_equivalent({Int(1), Int(1)}, {Int(-1), Int(1)}, f2));

    PellPair f13 = simple_fundamental(Int(13));
    CHECK_FALSE(branch_equivalent({Int(1), Int(1)}, {Int(25), Int(7)}, f13));
    CHECK(branch_equivalent({Int(25), Int(7)}, {Int(25), Int(7)}, f13));

    PellPair f5 = simple_fundamental(Int(5));
    CHECK_FALSE(branch_equivalent({Int(1), Int(1)}, {Int(-1), Int(1)}, f5));
    // (4,2) and (-4,2) head the same branch for k=5
    CHECK(branch_equivalent({Int(4), Int(2)}, {Int(-4), Int(2)}, f5));
}

TEST_CASE("step_branch and friends") {
    PellPair f6 = simple_fundamental(Int(6));
    CHECK(step_branch({Int(1), Int(1)}, f6) == GenPair{Int(17), Int(7)});
    CHECK(step_branch({Int(-1), Int(1)}, f6) == GenPair{Int(7), Int(3)});
    PellPair f2 = simple_fundamental(Int(2));
    CHECK(step_branch({Int(1), Int(1)}, f2) == GenPair{Int(7), Int(5)});

    CHECK(step_branch_second_order({Int(17), Int(7)}, {Int(1), Int(1)}, Int(5)) ==
          GenPair{Int(169), Int(69)});
    CHECK(step_branch_second_order({Int(7), Int(3)}, {Int(-1), Int(1)}, Int(5)) ==
          GenPair{Int(71), Int(29)});

    // back-step inverts a forward step
    GenPair p{Int(17), Int(7)};
    CHECK(step_branch_back(step_branch(p, f6), f6) == p);
}

TEST_CASE("second-order steps equal first-order steps along every branch") {
    for (long D = 2; D <= 102; ++D) {
        if (is_perfect_square(Int(D))) continue;
        PellPair f = simple_fundamental(Int(D));
        auto set = generalized_fundamentals(Int(D), Int(1 - D));
        for (const GenPair& head : set.fundamentals) {
            GenPair prev2 = head;
            GenPair prev = step_branch(head, f);
            for (int i = 0; i < 10; ++i) {
                GenPair via1 = step_branch(prev, f);
                GenPair via2 = step_branch_second_order(prev, prev2, f.x);
                CAPTURE(D);
                CHECK(via1 == via2);
                prev2 = prev;
                prev = via1;
            }
        }
    }
}

TEST_CASE("chebyshev_eval") {
    ChebyshevPair c1 = chebyshev_eval(1, Int(5));
    CHECK(c1.first_kind == 5);
    CHECK(c1.second_kind == 1);
    ChebyshevPair c2 = chebyshev_eval(2, Int(5));
    CHECK(c2.first_kind == 49);
    CHECK(c2.second_kind == 10);
    ChebyshevPair c0 = chebyshev_eval(0, Int(5));
    CHECK(c0.first_kind == 1);
    CHECK(c0.second_kind == 0);
    ChebyshevPair cm = chebyshev_eval(-1, Int(5));
    CHECK(cm.first_kind == 5);
    CHECK(cm.second_kind == -1);
}

TEST_CASE("chebyshev form reproduces automorphism steps") {
    for (long D : {2L, 6L, 13L, 40L, 61L}) {
        PellPair f = simple_fundamental(Int(D));
        auto set = generalized_fundamentals(Int(D), Int(1 - D));
        for (const GenPair& head : set.fundamentals) {
            GenPair cur = head;
            for (long n = 0; n <= 10; ++n) {
                ChebyshevPair ch = chebyshev_eval(n, f.x);
                GenPair via_ch{head.X * ch.first_kind + f.D * head.Y * f.y * ch.second_kind,
                               head.X * f.y * ch.second_kind + head.Y * ch.first_kind};
                CAPTURE(D);
                CAPTURE(n);
                CHECK(via_ch == cur);
                cur = step_branch(cur, f);
            }
        }
    }
}

TEST_CASE("squarefree_split") {
    SquareFreeSplit s8 = squarefree_split(Int(8));
    CHECK(s8.c == 2);
    CHECK(s8.kprime == 2);
    SquareFreeSplit s72 = squarefree_split(Int(72));
    CHECK(s72.c == 6);
    CHECK(s72.kprime == 2);
    SquareFreeSplit s13 = squarefree_split(Int(13));
    CHECK(s13.c == 1);
    CHECK(s13.kprime == 13);
    // k = c^2 * kprime and kprime square-free, over a range
    for (long k = 2; k <= 400; ++k) {
        SquareFreeSplit sp = squarefree_split(Int(k));
        CHECK(sp.c * sp.c * sp.kprime == k);
        for (Int d = 2; d * d <= sp.kprime; ++d) {
            CHECK(sp.kprime % (d * d) != 0);
        }
    }
}
