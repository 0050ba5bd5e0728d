#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cornerlab/numctx.hpp"

#include <random>

using namespace cornerlab;
using namespace cornerlab::numctx;

namespace {

GroupVector vec1(GroupReal x) { return GroupVector({std::move(x)}); }

}  // namespace

TEST_CASE("addition is componentwise and canonical") {
    ContextPtr ctx = sqrt_context({2});
    GroupReal a = GroupReal(Rat(1, 2));
    GroupReal b = GroupReal(Rat(1, 3)) + GroupReal::tag_unit(ctx, 0);
    GroupReal sum = a + b;
    CHECK(sum.rat() == Rat(5, 6));
    CHECK(sum.coeff(0) == 1);

    GroupReal x = GroupReal(Rat(7, 3)) + GroupReal::tag_unit(ctx, 0, Rat(-2, 5));
    GroupReal z = x + (-x);
    CHECK(z.is_rational());
    CHECK(z.rat() == 0);
    CHECK(z.coeffs().empty());

    GroupReal r2 = GroupReal::tag_unit(ctx, 0);
    GroupReal twice = r2 + r2;
    CHECK(twice.rat() == 0);
    CHECK(twice.coeff(0) == 2);
}

TEST_CASE("is_integer distinguishes integers, fractions and irrationals") {
    ContextPtr ctx = sqrt_context({2});
    CHECK(GroupReal(Rat(3)).is_integer());
    CHECK(!GroupReal(Rat(1, 2)).is_integer());
    CHECK(!GroupReal::tag_unit(ctx, 0).is_integer());
}

TEST_CASE("context mismatch is rejected") {
    ContextPtr c1 = sqrt_context({2});
    ContextPtr c2 = sqrt_context({2});
    GroupReal a = GroupReal::tag_unit(c1, 0);
    GroupReal b = GroupReal::tag_unit(c2, 0);
    CHECK_THROWS_AS(a + b, ContextMismatchError);
}

TEST_CASE("qlin_kernel on (omega, 1-omega, 1/2)") {
    ContextPtr ctx = sqrt_context({2});
    GroupReal omega = GroupReal::tag_unit(ctx, 0);
    std::vector<GroupVector> vs = {vec1(omega), vec1(GroupReal(Rat(1)) - omega), vec1(GroupReal(Rat(1, 2)))};
    ratlin::Mat k = qlin_kernel(vs);
    REQUIRE(k.size() == 2);
    CHECK(k[0] == ratlin::Vec{Rat(1), Rat(1), Rat(0)});
    CHECK(k[1] == ratlin::Vec{Rat(0), Rat(0), Rat(1)});
}

TEST_CASE("qlin_kernel of rational vectors is everything") {
    std::vector<GroupVector> vs = {vec1(GroupReal(Rat(1, 2))), vec1(GroupReal(Rat(2, 3)))};
    CHECK(qlin_kernel(vs).size() == 2);
}

TEST_CASE("qlin_kernel of a single tag is trivial") {
    ContextPtr ctx = sqrt_context({2});
    std::vector<GroupVector> vs = {vec1(GroupReal::tag_unit(ctx, 0))};
    CHECK(qlin_kernel(vs).empty());
}

TEST_CASE("qlin_kernel vectors really cancel the tag part") {
    ContextPtr ctx = sqrt_context({2, 3});
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<GroupVector> vs;
        for (int i = 0; i < 4; ++i) {
            GroupReal e = GroupReal(Rat(coef(rng), 2)) + GroupReal::tag_unit(ctx, 0, Rat(coef(rng))) +
                          GroupReal::tag_unit(ctx, 1, Rat(coef(rng), 3));
            vs.push_back(vec1(e));
        }
        for (const ratlin::Vec& lambda : qlin_kernel(vs)) {
            GroupReal acc = GroupReal(Rat(0));
            for (size_t i = 0; i < vs.size(); ++i) acc = acc + vs[i][0].scaled(lambda[i]);
            CHECK(acc.is_rational());
        }
    }
}

TEST_CASE("enclosures are exact for rationals and tight for sqrt2") {
    ContextPtr ctx = sqrt_context({2});
    RatInterval exact = enclose(GroupReal(Rat(1, 2)), Rat(1, 1000));
    CHECK(exact.lo == Rat(1, 2));
    CHECK(exact.hi == Rat(1, 2));

    GroupReal r2 = GroupReal::tag_unit(ctx, 0);
    RatInterval iv = enclose(r2, Rat(1, 100));
    CHECK(iv.width() <= Rat(1, 100));
    CHECK(iv.lo >= Rat(141, 100));
    CHECK(iv.hi <= Rat(142, 100));

    RatInterval neg = enclose(GroupReal(Rat(1)) - r2, Rat(1, 10));
    CHECK(neg.width() <= Rat(1, 10));
    CHECK(neg.contains(Rat(-414214, 1000000)));
}

TEST_CASE("enclosures are nested as the width shrinks") {
    ContextPtr ctx = sqrt_context({5});
    GroupReal x = GroupReal(Rat(3, 7)) + GroupReal::tag_unit(ctx, 0, Rat(-5, 3));
    RatInterval wide = enclose(x, Rat(1, 10));
    RatInterval narrow = enclose(x, Rat(1, 10000));
    CHECK(wide.contains(narrow));
}

TEST_CASE("compare separates values and certifies equality") {
    ContextPtr ctx = sqrt_context({2});
    GroupReal r2 = GroupReal::tag_unit(ctx, 0);
    CHECK(compare(r2, GroupReal(Rat(1))) == std::strong_ordering::greater);
    CHECK(compare(r2, r2) == std::strong_ordering::equal);
    CHECK(compare(GroupReal(Rat(1, 3)), GroupReal(Rat(1, 2))) == std::strong_ordering::less);
    CHECK(compare(r2, GroupReal(Rat(3, 2))) == std::strong_ordering::less);
}

TEST_CASE("declared independence: random rational combinations are nonzero") {
    ContextPtr ctx = sqrt_context({2, 3});
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        Rat l1(coef(rng), 3), l2(coef(rng), 2);
        GroupReal x = GroupReal::tag_unit(ctx, 0, l1) + GroupReal::tag_unit(ctx, 1, l2);
        if (l1 == 0 && l2 == 0)
            CHECK(compare(x, GroupReal(Rat(0))) == std::strong_ordering::equal);
        else
            CHECK(compare(x, GroupReal(Rat(0))) != std::strong_ordering::equal);
    }
}

TEST_CASE("canonical form survives long random operation chains") {
    ContextPtr ctx = sqrt_context({2, 3, 5});
    std::mt19937 rng(123);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> denom(1, 9);
    std::vector<GroupReal> pool = {GroupReal(Rat(0))};
    for (int i = 0; i < 10000; ++i) {
        GroupReal next;
        int op = i % 3;
        const GroupReal& a = pool[rng() % pool.size()];
        if (op == 0) {
            next = a + GroupReal::tag_unit(ctx, rng() % 3, Rat(coef(rng), denom(rng)));
        } else if (op == 1) {
            next = a - pool[rng() % pool.size()];
        } else {
            next = a.scaled(Rat(coef(rng), denom(rng)));
        }
        for (const auto& [t, c] : next.coeffs()) {
            (void)t;
            CHECK(c != 0);
        }
        pool.push_back(next);
        if (pool.size() > 64) pool.erase(pool.begin());
    }
}

TEST_CASE("floor and fractional part of irrationals") {
    ContextPtr ctx = sqrt_context({2});
    GroupReal r2 = GroupReal::tag_unit(ctx, 0);
    CHECK(floor_of(r2) == 1);
    CHECK(floor_of(r2.scaled(Rat(5))) == 7);  // 5*sqrt2 = 7.071...
    CHECK(floor_of(-r2) == -2);
    GroupReal f = fractional_part(r2.scaled(Rat(5)));
    CHECK(f.rat() == -7);
    CHECK(f.coeff(0) == 5);
}

TEST_CASE("sqrt oracle rejects bad radicands") {
    CHECK_THROWS_AS(SqrtOracle(4), InputError);
    CHECK_THROWS_AS(SqrtOracle(12), InputError);
    CHECK_THROWS_AS(SqrtOracle(1), InputError);
    CHECK_NOTHROW(SqrtOracle(30));
}

TEST_CASE("norm enclosure: rational exact, irrational tight") {
    ContextPtr ctx = sqrt_context({2});
    GroupVector v({GroupReal(Rat(3, 5)), GroupReal(Rat(4, 5))});
    RatInterval n = norm_enclosure(v, Rat(1, 1000));
    CHECK(n.lo == Rat(1));
    CHECK(n.hi == Rat(1));

    GroupVector w({GroupReal::tag_unit(ctx, 0)});
    RatInterval m = norm_enclosure(w, Rat(1, 1000));
    CHECK(m.width() <= Rat(1, 1000));
    // Must contain sqrt(2) = 1.4142135...
    CHECK(m.lo <= Rat(1414214, 1000000));
    CHECK(m.hi >= Rat(1414213, 1000000));
}
