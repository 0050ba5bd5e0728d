#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cornerlab/gjfun.hpp"

#include <random>

using namespace cornerlab;
using namespace cornerlab::gjfun;
using numctx::ContextPtr;
using numctx::GroupReal;
using numctx::sqrt_context;

namespace {

/// GMIC with a spike at x = 1/2 tall enough to beat f(1/4) + f(1/4);
/// breaks subadditivity.
PwlPeriodic spiked_gmic(const Rat& b) {
    PwlPeriodic g = gmic(b);
    Rat mid(1, 2);
    Rat bump = g(Rat(1, 4)) * 2 + Rat(1, 4);
    return PwlPeriodic({Rat(0), b, mid}, {Rat(0), Rat(1), bump});
}

/// Brute-force grid check of subadditivity at step 1/N.
bool grid_subadditive(const PwlPeriodic& f, long long N) {
    for (long long i = 0; i < N; ++i)
        for (long long j = i; j < N; ++j)
            if (f(Rat(i, N)) + f(Rat(j, N)) < f(Rat(i + j, N))) return false;
    return true;
}

}  // namespace

TEST_CASE("gmic evaluation") {
    PwlPeriodic g = gmic(Rat(2, 5));
    CHECK(g(Rat(1, 5)) == Rat(1, 2));
    CHECK(g(Rat(0)) == 0);
    CHECK(g(Rat(2, 5)) == 1);
    CHECK(g(Rat(7, 10)) == Rat(1, 2));
    for (const Rat& x : {Rat(1, 7), Rat(3, 4), Rat(9, 11)}) CHECK(g(x + 1) == g(x));
    CHECK(g(Rat(-1, 5)) == g(Rat(4, 5)));
}

TEST_CASE("evaluate at irrational points is exact") {
    ContextPtr ctx = sqrt_context({2});
    PwlPeriodic g = gmic(Rat(2, 5));
    GroupReal r2 = GroupReal::tag_unit(ctx, 0);
    // frac(sqrt2) = sqrt2 - 1 = 0.4142 > 2/5, so the wrap segment applies:
    // g(x) = (1 - x)/(1 - 2/5) = (1 - x) * 5/3.
    GroupReal v = evaluate(g, r2);
    GroupReal expected = (GroupReal(Rat(2)) - r2).scaled(Rat(5, 3));
    CHECK(v == expected);
}

TEST_CASE("subadditivity of gmic and failure with a witness on a spike") {
    CHECK(check_subadditive(gmic(Rat(2, 5))).subadditive);
    CHECK(grid_subadditive(gmic(Rat(2, 5)), 200));

    SubadditivityResult bad = check_subadditive(spiked_gmic(Rat(2, 5)));
    REQUIRE(!bad.subadditive);
    auto [u, v] = *bad.witness;
    PwlPeriodic f = spiked_gmic(Rat(2, 5));
    CHECK(f(u) + f(v) < f(u + v));

    CHECK(check_subadditive(PwlPeriodic({Rat(0)}, {Rat(0)})).subadditive);
}

TEST_CASE("breakpoint-complex decision agrees with the brute-force grid") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> dendist(3, 12), count(1, 4), val(0, 6);
    for (int trial = 0; trial < 100; ++trial) {
        long long den = dendist(rng);
        std::set<Rat> pts = {Rat(0)};
        int extra = count(rng);
        for (int i = 0; i < extra; ++i) pts.insert(Rat(1 + rng() % (den - 1), den));
        std::vector<Rat> xs(pts.begin(), pts.end());
        std::vector<Rat> vs;
        for (size_t i = 0; i < xs.size(); ++i) vs.emplace_back(Rat(val(rng), 4));
        PwlPeriodic f(xs, vs);
        CHECK(check_subadditive(f).subadditive == grid_subadditive(f, 4 * den));
    }
}

TEST_CASE("gmic is minimal; scaling breaks symmetry; spikes break subadditivity") {
    for (const Rat& b : {Rat(1, 4), Rat(2, 5), Rat(3, 7)}) {
        MinimalityReport rep = check_minimal_pure(gmic(b), b);
        CHECK(rep.minimal());
    }

    MinimalityReport half = check_minimal_pure(gmic(Rat(2, 5)).scaled(Rat(1, 2)), Rat(2, 5));
    CHECK(!half.minimal());
    CHECK(!half.symmetric);
    CHECK(half.subadditivity.subadditive);

    MinimalityReport spiked = check_minimal_pure(spiked_gmic(Rat(2, 5)), Rat(2, 5));
    CHECK(!spiked.subadditivity.subadditive);
}

TEST_CASE("near-one constant function fails symmetry") {
    // Continuous stand-in for "1 except at 0": a steep tent through 0.
    PwlPeriodic f({Rat(0), Rat(1, 100), Rat(99, 100)}, {Rat(0), Rat(1), Rat(1)});
    MinimalityReport rep = check_minimal_pure(f, Rat(2, 5));
    CHECK(!rep.symmetric);
}

TEST_CASE("slope lift values") {
    SublinearOneD psi = slope_lift(gmic(Rat(2, 5)));
    CHECK(psi.s_plus == Rat(5, 2));
    CHECK(psi.s_minus == Rat(5, 3));
    CHECK(psi.is_sublinear());

    CHECK(slope_lift(PwlPeriodic({Rat(0)}, {Rat(0)})) == SublinearOneD{Rat(0), Rat(0)});

    PwlPeriodic tent({Rat(0), Rat(1, 2)}, {Rat(0), Rat(1)});
    CHECK(slope_lift(tent) == SublinearOneD{Rat(2), Rat(2)});
}

TEST_CASE("slope lift equals the sup over sampled epsilon") {
    PwlPeriodic g = gmic(Rat(2, 5));
    SublinearOneD psi = slope_lift(g);
    for (const Rat& r : {Rat(1), Rat(-1), Rat(3, 7), Rat(-5, 3)}) {
        Rat sup;
        bool first = true;
        for (long long k = 1; k <= 10000; k *= 10) {
            // eps = 1/k
            Rat val = g(r / Rat(k)) * Rat(k);
            if (first || val > sup) sup = val;
            first = false;
        }
        CHECK(sup <= psi(r));
        // and pi <= psi at eps = 1.
        CHECK(g(r) <= psi(r));
    }
}

TEST_CASE("pi <= psi on a dense rational sample for minimal functions") {
    for (const Rat& b : {Rat(1, 4), Rat(2, 5), Rat(3, 7)}) {
        PwlPeriodic g = gmic(b);
        SublinearOneD psi = slope_lift(g);
        for (long long i = -120; i <= 120; ++i) {
            Rat r(i, 60);  // dense in [-2, 2]
            CHECK(g(r) <= psi(r));
        }
    }
}

TEST_CASE("liftability of minimal PWL functions") {
    LiftabilityResult res = check_liftable(gmic(Rat(2, 5)), Rat(2, 5));
    CHECK(res.minimality.minimal());
    CHECK(res.liftable);
    CHECK(*res.psi == SublinearOneD{Rat(5, 2), Rat(5, 3)});

    LiftabilityResult bad = check_liftable(gmic(Rat(2, 5)).scaled(Rat(1, 2)), Rat(2, 5));
    CHECK(!bad.liftable);
}

TEST_CASE("mixed minimality checks the five conditions") {
    PwlPeriodic g = gmic(Rat(2, 5));
    SublinearOneD psi = slope_lift(g);
    MixedMinimalReport ok = check_mixed_minimal(psi, g, Rat(2, 5), Rat(1));
    CHECK(ok.minimal());
    CHECK(ok.lipschitz_constant == Rat(5, 2));

    SublinearOneD doubled{psi.s_plus * 2, psi.s_minus * 2};
    MixedMinimalReport bad_psi = check_mixed_minimal(doubled, g, Rat(2, 5), Rat(1));
    CHECK(!bad_psi.psi_is_slope_lift);
    CHECK(!bad_psi.minimal());

    MixedMinimalReport bad_alpha = check_mixed_minimal(psi, g, Rat(2, 5), Rat(0));
    CHECK(!bad_alpha.nonneg_zero_alpha);
    CHECK(!bad_alpha.minimal());
}

TEST_CASE("lipschitz bound holds for every segment of minimal liftable functions") {
    for (const Rat& b : {Rat(1, 4), Rat(2, 5), Rat(3, 7)}) {
        PwlPeriodic g = gmic(b);
        SublinearOneD psi = slope_lift(g);
        Rat L = psi.lipschitz();
        for (size_t i = 0; i < g.segments(); ++i) {
            CHECK(g.slope(i) <= L);
            CHECK(g.slope(i) >= -L);
        }
    }
}

TEST_CASE("theta extraction sandwiches the exact coefficient") {
    ContextPtr ctx = sqrt_context({2});
    ShiftedFunction plain(gmic(Rat(2, 5)), AdditiveFunction{});
    std::vector<ThetaScan> scans = extract_theta(plain, ctx, 1000);
    REQUIRE(scans.size() == 1);
    CHECK(scans[0].exact == 0);
    CHECK(scans[0].sandwich_ok);
    CHECK(scans[0].error_bound == Rat(1, 1000));
    // 0 <= scan_inf <= max(base)/K.
    CHECK(numctx::le(GroupReal(Rat(0)), scans[0].scan_inf));
    CHECK(numctx::le(scans[0].scan_inf, GroupReal(scans[0].error_bound)));

    ShiftedFunction shifted(gmic(Rat(2, 5)), AdditiveFunction{{{"sqrt2", Rat(1, 3)}}});
    std::vector<ThetaScan> s2 = extract_theta(shifted, ctx, 1000);
    CHECK(s2[0].exact == Rat(1, 3));
    CHECK(s2[0].sandwich_ok);
    GroupReal gap = s2[0].scan_inf - GroupReal(s2[0].exact);
    CHECK(numctx::le(gap, GroupReal(Rat(1, 1000))));

    CHECK_THROWS_AS(extract_theta(plain, ctx, 0), InputError);
}

TEST_CASE("the shift representation is unique by construction") {
    // Two different shifts with the same total would need equal canonical
    // forms; representation equality is the uniqueness statement here.
    AdditiveFunction t1{{{"sqrt2", Rat(1, 3)}}};
    AdditiveFunction t2{{{"sqrt2", Rat(1, 3)}}};
    CHECK(t1 == t2);
    AdditiveFunction t3{{{"sqrt2", Rat(-2, 7)}}};
    CHECK(!(t1 == t3));
}

TEST_CASE("shifted function rejects a negative base") {
    PwlPeriodic neg({Rat(0), Rat(1, 2)}, {Rat(0), Rat(-1)});
    CHECK_THROWS_AS(ShiftedFunction(neg, AdditiveFunction{}), InputError);
}
