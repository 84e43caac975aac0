#include <doctest.h>

#include "../support/generators.hpp"
#include "payoffset/rates.hpp"
#include "payoffset/set_distance.hpp"

using namespace payoffset;

namespace {

const Strategy e1({1.0, 0.0}), e2({0.0, 1.0}), half({0.5, 0.5});

SetSpec row_spec(const Strategy& x, const Strategy& y, double alpha) { return {SetKind::GsgRow, x, y, alpha}; }

// Same-support 2-action strategy pair drawn for the sandwich checks.
Strategy same_support_near(const Strategy& x, Rng& r) { return testgen::perturb(x, 0.4 * r.uniform(), r); }

}  // namespace

TEST_CASE("point_to_set examples") {
    Rng r(61);
    for (int t = 0; t < 20; ++t) {
        const size_t n = 2 + r.below(3);
        const auto sys = build_system({SetKind::Zsg, testgen::random_strategy(n, r), testgen::random_strategy(n, r), 0.0});
        CHECK(point_to_set(Vec(n * n, 0.0), sys) == 0.0);
    }
    const Vec pstar = flatten(PayoffMatrix::from_rows({{1, 0}, {-1, 0}}));
    for (double pi : {0.1, 0.3, 0.5, 0.9})
        CHECK(point_to_set(pstar, build_system(row_spec(Strategy({pi, 1 - pi}), e1, 0.0))) ==
              doctest::Approx(1.0).epsilon(1e-9));
    for (double g : {0.05, 0.2, 0.4}) {
        const auto sys = build_system({SetKind::GsgCol, Strategy({0.5 + g, 0.5 - g}), half, 0.0});
        CHECK(point_to_set(flatten(PayoffMatrix::from_rows({{1, 0}, {0, 1}})), sys) >= g - 1e-9);
    }
    const Projection p = project_linf(pstar, build_system(row_spec(Strategy({0.3, 0.7}), e1, 0.0)));
    CHECK(membership(p.point, build_system(row_spec(Strategy({0.3, 0.7}), e1, 0.0))).member);
    CHECK_THROWS_AS(point_to_set(Vec(3, 0.0), build_system(row_spec(half, half, 0.0))), InputError);
}

TEST_CASE("property: distance zero exactly on members") {
    Rng r(62);
    for (int t = 0; t < 300; ++t) {
        const size_t n = 2 + r.below(3);
        const auto sys = build_system({t % 2 ? SetKind::Zsg : SetKind::GsgCol, testgen::random_strategy(n, r),
                                       testgen::random_strategy(n, r), 0.2 * r.uniform()});
        Vec z(n * n);
        for (double& v : z) v = testgen::unif(r, -1.0, 1.0);
        const bool member = membership(z, sys).member;
        const double d = point_to_set(z, sys);
        CHECK((d <= 1e-9) == member);
    }
}

TEST_CASE("Monte-Carlo directed distance") {
    const auto a = build_system(row_spec(Strategy({0.3, 0.7}), Strategy({0.6, 0.4}), 0.0));
    CHECK(directed_distance_mc(a, a, 50, 1) <= 1e-9);
    const auto wide = build_system(row_spec(Strategy({0.3, 0.7}), Strategy({0.6, 0.4}), 0.5));
    CHECK(directed_distance_mc(a, wide, 50, 1) <= 1e-9);

    const auto g0 = build_system(row_spec(e2, e1, 0.0));
    const auto g1 = build_system(row_spec(Strategy({0.3, 0.7}), e1, 0.0));
    CHECK(directed_distance_mc(g0, g1, 500, 5) >= 0.9);

    const HausdorffEstimate same = hausdorff_mc(a, a, 30, 4);
    CHECK(same.value <= 1e-9);
    CHECK(same.mode == EstimateMode::McLower);
    const HausdorffEstimate ab = hausdorff_mc(g0, g1, 40, 8, 9), ba = hausdorff_mc(g1, g0, 40, 9, 8);
    CHECK(ab.value == ba.value);
    CHECK(ab.directed_ab == ba.directed_ba);
    CHECK(ab.value == std::max(ab.directed_ab, ab.directed_ba));
}

TEST_CASE("property: Monte-Carlo lower bound grows with k") {
    Rng r(63);
    for (int t = 0; t < 15; ++t) {
        const size_t n = 2 + r.below(2);
        const Strategy x = testgen::random_strategy(n, r), y = testgen::random_strategy(n, r);
        const auto a = build_system({SetKind::GsgRow, x, y, 0.1});
        const auto b = build_system({SetKind::GsgRow, testgen::random_strategy(n, r), y, 0.1});
        const uint64_t seed = r.next();
        double prev = 0.0;
        for (size_t k : {4, 16, 64}) {
            const double d = directed_distance_mc(a, b, k, seed);
            CHECK(d >= prev - 1e-12);
            prev = d;
        }
    }
}

TEST_CASE("oracles on the center example") {
    // x0 = (0,1) against x1 = (0.05, 0.95) at alpha = 0.2, y = (1,0).
    const SetSpec a = row_spec(e2, e1, 0.2), b = row_spec(Strategy({0.05, 0.95}), e1, 0.2);
    const HausdorffEstimate v = hausdorff_vertex_2x2(a, b);
    CHECK(v.value == doctest::Approx(1.0 / 190).epsilon(1e-6));
    CHECK(v.value == doctest::Approx(5.3e-3).epsilon(0.01));
    const HausdorffEstimate g = hausdorff_grid_2x2(a, b, 0.1);
    CHECK(std::abs(g.value - v.value) <= 0.1);
    CHECK(g.upper >= v.value - 1e-9);
    const HausdorffEstimate m = hausdorff_mc(build_system(a), build_system(b), 200, 3);
    CHECK(m.value <= v.value + 1e-9);
    CHECK(m.value >= 0.8 * v.value);
}

TEST_CASE("grid oracle examples") {
    const SetSpec a = row_spec(Strategy({0.3, 0.7}), half, 0.1);
    CHECK(hausdorff_grid_2x2(a, a, 0.1).value == 0.0);

    const HausdorffEstimate imp = hausdorff_grid_2x2(row_spec(e2, e1, 0.0), row_spec(Strategy({0.3, 0.7}), e1, 0.0), 0.05);
    CHECK(imp.value >= 0.95);
    CHECK(imp.value <= 1.0 + 1e-9);
    CHECK(imp.mode == EstimateMode::GridOracle);

    const SetSpec c0{SetKind::GsgCol, half, half, 0.0}, c1{SetKind::GsgCol, Strategy({0.7, 0.3}), half, 0.0};
    CHECK(hausdorff_grid_2x2(c0, c1, 0.05).value >= 0.15);

    CHECK_THROWS_AS(hausdorff_grid_2x2(a, a, 0.0), InputError);
    const SetSpec big{SetKind::GsgRow, Strategy::uniform(3), Strategy::uniform(3), 0.0};
    CHECK_THROWS_AS(hausdorff_grid_2x2(big, big, 0.1), InputError);
}

TEST_CASE("property: grid and vertex oracles agree within resolution") {
    Rng r(64);
    for (int t = 0; t < 12; ++t) {
        const Strategy x = testgen::random_strategy(2, r), y = testgen::random_strategy(2, r);
        const SetKind k = t % 3 == 0 ? SetKind::Zsg : (t % 3 == 1 ? SetKind::GsgRow : SetKind::GsgCol);
        const double alpha = t % 2 ? 0.0 : 0.3 * r.uniform();
        const SetSpec a{k, x, y, alpha}, b{k, testgen::random_strategy(2, r), testgen::random_strategy(2, r), alpha};
        const HausdorffEstimate g = hausdorff_grid_2x2(a, b, 0.1), v = hausdorff_vertex_2x2(a, b);
        CHECK(std::abs(g.value - v.value) <= 0.1 + 1e-9);
        CHECK(g.value <= v.value + 1e-9);
        CHECK(g.upper >= v.value - 1e-9);
    }
}

TEST_CASE("upper bound examples") {
    const Strategy x({0.5, 0.3, 0.2}), xh({0.4, 0.35, 0.25});
    for (BoundKind k : {BoundKind::ExactGsg, BoundKind::ExactZsg, BoundKind::Approx})
        CHECK(hausdorff_upper_bound(k, x, x, half, half, 0.2) == 0.0);
    const Strategy u({0.45, 0.55}), uh({0.55, 0.45});
    // ||x - x2||_1 = 0.1 and ||u - uh||_1 = 0.2.
    const Strategy x2({0.45, 0.35, 0.2});
    CHECK(hausdorff_upper_bound(BoundKind::ExactGsg, x, x2, u, uh, 0.0) == doctest::Approx(1.2));
    CHECK(hausdorff_upper_bound(BoundKind::ExactZsg, x, x2, u, uh, 0.0) == doctest::Approx(2.4));
    CHECK(hausdorff_upper_bound(BoundKind::Approx, x, xh, half, half, 0.5) == doctest::Approx(32 * 0.05));
    CHECK_THROWS_AS(hausdorff_upper_bound(BoundKind::ExactGsg, x, Strategy({0.5, 0.5, 0.0}), half, half, 0.0),
                    InputError);
    CHECK_THROWS_AS(hausdorff_upper_bound(BoundKind::Approx, x, xh, half, half, 0.0), InputError);
}

TEST_CASE("property: f_alpha matches its raw definition") {
    Rng r(65);
    for (int t = 0; t < 300; ++t) {
        const size_t n = 2 + r.below(8);
        const Strategy x = testgen::random_strategy(n, r), xh = testgen::random_strategy(n, r);
        const double alpha = 0.05 + r.uniform();
        // Enumerate S_alpha(.) over the support directly.
        auto sup = [&](const Strategy& p, const Strategy& q) {
            double best = 0.0;
            for (uint32_t s = 1; s < (1u << n); ++s) {
                double mass = 0.0, gain = 0.0;
                bool ok = true;
                for (size_t i = 0; i < n; ++i)
                    if (s >> i & 1u) {
                        ok = ok && p[i] > 0.0;
                        mass += p[i];
                        gain += q[i] - p[i];
                    }
                if (ok && mass <= alpha / 2 + 1e-12) best = std::max(best, gain);
            }
            return best;
        };
        double missing = 0.0;
        for (size_t i = 0; i < n; ++i)
            if (xh[i] == 0.0) missing += x[i];
        const double raw = 16.0 / alpha * (sup(x, xh) + sup(xh, x) + missing);
        CHECK(std::abs(f_alpha(x, xh, alpha) - raw) <= 1e-12 * std::max(1.0, raw));
    }
}

TEST_CASE("property: exact-regime sandwich and decomposition with the vertex oracle") {
    Rng r(66);
    for (int t = 0; t < 50; ++t) {
        const Strategy x = testgen::random_strategy(2, r), y = testgen::random_strategy(2, r);
        const Strategy xh = same_support_near(x, r), yh = same_support_near(y, r);
        const StrategyProfile p(x, y), q(xh, yh), mid(xh, y);
        const double hg = game_hausdorff_vertex(GameSet::Gsg, p, q, 0.0).value;
        const double hz = game_hausdorff_vertex(GameSet::Zsg, p, q, 0.0).value;
        CHECK(hg <= hausdorff_upper_bound(BoundKind::ExactGsg, x, xh, y, yh, 0.0) + 1e-9);
        CHECK(hz <= hausdorff_upper_bound(BoundKind::ExactZsg, x, xh, y, yh, 0.0) + 1e-9);

        const double alpha = t % 2 ? 0.0 : 0.3 * r.uniform();
        for (GameSet g : {GameSet::Gsg, GameSet::Zsg}) {
            const double whole = game_hausdorff_vertex(g, p, q, alpha).value;
            const double left = game_hausdorff_vertex(g, p, mid, alpha).value;
            const double right = game_hausdorff_vertex(g, mid, q, alpha).value;
            CHECK(whole <= left + right + 1e-9);
        }
    }
}
