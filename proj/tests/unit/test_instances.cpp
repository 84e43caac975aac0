#include <doctest.h>

#include <cmath>

#include "payoffset/instances.hpp"
#include "payoffset/set_distance.hpp"

using namespace payoffset;

namespace {

LbParams with(double pi, double eps, double alpha, size_t n = 2) {
    LbParams p;
    p.pi = pi;
    p.epsilon = eps;
    p.alpha = alpha;
    p.n = n;
    return p;
}

double param(const LbInstance& inst, const std::string& key) {
    for (const auto& [k, v] : inst.params)
        if (k == key) return v;
    FAIL("missing parameter " << key);
    return 0.0;
}

}  // namespace

TEST_CASE("pair family construction") {
    const LbInstance imp = make_lb_instance(InstanceFamily::Impossibility, with(0.3, 0.1, 0.2));
    CHECK(imp.profiles[0].x.probs == Vec{0, 1});
    CHECK(imp.profiles[0].y.probs == Vec{1, 0});
    CHECK(imp.profiles[1].x.probs == Vec{0.3, 0.7});
    CHECK(imp.profiles[1].y.probs == Vec{1, 0});
    CHECK(imp.certified_separation == 1.0);

    const LbInstance eps = make_lb_instance(InstanceFamily::EpsFamily, with(0.3, 0.1, 0.2));
    CHECK(param(eps, "gamma") == doctest::Approx(0.2));
    CHECK(eps.profiles[1].x[0] == doctest::Approx(0.7));
    CHECK(eps.profiles[1].y.probs == Vec{0.5, 0.5});
    CHECK(eps.witness->entries == Vec{1, 0, 0, 1});

    const LbInstance al = make_lb_instance(InstanceFamily::AlphaLog, with(0.3, 0.05, 0.2));
    CHECK(param(al, "beta") == doctest::Approx(2.0 / 75));
    CHECK(al.profiles[1].x[0] == doctest::Approx(0.113333333333));
    CHECK(al.profiles[1].x[1] == doctest::Approx(0.886666666667));
}

TEST_CASE("pair families differ in one player only") {
    for (InstanceFamily f : {InstanceFamily::Impossibility, InstanceFamily::EpsFamily, InstanceFamily::AlphaLog}) {
        const LbInstance inst = make_lb_instance(f, with(0.3, 0.05, 0.2));
        const bool dx = inst.profiles[0].x.probs != inst.profiles[1].x.probs;
        const bool dy = inst.profiles[0].y.probs != inst.profiles[1].y.probs;
        CHECK(dx != dy);
        CHECK(inst.certified_separation > 0.0);
    }
}

TEST_CASE("range errors") {
    CHECK_THROWS_AS(make_lb_instance(InstanceFamily::Impossibility, with(0.0, 0.1, 0.2)), RangeError);
    CHECK_THROWS_AS(make_lb_instance(InstanceFamily::EpsFamily, with(0.3, 0.2, 0.2)), RangeError);
    CHECK_THROWS_AS(make_lb_instance(InstanceFamily::AlphaLog, with(0.3, 0.2, 0.2)), RangeError);
    CHECK_THROWS_AS(make_lb_instance(InstanceFamily::AlphaLog, with(0.3, 0.1, 0.3)), RangeError);
    CHECK_THROWS_AS(make_lb_instance(InstanceFamily::NPacking, with(0.3, 0.01, 0.2, 8)), RangeError);
    CHECK_THROWS_AS(make_lb_instance(InstanceFamily::NPacking, with(0.3, 0.001, 0.2, 7)), RangeError);
    CHECK_THROWS_AS(make_lb_instance(InstanceFamily::AlphaN, with(0.3, 0.005, 0.2, 8)), RangeError);
}

TEST_CASE("greedy packing") {
    const PackingSet p = greedy_packing(16, 10, 3);
    CHECK(p.vectors.size() >= 10);
    CHECK(p.min_pairwise_l1 >= 1.0);
    for (size_t a = 0; a < p.vectors.size(); ++a) {
        int sum = 0;
        for (int v : p.vectors[a]) sum += v;
        CHECK(sum == 0);
        for (size_t b = a + 1; b < p.vectors.size(); ++b) {
            double d = 0.0;
            for (size_t k = 0; k < 16; ++k) d += std::abs(p.vectors[a][k] - p.vectors[b][k]);
            CHECK(d >= 1.0);
            CHECK(d >= p.min_pairwise_l1);
        }
    }
    CHECK_THROWS_AS(greedy_packing(5, 3, 1), InputError);
    // Only six balanced vectors exist for D = 4.
    CHECK_THROWS_AS(greedy_packing(4, 7, 1), std::runtime_error);
}

TEST_CASE("KL divergences") {
    const Strategy p({0.5, 0.5}), q({0.6, 0.4});
    CHECK(kl_categorical(p, p) == 0.0);
    CHECK(kl_categorical(p, q) == doctest::Approx(0.02041).epsilon(1e-3));
    CHECK(kl_categorical(Strategy({0.0, 1.0}), p) == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(kl_categorical(p, Strategy({1.0, 0.0})), InputError);

    const auto [P, Q] = kl_perturbed_pair(0.3, 0.1, {1, -1, 1, -1});
    CHECK(P.size() == 5);
    CHECK(kl_categorical(P, Q) <= 2 * 0.3 * 0.01);

    for (double a : {0.05, 0.1, 0.2})
        for (double e : {0.01, 0.05, 0.125}) {
            const LbInstance inst = make_lb_instance(InstanceFamily::AlphaLog, with(0.3, e, a));
            CHECK(kl_categorical(inst.profiles[0].x, inst.profiles[1].x) <= 18 * a * e * e);
        }
}

TEST_CASE("witnesses are feasible for their own profile") {
    for (InstanceFamily f : {InstanceFamily::Impossibility, InstanceFamily::EpsFamily, InstanceFamily::AlphaLog}) {
        const LbInstance inst = make_lb_instance(f, with(0.3, 0.05, 0.2));
        CHECK(membership(flatten(*inst.witness), build_system(inst.spec(0))).member);
    }
    LbParams np = with(0.3, 1.0 / 384, 0.2, 8);
    const LbInstance pack = make_lb_instance(InstanceFamily::NPacking, np);
    for (size_t v = 0; v < 3; ++v)
        CHECK(membership(flatten(packing_witness(pack, v, v + 1)), build_system(pack.spec(v))).member);
    LbParams an = with(0.3, 1.0 / 128, 0.2, 9);
    const LbInstance alp = make_lb_instance(InstanceFamily::AlphaN, an);
    for (size_t v = 0; v < 3; ++v)
        CHECK(membership(flatten(packing_witness(alp, v, v + 1)), build_system(alp.spec(v))).member);
}

TEST_CASE("separations") {
    const auto imp = verify_separation(make_lb_instance(InstanceFamily::Impossibility, with(0.3, 0.1, 0.2)), 1e-6);
    CHECK(imp.ok);
    CHECK(imp.measured == doctest::Approx(1.0).epsilon(1e-9));
    const auto eps = verify_separation(make_lb_instance(InstanceFamily::EpsFamily, with(0.3, 0.1, 0.2)), 1e-6);
    CHECK(eps.ok);
    CHECK(eps.measured >= 0.2 - 1e-9);
    const LbInstance al = make_lb_instance(InstanceFamily::AlphaLog, with(0.3, 0.05, 0.2));
    const auto als = verify_separation(al, 1e-6);
    const double beta = param(al, "beta");
    CHECK(als.measured >= beta / (0.2 + beta) - 1e-9);
    CHECK(als.measured >= 0.1 - 1e-9);
    CHECK(als.ok);

    // The separation is also a Hausdorff lower bound, so the exact oracle agrees.
    CHECK(hausdorff_vertex_2x2(al.spec(0), al.spec(1)).value >= als.measured - 1e-9);
}

TEST_CASE("family names round trip") {
    for (InstanceFamily f : {InstanceFamily::Impossibility, InstanceFamily::EpsFamily, InstanceFamily::NPacking,
                             InstanceFamily::AlphaLog, InstanceFamily::AlphaN})
        CHECK(instance_family_from_string(to_string(f)) == f);
}
