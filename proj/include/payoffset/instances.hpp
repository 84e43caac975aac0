#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "payoffset/core_games.hpp"
#include "payoffset/feasible_sets.hpp"

namespace payoffset {

enum class InstanceFamily { Impossibility, EpsFamily, NPacking, AlphaLog, AlphaN };

const char* to_string(InstanceFamily f);
InstanceFamily instance_family_from_string(const std::string& s);

struct LbParams {
    double pi = 0.3;        // Impossibility
    double epsilon = 0.1;   // all but Impossibility
    double alpha = 0.2;     // AlphaLog, AlphaN
    size_t n = 2;           // NPacking (even, >= 4), AlphaN (odd, >= 5)
    size_t packing_target = 8;
    uint64_t seed = 1;      // packing draws
};

struct PackingSet {
    size_t D = 0;
    std::vector<std::vector<int>> vectors;  // entries +-1, each summing to 0
    double min_pairwise_l1 = 0.0;
};

struct LbInstance {
    InstanceFamily family = InstanceFamily::Impossibility;
    SetKind kind = SetKind::GsgRow;  // the factor in which the separation lives
    std::vector<StrategyProfile> profiles;
    double alpha = 0.0;
    double certified_separation = 0.0;
    // Proof witness: a member of the set of profiles[0] far from that of profiles[1].
    std::optional<PayoffMatrix> witness;
    std::vector<std::pair<std::string, double>> params;  // pi, gamma, beta, epsilon, n, kappa
    std::optional<PackingSet> packing;

    SetSpec spec(size_t profile) const;
};

// Throws RangeError naming the violated bound.
LbInstance make_lb_instance(InstanceFamily family, const LbParams& params);

// Witness built from profile v for the pair (v, w) of a packing family.
PayoffMatrix packing_witness(const LbInstance& inst, size_t v, size_t w);

// Greedy construction: random balanced sign vectors kept when at l1 distance
// >= D/16 from all kept ones. Throws when the draw budget runs out.
PackingSet greedy_packing(size_t D, size_t target, uint64_t seed);

// Sum p_i log(p_i / q_i) in nats; requires supp(p) within supp(q).
double kl_categorical(const Strategy& p, const Strategy& q);

// P = ((b + g b v_k)/(n-1))_k followed by 1-b, and Q with v = 0.
std::pair<Strategy, Strategy> kl_perturbed_pair(double beta, double gamma, const std::vector<int>& v);

// l_inf distance from z to the halfspace c.z <= b, i.e. (c.z - b)_+ / ||c||_1.
double halfspace_distance(const Halfspace& h, const Vec& z);

struct SeparationCheck {
    bool ok = false;
    double measured = 0.0;
};

// Pair families: exact LP distance from the witness to the other profile's
// set. Packing families: minimum over ordered pairs of the per-pair witness
// distance (LP for n <= 8, otherwise the single-halfspace lower bound).
SeparationCheck verify_separation(const LbInstance& inst, double tol);

}  // namespace payoffset
