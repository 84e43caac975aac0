#pragma once

#include <cstdint>

#include "payoffset/core_games.hpp"
#include "payoffset/feasible_sets.hpp"

namespace payoffset {

enum class EstimateMode { Exact, McLower, GridOracle, PaperUpper };

struct HausdorffEstimate {
    double value = 0.0;  // max(directed_ab, directed_ba)
    EstimateMode mode = EstimateMode::Exact;
    double resolution_or_samples = 0.0;
    double directed_ab = 0.0;
    double directed_ba = 0.0;
    // Certified upper bound on the true distance (GridOracle and Exact only;
    // infinity for McLower).
    double upper = 0.0;
};

const char* to_string(EstimateMode m);

struct Projection {
    double distance = 0.0;
    Vec point;  // a nearest point of the set
};

// l_inf projection by LP: min t s.t. z' in sys, |z'_k - z_k| <= t.
Projection project_linf(const Vec& z, const HalfspaceSystem& sys);
double point_to_set(const Vec& z, const HalfspaceSystem& sys);

// Lower bound on sup_{a in from} d(a, to), using the interior point, k
// hit-and-run samples and min(2^dim, k) box corners clipped into `from`.
double directed_distance_mc(const HalfspaceSystem& from, const HalfspaceSystem& to, size_t k,
                            uint64_t seed);
HausdorffEstimate hausdorff_mc(const HalfspaceSystem& a, const HalfspaceSystem& b, size_t k,
                               uint64_t seed);
HausdorffEstimate hausdorff_mc(const HalfspaceSystem& a, const HalfspaceSystem& b, size_t k,
                               uint64_t seed_ab, uint64_t seed_ba);

// Grid oracle over [-1,1]^4 with ceil(2/resolution) cells per axis. Cells that
// miss `from` are discarded; each remaining cell contributes the exact distance
// of a member point inside it. Coarse boxes whose Lipschitz upper bound cannot
// beat the incumbent by more than resolution/2 are pruned, so the reported
// value is within `resolution` of the truth and `upper` is certified.
double directed_grid_2x2(const HalfspaceSystem& from, const HalfspaceSystem& to, double resolution,
                         double* upper = nullptr);
HausdorffEstimate hausdorff_grid_2x2(const SetSpec& a, const SetSpec& b, double resolution);

// Exact directed distance for n = 2: d(., to) is convex, so its maximum over
// the polytope `from` sits at a vertex. Vertices come from all 4-subsets of
// the active constraints.
double directed_vertex_2x2(const HalfspaceSystem& from, const HalfspaceSystem& to);
HausdorffEstimate hausdorff_vertex_2x2(const SetSpec& a, const SetSpec& b);

// Distances between full recommendation sets. General-sum sets are the
// product G^x x G^y, so the distance is the max over the two factors.
enum class GameSet { Gsg, Zsg };
HausdorffEstimate game_hausdorff_grid(GameSet g, const StrategyProfile& p, const StrategyProfile& q,
                                      double alpha, double resolution);
HausdorffEstimate game_hausdorff_vertex(GameSet g, const StrategyProfile& p, const StrategyProfile& q,
                                        double alpha);
HausdorffEstimate game_hausdorff_mc(GameSet g, const StrategyProfile& p, const StrategyProfile& q,
                                    double alpha, size_t k, uint64_t seed);

enum class BoundKind { ExactGsg, ExactZsg, Approx };

// (16/alpha)[sup_{S_alpha(x)} sum(xh - x) + sup_{S_alpha(xh)} sum(x - xh) + mass of x off supp(xh)].
double f_alpha(const Strategy& x, const Strategy& xh, double alpha);

double hausdorff_upper_bound(BoundKind kind, const Strategy& x, const Strategy& xh, const Strategy& y,
                             const Strategy& yh, double alpha);

}  // namespace payoffset
