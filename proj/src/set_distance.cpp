#include "payoffset/set_distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <set>

#include "payoffset/linear_program.hpp"
#include "payoffset/rates.hpp"
#include "payoffset/rng.hpp"

namespace payoffset {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_vacuous(const Halfspace& h) {
    if (h.b < 0.0) return false;
    return std::all_of(h.c.begin(), h.c.end(), [](double v) { return v == 0.0; });
}

void require_2x2(const SetSpec& s) {
    if (s.x.size() != 2 || s.y.size() != 2) throw InputError("2x2 oracle needs n = 2");
}

}  // namespace

const char* to_string(EstimateMode m) {
    switch (m) {
        case EstimateMode::Exact: return "Exact";
        case EstimateMode::McLower: return "McLower";
        case EstimateMode::GridOracle: return "GridOracle";
        case EstimateMode::PaperUpper: return "PaperUpper";
    }
    return "?";
}

Projection project_linf(const Vec& z, const HalfspaceSystem& sys) {
    if (z.size() != sys.dim) throw InputError("point_to_set: point dimension does not match system");
    if (membership(z, sys).member) return {0.0, z};
    const size_t d = sys.dim;
    double zmax = 0.0;
    for (double v : z) zmax = std::max(zmax, std::abs(v));

    LpProblem lp;
    lp.objective.assign(d + 1, 0.0);
    lp.objective[d] = 1.0;
    lp.var_lo = sys.box_lo;
    lp.var_hi = sys.box_hi;
    lp.var_lo.push_back(0.0);
    lp.var_hi.push_back(zmax + 2.0);
    for (const auto& h : sys.rows) {
        if (is_vacuous(h)) continue;
        LpRow r{h.c, h.b};
        r.coef.push_back(0.0);
        lp.rows.push_back(std::move(r));
    }
    for (size_t k = 0; k < d; ++k) {
        LpRow up{Vec(d + 1, 0.0), z[k]};
        up.coef[k] = 1.0;
        up.coef[d] = -1.0;
        LpRow lo{Vec(d + 1, 0.0), -z[k]};
        lo.coef[k] = -1.0;
        lo.coef[d] = -1.0;
        lp.rows.push_back(std::move(up));
        lp.rows.push_back(std::move(lo));
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw std::runtime_error("point_to_set: projection LP failed");
    Projection p;
    p.point.assign(sol.point.begin(), sol.point.begin() + static_cast<std::ptrdiff_t>(d));
    p.distance = 0.0;
    for (size_t k = 0; k < d; ++k) p.distance = std::max(p.distance, std::abs(p.point[k] - z[k]));
    return p;
}

double point_to_set(const Vec& z, const HalfspaceSystem& sys) { return project_linf(z, sys).distance; }

double directed_distance_mc(const HalfspaceSystem& from, const HalfspaceSystem& to, size_t k,
                            uint64_t seed) {
    if (k == 0) throw InputError("directed_distance_mc needs k >= 1");
    if (from.dim != to.dim) throw InputError("directed_distance_mc: dimension mismatch");
    const size_t dim = from.dim;
    double radius = 0.0;
    const Vec z0 = interior_point(from, &radius);
    double best = point_to_set(z0, to);

    for (const Vec& s : hit_and_run_sample(from, k, 10 * dim, derive_seed(seed, 0)))
        best = std::max(best, point_to_set(s, to));

    // Corners of the box, pulled back along the segment from z0 until feasible.
    std::vector<Vec> face;
    std::vector<bool> eq;
    const bool degenerate = radius <= 1e-10;
    if (degenerate) {
        eq = implicit_equalities(from);
        face = row_basis(from, eq);
    }
    const bool all_corners = dim < 63 && (uint64_t{1} << dim) <= k;
    const size_t count = all_corners ? (size_t{1} << dim) : k;
    Rng rng(derive_seed(seed, 1));
    Vec d(dim), p(dim);
    for (size_t c = 0; c < count; ++c) {
        for (size_t j = 0; j < dim; ++j) {
            const bool hi = all_corners ? ((c >> j) & 1U) != 0 : (rng.next() >> 63) != 0;
            d[j] = (hi ? from.box_hi[j] : from.box_lo[j]) - z0[j];
        }
        if (degenerate) project_out(d, face);
        double lo_t, hi_t;
        line_range(from, z0, d, lo_t, hi_t, degenerate ? &eq : nullptr);
        if (!std::isfinite(hi_t) || hi_t <= 0.0) continue;
        for (size_t j = 0; j < dim; ++j) p[j] = z0[j] + hi_t * d[j];
        if (!membership(p, from).member) continue;
        best = std::max(best, point_to_set(p, to));
    }
    return best;
}

HausdorffEstimate hausdorff_mc(const HalfspaceSystem& a, const HalfspaceSystem& b, size_t k,
                               uint64_t seed_ab, uint64_t seed_ba) {
    HausdorffEstimate e;
    e.mode = EstimateMode::McLower;
    e.resolution_or_samples = static_cast<double>(k);
    e.directed_ab = directed_distance_mc(a, b, k, seed_ab);
    e.directed_ba = directed_distance_mc(b, a, k, seed_ba);
    e.value = std::max(e.directed_ab, e.directed_ba);
    e.upper = kInf;
    return e;
}

HausdorffEstimate hausdorff_mc(const HalfspaceSystem& a, const HalfspaceSystem& b, size_t k,
                               uint64_t seed) {
    return hausdorff_mc(a, b, k, derive_seed(seed, 0), derive_seed(seed, 1));
}

namespace {

struct GridBox {
    std::array<int, 4> lo;
    std::array<int, 4> hi;
    double ub;
    uint64_t seq;
};

struct BoxOrder {
    bool operator()(const GridBox& a, const GridBox& b) const {
        if (a.ub != b.ub) return a.ub < b.ub;
        return a.seq > b.seq;
    }
};

}  // namespace

double directed_grid_2x2(const HalfspaceSystem& from, const HalfspaceSystem& to, double resolution,
                         double* upper) {
    if (!(resolution > 0.0)) throw InputError("grid oracle needs resolution > 0");
    if (from.dim != 4 || to.dim != 4) throw InputError("grid oracle needs n = 2");
    const int N = static_cast<int>(std::ceil(2.0 / resolution - 1e-9));
    const double w = 2.0 / N;
    const double tau = 0.5 * resolution;

    double best = 0.0;      // best exact distance of a member point
    double certified = 0.0; // max upper bound over discarded boxes
    uint64_t seq = 0;
    std::priority_queue<GridBox, std::vector<GridBox>, BoxOrder> open;

    // Bounds a box: lower bound from a member point near its center, upper
    // bound from 1-Lipschitz continuity of d(., to).
    auto evaluate = [&](GridBox& bx) -> bool {
        Vec c(4);
        double radius = 0.0;
        for (int k = 0; k < 4; ++k) {
            c[k] = -1.0 + w * 0.5 * (bx.lo[k] + bx.hi[k]);
            radius = std::max(radius, 0.5 * w * (bx.hi[k] - bx.lo[k]));
        }
        const Projection pa = project_linf(c, from);
        if (pa.distance > radius + 1e-12) return false;
        const double lb = point_to_set(pa.point, to);
        best = std::max(best, lb);
        bx.ub = lb + radius + pa.distance;
        return true;
    };

    GridBox root{{0, 0, 0, 0}, {N, N, N, N}, 0.0, seq++};
    if (evaluate(root)) open.push(root);
    while (!open.empty()) {
        GridBox bx = open.top();
        open.pop();
        if (bx.ub <= best + tau) {
            certified = std::max(certified, bx.ub);
            continue;
        }
        bool leaf = true;
        for (int k = 0; k < 4; ++k) leaf = leaf && bx.hi[k] - bx.lo[k] == 1;
        if (leaf) {
            certified = std::max(certified, bx.ub);
            continue;
        }
        // Split every axis longer than one cell in two.
        std::array<int, 4> mid;
        for (int k = 0; k < 4; ++k) mid[k] = bx.hi[k] - bx.lo[k] > 1 ? (bx.lo[k] + bx.hi[k]) / 2 : -1;
        for (int mask = 0; mask < 16; ++mask) {
            GridBox ch{bx.lo, bx.hi, 0.0, 0};
            bool skip = false;
            for (int k = 0; k < 4; ++k) {
                const bool upper_half = (mask >> k) & 1;
                if (mid[k] < 0) {
                    if (upper_half) skip = true;
                    continue;
                }
                if (upper_half)
                    ch.lo[k] = mid[k];
                else
                    ch.hi[k] = mid[k];
            }
            if (skip) continue;
            ch.seq = seq++;
            if (evaluate(ch)) open.push(ch);
        }
    }
    if (upper) *upper = std::max(best, certified);
    return best;
}

HausdorffEstimate hausdorff_grid_2x2(const SetSpec& a, const SetSpec& b, double resolution) {
    require_2x2(a);
    require_2x2(b);
    if (!(resolution > 0.0)) throw InputError("grid oracle needs resolution > 0");
    const HalfspaceSystem sa = build_system(a), sb = build_system(b);
    HausdorffEstimate e;
    e.mode = EstimateMode::GridOracle;
    e.resolution_or_samples = resolution;
    double ua = 0.0, ub = 0.0;
    e.directed_ab = directed_grid_2x2(sa, sb, resolution, &ua);
    e.directed_ba = directed_grid_2x2(sb, sa, resolution, &ub);
    e.value = std::max(e.directed_ab, e.directed_ba);
    e.upper = std::max(ua, ub);
    return e;
}

namespace {

// Solves the 4x4 system M v = r by Gaussian elimination with partial pivoting.
bool solve4(std::array<std::array<double, 5>, 4> m, Vec& v) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-10) return false;
        std::swap(m[piv], m[col]);
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
        }
    }
    v.assign(4, 0.0);
    for (int r = 0; r < 4; ++r) v[r] = m[r][4] / m[r][r];
    return true;
}

}  // namespace

double directed_vertex_2x2(const HalfspaceSystem& from, const HalfspaceSystem& to) {
    if (from.dim != 4 || to.dim != 4) throw InputError("vertex oracle needs n = 2");
    std::vector<Halfspace> cons;
    for (const auto& h : from.rows)
        if (!is_vacuous(h)) cons.push_back(h);
    for (size_t k = 0; k < 4; ++k) {
        Halfspace up{Vec(4, 0.0), from.box_hi[k]};
        up.c[k] = 1.0;
        Halfspace lo{Vec(4, 0.0), -from.box_lo[k]};
        lo.c[k] = -1.0;
        cons.push_back(up);
        cons.push_back(lo);
    }
    const size_t m = cons.size();
    std::set<std::array<long long, 4>> seen;
    double best = 0.0;
    Vec v;
    for (size_t a = 0; a < m; ++a)
        for (size_t b = a + 1; b < m; ++b)
            for (size_t c = b + 1; c < m; ++c)
                for (size_t d = c + 1; d < m; ++d) {
                    std::array<std::array<double, 5>, 4> M;
                    const size_t pick[4] = {a, b, c, d};
                    for (int r = 0; r < 4; ++r) {
                        for (int k = 0; k < 4; ++k) M[r][k] = cons[pick[r]].c[k];
                        M[r][4] = cons[pick[r]].b;
                    }
                    if (!solve4(M, v)) continue;
                    if (!membership(v, from).member) continue;
                    std::array<long long, 4> key;
                    for (int k = 0; k < 4; ++k) key[k] = std::llround(v[k] * 1e8);
                    if (!seen.insert(key).second) continue;
                    best = std::max(best, point_to_set(v, to));
                }
    return best;
}

HausdorffEstimate hausdorff_vertex_2x2(const SetSpec& a, const SetSpec& b) {
    require_2x2(a);
    require_2x2(b);
    const HalfspaceSystem sa = build_system(a), sb = build_system(b);
    HausdorffEstimate e;
    e.mode = EstimateMode::Exact;
    e.directed_ab = directed_vertex_2x2(sa, sb);
    e.directed_ba = directed_vertex_2x2(sb, sa);
    e.value = std::max(e.directed_ab, e.directed_ba);
    e.upper = e.value;
    return e;
}

namespace {

std::vector<SetKind> factors(GameSet g) {
    if (g == GameSet::Gsg) return {SetKind::GsgRow, SetKind::GsgCol};
    return {SetKind::Zsg};
}

HausdorffEstimate combine(const HausdorffEstimate& a, const HausdorffEstimate& b) {
    HausdorffEstimate e = a;
    e.directed_ab = std::max(a.directed_ab, b.directed_ab);
    e.directed_ba = std::max(a.directed_ba, b.directed_ba);
    e.value = std::max(a.value, b.value);
    e.upper = std::max(a.upper, b.upper);
    return e;
}

template <class F>
HausdorffEstimate over_factors(GameSet g, const StrategyProfile& p, const StrategyProfile& q, double alpha,
                               F&& est) {
    std::optional<HausdorffEstimate> out;
    for (SetKind k : factors(g)) {
        const HausdorffEstimate e = est(SetSpec{k, p.x, p.y, alpha}, SetSpec{k, q.x, q.y, alpha});
        out = out ? combine(*out, e) : e;
    }
    return *out;
}

}  // namespace

HausdorffEstimate game_hausdorff_grid(GameSet g, const StrategyProfile& p, const StrategyProfile& q,
                                      double alpha, double resolution) {
    return over_factors(g, p, q, alpha,
                        [&](const SetSpec& a, const SetSpec& b) { return hausdorff_grid_2x2(a, b, resolution); });
}

HausdorffEstimate game_hausdorff_vertex(GameSet g, const StrategyProfile& p, const StrategyProfile& q,
                                        double alpha) {
    return over_factors(g, p, q, alpha,
                        [](const SetSpec& a, const SetSpec& b) { return hausdorff_vertex_2x2(a, b); });
}

HausdorffEstimate game_hausdorff_mc(GameSet g, const StrategyProfile& p, const StrategyProfile& q,
                                    double alpha, size_t k, uint64_t seed) {
    uint64_t stream = 0;
    return over_factors(g, p, q, alpha, [&](const SetSpec& a, const SetSpec& b) {
        return hausdorff_mc(build_system(a), build_system(b), k, derive_seed(seed, stream++));
    });
}

double f_alpha(const Strategy& x, const Strategy& xh, double alpha) {
    if (!(alpha > 0.0)) throw InputError("f_alpha needs alpha > 0");
    if (x.size() != xh.size()) throw InputError("f_alpha: dimension mismatch");
    double missing = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
        if (xh[i] <= kSupportThreshold) missing += x[i];
    return 16.0 / alpha * (knapsack_exact(x, xh, alpha) + knapsack_exact(xh, x, alpha) + missing);
}

double hausdorff_upper_bound(BoundKind kind, const Strategy& x, const Strategy& xh, const Strategy& y,
                             const Strategy& yh, double alpha) {
    if (kind == BoundKind::Approx) {
        if (!(alpha > 0.0)) throw InputError("Approx upper bound needs alpha > 0");
        return f_alpha(x, xh, alpha) + f_alpha(y, yh, alpha);
    }
    if (!same_support(x, xh) || !same_support(y, yh))
        throw InputError("exact upper bound needs matching supports");
    const double s = l1_distance(x, xh) + l1_distance(y, yh);
    return kind == BoundKind::ExactGsg ? 4.0 * s : 8.0 * s;
}

}  // namespace payoffset
