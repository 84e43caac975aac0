#include "payoffset/feasible_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "payoffset/linear_program.hpp"
#include "payoffset/rng.hpp"

namespace payoffset {

namespace {

bool is_vacuous(const Halfspace& h) {
    if (h.b < 0.0) return false;
    for (double v : h.c)
        if (v != 0.0) return false;
    return true;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

}  // namespace

const char* to_string(SetKind kind) {
    switch (kind) {
        case SetKind::GsgRow: return "GsgRow";
        case SetKind::GsgCol: return "GsgCol";
        case SetKind::Zsg: return "Zsg";
    }
    return "?";
}

SetKind set_kind_from_string(const std::string& s) {
    if (s == "GsgRow") return SetKind::GsgRow;
    if (s == "GsgCol") return SetKind::GsgCol;
    if (s == "Zsg") return SetKind::Zsg;
    throw InputError("unknown set kind: " + s);
}

HalfspaceSystem box_system(size_t dim) {
    HalfspaceSystem sys;
    sys.dim = dim;
    sys.box_lo.assign(dim, -1.0);
    sys.box_hi.assign(dim, 1.0);
    sys.label = "Box";
    return sys;
}

HalfspaceSystem build_system(const SetSpec& spec) {
    const size_t n = spec.x.size();
    if (spec.y.size() != n) throw InputError("set spec strategies differ in dimension");
    if (!(spec.alpha >= 0.0)) throw InputError("set spec alpha must be nonnegative");
    HalfspaceSystem sys = box_system(n * n);
    sys.label = to_string(spec.kind);
    const Strategy& x = spec.x;
    const Strategy& y = spec.y;

    if (spec.kind == SetKind::GsgRow || spec.kind == SetKind::Zsg) {
        // x'Ay - e_i'Ay <= alpha
        for (size_t i = 0; i < n; ++i) {
            Halfspace h{Vec(n * n, 0.0), spec.alpha};
            for (size_t k = 0; k < n; ++k)
                for (size_t j = 0; j < n; ++j)
                    h.c[k * n + j] = (x[k] - (k == i ? 1.0 : 0.0)) * y[j];
            sys.rows.push_back(std::move(h));
        }
    }
    if (spec.kind == SetKind::GsgCol || spec.kind == SetKind::Zsg) {
        // GsgCol: x'By - x'Be_j <= alpha.  Zsg: x'Ae_j - x'Ay <= alpha.
        const double sg = spec.kind == SetKind::GsgCol ? 1.0 : -1.0;
        for (size_t j = 0; j < n; ++j) {
            Halfspace h{Vec(n * n, 0.0), spec.alpha};
            for (size_t i = 0; i < n; ++i)
                for (size_t k = 0; k < n; ++k)
                    h.c[i * n + k] = sg * x[i] * (y[k] - (k == j ? 1.0 : 0.0));
            sys.rows.push_back(std::move(h));
        }
    }
    return sys;
}

Vec flatten(const PayoffMatrix& M) { return M.entries; }

PayoffMatrix unflatten(const Vec& z) {
    const size_t n = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(z.size()))));
    if (n * n != z.size()) throw InputError("flattened matrix length is not a perfect square");
    return PayoffMatrix(n, z);
}

Membership membership(const Vec& z, const HalfspaceSystem& sys, double tol) {
    if (z.size() != sys.dim) throw InputError("membership: point dimension does not match system");
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& h : sys.rows) {
        if (is_vacuous(h)) continue;
        v = std::max(v, dot(h.c, z) - h.b);
    }
    for (size_t k = 0; k < sys.dim; ++k) {
        v = std::max(v, z[k] - sys.box_hi[k]);
        v = std::max(v, sys.box_lo[k] - z[k]);
    }
    return {v <= tol, v};
}

Vec interior_point(const HalfspaceSystem& sys) { return interior_point(sys, nullptr); }

Vec interior_point(const HalfspaceSystem& sys, double* radius) {
    const size_t d = sys.dim;
    double max_half = 0.0;
    for (size_t k = 0; k < d; ++k) max_half = std::max(max_half, 0.5 * (sys.box_hi[k] - sys.box_lo[k]));

    LpProblem lp;
    lp.objective.assign(d + 1, 0.0);
    lp.objective[d] = -1.0;  // maximize r
    lp.var_lo.assign(sys.box_lo.begin(), sys.box_lo.end());
    lp.var_hi.assign(sys.box_hi.begin(), sys.box_hi.end());
    lp.var_lo.push_back(0.0);
    lp.var_hi.push_back(max_half);
    for (const auto& h : sys.rows) {
        if (is_vacuous(h)) continue;
        LpRow row{h.c, h.b};
        row.coef.push_back(std::sqrt(dot(h.c, h.c)));
        lp.rows.push_back(std::move(row));
    }
    for (size_t k = 0; k < d; ++k) {
        LpRow up{Vec(d + 1, 0.0), sys.box_hi[k]};
        up.coef[k] = 1.0;
        up.coef[d] = 1.0;
        LpRow lo{Vec(d + 1, 0.0), -sys.box_lo[k]};
        lo.coef[k] = -1.0;
        lo.coef[d] = 1.0;
        lp.rows.push_back(std::move(up));
        lp.rows.push_back(std::move(lo));
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("interior_point: Chebyshev LP failed");
    const double r = sol.point[d];
    if (radius) *radius = r;
    if (r <= 1e-10) return Vec(d, 0.0);
    return Vec(sol.point.begin(), sol.point.begin() + static_cast<std::ptrdiff_t>(d));
}

void line_range(const HalfspaceSystem& sys, const Vec& z, const Vec& d, double& lo, double& hi,
                const std::vector<bool>* skip) {
    lo = -std::numeric_limits<double>::infinity();
    hi = std::numeric_limits<double>::infinity();
    auto clip = [&](double cd, double slack) {
        slack = std::max(slack, 0.0);
        if (cd > 1e-15)
            hi = std::min(hi, slack / cd);
        else if (cd < -1e-15)
            lo = std::max(lo, slack / cd);
    };
    for (size_t r = 0; r < sys.rows.size(); ++r) {
        if (skip && (*skip)[r]) continue;
        const auto& h = sys.rows[r];
        if (is_vacuous(h)) continue;
        clip(dot(h.c, d), h.b - dot(h.c, z));
    }
    for (size_t k = 0; k < sys.dim; ++k) {
        clip(d[k], sys.box_hi[k] - z[k]);
        clip(-d[k], z[k] - sys.box_lo[k]);
    }
    if (lo > hi) lo = hi = 0.0;
}

std::vector<Vec> tight_basis(const HalfspaceSystem& sys, const Vec& z, std::vector<bool>* tight_rows,
                             double tol) {
    std::vector<bool> mask(sys.rows.size(), false);
    for (size_t r = 0; r < sys.rows.size(); ++r) {
        const auto& h = sys.rows[r];
        mask[r] = !is_vacuous(h) && std::abs(h.b - dot(h.c, z)) <= tol;
    }
    if (tight_rows) *tight_rows = mask;
    return row_basis(sys, mask);
}

std::vector<Vec> row_basis(const HalfspaceSystem& sys, const std::vector<bool>& rows) {
    std::vector<Vec> basis;
    for (size_t r = 0; r < sys.rows.size(); ++r) {
        if (!rows[r]) continue;
        Vec v = sys.rows[r].c;
        project_out(v, basis);
        const double nv = std::sqrt(dot(v, v));
        if (nv <= 1e-12) continue;
        for (double& e : v) e /= nv;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<bool> implicit_equalities(const HalfspaceSystem& sys) {
    std::vector<bool> eq(sys.rows.size(), false);
    LpProblem lp;
    lp.var_lo = sys.box_lo;
    lp.var_hi = sys.box_hi;
    for (const auto& h : sys.rows)
        if (!is_vacuous(h)) lp.rows.push_back({h.c, h.b});
    for (size_t r = 0; r < sys.rows.size(); ++r) {
        const auto& h = sys.rows[r];
        if (is_vacuous(h)) continue;
        lp.objective = h.c;
        const LpSolution sol = solve_lp(lp);
        if (sol.status != LpStatus::Optimal)
            throw std::runtime_error("implicit_equalities: LP failed");
        eq[r] = sol.value >= h.b - 1e-9;
    }
    return eq;
}

void project_out(Vec& d, const std::vector<Vec>& basis) {
    for (const auto& b : basis) {
        const double s = dot(b, d);
        for (size_t k = 0; k < d.size(); ++k) d[k] -= s * b[k];
    }
}

std::vector<Vec> hit_and_run_sample(const HalfspaceSystem& sys, size_t k, size_t burn_in,
                                    uint64_t seed) {
    if (k == 0) throw InputError("hit_and_run_sample needs k >= 1");
    double radius = 0.0;
    Vec z = interior_point(sys, &radius);

    // Empty interior: walk inside the affine hull cut out by the rows that
    // hold with equality on the whole set, keeping those rows tight.
    std::vector<Vec> face;
    std::vector<bool> tight;
    const bool degenerate = radius <= 1e-10;
    if (degenerate) {
        tight = implicit_equalities(sys);
        face = row_basis(sys, tight);
    }

    Rng rng(seed);
    std::vector<Vec> out;
    out.reserve(k);
    Vec d(sys.dim), cand(sys.dim);
    for (size_t step = 0; step < burn_in + k; ++step) {
        for (double& e : d) e = rng.normal();
        if (degenerate) project_out(d, face);
        double nd = std::sqrt(dot(d, d));
        const double u = rng.uniform();
        if (nd > 1e-12) {
            for (double& e : d) e /= nd;
            double lo, hi;
            line_range(sys, z, d, lo, hi, degenerate ? &tight : nullptr);
            const double t = lo + u * (hi - lo);
            for (size_t c = 0; c < sys.dim; ++c) cand[c] = z[c] + t * d[c];
            if (membership(cand, sys, 1e-12).member) z = cand;
        }
        if (step >= burn_in) out.push_back(z);
    }
    return out;
}

}  // namespace payoffset
