#include "payoffset/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace payoffset {

namespace {

// Differences to the maximum at or below this are treated as ties, so the
// whole argmax set takes the unchanged branch.
constexpr double kTieTol = 1e-12;

void require(bool ok, const std::string& msg) {
    if (!ok) throw InputError(msg);
}

void require_unit_box(const PayoffMatrix& M, const char* who) {
    require(M.in_unit_box(kMembershipTol), std::string(who) + ": matrix entries must lie in [-1,1]");
}

std::vector<bool> mask(const Strategy& s) {
    std::vector<bool> m(s.size(), false);
    for (size_t i : support(s)) m[i] = true;
    return m;
}

// Raises the supported rows (or columns) to the largest supported value and
// moves the unsupported ones by `outside_sign * delta`, then divides by 1 + delta.
PayoffMatrix equalize(const PayoffMatrix& A, const Vec& values, const std::vector<bool>& supported,
                      double delta, double outside_sign, bool by_columns) {
    double top = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < values.size(); ++k)
        if (supported[k]) top = std::max(top, values[k]);
    if (std::isfinite(top)) {
        for (size_t k = 0; k < values.size(); ++k) {
            if (!supported[k]) continue;
            const double gap = top - values[k];
            require(gap <= delta + kMembershipTol,
                    "construction: supported gap " + std::to_string(gap) +
                        " exceeds 2||.||_1 = " + std::to_string(delta));
        }
    }
    const size_t n = A.n;
    PayoffMatrix out(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const size_t k = by_columns ? j : i;
            double shift;
            if (supported[k]) {
                const double gap = top - values[k];
                shift = gap <= kTieTol ? 0.0 : gap;
            } else {
                shift = outside_sign * delta;
            }
            out(i, j) = (A(i, j) + shift) / (1.0 + delta);
        }
    return out;
}

ConstructionReport finish(const PayoffMatrix& in, PayoffMatrix out, double bound, const SetSpec& target) {
    ConstructionReport rep;
    rep.distance = linf_distance(in, out);
    rep.certified_bound = bound;
    rep.membership_violation = membership(flatten(out), build_system(target)).max_violation;
    rep.output = std::move(out);
    return rep;
}

void require_zero_sum_nash(const PayoffMatrix& A, const Strategy& x, const Strategy& y, const char* who) {
    const double g = std::max(nash_gap(GapKind::GsgRow, A, x, y), nash_gap(GapKind::ZsgCol, A, x, y));
    require(g <= kMembershipTol,
            std::string(who) + ": A is not an exact zero-sum equilibrium for (x, y), gap " + std::to_string(g));
}

}  // namespace

ConstructionReport exact_gsg_row(const PayoffMatrix& A, const Strategy& x, const Strategy& y,
                                 const Strategy& xh, const Strategy& yh) {
    require_unit_box(A, "exact_gsg_row");
    require(same_support(x, xh), "exact_gsg_row: supp(x) differs from supp(xh)");
    const double g = nash_gap(GapKind::GsgRow, A, x, y);
    require(g <= kMembershipTol,
            "exact_gsg_row: A is not in G^x_0(x, y), gap " + std::to_string(g));
    const double dy = l1_distance(y, yh);
    PayoffMatrix out = equalize(A, row_values(A, yh), mask(x), 2.0 * dy, 1.0, false);
    return finish(A, std::move(out), 4.0 * dy, SetSpec{SetKind::GsgRow, xh, yh, 0.0});
}

ConstructionReport exact_gsg_col(const PayoffMatrix& B, const Strategy& x, const Strategy& y,
                                 const Strategy& xh, const Strategy& yh) {
    require_unit_box(B, "exact_gsg_col");
    require(same_support(y, yh), "exact_gsg_col: supp(y) differs from supp(yh)");
    // B in G^y(x, y) exactly when B^T in G^x(y, x).
    ConstructionReport t = exact_gsg_row(B.transpose(), y, x, yh, xh);
    return finish(B, t.output.transpose(), t.certified_bound, SetSpec{SetKind::GsgCol, xh, yh, 0.0});
}

ConstructionReport exact_zsg_fix_x(const PayoffMatrix& A, const Strategy& x, const Strategy& y,
                                   const Strategy& yh) {
    require_unit_box(A, "exact_zsg_fix_x");
    require(same_support(y, yh), "exact_zsg_fix_x: supp(y) differs from supp(yh)");
    require_zero_sum_nash(A, x, y, "exact_zsg_fix_x");
    const double dy = l1_distance(y, yh);
    PayoffMatrix out = equalize(A, row_values(A, yh), mask(x), 2.0 * dy, 1.0, false);
    return finish(A, std::move(out), 4.0 * dy, SetSpec{SetKind::Zsg, x, yh, 0.0});
}

ConstructionReport exact_zsg_fix_y(const PayoffMatrix& A, const Strategy& x, const Strategy& y,
                                   const Strategy& xh) {
    require_unit_box(A, "exact_zsg_fix_y");
    require(same_support(x, xh), "exact_zsg_fix_y: supp(x) differs from supp(xh)");
    require_zero_sum_nash(A, x, y, "exact_zsg_fix_y");
    const double dx = l1_distance(x, xh);
    // The column player maximizes x'Ae_j: raise supported columns to the top
    // value and push unsupported ones down.
    PayoffMatrix out = equalize(A, col_values(A, xh), mask(y), 2.0 * dx, -1.0, true);
    return finish(A, std::move(out), 4.0 * dx, SetSpec{SetKind::Zsg, xh, y, 0.0});
}

ConstructionReport approx_scale(SetKind kind, const PayoffMatrix& M, const Strategy& xp,
                                const Strategy& yp, double alpha) {
    if (!(alpha > 0.0)) throw InputError("approx_scale: alpha must be positive");
    require_unit_box(M, "approx_scale");
    double g = 0.0;
    switch (kind) {
        case SetKind::GsgRow: g = nash_gap(GapKind::GsgRow, M, xp, yp); break;
        case SetKind::GsgCol: g = nash_gap(GapKind::GsgCol, M, xp, yp); break;
        case SetKind::Zsg:
            g = std::max(nash_gap(GapKind::GsgRow, M, xp, yp), nash_gap(GapKind::ZsgCol, M, xp, yp));
            break;
    }
    const double lambda = g <= alpha ? 1.0 : alpha / g;
    const double bound = g <= alpha ? 0.0 : 2.0 * (g - alpha) / g;
    return finish(M, lambda == 1.0 ? M : M.scaled(lambda), bound, SetSpec{kind, xp, yp, alpha});
}

}  // namespace payoffset
