#pragma once

#include "payoffset/core_games.hpp"
#include "payoffset/feasible_sets.hpp"

namespace payoffset {

struct ConstructionReport {
    PayoffMatrix output;
    double distance = 0.0;         // ||input - output||_inf
    double certified_bound = 0.0;  // bound guaranteed by the construction
    double membership_violation = 0.0;
};

// A in G^x_0(x, y)  ->  A_hat in G^x_0(xh, yh), ||A - A_hat|| <= 4 ||y - yh||_1.
// Requires supp(x) = supp(xh).
ConstructionReport exact_gsg_row(const PayoffMatrix& A, const Strategy& x, const Strategy& y,
                                 const Strategy& xh, const Strategy& yh);

// B in G^y_0(x, y)  ->  B_hat in G^y_0(xh, yh), ||B - B_hat|| <= 4 ||x - xh||_1.
// Requires supp(y) = supp(yh).
ConstructionReport exact_gsg_col(const PayoffMatrix& B, const Strategy& x, const Strategy& y,
                                 const Strategy& xh, const Strategy& yh);

// A in Z_0(x, y)  ->  A_hat in Z_0(x, yh). Requires supp(y) = supp(yh).
ConstructionReport exact_zsg_fix_x(const PayoffMatrix& A, const Strategy& x, const Strategy& y,
                                   const Strategy& yh);

// A in Z_0(x, y)  ->  A_hat in Z_0(xh, y). Requires supp(x) = supp(xh).
ConstructionReport exact_zsg_fix_y(const PayoffMatrix& A, const Strategy& x, const Strategy& y,
                                   const Strategy& xh);

// Shrinks M toward zero until the alpha-gaps at (xp, yp) are at most alpha.
ConstructionReport approx_scale(SetKind kind, const PayoffMatrix& M, const Strategy& xp,
                                const Strategy& yp, double alpha);

}  // namespace payoffset
