#pragma once

#include <string>
#include <vector>

#include "payoffset/core_games.hpp"

namespace payoffset {

enum class SetKind { GsgRow, GsgCol, Zsg };

struct SetSpec {
    SetKind kind = SetKind::GsgRow;
    Strategy x;
    Strategy y;
    double alpha = 0.0;
};

struct Halfspace {
    Vec c;
    double b = 0.0;  // c . z <= b
};

// Feasible payoff set over the row-major flattened matrix (dimension n^2).
struct HalfspaceSystem {
    size_t dim = 0;
    std::vector<Halfspace> rows;
    Vec box_lo;
    Vec box_hi;
    std::string label;
};

struct Membership {
    bool member = false;
    double max_violation = 0.0;
};

const char* to_string(SetKind kind);
SetKind set_kind_from_string(const std::string& s);

HalfspaceSystem build_system(const SetSpec& spec);
// Box [-1,1]^dim with no further rows.
HalfspaceSystem box_system(size_t dim);

Vec flatten(const PayoffMatrix& M);
PayoffMatrix unflatten(const Vec& z);

// Rows whose coefficients are all zero are vacuous (their bound is alpha >= 0)
// and are skipped when reporting the violation.
Membership membership(const Vec& z, const HalfspaceSystem& sys, double tol = kMembershipTol);

// Chebyshev center (largest inscribed Euclidean ball); zero vector when the
// radius is at most 1e-10.
Vec interior_point(const HalfspaceSystem& sys);
Vec interior_point(const HalfspaceSystem& sys, double* radius);

std::vector<Vec> hit_and_run_sample(const HalfspaceSystem& sys, size_t k, size_t burn_in,
                                    uint64_t seed);

// Feasible step range [lo, hi] for z + t d, given z feasible. Rows listed in
// `skip` are ignored (they are kept tight by the caller).
void line_range(const HalfspaceSystem& sys, const Vec& z, const Vec& d, double& lo, double& hi,
                const std::vector<bool>* skip = nullptr);

// Orthonormal basis of the span of the nonvacuous rows that are tight at z.
std::vector<Vec> tight_basis(const HalfspaceSystem& sys, const Vec& z,
                             std::vector<bool>* tight_rows = nullptr, double tol = 1e-12);
// Orthonormal basis of the span of the selected rows.
std::vector<Vec> row_basis(const HalfspaceSystem& sys, const std::vector<bool>& rows);
// Rows with c.z = b on the whole (nonempty) set, found by one LP per row.
std::vector<bool> implicit_equalities(const HalfspaceSystem& sys);
void project_out(Vec& d, const std::vector<Vec>& basis);

}  // namespace payoffset
