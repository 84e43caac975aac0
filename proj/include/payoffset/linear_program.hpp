#pragma once

#include <string>
#include <vector>

#include "payoffset/core_games.hpp"

namespace payoffset {

struct LpRow {
    Vec coef;
    double ub = 0.0;  // coef . x <= ub
};

// minimize objective . x  s.t.  rows,  var_lo <= x <= var_hi (finite).
struct LpProblem {
    Vec objective;
    std::vector<LpRow> rows;
    Vec var_lo;
    Vec var_hi;
};

enum class LpStatus { Optimal, Infeasible, NumericFailure };

struct LpSolution {
    LpStatus status = LpStatus::NumericFailure;
    Vec point;
    double value = 0.0;
    double max_violation = 0.0;
};

// Dense two-phase tableau simplex with Bland's rule.
LpSolution solve_lp(const LpProblem& p);

// Largest violation of rows and bounds at x (negative when strictly feasible).
double lp_violation(const LpProblem& p, const Vec& x);

// Fixed-format MPS text for cross-checking with external solvers.
std::string to_mps(const LpProblem& p, const std::string& name = "PAYOFFSET");

}  // namespace payoffset
