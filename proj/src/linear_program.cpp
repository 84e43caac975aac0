#include "payoffset/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace payoffset {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kPhaseOneTol = 1e-9;
constexpr double kOptimalViolation = 1e-8;

// Tableau over variables u = x - lo >= 0. Columns: structural, slack,
// artificial, then the right-hand side.
class Tableau {
public:
    Tableau(size_t rows, size_t cols) : m_(rows), w_(cols + 1), t_(rows * (cols + 1), 0.0) {}

    double& at(size_t i, size_t j) { return t_[i * w_ + j]; }
    double at(size_t i, size_t j) const { return t_[i * w_ + j]; }
    double& rhs(size_t i) { return t_[i * w_ + w_ - 1]; }
    double rhs(size_t i) const { return t_[i * w_ + w_ - 1]; }
    size_t rows() const { return m_; }
    size_t cols() const { return w_ - 1; }

    void pivot(size_t r, size_t e, Vec& d, double& obj) {
        double* pr = &t_[r * w_];
        const double inv = 1.0 / pr[e];
        for (size_t j = 0; j < w_; ++j) pr[j] *= inv;
        pr[e] = 1.0;
        for (size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* pi = &t_[i * w_];
            const double f = pi[e];
            if (f == 0.0) continue;
            for (size_t j = 0; j < w_; ++j) pi[j] -= f * pr[j];
            pi[e] = 0.0;
        }
        const double f = d[e];
        if (f != 0.0) {
            for (size_t j = 0; j + 1 < w_; ++j) d[j] -= f * pr[j];
            obj -= f * pr[w_ - 1];
            d[e] = 0.0;
        }
    }

private:
    size_t m_, w_;
    Vec t_;
};

enum class RunResult { Optimal, Stalled };

// Bland's rule: lowest-index improving column, lowest-index basic variable on
// ratio ties. `allowed` limits the entering candidates.
RunResult run_simplex(Tableau& T, std::vector<size_t>& basis, Vec& d, double& obj,
                      size_t allowed) {
    const size_t limit = 200 * (T.rows() + T.cols()) + 1000;
    for (size_t iter = 0; iter < limit; ++iter) {
        size_t e = allowed;
        for (size_t j = 0; j < allowed; ++j)
            if (d[j] < -kReducedCostTol) {
                e = j;
                break;
            }
        if (e == allowed) return RunResult::Optimal;
        size_t r = T.rows();
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < T.rows(); ++i) {
            const double a = T.at(i, e);
            if (a <= kPivotTol) continue;
            const double ratio = std::max(T.rhs(i), 0.0) / a;
            if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && basis[i] < basis[r])) {
                if (ratio < best) best = ratio;
                r = i;
            }
        }
        if (r == T.rows()) return RunResult::Stalled;  // unbounded; impossible with finite boxes
        T.pivot(r, e, d, obj);
        basis[r] = e;
    }
    return RunResult::Stalled;
}

void reduced_costs(const Tableau& T, const std::vector<size_t>& basis, const Vec& cost, Vec& d,
                   double& obj) {
    d = cost;
    obj = 0.0;
    for (size_t i = 0; i < T.rows(); ++i) {
        const double cb = cost[basis[i]];
        if (cb == 0.0) continue;
        for (size_t j = 0; j < T.cols(); ++j) d[j] -= cb * T.at(i, j);
        obj -= cb * T.rhs(i);
    }
}

}  // namespace

double lp_violation(const LpProblem& p, const Vec& x) {
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& row : p.rows) {
        double s = 0.0;
        for (size_t k = 0; k < x.size(); ++k) s += row.coef[k] * x[k];
        v = std::max(v, s - row.ub);
    }
    for (size_t k = 0; k < x.size(); ++k) {
        v = std::max(v, x[k] - p.var_hi[k]);
        v = std::max(v, p.var_lo[k] - x[k]);
    }
    return v;
}

LpSolution solve_lp(const LpProblem& p) {
    const size_t nv = p.objective.size();
    if (p.var_lo.size() != nv || p.var_hi.size() != nv)
        throw InputError("LP bound vectors do not match objective length");
    for (const auto& row : p.rows)
        if (row.coef.size() != nv) throw InputError("LP row length does not match objective");
    for (size_t k = 0; k < nv; ++k)
        if (!std::isfinite(p.var_lo[k]) || !std::isfinite(p.var_hi[k]) || p.var_lo[k] > p.var_hi[k])
            throw InputError("LP variable bounds must be finite and ordered");

    LpSolution sol;
    const size_t m = p.rows.size() + nv;  // constraint rows plus upper-bound rows

    Vec rhs(m);
    for (size_t r = 0; r < p.rows.size(); ++r) {
        double s = p.rows[r].ub;
        for (size_t k = 0; k < nv; ++k) s -= p.rows[r].coef[k] * p.var_lo[k];
        rhs[r] = s;
    }
    for (size_t k = 0; k < nv; ++k) rhs[p.rows.size() + k] = p.var_hi[k] - p.var_lo[k];

    size_t na = 0;
    for (double b : rhs)
        if (b < 0.0) ++na;
    const size_t ncol = nv + m + na;
    Tableau T(m, ncol);
    std::vector<size_t> basis(m);
    size_t art = nv + m;
    for (size_t r = 0; r < m; ++r) {
        const bool flip = rhs[r] < 0.0;
        const double sg = flip ? -1.0 : 1.0;
        if (r < p.rows.size()) {
            for (size_t k = 0; k < nv; ++k) T.at(r, k) = sg * p.rows[r].coef[k];
        } else {
            T.at(r, r - p.rows.size()) = sg;
        }
        T.at(r, nv + r) = sg;
        T.rhs(r) = sg * rhs[r];
        if (flip) {
            T.at(r, art) = 1.0;
            basis[r] = art++;
        } else {
            basis[r] = nv + r;
        }
    }

    Vec d;
    double obj = 0.0;
    if (na > 0) {
        Vec cost1(ncol, 0.0);
        for (size_t j = nv + m; j < ncol; ++j) cost1[j] = 1.0;
        reduced_costs(T, basis, cost1, d, obj);
        if (run_simplex(T, basis, d, obj, ncol) != RunResult::Optimal) return sol;
        if (-obj > kPhaseOneTol) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Move zero-level artificials out of the basis where possible; rows
        // where that fails are redundant and stay inert.
        for (size_t r = 0; r < m; ++r) {
            if (basis[r] < nv + m) continue;
            for (size_t j = 0; j < nv + m; ++j)
                if (std::abs(T.at(r, j)) > 1e-9) {
                    T.pivot(r, j, d, obj);
                    basis[r] = j;
                    break;
                }
        }
    }

    Vec cost2(ncol, 0.0);
    for (size_t k = 0; k < nv; ++k) cost2[k] = p.objective[k];
    reduced_costs(T, basis, cost2, d, obj);
    if (run_simplex(T, basis, d, obj, nv + m) != RunResult::Optimal) return sol;

    Vec x(p.var_lo);
    for (size_t r = 0; r < m; ++r)
        if (basis[r] < nv) x[basis[r]] += T.rhs(r);
    for (size_t k = 0; k < nv; ++k) x[k] = std::clamp(x[k], p.var_lo[k], p.var_hi[k]);

    sol.point = std::move(x);
    sol.value = 0.0;
    for (size_t k = 0; k < nv; ++k) sol.value += p.objective[k] * sol.point[k];
    sol.max_violation = lp_violation(p, sol.point);
    sol.status = sol.max_violation <= kOptimalViolation ? LpStatus::Optimal : LpStatus::NumericFailure;
    return sol;
}

std::string to_mps(const LpProblem& p, const std::string& name) {
    std::string out;
    char buf[128];
    auto line = [&](const char* f1, const std::string& f2, const std::string& f3, double v) {
        std::snprintf(buf, sizeof buf, " %-2s %-8s  %-8s  %12.5e\n", f1, f2.c_str(), f3.c_str(), v);
        out += buf;
    };
    auto col_name = [](size_t k) { return "X" + std::to_string(k + 1); };
    auto row_name = [](size_t r) { return "R" + std::to_string(r + 1); };

    out += "NAME          " + name + "\n";
    out += "ROWS\n N  COST\n";
    for (size_t r = 0; r < p.rows.size(); ++r) out += " L  " + row_name(r) + "\n";
    out += "COLUMNS\n";
    for (size_t k = 0; k < p.objective.size(); ++k) {
        if (p.objective[k] != 0.0) line("", col_name(k), "COST", p.objective[k]);
        for (size_t r = 0; r < p.rows.size(); ++r)
            if (p.rows[r].coef[k] != 0.0) line("", col_name(k), row_name(r), p.rows[r].coef[k]);
    }
    out += "RHS\n";
    for (size_t r = 0; r < p.rows.size(); ++r)
        if (p.rows[r].ub != 0.0) line("", "RHS", row_name(r), p.rows[r].ub);
    out += "BOUNDS\n";
    for (size_t k = 0; k < p.objective.size(); ++k) {
        line("LO", "BND", col_name(k), p.var_lo[k]);
        line("UP", "BND", col_name(k), p.var_hi[k]);
    }
    out += "ENDATA\n";
    return out;
}

}  // namespace payoffset
