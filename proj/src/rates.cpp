#include "payoffset/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace payoffset {

namespace {

void check(bool ok, const std::string& msg) {
    if (!ok) throw RangeError(msg);
}

void check_delta(double delta) { check(delta > 0.0 && delta < 1.0, "delta must lie in (0,1)"); }
// Concentration statements stay meaningful (and trivial) at delta = 1.
void check_risk(double delta) { check(delta > 0.0 && delta <= 1.0, "delta must lie in (0,1]"); }

// Subset-mass budget used by S_alpha: sum_{i in S} x_i <= alpha / 2.
constexpr double kBudgetSlack = 1e-12;

void exact_dfs(const std::vector<size_t>& idx, const Strategy& x, const Strategy& xh, double cap,
               size_t pos, double mass, double gain, double& best) {
    best = std::max(best, gain);
    for (size_t k = pos; k < idx.size(); ++k) {
        const size_t i = idx[k];
        if (mass + x[i] > cap) continue;
        exact_dfs(idx, x, xh, cap, k + 1, mass + x[i], gain + (xh[i] - x[i]), best);
    }
}

}  // namespace

double l1_bound(size_t D, double m, double delta) {
    check(m >= 1.0, "l1_bound needs m >= 1");
    check_risk(delta);
    const double d = static_cast<double>(D);
    return std::sqrt((2.0 * std::log(1.0 / delta) + 2.0 * d * std::log(6.0 * m)) / m);
}

double support_id_samples(size_t D, double beta, double delta) {
    check(beta > 0.0 && beta < 1.0, "support_id_samples needs beta in (0,1)");
    check_delta(delta);
    return std::log(static_cast<double>(D) / delta) / std::log(1.0 / (1.0 - beta));
}

double subset_bernstein_bound(size_t D, double m, double delta, double beta) {
    check(m > 2.0, "subset_bernstein_bound needs m > 2");
    check_risk(delta);
    check(beta >= 0.0, "subset_bernstein_bound needs beta >= 0");
    const double L = static_cast<double>(D) + std::log(1.0 / delta);
    return std::sqrt(4.0 * beta * L / m) + 4.0 * L / m;
}

double empirical_subset_bound(size_t D, double m, double delta, double empirical_mass) {
    check(m > 2.0, "empirical_subset_bound needs m > 2");
    check_risk(delta);
    check(empirical_mass >= 0.0, "empirical_subset_bound needs a nonnegative mass");
    const double L = static_cast<double>(D) + std::log(4.0 / delta);
    return std::sqrt(2.0 * empirical_mass * L / m) + 4.0 * L / (m - 1.0);
}

MissingMass missing_mass_bounds(size_t D, double m, double delta) {
    check(m >= 1.0, "missing_mass_bounds needs m >= 1");
    check_risk(delta);
    const double d = static_cast<double>(D);
    return {3.0 * std::sqrt(d) * std::log(1.0 / delta) / m, d / m};
}

double knapsack_exact(const Strategy& x, const Strategy& xh, double alpha) {
    check(alpha > 0.0, "knapsack needs alpha > 0");
    if (x.size() != xh.size()) throw InputError("knapsack: dimension mismatch");
    if (x.size() > 20) throw InputError("knapsack exact branch supports n <= 20");
    const std::vector<size_t> idx = support(x);
    double best = 0.0;
    exact_dfs(idx, x, xh, alpha / 2.0 + kBudgetSlack, 0, 0.0, 0.0, best);
    return best;
}

double knapsack_fractional(const Strategy& x, const Strategy& xh, double alpha) {
    check(alpha > 0.0, "knapsack needs alpha > 0");
    if (x.size() != xh.size()) throw InputError("knapsack: dimension mismatch");
    // max sum c_i r_i, r_i = (xh_i - x_i)/x_i, c_i in [0, 2 x_i], sum c_i <= alpha.
    std::vector<size_t> idx;
    for (size_t i : support(x))
        if (xh[i] > x[i]) idx.push_back(i);
    auto ratio = [&](size_t i) { return (xh[i] - x[i]) / x[i]; };
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return ratio(a) > ratio(b); });
    double budget = alpha, value = 0.0;
    for (size_t i : idx) {
        if (budget <= 0.0) break;
        const double c = std::min(2.0 * x[i], budget);
        value += c * ratio(i);
        budget -= c;
    }
    return value;
}

KnapsackSup knapsack_subset_sup(const Strategy& x, const Strategy& xh, double alpha) {
    return {knapsack_exact(x, xh, alpha), knapsack_fractional(x, xh, alpha)};
}

SampleSizeTerms sample_size_terms(Regime regime, const RateParams& p) {
    check(p.epsilon > 0.0 && p.epsilon < 1.0, "epsilon must lie in (0,1)");
    check_delta(p.delta);
    check(p.n >= 1, "n must be positive");
    const double n = static_cast<double>(p.n);
    const double d = p.delta, e = p.epsilon;
    SampleSizeTerms t;
    if (regime == Regime::Exact) {
        check(p.pi_min.has_value(), "Exact regime needs pi_min");
        const double pm = *p.pi_min;
        check(pm > 0.0 && pm < 1.0, "pi_min must lie in (0,1)");
        const double K2 = e * e / 128.0;
        t.terms[0] = std::log(4.0 * n / d) / std::log(1.0 / (1.0 - pm));
        t.terms[1] = 2.0 * (2.0 + 4.0 * std::log(4.0 / d) / K2 + (4.0 * n / K2) * std::log(12.0 * n / K2));
        t.count = 2;
    } else {
        check(p.alpha.has_value(), "Approx regime needs alpha");
        const double a = *p.alpha;
        check(a > 0.0, "alpha must be positive");
        const double L6 = n + std::log(6.0 / d);
        t.terms[0] = 1.0 + 4.0 * (n + std::log(24.0 / d)) / a;
        t.terms[1] = 16.0 * 192.0 * 192.0 * L6 / (a * e * e);
        t.terms[2] = 960.0 * L6 / (a * e);
        t.terms[3] = 576.0 * std::sqrt(n) * std::log(6.0 / d) / (e * a);
        t.count = 4;
    }
    const double mx = *std::max_element(t.terms, t.terms + t.count);
    t.m = static_cast<uint64_t>(std::ceil(mx));
    return t;
}

uint64_t sample_size(Regime regime, const RateParams& p) { return sample_size_terms(regime, p).m; }

double minimax_lower_bound(LbFamily family, const RateParams& p) {
    check(p.delta > 0.0 && p.delta < 0.25, "lower bounds need delta in (0, 1/4)");
    check(p.epsilon > 0.0, "epsilon must be positive");
    const double n = static_cast<double>(p.n);
    const double e = p.epsilon, d = p.delta;
    const double log4d = std::log(1.0 / (4.0 * d));
    auto need_alpha = [&](double hi, const char* name) {
        check(p.alpha.has_value(), std::string(name) + " needs alpha");
        check(*p.alpha > 0.0 && *p.alpha < hi,
              std::string(name) + " needs alpha in (0, " + (hi == 0.25 ? "1/4" : "1/2") + ")");
        return *p.alpha;
    };
    switch (family) {
        case LbFamily::ExactPiMin: {
            check(e < 1.0, "ExactPiMin needs epsilon < 1");
            check(p.pi_min.has_value(), "ExactPiMin needs pi_min");
            check(*p.pi_min > 0.0 && *p.pi_min < 1.0, "ExactPiMin needs pi_min in (0,1)");
            return log4d / std::log(1.0 / (1.0 - *p.pi_min));
        }
        case LbFamily::ExactEps:
            check(e < 1.0 / std::sqrt(32.0), "ExactEps needs epsilon < 1/sqrt(32)");
            return log4d / (16.0 * e * e);
        case LbFamily::ExactN:
            check(e <= 1.0 / 384.0, "ExactN needs epsilon <= 1/384");
            return std::log(2.0) * n / (40.0 * 192.0 * 192.0 * e * e);
        case LbFamily::ApproxLog: {
            const double a = need_alpha(0.25, "ApproxLog");
            check(e <= 1.0 / 8.0, "ApproxLog needs epsilon <= 1/8");
            return log4d / (18.0 * e * e * a);
        }
        case LbFamily::ApproxN: {
            const double a = need_alpha(0.5, "ApproxN");
            check(e <= 1.0 / 128.0, "ApproxN needs epsilon <= 1/128");
            return std::log(2.0) * n / (20.0 * 128.0 * 128.0 * a * e * e);
        }
    }
    return 0.0;
}

double tech_lemma_bound(double c1, double c2, double K, double n, double delta) {
    check(c1 > 0.0 && c2 > 0.0 && K > 0.0 && n > 0.0 && delta > 0.0, "tech_lemma_bound needs positive inputs");
    const double K2 = K * K;
    return 2.0 * (2.0 + 4.0 * std::log(c1 / delta) / K2 + (4.0 * n / K2) * std::log(2.0 * n * c2 / K2));
}

uint64_t tech_lemma_search(double c1, double c2, double K, double n, double delta) {
    check(c1 > 0.0 && c2 > 0.0 && K > 0.0 && n > 0.0 && delta > 0.0, "tech_lemma_search needs positive inputs");
    const double K2 = K * K;
    const double a = std::log(c1 / delta);
    const uint64_t cap = 2'000'000'000ULL;
    for (uint64_t t = 1; t < cap; ++t) {
        const double td = static_cast<double>(t);
        if ((a + n * std::log(c2 * td)) / td <= K2) return t;
    }
    throw RangeError("tech_lemma_search: no solution below the search cap");
}

const char* to_string(LbFamily f) {
    switch (f) {
        case LbFamily::ExactPiMin: return "ExactPiMin";
        case LbFamily::ExactEps: return "ExactEps";
        case LbFamily::ExactN: return "ExactN";
        case LbFamily::ApproxLog: return "ApproxLog";
        case LbFamily::ApproxN: return "ApproxN";
    }
    return "?";
}

LbFamily lb_family_from_string(const std::string& s) {
    for (LbFamily f : {LbFamily::ExactPiMin, LbFamily::ExactEps, LbFamily::ExactN, LbFamily::ApproxLog,
                       LbFamily::ApproxN})
        if (s == to_string(f)) return f;
    throw InputError("unknown lower-bound family: " + s);
}

}  // namespace payoffset
