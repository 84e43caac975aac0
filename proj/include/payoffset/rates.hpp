#pragma once

#include <cstdint>
#include <optional>

#include "payoffset/core_games.hpp"

namespace payoffset {

// All logarithms are natural.

struct RateParams {
    size_t n = 2;
    double epsilon = 0.1;
    double delta = 0.05;
    std::optional<double> alpha;
    std::optional<double> pi_min;
};

enum class Regime { Exact, Approx };
enum class LbFamily { ExactPiMin, ExactEps, ExactN, ApproxLog, ApproxN };

struct MissingMass {
    double deviation = 0.0;
    double mean = 0.0;
};

struct KnapsackSup {
    double exact = 0.0;
    double fractional_upper = 0.0;
};

struct SampleSizeTerms {
    double terms[4] = {0, 0, 0, 0};  // Exact uses the first two
    int count = 0;
    uint64_t m = 0;
};

// ||p - p_hat||_1 deviation at confidence 1 - delta.
double l1_bound(size_t D, double m, double delta);
// Samples after which every action with mass >= beta has been observed.
double support_id_samples(size_t D, double beta, double delta);
// Uniform deviation over subsets of mass <= beta.
double subset_bernstein_bound(size_t D, double m, double delta, double beta);
// Data-dependent variant driven by the empirical subset mass.
double empirical_subset_bound(size_t D, double m, double delta, double empirical_mass);
MissingMass missing_mass_bounds(size_t D, double m, double delta);

// Largest total increase sum_{i in S}(xh_i - x_i) over supported subsets with
// sum_{i in S} x_i <= alpha/2 (the empty set included), plus the greedy
// optimum of the fractional relaxation. The exact branch needs n <= 20.
KnapsackSup knapsack_subset_sup(const Strategy& x, const Strategy& xh, double alpha);
double knapsack_exact(const Strategy& x, const Strategy& xh, double alpha);
double knapsack_fractional(const Strategy& x, const Strategy& xh, double alpha);

SampleSizeTerms sample_size_terms(Regime regime, const RateParams& p);
uint64_t sample_size(Regime regime, const RateParams& p);

double minimax_lower_bound(LbFamily family, const RateParams& p);

double tech_lemma_bound(double c1, double c2, double K, double n, double delta);
// Smallest t with (log(c1/delta) + n log(c2 t)) / t <= K^2, found by search.
uint64_t tech_lemma_search(double c1, double c2, double K, double n, double delta);

const char* to_string(LbFamily f);
LbFamily lb_family_from_string(const std::string& s);

}  // namespace payoffset
