#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace payoffset {

using Vec = std::vector<double>;

// Entries at or below this value are treated as zero probability.
inline constexpr double kSupportThreshold = 1e-12;
// Default additive tolerance for every "<=" equilibrium check.
inline constexpr double kMembershipTol = 1e-9;

// Violated precondition or malformed input.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Parameter outside a theorem's (or formula's) domain of validity.
class RangeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Mixed strategy on n actions.
struct Strategy {
    Vec probs;

    Strategy() = default;
    // Validates entries in [0,1] and sum 1 within 1e-12.
    explicit Strategy(Vec p);

    size_t size() const { return probs.size(); }
    double operator[](size_t i) const { return probs[i]; }

    static Strategy pure(size_t n, size_t i);
    static Strategy uniform(size_t n);
};

struct StrategyProfile {
    Strategy x;  // row player
    Strategy y;  // column player

    StrategyProfile() = default;
    StrategyProfile(Strategy x_, Strategy y_);
    size_t n() const { return x.size(); }
};

// n x n loss matrix, row-major. Entry (i, j) sits at index i*n + j, which is
// also the flattening order used by every halfspace system.
struct PayoffMatrix {
    size_t n = 0;
    Vec entries;

    PayoffMatrix() = default;
    explicit PayoffMatrix(size_t n_) : n(n_), entries(n_ * n_, 0.0) {}
    PayoffMatrix(size_t n_, Vec flat);
    static PayoffMatrix from_rows(const std::vector<Vec>& rows);

    double operator()(size_t i, size_t j) const { return entries[i * n + j]; }
    double& operator()(size_t i, size_t j) { return entries[i * n + j]; }

    PayoffMatrix transpose() const;
    PayoffMatrix scaled(double lambda) const;
    double max_abs() const;
    // True when every entry lies in [-1, 1] within `tol`.
    bool in_unit_box(double tol = 1e-12) const;
};

struct SampleRecord {
    size_t n = 0;
    uint64_t m = 0;
    std::vector<uint64_t> row_counts;
    std::vector<uint64_t> col_counts;
    uint64_t seed = 0;
};

enum class GapKind { GsgRow, GsgCol, ZsgCol };
enum class SupportKind { RowOnly, ZeroSum };

// Either a general-sum pair (A, B) or a zero-sum game given by A alone.
struct Game {
    enum class Kind { Gsg, Zsg } kind = Kind::Gsg;
    PayoffMatrix A;
    PayoffMatrix B;

    static Game gsg(PayoffMatrix A, PayoffMatrix B);
    static Game zsg(PayoffMatrix A);
};

std::vector<size_t> support(const Strategy& s);
bool same_support(const Strategy& a, const Strategy& b);
double pi_min(const StrategyProfile& p);

// Left-to-right sum of |a_i - b_i|.
double l1_distance(const Strategy& a, const Strategy& b);
double linf_distance(const PayoffMatrix& a, const PayoffMatrix& b);

// M y and x^T M.
Vec row_values(const PayoffMatrix& M, const Strategy& y);
Vec col_values(const PayoffMatrix& M, const Strategy& x);
double bilinear(const PayoffMatrix& M, const Strategy& x, const Strategy& y);

// GsgRow: max_i x'My - e_i'My.  GsgCol: max_j x'My - x'Me_j.
// ZsgCol: max_j x'Me_j - x'My.
double nash_gap(GapKind kind, const PayoffMatrix& M, const Strategy& x, const Strategy& y);

bool is_alpha_nash(const Game& game, const StrategyProfile& p, double alpha,
                   double tol = kMembershipTol);

bool support_characterization(const PayoffMatrix& A, const Strategy& x, const Strategy& y,
                              SupportKind kind, double tol = kMembershipTol);

SampleRecord sample_profile(const StrategyProfile& p, uint64_t m, uint64_t seed);
StrategyProfile empirical_profile(const SampleRecord& r);

}  // namespace payoffset
