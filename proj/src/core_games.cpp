#include "payoffset/core_games.hpp"

#include <algorithm>
#include <cmath>

#include "payoffset/rng.hpp"

namespace payoffset {

namespace {

void require_dim(size_t a, size_t b, const char* what) {
    if (a != b)
        throw InputError(std::string("dimension mismatch: ") + what + " (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
}

}  // namespace

Strategy::Strategy(Vec p) : probs(std::move(p)) {
    if (probs.empty()) throw InputError("strategy must have at least one action");
    double sum = 0.0;
    for (double v : probs) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw InputError("strategy entry outside [0,1]: " + std::to_string(v));
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw InputError("strategy entries sum to " + std::to_string(sum) + ", not 1");
}

Strategy Strategy::pure(size_t n, size_t i) {
    Vec p(n, 0.0);
    p.at(i) = 1.0;
    return Strategy(std::move(p));
}

Strategy Strategy::uniform(size_t n) { return Strategy(Vec(n, 1.0 / static_cast<double>(n))); }

StrategyProfile::StrategyProfile(Strategy x_, Strategy y_) : x(std::move(x_)), y(std::move(y_)) {
    require_dim(x.size(), y.size(), "profile x and y");
}

PayoffMatrix::PayoffMatrix(size_t n_, Vec flat) : n(n_), entries(std::move(flat)) {
    require_dim(entries.size(), n * n, "matrix entries");
}

PayoffMatrix PayoffMatrix::from_rows(const std::vector<Vec>& rows) {
    const size_t n = rows.size();
    PayoffMatrix M(n);
    for (size_t i = 0; i < n; ++i) {
        require_dim(rows[i].size(), n, "matrix row");
        for (size_t j = 0; j < n; ++j) M(i, j) = rows[i][j];
    }
    return M;
}

PayoffMatrix PayoffMatrix::transpose() const {
    PayoffMatrix T(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) T(j, i) = (*this)(i, j);
    return T;
}

PayoffMatrix PayoffMatrix::scaled(double lambda) const {
    PayoffMatrix S(n);
    for (size_t k = 0; k < entries.size(); ++k) S.entries[k] = lambda * entries[k];
    return S;
}

double PayoffMatrix::max_abs() const {
    double m = 0.0;
    for (double v : entries) m = std::max(m, std::abs(v));
    return m;
}

bool PayoffMatrix::in_unit_box(double tol) const { return max_abs() <= 1.0 + tol; }

Game Game::gsg(PayoffMatrix A, PayoffMatrix B) {
    require_dim(A.n, B.n, "game matrices");
    return Game{Kind::Gsg, std::move(A), std::move(B)};
}

Game Game::zsg(PayoffMatrix A) {
    Game g{Kind::Zsg, A, A.scaled(-1.0)};
    return g;
}

std::vector<size_t> support(const Strategy& s) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] > kSupportThreshold) idx.push_back(i);
    return idx;
}

bool same_support(const Strategy& a, const Strategy& b) {
    require_dim(a.size(), b.size(), "support comparison");
    return support(a) == support(b);
}

double pi_min(const StrategyProfile& p) {
    double m = 1.0;
    for (const Strategy* s : {&p.x, &p.y})
        for (double v : s->probs)
            if (v > kSupportThreshold) m = std::min(m, v);
    return m;
}

double l1_distance(const Strategy& a, const Strategy& b) {
    require_dim(a.size(), b.size(), "l1 distance");
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

double linf_distance(const PayoffMatrix& a, const PayoffMatrix& b) {
    require_dim(a.n, b.n, "matrix distance");
    double d = 0.0;
    for (size_t k = 0; k < a.entries.size(); ++k)
        d = std::max(d, std::abs(a.entries[k] - b.entries[k]));
    return d;
}

Vec row_values(const PayoffMatrix& M, const Strategy& y) {
    require_dim(M.n, y.size(), "row values");
    Vec v(M.n, 0.0);
    for (size_t i = 0; i < M.n; ++i)
        for (size_t j = 0; j < M.n; ++j) v[i] += M(i, j) * y[j];
    return v;
}

Vec col_values(const PayoffMatrix& M, const Strategy& x) {
    require_dim(M.n, x.size(), "column values");
    Vec v(M.n, 0.0);
    for (size_t i = 0; i < M.n; ++i)
        for (size_t j = 0; j < M.n; ++j) v[j] += x[i] * M(i, j);
    return v;
}

double bilinear(const PayoffMatrix& M, const Strategy& x, const Strategy& y) {
    const Vec r = row_values(M, y);
    require_dim(M.n, x.size(), "bilinear form");
    double s = 0.0;
    for (size_t i = 0; i < M.n; ++i) s += x[i] * r[i];
    return s;
}

double nash_gap(GapKind kind, const PayoffMatrix& M, const Strategy& x, const Strategy& y) {
    require_dim(M.n, x.size(), "nash_gap x");
    require_dim(M.n, y.size(), "nash_gap y");
    const double v = bilinear(M, x, y);
    double gap = -2.0;
    if (kind == GapKind::GsgRow) {
        for (double r : row_values(M, y)) gap = std::max(gap, v - r);
    } else {
        const Vec c = col_values(M, x);
        for (double cj : c) gap = std::max(gap, kind == GapKind::GsgCol ? v - cj : cj - v);
    }
    return gap;
}

bool is_alpha_nash(const Game& game, const StrategyProfile& p, double alpha, double tol) {
    if (alpha < 0.0) throw InputError("alpha must be nonnegative");
    const bool row_ok = nash_gap(GapKind::GsgRow, game.A, p.x, p.y) <= alpha + tol;
    if (game.kind == Game::Kind::Gsg)
        return row_ok && nash_gap(GapKind::GsgCol, game.B, p.x, p.y) <= alpha + tol;
    return row_ok && nash_gap(GapKind::ZsgCol, game.A, p.x, p.y) <= alpha + tol;
}

bool support_characterization(const PayoffMatrix& A, const Strategy& x, const Strategy& y,
                              SupportKind kind, double tol) {
    const size_t n = A.n;
    const Vec r = row_values(A, y);
    const std::vector<size_t> sx = support(x);
    std::vector<bool> in_x(n, false);
    for (size_t i : sx) in_x[i] = true;

    auto row_part = [&]() {
        const double ref = r[sx.front()];
        for (size_t i : sx)
            if (std::abs(r[i] - ref) > tol) return false;
        for (size_t j = 0; j < n; ++j)
            if (!in_x[j] && r[j] < ref - tol) return false;
        return true;
    };
    if (kind == SupportKind::RowOnly) return row_part();

    // Zero-sum: supported rows and supported columns all attain the value v,
    // unsupported rows are >= v and unsupported columns are <= v.
    const double v = bilinear(A, x, y);
    const Vec c = col_values(A, x);
    const std::vector<size_t> sy = support(y);
    std::vector<bool> in_y(n, false);
    for (size_t j : sy) in_y[j] = true;
    for (size_t i = 0; i < n; ++i) {
        if (in_x[i] ? std::abs(r[i] - v) > tol : r[i] < v - tol) return false;
        if (in_y[i] ? std::abs(c[i] - v) > tol : c[i] > v + tol) return false;
    }
    return true;
}

namespace {

std::vector<uint64_t> draw_counts(const Strategy& s, uint64_t m, Rng& rng) {
    Vec cdf(s.size());
    double acc = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
        acc += s[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    // Zero-probability actions get zero-width bins so they can never be drawn.
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] <= 0.0) cdf[i] = i == 0 ? 0.0 : cdf[i - 1];
    std::vector<uint64_t> counts(s.size(), 0);
    for (uint64_t t = 0; t < m; ++t) ++counts[rng.categorical(cdf)];
    return counts;
}

}  // namespace

SampleRecord sample_profile(const StrategyProfile& p, uint64_t m, uint64_t seed) {
    if (m == 0) throw InputError("sample_profile needs m >= 1");
    Rng row_rng(derive_seed(seed, 0));
    Rng col_rng(derive_seed(seed, 1));
    SampleRecord r;
    r.n = p.n();
    r.m = m;
    r.seed = seed;
    r.row_counts = draw_counts(p.x, m, row_rng);
    r.col_counts = draw_counts(p.y, m, col_rng);
    return r;
}

StrategyProfile empirical_profile(const SampleRecord& r) {
    auto freq = [&](const std::vector<uint64_t>& counts) {
        require_dim(counts.size(), r.n, "sample counts");
        uint64_t total = 0;
        for (uint64_t c : counts) total += c;
        if (total != r.m || r.m == 0) throw InputError("counts do not sum to m");
        Vec p(counts.size());
        for (size_t i = 0; i < counts.size(); ++i)
            p[i] = static_cast<double>(counts[i]) / static_cast<double>(r.m);
        return Strategy(std::move(p));
    };
    return StrategyProfile(freq(r.row_counts), freq(r.col_counts));
}

}  // namespace payoffset
