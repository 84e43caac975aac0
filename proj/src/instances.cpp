#include "payoffset/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "payoffset/rng.hpp"
#include "payoffset/set_distance.hpp"

namespace payoffset {

namespace {

void check(bool ok, const std::string& msg) {
    if (!ok) throw RangeError(msg);
}

double param(const LbInstance& inst, const std::string& key) {
    for (const auto& [k, v] : inst.params)
        if (k == key) return v;
    throw InputError("instance has no parameter " + key);
}

}  // namespace

const char* to_string(InstanceFamily f) {
    switch (f) {
        case InstanceFamily::Impossibility: return "Impossibility";
        case InstanceFamily::EpsFamily: return "EpsFamily";
        case InstanceFamily::NPacking: return "NPacking";
        case InstanceFamily::AlphaLog: return "AlphaLog";
        case InstanceFamily::AlphaN: return "AlphaN";
    }
    return "?";
}

InstanceFamily instance_family_from_string(const std::string& s) {
    for (InstanceFamily f : {InstanceFamily::Impossibility, InstanceFamily::EpsFamily, InstanceFamily::NPacking,
                             InstanceFamily::AlphaLog, InstanceFamily::AlphaN})
        if (s == to_string(f)) return f;
    throw InputError("unknown instance family: " + s);
}

SetSpec LbInstance::spec(size_t profile) const {
    const StrategyProfile& p = profiles.at(profile);
    return SetSpec{kind, p.x, p.y, alpha};
}

PackingSet greedy_packing(size_t D, size_t target, uint64_t seed) {
    if (D < 4 || D % 2 != 0) throw InputError("greedy_packing needs even D >= 4");
    const double min_dist = static_cast<double>(D) / 16.0;
    const size_t budget = 1000 * std::max<size_t>(target, 1);
    Rng rng(seed);
    PackingSet out;
    out.D = D;
    out.min_pairwise_l1 = 2.0 * static_cast<double>(D);
    std::vector<int> v(D);
    for (size_t draw = 0; draw < budget && out.vectors.size() < target; ++draw) {
        for (size_t k = 0; k < D; ++k) v[k] = k < D / 2 ? 1 : -1;
        for (size_t k = D - 1; k > 0; --k) std::swap(v[k], v[rng.below(k + 1)]);
        double nearest = 2.0 * static_cast<double>(D);
        for (const auto& u : out.vectors) {
            double d = 0.0;
            for (size_t k = 0; k < D; ++k) d += std::abs(u[k] - v[k]);
            nearest = std::min(nearest, d);
        }
        if (nearest < min_dist) continue;
        out.vectors.push_back(v);
        if (out.vectors.size() > 1) out.min_pairwise_l1 = std::min(out.min_pairwise_l1, nearest);
    }
    if (out.vectors.size() < target)
        throw std::runtime_error("greedy_packing: budget exhausted with " + std::to_string(out.vectors.size()) +
                                 " of " + std::to_string(target) + " vectors");
    if (out.vectors.size() < 2) out.min_pairwise_l1 = 0.0;
    return out;
}

LbInstance make_lb_instance(InstanceFamily family, const LbParams& p) {
    LbInstance inst;
    inst.family = family;
    const double e = p.epsilon;
    switch (family) {
        case InstanceFamily::Impossibility: {
            check(p.pi > 0.0 && p.pi < 1.0, "Impossibility needs pi in (0,1)");
            const Strategy y({1.0, 0.0});
            inst.kind = SetKind::GsgRow;
            inst.profiles = {{Strategy({0.0, 1.0}), y}, {Strategy({p.pi, 1.0 - p.pi}), y}};
            inst.certified_separation = 1.0;
            inst.witness = PayoffMatrix::from_rows({{1.0, 0.0}, {-1.0, 0.0}});
            inst.params = {{"pi", p.pi}, {"n", 2}};
            break;
        }
        case InstanceFamily::EpsFamily: {
            check(e > 0.0 && e < 1.0 / std::sqrt(32.0), "EpsFamily needs epsilon in (0, 1/sqrt(32))");
            const double g = 2.0 * e;
            const Strategy h({0.5, 0.5});
            inst.kind = SetKind::GsgCol;
            inst.profiles = {{h, h}, {Strategy({0.5 + g, 0.5 - g}), h}};
            inst.certified_separation = g;
            inst.witness = PayoffMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}});
            inst.params = {{"epsilon", e}, {"gamma", g}, {"n", 2}};
            break;
        }
        case InstanceFamily::AlphaLog: {
            const double a = p.alpha;
            check(a > 0.0 && a < 0.25, "AlphaLog needs alpha in (0, 1/4)");
            check(e > 0.0 && e <= 0.125, "AlphaLog needs epsilon in (0, 1/8]");
            const double beta = 8.0 / 3.0 * e * a;
            const Strategy y({1.0, 0.0});
            inst.kind = SetKind::GsgRow;
            inst.alpha = a;
            inst.profiles = {{Strategy({a / 2.0, 1.0 - a / 2.0}), y},
                             {Strategy({(a + beta) / 2.0, 1.0 - (a + beta) / 2.0}), y}};
            inst.certified_separation = 2.0 * e;
            inst.witness = PayoffMatrix::from_rows({{1.0, -1.0}, {-1.0, -1.0}});
            inst.params = {{"alpha", a}, {"epsilon", e}, {"beta", beta}, {"n", 2}};
            break;
        }
        case InstanceFamily::NPacking: {
            check(e > 0.0 && e <= 1.0 / 384.0, "NPacking needs epsilon in (0, 1/384]");
            check(p.n >= 4 && p.n % 2 == 0, "NPacking needs even n >= 4");
            const size_t n = p.n;
            const double g = 192.0 * e;
            inst.kind = SetKind::GsgRow;
            inst.packing = greedy_packing(n, std::max<size_t>(p.packing_target, 2), p.seed);
            for (const auto& v : inst.packing->vectors) {
                Vec y(n);
                for (size_t k = 0; k < n; ++k) y[k] = (1.0 + g * v[k]) / static_cast<double>(n);
                inst.profiles.emplace_back(Strategy::pure(n, 0), Strategy(std::move(y)));
            }
            inst.certified_separation = 2.0 * e;
            inst.params = {{"epsilon", e}, {"gamma", g}, {"n", static_cast<double>(n)},
                           {"kappa", (1.0 + g) / (1.0 - g)}};
            inst.witness = packing_witness(inst, 0, 1);
            break;
        }
        case InstanceFamily::AlphaN: {
            const double a = p.alpha;
            check(a > 0.0 && a < 0.5, "AlphaN needs alpha in (0, 1/2)");
            check(e > 0.0 && e <= 1.0 / 128.0, "AlphaN needs epsilon in (0, 1/128]");
            check(p.n >= 5 && p.n % 2 == 1, "AlphaN needs odd n >= 5");
            const size_t n = p.n;
            const double g = 128.0 * a * e;
            inst.kind = SetKind::GsgRow;
            inst.alpha = a;
            inst.packing = greedy_packing(n - 1, std::max<size_t>(p.packing_target, 2), p.seed);
            for (const auto& v : inst.packing->vectors) {
                Vec x(n);
                for (size_t k = 0; k + 1 < n; ++k) x[k] = (a + g * v[k]) / static_cast<double>(n - 1);
                x[n - 1] = 1.0 - a;
                inst.profiles.emplace_back(Strategy(std::move(x)), Strategy::pure(n, 0));
            }
            inst.certified_separation = 2.0 * e;
            inst.params = {{"alpha", a}, {"epsilon", e}, {"gamma", g}, {"n", static_cast<double>(n)},
                           {"kappa", (a - g) / (a + g)}};
            inst.witness = packing_witness(inst, 0, 1);
            break;
        }
    }
    return inst;
}

PayoffMatrix packing_witness(const LbInstance& inst, size_t v, size_t w) {
    if (!inst.packing) throw InputError("packing_witness needs a packing family");
    const auto& V = inst.packing->vectors.at(v);
    const auto& W = inst.packing->vectors.at(w);
    const size_t n = inst.profiles.front().n();
    const StrategyProfile& pv = inst.profiles.at(v);
    double plus = 0.0, minus = 0.0;  // profile-v mass on D+ = {v=1,w=-1} and D- = {v=-1,w=1}
    PayoffMatrix A(n);
    if (inst.family == InstanceFamily::NPacking) {
        for (size_t k = 0; k < n; ++k) {
            if (V[k] == 1 && W[k] == -1) plus += pv.y[k];
            if (V[k] == -1 && W[k] == 1) minus += pv.y[k];
        }
        const double kappa = param(inst, "kappa");
        if (std::abs(kappa - plus / minus) > 1e-12) throw std::logic_error("NPacking: kappa mismatch");
        for (size_t i = 1; i < n; ++i)
            for (size_t k = 0; k < n; ++k) {
                if (V[k] == 1 && W[k] == -1) A(i, k) = 1.0 / 3.0;
                if (V[k] == -1 && W[k] == 1) A(i, k) = -kappa / 3.0;
            }
    } else if (inst.family == InstanceFamily::AlphaN) {
        for (size_t k = 0; k + 1 < n; ++k) {
            if (V[k] == 1 && W[k] == -1) plus += pv.x[k];
            if (V[k] == -1 && W[k] == 1) minus += pv.x[k];
        }
        const double kappa = param(inst, "kappa");
        if (std::abs(kappa - minus / plus) > 1e-12) throw std::logic_error("AlphaN: kappa mismatch");
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 1; j < n; ++j) A(i, j) = -1.0;
        for (size_t k = 0; k + 1 < n; ++k) {
            if (V[k] == 1 && W[k] == -1) A(k, 0) = -kappa;
            if (V[k] == -1 && W[k] == 1) A(k, 0) = 1.0;
        }
        A(n - 1, 0) = -1.0;
    } else {
        throw InputError("packing_witness needs a packing family");
    }
    return A;
}

double kl_categorical(const Strategy& p, const Strategy& q) {
    if (p.size() != q.size()) throw InputError("kl_categorical: dimension mismatch");
    double kl = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) throw InputError("kl_categorical: p is not absolutely continuous w.r.t. q");
        kl += p[i] * std::log(p[i] / q[i]);
    }
    return kl;
}

std::pair<Strategy, Strategy> kl_perturbed_pair(double beta, double gamma, const std::vector<int>& v) {
    if (!(beta > gamma && gamma > 0.0 && beta < 0.5)) throw RangeError("kl pair needs 1/2 > beta > gamma > 0");
    if (std::accumulate(v.begin(), v.end(), 0) != 0) throw InputError("kl pair needs a balanced sign vector");
    const double d = static_cast<double>(v.size());
    Vec P, Q;
    for (int s : v) {
        P.push_back((beta + gamma * beta * s) / d);
        Q.push_back(beta / d);
    }
    P.push_back(1.0 - beta);
    Q.push_back(1.0 - beta);
    return {Strategy(std::move(P)), Strategy(std::move(Q))};
}

double halfspace_distance(const Halfspace& h, const Vec& z) {
    double cz = 0.0, norm1 = 0.0;
    for (size_t k = 0; k < z.size(); ++k) {
        cz += h.c[k] * z[k];
        norm1 += std::abs(h.c[k]);
    }
    if (norm1 == 0.0) return 0.0;
    return std::max(0.0, cz - h.b) / norm1;
}

SeparationCheck verify_separation(const LbInstance& inst, double tol) {
    SeparationCheck out;
    if (!inst.packing) {
        out.measured = point_to_set(flatten(*inst.witness), build_system(inst.spec(1)));
    } else {
        const size_t n = inst.profiles.front().n();
        out.measured = std::numeric_limits<double>::infinity();
        for (size_t v = 0; v < inst.profiles.size(); ++v)
            for (size_t w = 0; w < inst.profiles.size(); ++w) {
                if (v == w) continue;
                const Vec z = flatten(packing_witness(inst, v, w));
                const HalfspaceSystem target = build_system(inst.spec(w));
                double d;
                if (n <= 8) {
                    d = point_to_set(z, target);
                } else {
                    d = 0.0;
                    for (const auto& h : target.rows) d = std::max(d, halfspace_distance(h, z));
                }
                out.measured = std::min(out.measured, d);
            }
    }
    out.ok = out.measured >= inst.certified_separation - tol;
    return out;
}

}  // namespace payoffset
