#pragma once

#include <vector>

#include "enorbit/group.hpp"

namespace enorbit {

// Value of the quotient map: the generators evaluated in the frozen order
//   GL_n       tr_1..tr_n            mu_0..mu_{n-1}
//   Sp_2n      tr_2,tr_4,..,tr_2n    eta_1,eta_3,..,eta_{2n-1}
//   O_{2n+1}   tr_2,..,tr_2n         eta_0,eta_2,..,eta_2n
//   O_{2n}     tr_2,..,tr_2n         eta_0,eta_2,..,eta_{2n-2}
// GRAM descriptors follow the layout of their symmetry type and parity.
struct InvariantVector {
    GroupKind kind = GroupKind::GL;
    std::size_t rank = 0;
    std::vector<Scalar> traces;
    std::vector<Scalar> pairings;

    friend bool operator==(const InvariantVector& a, const InvariantVector& b) {
        return a.kind == b.kind && a.rank == b.rank && a.traces == b.traces &&
               a.pairings == b.pairings;
    }
    friend bool operator!=(const InvariantVector& a, const InvariantVector& b) {
        return !(a == b);
    }

    bool traces_vanish() const {
        for (const auto& t : traces)
            if (!t.is_zero()) return false;
        return true;
    }
};

namespace detail {

struct InvariantLayout {
    std::vector<std::size_t> trace_powers;
    std::vector<std::size_t> eta_powers; // mu indices for GL
};

inline InvariantLayout invariant_layout(const GroupDescriptor& g) {
    InvariantLayout lay;
    const std::size_t n = g.rank();
    if (g.kind == GroupKind::GL) {
        for (std::size_t i = 1; i <= n; ++i) lay.trace_powers.push_back(i);
        for (std::size_t j = 0; j < n; ++j) lay.eta_powers.push_back(j);
        return lay;
    }
    for (std::size_t i = 1; i <= n; ++i) lay.trace_powers.push_back(2 * i);
    if (g.symplectic_like()) {
        for (std::size_t j = 1; j <= n; ++j) lay.eta_powers.push_back(2 * j - 1);
    } else if (g.m() % 2 == 1) {
        for (std::size_t j = 0; j <= n; ++j) lay.eta_powers.push_back(2 * j);
    } else {
        for (std::size_t j = 0; j < n; ++j) lay.eta_powers.push_back(2 * j);
    }
    return lay;
}

} // namespace detail

namespace detail {

// tr(A B) without forming the product
inline Scalar trace_product(const Mat& a, const Mat& b) {
    Scalar t;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !b(j, i).is_zero()) t += a(i, j) * b(j, i);
    return t;
}

} // namespace detail

// Exact evaluation of every generator; eta is computed against the descriptor's
// Gram matrix, so this works for GRAM descriptors as well. Pairings use an
// iterated matrix-vector chain; traces of high powers split as tr(X^a X^b).
inline InvariantVector quotient_map(const EnhancedPoint& p) {
    const auto lay = detail::invariant_layout(p.group);
    std::size_t maxtrace = 0, maxpair = 0;
    for (auto i : lay.trace_powers) maxtrace = std::max(maxtrace, i);
    for (auto j : lay.eta_powers) maxpair = std::max(maxpair, j);
    const std::size_t half = (maxtrace + 1) / 2;
    const auto pw = power_chain(p.X, half);

    InvariantVector iv;
    iv.kind = p.group.kind;
    iv.rank = p.group.rank();
    for (auto i : lay.trace_powers) {
        const std::size_t a = std::min(i, half);
        iv.traces.push_back(detail::trace_product(pw[a], pw[i - a]));
    }
    std::vector<Mat> w; // u, Xu, X^2 u, ...
    w.reserve(maxpair + 1);
    w.push_back(p.u);
    for (std::size_t j = 1; j <= maxpair; ++j) w.push_back(p.X * w.back());
    if (p.group.kind == GroupKind::GL) {
        for (auto j : lay.eta_powers) iv.pairings.push_back((p.v * w[j])(0, 0));
    } else {
        const Mat bu = standard_form(p.group) * p.u;
        for (auto j : lay.eta_powers) iv.pairings.push_back((w[j].transpose() * bu)(0, 0));
    }
    return iv;
}

// Orbit equality criterion for closed orbits: Gx = Gy iff pi(x) = pi(y). The
// caller certifies closedness (see classify); the test itself is bit-exact.
inline bool closed_orbit_equal(const EnhancedPoint& x, const EnhancedPoint& y) {
    if (x.group != y.group) fail(errc::size_mismatch, "points live under different groups");
    return quotient_map(x) == quotient_map(y);
}

// --- first-order jets ---------------------------------------------------------

enum class GeneratorType { TracePower, Mu, Eta };

struct GeneratorId {
    GeneratorType type;
    std::size_t power;
};

inline std::vector<GeneratorId> generators_for(const GroupDescriptor& g) {
    const auto lay = detail::invariant_layout(g);
    std::vector<GeneratorId> gens;
    for (auto i : lay.trace_powers) gens.push_back({GeneratorType::TracePower, i});
    const GeneratorType pt = g.kind == GroupKind::GL ? GeneratorType::Mu : GeneratorType::Eta;
    for (auto j : lay.eta_powers) gens.push_back({pt, j});
    return gens;
}

struct Tangent {
    Mat dX; // m x m
    Mat du; // m x 1
    Mat dv; // 1 x n, GL only
};

inline Tangent zero_tangent(const GroupDescriptor& g) {
    const std::size_t m = g.m();
    return {Mat::zeros(m, m), Mat::zeros(m, 1),
            g.kind == GroupKind::GL ? Mat::zeros(1, m) : Mat()};
}

namespace detail {

// value + eps * derivative pairs for matrices
struct JetMat {
    Mat v, d;
};

inline JetMat jmul(const JetMat& a, const JetMat& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }

} // namespace detail

// Exact (f(base), Df(base)[direction]) by dual-number arithmetic, for one
// invariant generator.
inline std::pair<Scalar, Scalar> jet_eval(const GeneratorId& gen, const EnhancedPoint& base,
                                          const Tangent& dir) {
    const std::size_t m = base.group.m();
    detail::JetMat acc{Mat::identity(m), Mat::zeros(m, m)};
    const detail::JetMat jx{base.X, dir.dX};
    for (std::size_t i = 0; i < gen.power; ++i) acc = detail::jmul(acc, jx);
    switch (gen.type) {
        case GeneratorType::TracePower:
            return {acc.v.trace(), acc.d.trace()};
        case GeneratorType::Mu: {
            const detail::JetMat ju{base.u, dir.du};
            const detail::JetMat jv{base.v, dir.dv};
            const detail::JetMat r = detail::jmul(jv, detail::jmul(acc, ju));
            return {r.v(0, 0), r.d(0, 0)};
        }
        case GeneratorType::Eta: {
            const Mat b = standard_form(base.group);
            const detail::JetMat ju{base.u, dir.du};
            const detail::JetMat w = detail::jmul(acc, ju);
            const Scalar val = (w.v.transpose() * b * ju.v)(0, 0);
            const Scalar der =
                (w.d.transpose() * b * ju.v)(0, 0) + (w.v.transpose() * b * ju.d)(0, 0);
            return {val, der};
        }
    }
    fail(errc::internal, "bad generator");
}

// Rank of the differential of the quotient map at p, assembled column by column
// from jets over a basis of g x E.
inline std::size_t invariant_jacobian_rank(const EnhancedPoint& p) {
    const auto gens = generators_for(p.group);
    const std::size_t m = p.group.m();
    std::vector<Tangent> dirs;
    for (const auto& z : lie_algebra_basis(p.group)) {
        Tangent t = zero_tangent(p.group);
        t.dX = z;
        dirs.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < m; ++i) {
        Tangent t = zero_tangent(p.group);
        t.du(i, 0) = Scalar(1);
        dirs.push_back(std::move(t));
    }
    if (p.group.kind == GroupKind::GL)
        for (std::size_t j = 0; j < m; ++j) {
            Tangent t = zero_tangent(p.group);
            t.dv(0, j) = Scalar(1);
            dirs.push_back(std::move(t));
        }
    Mat jac(gens.size(), dirs.size());
    for (std::size_t r = 0; r < gens.size(); ++r)
        for (std::size_t c = 0; c < dirs.size(); ++c) jac(r, c) = jet_eval(gens[r], p, dirs[c]).second;
    return mat_rank(jac);
}

} // namespace enorbit
