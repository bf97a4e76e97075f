#pragma once

#include <optional>
#include <vector>

#include "enorbit/canonical.hpp"

namespace enorbit {

// A stabilizer factor (kind, rank). OODD rank r means O_{2r+1}, OEVEN rank r
// means O_{2r}, matching GroupDescriptor.
struct StabFactor {
    GroupKind kind = GroupKind::GL;
    std::size_t rank = 0;

    std::size_t group_dim() const {
        const std::size_t r = rank;
        switch (kind) {
            case GroupKind::GL: return r * r;
            case GroupKind::SP: return r * (2 * r + 1);
            case GroupKind::OODD: return r * (2 * r + 1);
            case GroupKind::OEVEN: return r * (2 * r - (r ? 1 : 0));
            case GroupKind::GRAM: break;
        }
        fail(errc::internal, "bad factor");
    }
    std::size_t enhanced_dim() const {
        switch (kind) {
            case GroupKind::GL: return group_dim() + 2 * rank;
            case GroupKind::SP: return group_dim() + 2 * rank;
            case GroupKind::OODD: return group_dim() + 2 * rank + 1;
            case GroupKind::OEVEN: return group_dim() + 2 * rank;
            case GroupKind::GRAM: break;
        }
        fail(errc::internal, "bad factor");
    }
};

struct PredictedStabilizer {
    StabFactor factor;
    std::size_t dim = 0;
};

// Stabilizer of the canonical nilpotent point with jet order k. The k = 0
// convention for the orthogonal kinds is the full group, matching the (0,0)
// point; the nonzero-sphere refinement lives in the pipeline helpers below.
inline PredictedStabilizer predicted_stabilizer(GroupKind kind, std::size_t n, std::size_t k) {
    if (k > n) fail(errc::invalid_seed, "jet order exceeds rank");
    StabFactor f;
    switch (kind) {
        case GroupKind::GL: f = {GroupKind::GL, n - k}; break;
        case GroupKind::SP: f = {GroupKind::SP, n - k}; break;
        case GroupKind::OODD:
            f = k == 0 ? StabFactor{GroupKind::OODD, n} : StabFactor{GroupKind::OEVEN, n - k};
            break;
        case GroupKind::OEVEN:
            f = k == 0 ? StabFactor{GroupKind::OEVEN, n} : StabFactor{GroupKind::OODD, n - k};
            break;
        case GroupKind::GRAM: fail(errc::unsupported, "no jet prediction for GRAM");
    }
    return {f, f.group_dim()};
}

// Pipeline refinement: an odd-orthogonal zero part with k = 0 but eta_0 != 0 is
// a sphere orbit, whose stabilizer is O_{2n}, not the full group.
inline PredictedStabilizer predicted_stabilizer_for_seed(const NilpotentSeed& s) {
    s.validate();
    if (s.kind == GroupKind::OODD && s.k == 0 && !s.coeffs[0].is_zero()) {
        StabFactor f{GroupKind::OEVEN, s.n};
        return {f, f.group_dim()};
    }
    return predicted_stabilizer(s.kind, s.n, s.k);
}

namespace detail {

struct ZeroJet {
    std::size_t kappa = 0;
    bool sphere = false; // odd-orthogonal zero part with kappa = 0 and eta_0 != 0
};

// Jet order of a (possibly GRAM-based) zero part from its eta pattern.
inline ZeroJet zero_part_jet(const Mat& gram, const Mat& nmat, const Mat& u, bool symplectic) {
    ZeroJet out;
    const std::size_t m0 = nmat.rows();
    if (m0 == 0) return out;
    std::vector<Mat> w{u}; // u, Nu, N^2 u, ...
    for (std::size_t j = 1; j < m0; ++j) w.push_back(nmat * w.back());
    const Mat gu = gram * u;
    auto eta = [&](std::size_t j) { return (w[j].transpose() * gu)(0, 0); };
    if (symplectic) {
        for (std::size_t j = m0 / 2; j-- > 0;) {
            if (!eta(2 * j + 1).is_zero()) {
                out.kappa = j + 1;
                break;
            }
        }
        return out;
    }
    if (m0 % 2 == 1) {
        for (std::size_t j = (m0 - 1) / 2 + 1; j-- > 0;) {
            if (!eta(2 * j).is_zero()) {
                out.kappa = j;
                out.sphere = j == 0;
                break;
            }
        }
        return out;
    }
    for (std::size_t j = m0 / 2; j-- > 0;) {
        if (!eta(2 * j).is_zero()) {
            out.kappa = j + 1;
            break;
        }
    }
    return out;
}

inline StabFactor zero_part_factor(bool symplectic, std::size_t m0, const ZeroJet& jet) {
    if (symplectic) return {GroupKind::SP, m0 / 2 - jet.kappa};
    if (m0 % 2 == 1) {
        const std::size_t n0 = (m0 - 1) / 2;
        if (jet.kappa >= 1) return {GroupKind::OEVEN, n0 - jet.kappa};
        return jet.sphere ? StabFactor{GroupKind::OEVEN, n0} : StabFactor{GroupKind::OODD, n0};
    }
    const std::size_t n0 = m0 / 2;
    if (jet.kappa >= 1) return {GroupKind::OODD, n0 - jet.kappa};
    return {GroupKind::OEVEN, n0};
}

// jet order of a GL part from its mu pattern
inline std::size_t gl_part_jet(const GlPart& part) {
    const std::size_t ni = part.N.rows();
    if (ni == 0) return 0;
    std::vector<Scalar> mu;
    Mat w = part.u;
    for (std::size_t j = 0; j < ni; ++j) {
        mu.push_back((part.v * w)(0, 0));
        if (j + 1 < ni) w = part.N * w;
    }
    for (std::size_t j = ni; j-- > 0;)
        if (!mu[j].is_zero()) return j + 1;
    return 0;
}

} // namespace detail

struct GlPartInfo {
    Rational c;
    std::size_t n = 0; // eigenspace dimension
    std::size_t k = 0; // jet order of the part
};

struct ClassificationReport {
    bool closed = false;
    std::size_t kappa0 = 0; // zero-part jet order (0 for GL ambient)
    bool sphere = false;
    std::vector<GlPartInfo> gl_parts;
    std::vector<StabFactor> predicted;      // stabilizer of the fiber's closed orbit
    std::size_t predicted_stab_dim = 0;
    std::size_t stabilizer_dim = 0;         // dim g_x of the input point
    std::size_t orbit_dim = 0;              // dim G - dim g_x
    std::size_t fiber_min_dim = 0;          // dim G - predicted_stab_dim
};

// Closedness decision by the fiber-dimension criterion: the unique closed orbit
// in the fiber of pi(p) is the canonical one assembled from the per-factor jet
// orders, and p's orbit is closed iff its dimension attains that minimum.
inline ClassificationReport classify(const EnhancedPoint& p) {
    const CentralizerFactors cf = centralizer_decomposition(p);
    ClassificationReport r;
    const std::size_t dim_g = p.group.dim_group();

    if (p.group.kind != GroupKind::GL) {
        const bool symplectic = p.group.symplectic_like();
        if (cf.zero) {
            const auto jet =
                detail::zero_part_jet(cf.zero->gram, cf.zero->N, cf.zero->u, symplectic);
            r.kappa0 = jet.kappa;
            r.sphere = jet.sphere;
            r.predicted.push_back(detail::zero_part_factor(symplectic, cf.zero->N.rows(), jet));
        } else {
            r.predicted.push_back(
                {symplectic ? GroupKind::SP : GroupKind::OEVEN, 0});
        }
    }
    for (const auto& part : cf.parts) {
        const std::size_t k = detail::gl_part_jet(part);
        r.gl_parts.push_back({part.c, part.N.rows(), k});
        r.predicted.push_back({GroupKind::GL, part.N.rows() - k});
    }
    for (const auto& f : r.predicted) r.predicted_stab_dim += f.group_dim();
    r.fiber_min_dim = dim_g - r.predicted_stab_dim;
    r.stabilizer_dim = lie_stabilizer_dim(p);
    r.orbit_dim = dim_g - r.stabilizer_dim;
    if (r.orbit_dim < r.fiber_min_dim)
        fail(errc::internal, "orbit dimension below the fiber minimum");
    r.closed = r.orbit_dim == r.fiber_min_dim;
    return r;
}

inline bool is_closed(const EnhancedPoint& p) { return classify(p).closed; }

// The explicit involutive element (g_0, -1) stabilizing the GL canonical point
// x(k, y_1..y_k): g_0 = blockdiag(h, I_{n-k}) with h the anti-triangular Hankel
// matrix h_{ij} = -y_{i+j-1}.
inline MvwElement mvw_stabilizer_witness(const NilpotentSeed& s) {
    if (s.kind != GroupKind::GL)
        fail(errc::unsupported, "explicit MVW witnesses are constructed for GL only");
    s.validate();
    const std::size_t n = s.n, k = s.k;
    Mat g0 = Mat::identity(n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            g0(i, j) = i + j + 1 <= k ? -s.coeffs[i + j] : Scalar(0);
        }
    MvwElement e{std::move(g0), -1};
    const EnhancedPoint x = build_nilpotent(s);
    const EnhancedPoint moved = act(e, x);
    if (moved.X != x.X || moved.u != x.u || moved.v != x.v)
        fail(errc::internal, "MVW witness does not fix the point");
    const MvwElement sq = compose(e, e, x.group);
    if (sq.delta != 1 || sq.g != Mat::identity(n))
        fail(errc::internal, "MVW witness does not square to the identity");
    return e;
}

struct DescendantReport {
    std::vector<StabFactor> h_factors; // Sp/O factor first (absent for GL ambient), then GL factors
    std::size_t mult_k = 0;            // multiplicity of triv (chi has multiplicity mult_k + gamma)
    int gamma = 0;
    std::size_t h_enhanced_dim = 0;
    std::size_t normal_dim = 0;        // dim g_x + dim E, re-verified exactly
    bool mvw_witness = false;          // an explicit witness was constructed and verified
};

// Stabilizer H and normal-space bookkeeping of the closed orbit through the
// seed's point: N = h_en + triv^mult_k + chi^(mult_k + gamma).
inline DescendantReport descend(const ClosedSeed& seed) {
    seed.validate();
    const EnhancedPoint built = build_closed(seed);
    DescendantReport r;

    std::size_t sum_jets = 0;
    for (const auto& b : seed.blocks) sum_jets += b.gl.k;

    if (seed.kind == GroupKind::GL) {
        r.gamma = 0;
        r.mult_k = sum_jets;
    } else {
        NilpotentSeed zs = seed.zero
                               ? *seed.zero
                               : NilpotentSeed{seed.kind, 0, 0,
                                               seed.kind == GroupKind::OODD
                                                   ? std::vector<Scalar>{Scalar(0)}
                                                   : std::vector<Scalar>{}};
        const EnhancedPoint zp = build_nilpotent(zs);
        const bool sphere =
            seed.kind == GroupKind::OODD && zs.k == 0 && !zs.coeffs[0].is_zero();
        const bool zero_nontrivial = zs.k >= 1 || sphere;
        r.gamma = (seed.kind == GroupKind::OODD || seed.kind == GroupKind::OEVEN) &&
                          zero_nontrivial
                      ? 1
                      : 0;
        const std::size_t dim_v = cyclic_span(zp.X, zp.u).dim;
        if ((dim_v - static_cast<std::size_t>(r.gamma)) % 2 != 0)
            fail(errc::internal, "zero-part span dimension has the wrong parity");
        r.mult_k = (dim_v - static_cast<std::size_t>(r.gamma)) / 2 + sum_jets;
        detail::ZeroJet jet{zs.k, sphere};
        r.h_factors.push_back(
            detail::zero_part_factor(seed.kind == GroupKind::SP, zp.group.m(), jet));
    }
    for (const auto& b : seed.blocks)
        if (b.gl.n - b.gl.k > 0) r.h_factors.push_back({GroupKind::GL, b.gl.n - b.gl.k});

    for (const auto& f : r.h_factors) r.h_enhanced_dim += f.enhanced_dim();
    r.normal_dim = r.h_enhanced_dim + 2 * r.mult_k + static_cast<std::size_t>(r.gamma);

    const std::size_t expected = lie_stabilizer_dim(built) + built.group.dim_E();
    if (r.normal_dim != expected)
        fail(errc::internal, "normal-space dimension identity failed");

    if (seed.kind == GroupKind::GL) {
        // blockdiag of the per-block involutions fixes the whole point
        Mat g0(seed.n, seed.n);
        std::size_t off = 0;
        bool ok = true;
        for (const auto& b : seed.blocks) {
            try {
                g0.set_block(off, off, mvw_stabilizer_witness(b.gl).g);
            } catch (const Error&) {
                ok = false;
            }
            off += b.gl.n;
        }
        if (ok) {
            const MvwElement e{g0, -1};
            const EnhancedPoint moved = act(e, built);
            ok = moved.X == built.X && moved.u == built.u && moved.v == built.v;
        }
        r.mvw_witness = ok;
    }
    return r;
}

} // namespace enorbit
