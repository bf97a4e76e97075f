#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "enorbit/invariants.hpp"

namespace enorbit {

// Parameter list generating the canonical nilpotent family. Coefficient layout:
//   GL     y_1..y_k                                  (k entries,   y_k != 0)
//   SP     u_1..u_k, u_{n+1}..u_{n+k}                (2k entries,  u_{n+1} != 0)
//   OODD   u_1, u_2..u_{k+1}, u_{n+2}..u_{n+k+1}     (2k+1 entries, u_{n+2} != 0 for k >= 1)
//   OEVEN  u_1..u_k, u_{n+1}..u_{n+k}                (2k entries,  u_{n+1} != 0)
// k = 0 carries no coefficients, except OODD whose single u_1 may be zero.
struct NilpotentSeed {
    GroupKind kind = GroupKind::GL;
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<Scalar> coeffs;

    std::size_t expected_coeff_count() const {
        switch (kind) {
            case GroupKind::GL: return k;
            case GroupKind::SP:
            case GroupKind::OEVEN: return 2 * k;
            case GroupKind::OODD: return k == 0 ? 1 : 2 * k + 1;
            case GroupKind::GRAM: break;
        }
        fail(errc::invalid_seed, "seeds exist for the standard kinds only");
    }

    void validate() const {
        if (k > n) fail(errc::invalid_seed, "jet order exceeds rank");
        if (coeffs.size() != expected_coeff_count())
            fail(errc::invalid_seed, "wrong number of coefficients");
        if (k >= 1) {
            std::size_t lead = 0;
            switch (kind) {
                case GroupKind::GL: lead = k - 1; break;
                case GroupKind::SP:
                case GroupKind::OEVEN: lead = k; break;
                case GroupKind::OODD: lead = k + 1; break;
                case GroupKind::GRAM: break;
            }
            if (coeffs[lead].is_zero())
                fail(errc::invalid_seed, "mandatory leading coefficient vanishes");
        }
    }
};

inline EnhancedPoint build_nilpotent(const NilpotentSeed& s) {
    s.validate();
    const std::size_t n = s.n, k = s.k;
    const Mat jk = Mat::jordan(k);
    switch (s.kind) {
        case GroupKind::GL: {
            Mat x(n, n);
            x.set_block(0, 0, jk);
            Mat u(n, 1);
            for (std::size_t i = 0; i < k; ++i) u(i, 0) = s.coeffs[i];
            Mat v(1, n);
            if (k >= 1) v(0, 0) = Scalar(1);
            return {GroupDescriptor::gl(n), std::move(x), std::move(u), std::move(v)};
        }
        case GroupKind::SP: {
            Mat x(2 * n, 2 * n);
            x.set_block(0, 0, jk);
            x.set_block(n, n, -jk.transpose());
            if (k >= 1) x(k - 1, n + k - 1) = Scalar(1);
            Mat u(2 * n, 1);
            for (std::size_t i = 0; i < k; ++i) {
                u(i, 0) = s.coeffs[i];
                u(n + i, 0) = s.coeffs[k + i];
            }
            return {GroupDescriptor::sp(n), std::move(x), std::move(u), Mat()};
        }
        case GroupKind::OODD: {
            Mat x(2 * n + 1, 2 * n + 1);
            x.set_block(1, 1, jk);
            x.set_block(n + 1, n + 1, -jk.transpose());
            if (k >= 1) {
                x(0, n + k) = Scalar(1);
                x(k, 0) = Scalar(-1);
            }
            Mat u(2 * n + 1, 1);
            u(0, 0) = s.coeffs[0];
            for (std::size_t i = 0; i < k; ++i) {
                u(1 + i, 0) = s.coeffs[1 + i];
                u(n + 1 + i, 0) = s.coeffs[k + 1 + i];
            }
            return {GroupDescriptor::o_odd(n), std::move(x), std::move(u), Mat()};
        }
        case GroupKind::OEVEN: {
            Mat x(2 * n, 2 * n);
            x.set_block(0, 0, jk);
            x.set_block(n, n, -jk.transpose());
            if (k >= 2) {
                x(k - 2, n + k - 1) = Scalar(1);
                x(k - 1, n + k - 2) = Scalar(-1);
            }
            Mat u(2 * n, 1);
            for (std::size_t i = 0; i < k; ++i) {
                u(i, 0) = s.coeffs[i];
                u(n + i, 0) = s.coeffs[k + i];
            }
            return {GroupDescriptor::o_even(n), std::move(x), std::move(u), Mat()};
        }
        case GroupKind::GRAM: break;
    }
    fail(errc::invalid_seed, "seeds exist for the standard kinds only");
}

// One semisimple eigen-block of a closed-family member: eigenvalue c together
// with a GL nilpotent seed of rank n_i.
struct EigenBlock {
    Rational c;
    NilpotentSeed gl;
};

struct ClosedSeed {
    GroupKind kind = GroupKind::GL;
    std::size_t n = 0;
    std::optional<NilpotentSeed> zero; // same kind, rank n_0; absent for GL
    std::vector<EigenBlock> blocks;

    void validate() const {
        std::size_t total = 0;
        if (kind == GroupKind::GL) {
            if (zero) fail(errc::invalid_seed, "GL closed seeds carry no zero block");
        } else if (kind == GroupKind::GRAM) {
            fail(errc::invalid_seed, "seeds exist for the standard kinds only");
        } else if (zero) {
            if (zero->kind != kind) fail(errc::invalid_seed, "zero block has wrong kind");
            zero->validate();
            total += zero->n;
        }
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const auto& b = blocks[i];
            if (b.gl.kind != GroupKind::GL || b.gl.n < 1)
                fail(errc::invalid_seed, "eigen-blocks are GL seeds of rank >= 1");
            b.gl.validate();
            if (kind != GroupKind::GL && b.c == 0)
                fail(errc::invalid_seed, "eigenvalues of the +/- blocks must be nonzero");
            for (std::size_t j = 0; j < i; ++j) {
                const bool clash = kind == GroupKind::GL
                                       ? blocks[j].c == b.c
                                       : (blocks[j].c == b.c || blocks[j].c == -b.c);
                if (clash) fail(errc::invalid_seed, "eigenvalue clash between blocks");
            }
            total += b.gl.n;
        }
        if (total != n) fail(errc::invalid_seed, "block ranks do not sum to the rank");
    }

    std::size_t zero_rank() const { return zero ? zero->n : 0; }
};

inline EnhancedPoint build_closed(const ClosedSeed& s) {
    s.validate();
    if (s.kind == GroupKind::GL) {
        std::vector<Mat> xs;
        Mat u(s.n, 1), v(1, s.n);
        std::size_t off = 0;
        for (const auto& b : s.blocks) {
            EnhancedPoint part = build_nilpotent(b.gl);
            xs.push_back(Scalar(b.c) * Mat::identity(b.gl.n) + part.X);
            u.set_block(off, 0, part.u);
            v.set_block(0, off, part.v);
            off += b.gl.n;
        }
        EnhancedPoint p{GroupDescriptor::gl(s.n), Mat::block_diag(xs), std::move(u), std::move(v)};
        p.validate();
        return p;
    }

    const std::size_t n0 = s.zero_rank();
    const std::size_t z1 = s.kind == GroupKind::OODD ? n0 + 1 : n0; // first-half width of the zero block
    std::size_t nprime = 0;
    for (const auto& b : s.blocks) nprime += b.gl.n;
    const std::size_t m = z1 + n0 + 2 * nprime;
    const std::size_t off2 = z1, off3 = z1 + nprime, off4 = z1 + nprime + n0;

    Mat x(m, m), u(m, 1);
    NilpotentSeed zs =
        s.zero ? *s.zero : NilpotentSeed{s.kind, 0, 0,
                                         s.kind == GroupKind::OODD
                                             ? std::vector<Scalar>{Scalar(0)}
                                             : std::vector<Scalar>{}};
    EnhancedPoint zp = build_nilpotent(zs);
    x.set_block(0, 0, zp.X.block(0, 0, z1, z1));
    x.set_block(0, off3, zp.X.block(0, z1, z1, n0));
    x.set_block(off3, 0, zp.X.block(z1, 0, n0, z1));
    x.set_block(off3, off3, zp.X.block(z1, z1, n0, n0));
    u.set_block(0, 0, zp.u.block(0, 0, z1, 1));
    u.set_block(off3, 0, zp.u.block(z1, 0, n0, 1));

    std::size_t o = 0;
    for (const auto& b : s.blocks) {
        EnhancedPoint part = build_nilpotent(b.gl);
        const std::size_t ni = b.gl.n;
        const Mat ci = Scalar(b.c) * Mat::identity(ni);
        x.set_block(off2 + o, off2 + o, ci + part.X);
        x.set_block(off4 + o, off4 + o, -(ci + part.X.transpose()));
        u.set_block(off2 + o, 0, part.u);
        u.set_block(off4 + o, 0, part.v.transpose());
        o += ni;
    }

    GroupDescriptor g = s.kind == GroupKind::SP
                            ? GroupDescriptor::sp(s.n)
                            : (s.kind == GroupKind::OODD ? GroupDescriptor::o_odd(s.n)
                                                         : GroupDescriptor::o_even(s.n));
    EnhancedPoint p{std::move(g), std::move(x), std::move(u), Mat()};
    p.validate();
    return p;
}

// Jet order k read off the fiber pattern of a nilpotent invariant vector:
// position of the last nonzero pairing, reindexed per kind.
inline std::size_t extract_jet_order(const InvariantVector& iv) {
    if (!iv.traces_vanish())
        fail(errc::not_nilpotent_fiber, "trace entries do not vanish");
    std::size_t last = iv.pairings.size();
    for (std::size_t i = iv.pairings.size(); i-- > 0;) {
        if (!iv.pairings[i].is_zero()) {
            last = i;
            break;
        }
    }
    if (last == iv.pairings.size()) return 0;
    bool odd_orth = iv.kind == GroupKind::OODD;
    if (iv.kind == GroupKind::GRAM) {
        // pairings carry eta_0, eta_2, ... exactly when the form is symmetric
        odd_orth = iv.pairings.size() == iv.rank + 1;
    }
    return odd_orth ? last : last + 1;
}

// (k, truncated eta-list) separating closed nilpotent orbits; for GL the list
// is the (k, y)-data.
struct EtaSignature {
    std::size_t k = 0;
    std::vector<Scalar> values;

    friend bool operator==(const EtaSignature& a, const EtaSignature& b) {
        return a.k == b.k && a.values == b.values;
    }
    friend bool operator!=(const EtaSignature& a, const EtaSignature& b) { return !(a == b); }
};

inline EtaSignature eta_signature(const InvariantVector& iv) {
    EtaSignature sig;
    sig.k = extract_jet_order(iv); // rejects non-nilpotent input
    std::size_t count = sig.k;
    const bool odd_orth =
        iv.kind == GroupKind::OODD ||
        (iv.kind == GroupKind::GRAM && iv.pairings.size() == iv.rank + 1);
    if (odd_orth) count = sig.k + 1;
    sig.values.assign(iv.pairings.begin(), iv.pairings.begin() + count);
    return sig;
}

inline EtaSignature eta_signature(const EnhancedPoint& p) { return eta_signature(quotient_map(p)); }

inline EtaSignature eta_signature(const NilpotentSeed& s) {
    return eta_signature(build_nilpotent(s));
}

namespace detail {

// eta_j (mu_j for GL) of a built canonical point.
inline Scalar seed_pairing(const EnhancedPoint& p, std::size_t power) {
    Mat w = p.u;
    for (std::size_t j = 0; j < power; ++j) w = p.X * w;
    if (p.group.kind == GroupKind::GL) return (p.v * w)(0, 0);
    return (w.transpose() * standard_form(p.group) * p.u)(0, 0);
}

} // namespace detail

// Nilpotent-fiber representative construction. GL is parameter-direct; for the
// form kinds the mandatory coefficient comes from one square root and the rest
// is a sequential exact solve: equations are processed from the highest eta
// down, each one solved for a coefficient in which it is linear once every
// other still-free coefficient is pinned to zero. The postcondition
// quotient_map(x) = iv is re-verified before returning.
inline EnhancedPoint representative_from_invariants(const GroupDescriptor& d,
                                                    const InvariantVector& iv) {
    if (d.kind == GroupKind::GRAM)
        fail(errc::unsupported, "representatives are constructed for the standard kinds");
    if (iv.kind != d.kind || iv.rank != d.n)
        fail(errc::size_mismatch, "invariant vector does not match the descriptor");
    const auto lay = detail::invariant_layout(d);
    if (iv.traces.size() != lay.trace_powers.size() || iv.pairings.size() != lay.eta_powers.size())
        fail(errc::size_mismatch, "invariant vector has wrong shape");
    if (!iv.traces_vanish())
        fail(errc::not_nilpotent_fiber, "only nilpotent fibers (all traces zero) are supported");

    const std::size_t k = extract_jet_order(iv);
    const std::size_t n = d.n;

    if (d.kind == GroupKind::GL) {
        NilpotentSeed s{GroupKind::GL, n, k,
                        std::vector<Scalar>(iv.pairings.begin(), iv.pairings.begin() + k)};
        EnhancedPoint p = build_nilpotent(s);
        if (quotient_map(p) != iv) fail(errc::internal, "representative postcondition failed");
        return p;
    }

    try {
        NilpotentSeed s{d.kind, n, k, {}};
        s.coeffs.assign(s.expected_coeff_count(), Scalar(0));
        std::vector<bool> assigned(s.coeffs.size(), false), frozen(s.coeffs.size(), false);

        // equation list: (position in iv.pairings, power), leading first
        std::vector<std::size_t> positions;
        const std::size_t lead_count = d.kind == GroupKind::OODD ? k + 1 : k;
        for (std::size_t i = lead_count; i-- > 0;) positions.push_back(i);

        if (k == 0) {
            if (d.kind == GroupKind::OODD && !iv.pairings[0].is_zero())
                s.coeffs[0] = exact_sqrt(iv.pairings[0]);
            EnhancedPoint p = build_nilpotent(s);
            if (quotient_map(p) != iv) fail(errc::internal, "representative postcondition failed");
            return p;
        }

        // mandatory coefficient
        std::size_t lead_idx = d.kind == GroupKind::OODD ? k + 1 : k;
        bool leading_consumed = true;
        if (d.kind == GroupKind::SP) {
            const Scalar sign(k % 2 == 1 ? 1 : -1); // (-1)^{k-1}
            s.coeffs[lead_idx] = exact_sqrt(sign * iv.pairings[k - 1]);
        } else if (d.kind == GroupKind::OODD) {
            const Scalar sign(k % 2 == 0 ? 1 : -1); // (-1)^k
            s.coeffs[lead_idx] = exact_sqrt(sign * iv.pairings[k]);
        } else if (k >= 2) {
            const Scalar sign(k % 2 == 1 ? 1 : -1);
            s.coeffs[lead_idx] = exact_sqrt(sign * iv.pairings[k - 1] / Scalar(2));
        } else {
            s.coeffs[lead_idx] = Scalar(1); // O_{2n}, k = 1: eta_0 is solved below
            leading_consumed = false;
        }
        assigned[lead_idx] = true;
        if (leading_consumed) positions.erase(positions.begin());

        auto eval_eta = [&](const std::vector<Scalar>& coeffs, std::size_t power) {
            NilpotentSeed probe = s;
            probe.coeffs = coeffs;
            return detail::seed_pairing(build_nilpotent(probe), power);
        };

        for (std::size_t pos : positions) {
            const std::size_t power = lay.eta_powers[pos];
            const Scalar target = iv.pairings[pos];
            const Scalar p0 = eval_eta(s.coeffs, power);

            auto probe_coeff = [&](std::size_t t, const Scalar& xi) {
                std::vector<Scalar> c = s.coeffs;
                c[t] = xi;
                return eval_eta(c, power);
            };

            std::size_t chosen = s.coeffs.size();
            if (p0 != target) {
                std::vector<std::pair<std::size_t, std::pair<Scalar, Scalar>>> quadratic;
                for (std::size_t t = 0; t < s.coeffs.size() && chosen == s.coeffs.size(); ++t) {
                    if (assigned[t] || frozen[t]) continue;
                    const Scalar pp = probe_coeff(t, Scalar(1));
                    const Scalar pm = probe_coeff(t, Scalar(-1));
                    const Scalar quad = (pp + pm) / Scalar(2) - p0;
                    const Scalar lin = (pp - pm) / Scalar(2);
                    if (quad.is_zero() && !lin.is_zero()) {
                        s.coeffs[t] = (target - p0) / lin;
                        assigned[t] = true;
                        chosen = t;
                    } else if (!quad.is_zero()) {
                        quadratic.push_back({t, {quad, lin}});
                    }
                }
                for (auto& [t, ab] : quadratic) {
                    if (chosen != s.coeffs.size()) break;
                    const Scalar &qa = ab.first, &qb = ab.second;
                    const Scalar disc = qb * qb - Scalar(4) * qa * (p0 - target);
                    Scalar root;
                    try {
                        root = exact_sqrt(disc);
                    } catch (const Error&) {
                        continue;
                    }
                    s.coeffs[t] = (root - qb) / (Scalar(2) * qa);
                    assigned[t] = true;
                    chosen = t;
                }
                if (chosen == s.coeffs.size())
                    fail(errc::unsupported, "sequential solve found no pivot coefficient");
            }
            // Freeze every still-free coefficient this equation depends on, so
            // later assignments cannot disturb it.
            for (std::size_t t = 0; t < s.coeffs.size(); ++t) {
                if (assigned[t] || frozen[t]) continue;
                const Scalar ref = eval_eta(s.coeffs, power);
                if (probe_coeff(t, Scalar(1)) != ref || probe_coeff(t, Scalar(-1)) != ref)
                    frozen[t] = true;
            }
        }

        EnhancedPoint p = build_nilpotent(s);
        if (quotient_map(p) != iv) fail(errc::internal, "representative postcondition failed");
        return p;
    } catch (const Error& e) {
        if (e.code() == errc::domain_mismatch)
            fail(errc::extension_required,
                 "construction needs a second quadratic extension: " + std::string(e.what()));
        throw;
    }
}

inline EnhancedPoint representative_from_invariants(const InvariantVector& iv) {
    GroupDescriptor d;
    switch (iv.kind) {
        case GroupKind::GL: d = GroupDescriptor::gl(iv.rank); break;
        case GroupKind::SP: d = GroupDescriptor::sp(iv.rank); break;
        case GroupKind::OODD: d = GroupDescriptor::o_odd(iv.rank); break;
        case GroupKind::OEVEN: d = GroupDescriptor::o_even(iv.rank); break;
        case GroupKind::GRAM: fail(errc::unsupported, "no representative for GRAM vectors");
    }
    return representative_from_invariants(d, iv);
}

// --- semisimple/eigenspace pipeline -------------------------------------------

struct SemisimpleSplit {
    Mat Xs, Xn;
    std::vector<std::pair<Rational, std::size_t>> spectrum; // ascending (value, multiplicity)
};

// Jordan-Chevalley parts plus the exact rational spectrum. Rejects matrices
// whose semisimple part does not split over Q.
inline SemisimpleSplit semisimple_split(const Mat& x) {
    SemisimpleSplit out;
    auto [xs, xn] = jordan_chevalley(x);
    out.Xs = std::move(xs);
    out.Xn = std::move(xn);
    RationalRoots roots = rational_roots(char_poly(x));
    if (!roots.split)
        fail(errc::non_split_spectrum,
             "the semisimple part has an irrational (non-split) eigenvalue");
    out.spectrum = std::move(roots.roots);
    return out;
}

// Data of the centralizer decomposition: the zero part lives on the generalized
// 0-eigenspace with its restricted Gram matrix, each GL part on one (c, -c)
// eigenspace pair (on one eigenspace per eigenvalue for GL).
struct ZeroPart {
    Mat gram;  // restricted form on E_0, invertible
    Mat N;     // nilpotent action on E_0 in the chosen basis
    Mat u;     // E_0-component of u, coordinates in the chosen basis
    Mat basis; // m x dim(E_0)
};

struct GlPart {
    Rational c;
    Mat N;           // nilpotent action on E_c
    Mat u;           // column: E_c-component of u
    Mat v;           // row: form-pairing of the E_{-c}-component against the E_c basis
    Mat basis_plus;  // basis of E_c
    Mat basis_minus; // basis of E_{-c}; empty for GL ambient groups
};

struct CentralizerFactors {
    Mat Xs, Xn;
    std::optional<ZeroPart> zero; // absent for GL ambient or when E_0 = 0
    std::vector<GlPart> parts;
};

namespace detail {

inline Mat hstack_columns(const std::vector<Mat>& cols, std::size_t m) {
    Mat b(m, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) b.set_block(0, j, cols[j]);
    return b;
}

inline Mat generalized_eigenbasis(const Mat& x, const Rational& c, std::size_t mult) {
    const std::size_t m = x.rows();
    Mat shifted = x - Scalar(c) * Mat::identity(m);
    Mat p = Mat::identity(m);
    for (std::size_t i = 0; i < mult; ++i) p = p * shifted;
    auto kb = kernel_basis(p);
    if (kb.size() != mult) fail(errc::internal, "generalized eigenspace has unexpected dimension");
    return hstack_columns(kb, m);
}

// matrix of X restricted to the column span of basis
inline Mat restrict_operator(const Mat& x, const Mat& basis) {
    auto sol = solve_linear(basis, x * basis);
    if (!sol) fail(errc::internal, "operator does not preserve the subspace");
    return *sol;
}

} // namespace detail

inline CentralizerFactors centralizer_decomposition(const EnhancedPoint& p) {
    p.validate();
    const std::size_t m = p.group.m();
    SemisimpleSplit ss = semisimple_split(p.X);
    CentralizerFactors cf;
    cf.Xs = ss.Xs;
    cf.Xn = ss.Xn;

    if (p.group.kind == GroupKind::GL) {
        std::vector<Mat> bases;
        for (const auto& [c, mult] : ss.spectrum)
            bases.push_back(detail::generalized_eigenbasis(p.X, c, mult));
        Mat big(m, m);
        std::size_t off = 0;
        for (const auto& b : bases) {
            big.set_block(0, off, b);
            off += b.cols();
        }
        const Mat coords = inverse(big) * p.u;
        off = 0;
        for (std::size_t i = 0; i < ss.spectrum.size(); ++i) {
            const auto& [c, mult] = ss.spectrum[i];
            GlPart part;
            part.c = c;
            part.basis_plus = bases[i];
            part.N = detail::restrict_operator(p.X, bases[i]) -
                     Scalar(c) * Mat::identity(mult);
            part.u = coords.block(off, 0, mult, 1);
            part.v = p.v * bases[i];
            cf.parts.push_back(std::move(part));
            off += mult;
        }
        return cf;
    }

    // spectrum of an element of g(E) is symmetric under negation
    std::size_t zero_mult = 0;
    std::vector<std::pair<Rational, std::size_t>> plus;
    for (const auto& [c, mult] : ss.spectrum) {
        if (c == 0) {
            zero_mult = mult;
            continue;
        }
        if (c > 0) plus.push_back({c, mult});
    }
    for (const auto& [c, mult] : plus) {
        bool found = false;
        for (const auto& [c2, mult2] : ss.spectrum)
            if (c2 == -c && mult2 == mult) found = true;
        if (!found) fail(errc::internal, "spectrum is not symmetric under negation");
    }

    const Mat form = standard_form(p.group);
    std::vector<Mat> bases;
    Mat b0;
    if (zero_mult > 0) {
        b0 = detail::generalized_eigenbasis(p.X, Rational(0), zero_mult);
        bases.push_back(b0);
    }
    std::vector<std::pair<Mat, Mat>> pair_bases;
    for (const auto& [c, mult] : plus) {
        Mat bp = detail::generalized_eigenbasis(p.X, c, mult);
        Mat bm = detail::generalized_eigenbasis(p.X, -c, mult);
        bases.push_back(bp);
        bases.push_back(bm);
        pair_bases.push_back({std::move(bp), std::move(bm)});
    }
    Mat big(m, m);
    std::size_t off = 0;
    for (const auto& b : bases) {
        big.set_block(0, off, b);
        off += b.cols();
    }
    const Mat coords = inverse(big) * p.u;

    off = 0;
    if (zero_mult > 0) {
        ZeroPart z;
        z.basis = b0;
        z.gram = b0.transpose() * form * b0;
        if (!try_inverse(z.gram))
            fail(errc::internal, "restricted form on the 0-eigenspace is degenerate");
        z.N = detail::restrict_operator(p.X, b0);
        z.u = coords.block(0, 0, zero_mult, 1);
        cf.zero = std::move(z);
        off = zero_mult;
    }
    for (std::size_t i = 0; i < plus.size(); ++i) {
        const auto& [c, mult] = plus[i];
        GlPart part;
        part.c = c;
        part.basis_plus = pair_bases[i].first;
        part.basis_minus = pair_bases[i].second;
        part.N = detail::restrict_operator(p.X, part.basis_plus) -
                 Scalar(c) * Mat::identity(mult);
        part.u = coords.block(off, 0, mult, 1);
        const Mat minus_component = part.basis_minus * coords.block(off + mult, 0, mult, 1);
        part.v = (part.basis_plus.transpose() * form * minus_component).transpose();
        cf.parts.push_back(std::move(part));
        off += 2 * mult;
    }
    return cf;
}

} // namespace enorbit
