#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "enorbit/linalg.hpp"

namespace enorbit {

enum class GroupKind { GL, SP, OODD, OEVEN, GRAM };

inline std::string kind_name(GroupKind k) {
    switch (k) {
        case GroupKind::GL: return "gl";
        case GroupKind::SP: return "sp";
        case GroupKind::OODD: return "oodd";
        case GroupKind::OEVEN: return "oeven";
        case GroupKind::GRAM: return "gram";
    }
    return "?";
}

// Which classical group we are working with: GL_n, Sp_2n, O_{2n+1}, O_{2n}, or a
// generalized form-preserving group given by an arbitrary invertible Gram matrix.
struct GroupDescriptor {
    GroupKind kind = GroupKind::GL;
    std::size_t n = 0;   // rank for the standard kinds
    Mat gram;            // GRAM only
    bool antisymmetric = false;

    static GroupDescriptor gl(std::size_t n) { return {GroupKind::GL, n, Mat(), false}; }
    static GroupDescriptor sp(std::size_t n) { return {GroupKind::SP, n, Mat(), false}; }
    static GroupDescriptor o_odd(std::size_t n) { return {GroupKind::OODD, n, Mat(), false}; }
    static GroupDescriptor o_even(std::size_t n) { return {GroupKind::OEVEN, n, Mat(), false}; }

    static GroupDescriptor from_gram(Mat b) {
        if (!b.is_square()) fail(errc::size_mismatch, "Gram matrix must be square");
        bool anti;
        if (b.transpose() == b)
            anti = false;
        else if (b.transpose() == -b)
            anti = true;
        else
            fail(errc::unsupported, "Gram matrix must be symmetric or antisymmetric");
        if (b.rows() > 0 && !try_inverse(b)) fail(errc::singular_matrix, "Gram matrix is singular");
        GroupDescriptor d{GroupKind::GRAM, 0, std::move(b), anti};
        d.n = d.rank();
        return d;
    }

    std::size_t m() const {
        switch (kind) {
            case GroupKind::GL: return n;
            case GroupKind::SP: return 2 * n;
            case GroupKind::OODD: return 2 * n + 1;
            case GroupKind::OEVEN: return 2 * n;
            case GroupKind::GRAM: return gram.rows();
        }
        return 0;
    }

    // Witt-style rank used for invariant-vector layout: floor(m/2) in the even and
    // symplectic cases, (m-1)/2 in the odd orthogonal case.
    std::size_t rank() const {
        if (kind == GroupKind::GRAM) {
            std::size_t mm = gram.rows();
            return (!antisymmetric && mm % 2 == 1) ? (mm - 1) / 2 : mm / 2;
        }
        return n;
    }

    bool orthogonal_like() const {
        return kind == GroupKind::OODD || kind == GroupKind::OEVEN ||
               (kind == GroupKind::GRAM && !antisymmetric);
    }
    bool symplectic_like() const {
        return kind == GroupKind::SP || (kind == GroupKind::GRAM && antisymmetric);
    }

    std::size_t dim_group() const {
        const std::size_t mm = m();
        if (kind == GroupKind::GL) return n * n;
        if (symplectic_like()) return (mm / 2) * (mm + 1);
        return mm * (mm - 1) / 2;
    }

    std::size_t dim_E() const { return kind == GroupKind::GL ? 2 * n : m(); }

    friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == GroupKind::GRAM)
            return a.gram == b.gram && a.antisymmetric == b.antisymmetric;
        return a.n == b.n;
    }
    friend bool operator!=(const GroupDescriptor& a, const GroupDescriptor& b) {
        return !(a == b);
    }

    std::string str() const {
        if (kind == GroupKind::GRAM)
            return std::string("gram(") + (antisymmetric ? "antisym" : "sym") + ", m=" +
                   std::to_string(m()) + ")";
        return kind_name(kind) + "_" + std::to_string(n);
    }
};

// alpha_n / beta_2n / stored Gram matrix; GL has no form.
inline Mat standard_form(const GroupDescriptor& g) {
    switch (g.kind) {
        case GroupKind::GL: fail(errc::unsupported, "GL has no invariant form");
        case GroupKind::SP: {
            const std::size_t n = g.n;
            Mat b(2 * n, 2 * n);
            for (std::size_t i = 0; i < n; ++i) {
                b(i, n + i) = Scalar(1);
                b(n + i, i) = Scalar(-1);
            }
            return b;
        }
        case GroupKind::OEVEN: {
            const std::size_t n = g.n;
            Mat b(2 * n, 2 * n);
            for (std::size_t i = 0; i < n; ++i) {
                b(i, n + i) = Scalar(1);
                b(n + i, i) = Scalar(1);
            }
            return b;
        }
        case GroupKind::OODD: {
            const std::size_t n = g.n;
            Mat b(2 * n + 1, 2 * n + 1);
            b(0, 0) = Scalar(1);
            for (std::size_t i = 0; i < n; ++i) {
                b(1 + i, 1 + n + i) = Scalar(1);
                b(1 + n + i, 1 + i) = Scalar(1);
            }
            return b;
        }
        case GroupKind::GRAM: return g.gram;
    }
    fail(errc::internal, "bad kind");
}

// B^-1 in closed form for the standard shapes: alpha is an involution and
// beta^-1 = -beta.
inline Mat standard_form_inverse(const GroupDescriptor& g) {
    switch (g.kind) {
        case GroupKind::GL: fail(errc::unsupported, "GL has no invariant form");
        case GroupKind::SP: return -standard_form(g);
        case GroupKind::OODD:
        case GroupKind::OEVEN: return standard_form(g);
        case GroupKind::GRAM: return inverse(g.gram);
    }
    fail(errc::internal, "bad kind");
}

// <a, b> = a^t B b
inline Scalar form_pairing(const GroupDescriptor& g, const Mat& a, const Mat& b) {
    const Mat bf = standard_form(g);
    if (a.rows() != bf.rows() || b.rows() != bf.rows() || a.cols() != 1 || b.cols() != 1)
        fail(errc::size_mismatch, "form_pairing expects column vectors of size m");
    return (a.transpose() * bf * b)(0, 0);
}

// X in Lie(G): X^t B + B X = 0; every matrix for GL.
inline bool in_lie_algebra(const Mat& x, const GroupDescriptor& g) {
    if (!x.is_square() || x.rows() != g.m()) fail(errc::size_mismatch, "wrong matrix size");
    if (g.kind == GroupKind::GL) return true;
    const Mat b = standard_form(g);
    return (x.transpose() * b + b * x).is_zero();
}

// A pair (g, delta). For delta = +1 the matrix lies in G; for delta = -1 it
// satisfies <gv, gw> = <w, v> (any invertible matrix when G = GL).
struct MvwElement {
    Mat g;
    int delta = 1;
};

inline bool in_group(const MvwElement& e, const GroupDescriptor& d) {
    if (!e.g.is_square() || e.g.rows() != d.m()) fail(errc::size_mismatch, "wrong matrix size");
    if (e.delta != 1 && e.delta != -1) return false;
    if (d.kind == GroupKind::GL) return try_inverse(e.g).has_value();
    const Mat b = standard_form(d);
    const Mat gtbg = e.g.transpose() * b * e.g;
    return e.delta == 1 ? gtbg == b : gtbg == b.transpose();
}

// Point of the enhanced standard representation: (X, u) in g x E, plus the row
// vector v when the group is GL.
struct EnhancedPoint {
    GroupDescriptor group;
    Mat X;
    Mat u; // m x 1
    Mat v; // 1 x n, GL only

    void validate() const {
        const std::size_t m = group.m();
        if (!X.is_square() || X.rows() != m) fail(errc::size_mismatch, "X has wrong size");
        if (u.rows() != m || u.cols() != 1) fail(errc::size_mismatch, "u has wrong size");
        if (group.kind == GroupKind::GL) {
            if (v.rows() != 1 || v.cols() != m) fail(errc::size_mismatch, "v has wrong size");
        } else if (v.rows() != 0 || v.cols() != 0) {
            fail(errc::size_mismatch, "v is only present for GL");
        }
        if (!in_lie_algebra(X, group))
            fail(errc::group_membership, "X is not in the Lie algebra of " + group.str());
    }
};

inline EnhancedPoint make_point(GroupDescriptor g, Mat x, Mat u, Mat v = Mat()) {
    EnhancedPoint p{std::move(g), std::move(x), std::move(u), std::move(v)};
    p.validate();
    return p;
}

inline EnhancedPoint zero_point(const GroupDescriptor& g) {
    const std::size_t m = g.m();
    return {g, Mat::zeros(m, m), Mat::zeros(m, 1),
            g.kind == GroupKind::GL ? Mat::zeros(1, m) : Mat()};
}

// The action of breve G on g x E. For GL the two components act by
//   (g,+1).(X,u,v) = (g X g^-1, g u, v g^-1)
//   (g,-1).(X,u,v) = (g X^t g^-1, -g v^t, -u^t g^-1)
// and for the form-preserving kinds by (g,delta).(X,u) = (delta g X g^-1, delta g u).
inline EnhancedPoint act(const MvwElement& e, const EnhancedPoint& p) {
    if (!in_group(e, p.group)) fail(errc::group_membership, "element is not in the MVW extension");
    const Mat gi = inverse(e.g);
    EnhancedPoint q;
    q.group = p.group;
    if (p.group.kind == GroupKind::GL) {
        if (e.delta == 1) {
            q.X = e.g * p.X * gi;
            q.u = e.g * p.u;
            q.v = p.v * gi;
        } else {
            q.X = e.g * p.X.transpose() * gi;
            q.u = -(e.g * p.v.transpose());
            q.v = -(p.u.transpose() * gi);
        }
    } else {
        const Scalar s(e.delta);
        q.X = s * (e.g * p.X * gi);
        q.u = s * (e.g * p.u);
    }
    return q;
}

inline MvwElement compose(const MvwElement& a, const MvwElement& b, const GroupDescriptor& d) {
    if (d.kind == GroupKind::GL && a.delta == -1)
        return {a.g * inverse(b.g.transpose()), a.delta * b.delta};
    return {a.g * b.g, a.delta * b.delta};
}

// Cayley transform (I - A)(I + A)^-1, mapping Lie-algebra elements to group
// elements whenever I + A is invertible.
inline Mat cayley(const Mat& a, const GroupDescriptor& d) {
    if (!in_lie_algebra(a, d)) fail(errc::group_membership, "cayley input not in the Lie algebra");
    const Mat id = Mat::identity(a.rows());
    auto inv = try_inverse(id + a);
    if (!inv) fail(errc::singular_matrix, "I + A is singular");
    Mat g = (id - a) * (*inv);
    if (d.kind == GroupKind::GL && !try_inverse(g))
        fail(errc::singular_matrix, "I - A is singular");
    return g;
}

struct CyclicSpan {
    Mat basis; // columns u, Xu, ..., X^{m-1}u
    std::size_t dim = 0;
};

inline CyclicSpan cyclic_span(const Mat& x, const Mat& u) {
    if (!x.is_square() || u.rows() != x.rows() || u.cols() != 1)
        fail(errc::size_mismatch, "cyclic_span size mismatch");
    const std::size_t m = x.rows();
    CyclicSpan s;
    s.basis = Mat(m, m);
    Mat w = u;
    for (std::size_t j = 0; j < m; ++j) {
        s.basis.set_block(0, j, w);
        if (j + 1 < m) w = x * w;
    }
    s.dim = mat_rank(s.basis);
    return s;
}

// Basis of the Lie algebra. For a form B the elements are B^-1 A with A
// antisymmetric (orthogonal case) or symmetric (symplectic case).
inline std::vector<Mat> lie_algebra_basis(const GroupDescriptor& d) {
    const std::size_t m = d.m();
    std::vector<Mat> basis;
    if (d.kind == GroupKind::GL) {
        basis.reserve(m * m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                Mat e(m, m);
                e(i, j) = Scalar(1);
                basis.push_back(std::move(e));
            }
        return basis;
    }
    const Mat binv = m > 0 ? standard_form_inverse(d) : Mat();
    const bool sym_core = d.symplectic_like(); // symplectic group <-> symmetric A
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            if (!sym_core && i == j) continue;
            Mat a(m, m);
            a(i, j) = Scalar(1);
            if (i != j) a(j, i) = sym_core ? Scalar(1) : Scalar(-1);
            basis.push_back(binv * a);
        }
    return basis;
}

// dim { Z in g : [Z, X] = 0, Z u = 0, (GL) v Z = 0 }, one exact kernel solve
// over a basis of g. In characteristic 0 this is dim G_x.
inline std::size_t lie_stabilizer_dim(const EnhancedPoint& p) {
    const std::size_t m = p.group.m();
    const auto basis = lie_algebra_basis(p.group);
    const std::size_t dg = basis.size();
    const bool gl = p.group.kind == GroupKind::GL;
    const std::size_t rows = m * m + m + (gl ? m : 0);
    Mat sys(rows, dg);
    for (std::size_t a = 0; a < dg; ++a) {
        const Mat bracket = basis[a] * p.X - p.X * basis[a];
        const Mat zu = basis[a] * p.u;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) sys(i * m + j, a) = bracket(i, j);
        for (std::size_t i = 0; i < m; ++i) sys(m * m + i, a) = zu(i, 0);
        if (gl) {
            const Mat vz = p.v * basis[a];
            for (std::size_t j = 0; j < m; ++j) sys(m * m + m + j, a) = vz(0, j);
        }
    }
    return kernel_dim(sys);
}

inline std::size_t orbit_dim(const EnhancedPoint& p) {
    return p.group.dim_group() - lie_stabilizer_dim(p);
}

// --- deterministic sampling --------------------------------------------------

namespace detail {

// Fixed linear-congruential stream; samples are pure functions of the seed.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL) {}
    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_ >> 16;
    }
    // small rationals: numerator -3..3, denominator 1..2
    Scalar small_rational() {
        const std::int64_t num = static_cast<std::int64_t>(next() % 7) - 3;
        const std::int64_t den = static_cast<std::int64_t>(next() % 2) + 1;
        return Scalar(Rational(num, den));
    }

private:
    std::uint64_t state_;
};

inline Mat random_matrix(Lcg& rng, std::size_t r, std::size_t c) {
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.small_rational();
    return m;
}

// R - B^-1 R^t B lands in the Lie algebra for both symmetry types of B.
inline Mat random_lie(Lcg& rng, const GroupDescriptor& d) {
    const std::size_t m = d.m();
    Mat r = random_matrix(rng, m, m);
    if (d.kind == GroupKind::GL) return r;
    if (m == 0) return r;
    const Mat b = standard_form(d);
    return r - standard_form_inverse(d) * r.transpose() * b;
}

} // namespace detail

// Deterministic pseudo-random (group element, point): the element comes from a
// Cayley transform of a random Lie-algebra element (resampling while I + A is
// singular), the point has X in g. Identical seeds give identical output.
inline std::pair<MvwElement, EnhancedPoint> sample(const GroupDescriptor& d, std::uint64_t seed) {
    detail::Lcg rng(seed);
    const std::size_t m = d.m();
    Mat g;
    while (true) {
        Mat a = detail::random_lie(rng, d);
        auto inv = try_inverse(Mat::identity(m) + a);
        if (!inv) continue;
        g = (Mat::identity(m) - a) * (*inv);
        if (d.kind == GroupKind::GL && !try_inverse(g)) continue;
        break;
    }
    EnhancedPoint p;
    p.group = d;
    p.X = detail::random_lie(rng, d);
    p.u = detail::random_matrix(rng, m, 1);
    if (d.kind == GroupKind::GL) p.v = detail::random_matrix(rng, 1, m);
    return {MvwElement{std::move(g), 1}, std::move(p)};
}

// A delta = -1 element built from a delta = +1 one. For Sp the twist is by
// I_{n,n} = diag(I_n, -I_n); orthogonal groups and GL reuse g itself.
inline MvwElement twisted_element(const MvwElement& e, const GroupDescriptor& d) {
    if (d.kind == GroupKind::SP || (d.kind == GroupKind::GRAM && d.antisymmetric)) {
        if (d.kind == GroupKind::GRAM)
            fail(errc::unsupported, "no canonical twist for an arbitrary antisymmetric Gram");
        const std::size_t n = d.n;
        Mat inn = Mat::identity(2 * n);
        for (std::size_t i = 0; i < n; ++i) inn(n + i, n + i) = Scalar(-1);
        return {e.g * inn, -1};
    }
    return {e.g, -1};
}

} // namespace enorbit
