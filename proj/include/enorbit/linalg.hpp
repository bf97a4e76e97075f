#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "enorbit/matrix.hpp"

namespace enorbit {

struct Echelon {
    Mat m;                          // upper echelon, fraction-free transformed
    std::vector<std::size_t> pivots; // pivot column per pivot row
    std::size_t rank = 0;
};

namespace detail {

// Fraction-free elimination over the integers, the fast path for rational
// input after per-row denominator clearing (row scaling preserves row space,
// rank and kernel).
inline void bareiss_int(std::vector<std::vector<Int>>& m, std::vector<std::size_t>& pivots) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && m[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        if (pr != r) std::swap(m[r], m[pr]);
        const Int pivot = m[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Int mic = m[i][c];
            if (mic == 0 && pivot == prev) continue;
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = (pivot * m[i][j] - mic * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = pivot;
        pivots.push_back(c);
        ++r;
    }
}

} // namespace detail

// Fraction-free (Bareiss) forward elimination. The exact-division step keeps
// intermediate entries at determinant scale when the input is integral.
inline Echelon bareiss_echelon(Mat m) {
    Echelon ech;
    const std::size_t rows = m.rows(), cols = m.cols();
    if (m.is_rational()) {
        std::vector<std::vector<Int>> w(rows, std::vector<Int>(cols));
        for (std::size_t i = 0; i < rows; ++i) {
            Int lcm = 1;
            for (std::size_t j = 0; j < cols; ++j)
                lcm = boost::multiprecision::lcm(lcm, rat_den(m(i, j).rat()));
            for (std::size_t j = 0; j < cols; ++j)
                w[i][j] = rat_num(m(i, j).rat() * Rational(lcm));
        }
        detail::bareiss_int(w, ech.pivots);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar(w[i][j]);
        ech.m = std::move(m);
        ech.rank = ech.pivots.size();
        return ech;
    }
    Scalar prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && m(pr, c).is_zero()) ++pr;
        if (pr == rows) continue;
        if (pr != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(pr, j));
        const Scalar pivot = m(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Scalar mic = m(i, c);
            for (std::size_t j = c + 1; j < cols; ++j)
                m(i, j) = (pivot * m(i, j) - mic * m(r, j)) / prev;
            m(i, c) = Scalar(0);
        }
        prev = pivot;
        ech.pivots.push_back(c);
        ++r;
    }
    ech.m = std::move(m);
    ech.rank = ech.pivots.size();
    return ech;
}

inline std::size_t mat_rank(const Mat& m) { return bareiss_echelon(m).rank; }

// Exact basis of the right kernel; empty iff the matrix is injective.
inline std::vector<Mat> kernel_basis(const Mat& m) {
    Echelon ech = bareiss_echelon(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : ech.pivots) is_pivot[c] = true;
    std::vector<Mat> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Mat x(cols, 1);
        x(f, 0) = Scalar(1);
        for (std::size_t k = ech.rank; k-- > 0;) {
            const std::size_t p = ech.pivots[k];
            Scalar s;
            for (std::size_t j = p + 1; j < cols; ++j)
                if (!x(j, 0).is_zero()) s += ech.m(k, j) * x(j, 0);
            x(p, 0) = -s / ech.m(k, p);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

inline std::size_t kernel_dim(const Mat& m) { return m.cols() - mat_rank(m); }

// Gauss-Jordan solve A x = b (b may have several columns). Returns nothing when
// the system is inconsistent; free variables are set to zero.
inline std::optional<Mat> solve_linear(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) fail(errc::size_mismatch, "solve: row mismatch");
    const std::size_t rows = a.rows(), n = a.cols(), k = b.cols();
    Mat m(rows, n + k);
    m.set_block(0, 0, a);
    m.set_block(0, n, b);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && m(pr, c).is_zero()) ++pr;
        if (pr == rows) continue;
        if (pr != r)
            for (std::size_t j = 0; j < n + k; ++j) std::swap(m(r, j), m(pr, j));
        const Scalar inv = m(r, c).inverse();
        for (std::size_t j = c; j < n + k; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Scalar f = m(i, c);
            for (std::size_t j = c; j < n + k; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (!m(i, n + j).is_zero()) return std::nullopt;
    Mat x(n, k);
    for (std::size_t pr2 = 0; pr2 < pivots.size(); ++pr2)
        for (std::size_t j = 0; j < k; ++j) x(pivots[pr2], j) = m(pr2, n + j);
    return x;
}

// For square a, the augmented Gauss-Jordan pass is also an exact singularity
// test: a rank-deficient a leaves a row with zero left part and nonzero right
// part, so solve_linear returns nothing.
inline std::optional<Mat> try_inverse(const Mat& a) {
    if (!a.is_square()) fail(errc::size_mismatch, "inverse of non-square matrix");
    return solve_linear(a, Mat::identity(a.rows()));
}

inline Mat inverse(const Mat& a) {
    auto x = try_inverse(a);
    if (!x) fail(errc::singular_matrix, "matrix is singular");
    return *x;
}

// Polynomial over Scalar, coefficients lowest degree first, normalized so the
// leading coefficient is nonzero (the zero polynomial has no coefficients).
struct Poly {
    std::vector<Scalar> c;

    Poly() = default;
    explicit Poly(std::vector<Scalar> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(const Scalar& s) { return Poly({s}); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    // degree of the zero polynomial is reported as 0 alongside is_zero()
    std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
    const Scalar& leading() const { return c.back(); }

    Scalar operator()(const Scalar& x) const {
        Scalar acc;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    Mat eval_mat(const Mat& x) const {
        Mat acc = Mat::zeros(x.rows(), x.rows());
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i] * Mat::identity(x.rows());
        return acc;
    }

    Poly derivative() const {
        std::vector<Scalar> d;
        for (std::size_t i = 1; i < c.size(); ++i) d.push_back(Scalar(Int(i)) * c[i]);
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& f, const Poly& g) {
        std::vector<Scalar> s(std::max(f.c.size(), g.c.size()));
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i < f.c.size()) s[i] += f.c[i];
            if (i < g.c.size()) s[i] += g.c[i];
        }
        return Poly(std::move(s));
    }
    friend Poly operator-(const Poly& f, const Poly& g) {
        std::vector<Scalar> s(std::max(f.c.size(), g.c.size()));
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i < f.c.size()) s[i] += f.c[i];
            if (i < g.c.size()) s[i] -= g.c[i];
        }
        return Poly(std::move(s));
    }
    friend Poly operator*(const Poly& f, const Poly& g) {
        if (f.is_zero() || g.is_zero()) return Poly();
        std::vector<Scalar> s(f.c.size() + g.c.size() - 1);
        for (std::size_t i = 0; i < f.c.size(); ++i)
            for (std::size_t j = 0; j < g.c.size(); ++j) s[i + j] += f.c[i] * g.c[j];
        return Poly(std::move(s));
    }
    friend bool operator==(const Poly& f, const Poly& g) { return f.c == g.c; }

    Poly monic() const {
        if (is_zero()) return *this;
        Poly m = *this;
        const Scalar inv = leading().inverse();
        for (auto& x : m.c) x *= inv;
        return m;
    }
};

inline std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g) {
    if (g.is_zero()) fail(errc::singular_matrix, "polynomial division by zero");
    Poly r = f;
    std::vector<Scalar> q(f.c.size() > g.c.size() ? f.c.size() - g.c.size() + 1 : 1);
    const Scalar glead_inv = g.leading().inverse();
    while (!r.is_zero() && r.c.size() >= g.c.size()) {
        const std::size_t shift = r.c.size() - g.c.size();
        const Scalar coeff = r.leading() * glead_inv;
        q[shift] = coeff;
        for (std::size_t i = 0; i < g.c.size(); ++i) r.c[shift + i] -= coeff * g.c[i];
        r.trim();
    }
    return {Poly(std::move(q)), r};
}

inline Poly poly_gcd(Poly f, Poly g) {
    while (!g.is_zero()) {
        Poly r = poly_divmod(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

inline Poly square_free_part(const Poly& f) {
    if (f.degree() == 0) return f.monic();
    Poly g = poly_gcd(f, f.derivative());
    return poly_divmod(f, g).first.monic();
}

// Monic characteristic polynomial via the Faddeev-LeVerrier recurrence. The
// only divisions are by integers, exact over the scalar field.
inline Poly char_poly(const Mat& a) {
    if (!a.is_square()) fail(errc::size_mismatch, "char_poly of non-square matrix");
    const std::size_t m = a.rows();
    std::vector<Scalar> c(m + 1);
    c[m] = Scalar(1);
    Mat mk = Mat::identity(m);
    for (std::size_t k = 1; k <= m; ++k) {
        Mat am = a * mk;
        c[m - k] = -(am.trace() / Scalar(Int(k)));
        mk = am + c[m - k] * Mat::identity(m);
    }
    return Poly(std::move(c));
}

inline bool is_nilpotent(const Mat& x) {
    if (!x.is_square()) fail(errc::size_mismatch, "nilpotency of non-square matrix");
    Mat p = x;
    for (std::size_t i = 1; i < x.rows(); ++i) {
        if (p.is_zero()) return true;
        p = p * x;
    }
    return p.is_zero();
}

// Jordan-Chevalley decomposition X = X_s + X_n over Q: Newton iteration against
// the square-free part of the characteristic polynomial. No eigenvalues needed.
inline std::pair<Mat, Mat> jordan_chevalley(const Mat& x) {
    if (!x.is_square()) fail(errc::size_mismatch, "jordan_chevalley of non-square matrix");
    if (!x.is_rational())
        fail(errc::domain_mismatch, "jordan_chevalley requires rational entries");
    const std::size_t m = x.rows();
    if (m == 0) return {x, x};
    const Poly f = square_free_part(char_poly(x));
    const Poly fp = f.derivative();
    Mat a = x;
    std::size_t steps = 0, bound = 2;
    while ((std::size_t(1) << bound) < m + 1) ++bound;
    bound += 2;
    while (true) {
        Mat fa = f.eval_mat(a);
        if (fa.is_zero()) break;
        if (++steps > bound) fail(errc::internal, "jordan_chevalley did not converge");
        a = a - fa * inverse(fp.eval_mat(a));
    }
    return {a, x - a};
}

namespace detail {

inline std::vector<Int> positive_divisors_upto(const Int& n0, const Int& bound) {
    Int n = n0 < 0 ? Int(-n0) : n0;
    std::vector<Int> divs;
    Int budget = 0;
    for (Int i = 1; i * i <= n; ++i) {
        if (++budget > 20000000) fail(errc::non_split_spectrum, "root search divisor limit");
        if (n % i == 0) {
            if (i <= bound) divs.push_back(i);
            Int j = n / i;
            if (j != i && j <= bound) divs.push_back(j);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace detail

struct RationalRoots {
    std::vector<std::pair<Rational, std::size_t>> roots; // (root, multiplicity), ascending
    bool split = false;                                  // whole polynomial is a product of linear factors
};

// Rational roots with multiplicities of a polynomial with rational coefficients.
// Multiplicities are taken against the input polynomial.
inline RationalRoots rational_roots(const Poly& f0) {
    RationalRoots out;
    if (f0.is_zero() || f0.degree() == 0) {
        out.split = true;
        return out;
    }
    for (const auto& s : f0.c)
        if (!s.is_rational()) fail(errc::domain_mismatch, "rational_roots over Q only");

    // integerize: primitive integer polynomial with the same roots
    Int lcm = 1;
    for (const auto& s : f0.c) {
        Int d = rat_den(s.rat());
        lcm = boost::multiprecision::lcm(lcm, d);
    }
    std::vector<Int> g(f0.c.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = rat_num(f0.c[i].rat() * Rational(lcm));

    std::vector<Rational> found;
    // strip roots at zero
    std::size_t low = 0;
    while (low < g.size() && g[low] == 0) ++low;
    for (std::size_t i = 0; i < low; ++i) found.push_back(Rational(0));
    g.erase(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(low));

    auto eval = [&](const Rational& r) {
        Rational acc;
        for (std::size_t i = g.size(); i-- > 0;) acc = acc * r + Rational(g[i]);
        return acc;
    };
    auto deflate = [&](const Rational& r) {
        // divide by (t - r) exactly, staying integral via the denominator scale
        Int p = rat_num(r), q = rat_den(r);
        // g(t) = (q t - p) * h(t) / content; use synthetic division over Q then rescale
        std::vector<Rational> h(g.size() - 1);
        Rational carry;
        for (std::size_t i = g.size(); i-- > 1;) {
            carry = Rational(g[i]) + carry * r;
            h[i - 1] = carry;
        }
        Int l = 1;
        for (const auto& x : h) l = boost::multiprecision::lcm(l, rat_den(x));
        g.resize(h.size());
        for (std::size_t i = 0; i < h.size(); ++i) g[i] = rat_num(h[i] * Rational(l));
        (void)p;
        (void)q;
    };

    while (g.size() > 1) {
        // Cauchy bound on |root| = |p/q|: |p| <= |g0| and q <= |glead| suffice
        auto ps = detail::positive_divisors_upto(g.front(), boost::multiprecision::abs(g.front()));
        auto qs = detail::positive_divisors_upto(g.back(), boost::multiprecision::abs(g.back()));
        bool hit = false;
        for (const auto& p : ps) {
            for (const auto& q : qs) {
                if (boost::multiprecision::gcd(p, q) != 1) continue;
                for (int sign : {1, -1}) {
                    Rational r(sign * p, q);
                    if (eval(r) == 0) {
                        found.push_back(r);
                        deflate(r);
                        hit = true;
                        break;
                    }
                }
                if (hit) break;
            }
            if (hit) break;
        }
        if (!hit) break;
    }
    out.split = g.size() <= 1;

    std::sort(found.begin(), found.end());
    for (std::size_t i = 0; i < found.size();) {
        std::size_t j = i;
        while (j < found.size() && found[j] == found[i]) ++j;
        out.roots.emplace_back(found[i], j - i);
        i = j;
    }
    return out;
}

} // namespace enorbit
