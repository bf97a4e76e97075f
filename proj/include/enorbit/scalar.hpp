#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace enorbit {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class errc {
    size_mismatch,
    domain_mismatch,
    singular_matrix,
    extension_required,
    non_split_spectrum,
    invalid_seed,
    group_membership,
    not_nilpotent_fiber,
    parse_error,
    unsupported,
    internal
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::size_mismatch: return "size_mismatch";
        case errc::domain_mismatch: return "domain_mismatch";
        case errc::singular_matrix: return "singular_matrix";
        case errc::extension_required: return "extension_required";
        case errc::non_split_spectrum: return "non_split_spectrum";
        case errc::invalid_seed: return "invalid_seed";
        case errc::group_membership: return "group_membership";
        case errc::not_nilpotent_fiber: return "not_nilpotent_fiber";
        case errc::parse_error: return "parse_error";
        case errc::unsupported: return "unsupported";
        case errc::internal: return "internal";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw Error(c, msg); }

inline Int rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline std::string rational_to_string(const Rational& r) {
    Int n = rat_num(r), d = rat_den(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) fail(errc::parse_error, "zero denominator in '" + s + "'");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        return Rational(n, d);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(errc::parse_error, "cannot parse rational '" + s + "'");
    }
}

namespace detail {

// Pulls all square factors out of n > 0: n = square * rest with rest square-free.
// Trial division up to 10^6, then a perfect-square test on the remainder. Inputs
// in this library are desk-scale, so the remainder is square-free in practice.
inline std::pair<Int, Int> split_square_part(Int n) {
    Int square = 1;
    for (Int p = 2; p <= 1000000 && p * p <= n; ++p) {
        Int pp = p * p;
        while (n % pp == 0) {
            n /= pp;
            square *= p;
        }
    }
    Int r = boost::multiprecision::sqrt(n);
    if (r * r == n) {
        square *= r;
        n = 1;
    }
    return {square, n};
}

inline bool is_square_free(std::int64_t d) {
    if (d < 1) return false;
    auto [sq, rest] = split_square_part(Int(d));
    return sq == 1;
}

} // namespace detail

// Element of Q or of one real quadratic extension Q(sqrt(d)), stored as a + b*sqrt(d)
// with d a square-free integer >= 2. Pure rationals carry d == 0 and b == 0, so
// structural equality is semantic equality. All arithmetic is exact; mixing two
// distinct extensions throws domain_mismatch.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : a_(v) {}
    Scalar(long v) : a_(v) {}
    Scalar(const Int& v) : a_(v) {}
    Scalar(Rational r) : a_(std::move(r)) {}

    static Scalar quadratic(Rational a, Rational b, std::int64_t d) {
        Scalar s;
        s.a_ = std::move(a);
        s.b_ = std::move(b);
        s.d_ = d;
        s.normalize();
        return s;
    }

    const Rational& rat() const {
        if (d_ != 0) fail(errc::domain_mismatch, "scalar is not rational: " + str());
        return a_;
    }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    std::int64_t d() const { return d_; }

    bool is_rational() const { return d_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return b_ == 0 && a_ == 1; }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        std::int64_t d = merge_domain(x.d_, y.d_);
        return make(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) {
        std::int64_t d = merge_domain(x.d_, y.d_);
        return make(x.a_ - y.a_, x.b_ - y.b_, d);
    }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        std::int64_t d = merge_domain(x.d_, y.d_);
        return make(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    Scalar operator-() const { return make(-a_, -b_, d_); }

    Scalar inverse() const {
        if (is_zero()) fail(errc::singular_matrix, "division by zero scalar");
        if (d_ == 0) return Scalar(Rational(1) / a_);
        // (a + b sqrt d)^-1 = (a - b sqrt d) / (a^2 - b^2 d); the norm is nonzero
        // because d is not a rational square.
        Rational nrm = a_ * a_ - b_ * b_ * d_;
        return make(a_ / nrm, -b_ / nrm, d_);
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    std::string str() const {
        if (d_ == 0) return rational_to_string(a_);
        return rational_to_string(a_) + " + " + rational_to_string(b_) + "*sqrt(" +
               std::to_string(d_) + ")";
    }

private:
    Rational a_{0};
    Rational b_{0};
    std::int64_t d_ = 0;

    static Scalar make(Rational a, Rational b, std::int64_t d) {
        Scalar s;
        s.a_ = std::move(a);
        s.b_ = std::move(b);
        s.d_ = d;
        s.normalize();
        return s;
    }

    static std::int64_t merge_domain(std::int64_t d1, std::int64_t d2) {
        if (d1 == 0) return d2;
        if (d2 == 0) return d1;
        if (d1 == d2) return d1;
        fail(errc::domain_mismatch, "scalars live in distinct extensions sqrt(" +
                                        std::to_string(d1) + ") and sqrt(" + std::to_string(d2) +
                                        ")");
    }

    void normalize() {
        if (d_ < 0) fail(errc::extension_required, "negative extension discriminant");
        if (d_ == 1) {
            a_ += b_;
            b_ = 0;
            d_ = 0;
        }
        if (d_ > 1 && !detail::is_square_free(d_)) {
            // fold the square part: b*sqrt(s^2 * r) = (b*s)*sqrt(r)
            auto [sq, rest] = detail::split_square_part(Int(d_));
            b_ *= Rational(sq);
            if (rest == 1) {
                a_ += b_;
                b_ = 0;
                d_ = 0;
            } else {
                d_ = static_cast<std::int64_t>(rest);
            }
        }
        if (b_ == 0) d_ = 0;
    }
};

// Exact square root within Q or a single Q(sqrt(d)). Throws extension_required
// when the value has no square root of that shape (negative values, values that
// would need a second extension, ...).
inline Scalar exact_sqrt(const Scalar& q) {
    if (q.is_zero()) return Scalar(0);
    if (q.is_rational()) {
        const Rational& r = q.rat();
        if (r < 0)
            fail(errc::extension_required,
                 "square root of negative rational " + rational_to_string(r) +
                     " is outside every real quadratic extension");
        Int n = rat_num(r), d = rat_den(r);
        // sqrt(n/d) = sqrt(n*d)/d
        auto [sq, rest] = detail::split_square_part(n * d);
        Rational coeff(sq, d);
        if (rest == 1) return Scalar(coeff);
        if (rest > Int(std::int64_t(1) << 62))
            fail(errc::extension_required, "discriminant too large: " + rest.str());
        return Scalar::quadratic(0, coeff, static_cast<std::int64_t>(rest));
    }
    // q = a + b sqrt(d), b != 0. Look for s = x + y sqrt(d) with s^2 = q:
    // x^2 + y^2 d = a and 2xy = b, so x^2 is a root of 4 t^2 - 4 a t + b^2 d.
    const Rational &a = q.a(), &b = q.b();
    std::int64_t d = q.d();
    Rational disc = a * a - b * b * d;
    if (disc < 0) fail(errc::extension_required, "no square root of " + q.str() + " in Q(sqrt(d))");
    Scalar t = exact_sqrt(Scalar(disc));
    if (!t.is_rational())
        fail(errc::extension_required, "square root of " + q.str() + " needs an extension tower");
    for (int sign : {1, -1}) {
        Rational x2 = (a + Rational(sign) * t.rat()) / 2;
        if (x2 < 0) continue;
        Scalar x = exact_sqrt(Scalar(x2));
        if (!x.is_rational() || x.is_zero()) continue;
        Rational y = b / (2 * x.rat());
        Scalar cand = Scalar::quadratic(x.rat(), y, d);
        if (cand * cand == q) return cand;
    }
    fail(errc::extension_required, "no square root of " + q.str() + " in Q(sqrt(" +
                                       std::to_string(d) + "))");
}

} // namespace enorbit
