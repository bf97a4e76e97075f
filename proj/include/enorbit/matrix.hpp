#pragma once

#include <initializer_list>
#include <vector>

#include "enorbit/scalar.hpp"

namespace enorbit {

// Dense matrix over Scalar, row-major. Indices are 0-based; the unit-matrix
// builder mirrors the usual 1-based math convention and says so.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    Mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        e_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) fail(errc::size_mismatch, "ragged initializer");
            for (const auto& x : r) e_.push_back(x);
        }
    }

    static Mat zeros(std::size_t r, std::size_t c) { return Mat(r, c); }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
        return m;
    }

    // J_0 is the empty 0x0 matrix; J_k (k >= 1) has ones on the superdiagonal.
    static Mat jordan(std::size_t k) {
        Mat m(k, k);
        for (std::size_t i = 0; i + 1 < k; ++i) m(i, i + 1) = Scalar(1);
        return m;
    }

    // e_{i,j}(n) with 1-based i, j as in the math convention.
    static Mat unit(std::size_t i, std::size_t j, std::size_t n) {
        if (i < 1 || j < 1 || i > n || j > n)
            fail(errc::size_mismatch, "unit matrix index out of range");
        Mat m(n, n);
        m(i - 1, j - 1) = Scalar(1);
        return m;
    }

    static Mat diag(const std::vector<Scalar>& d) {
        Mat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static Mat block_diag(const std::vector<Mat>& blocks) {
        std::size_t r = 0, c = 0;
        for (const auto& b : blocks) {
            r += b.rows();
            c += b.cols();
        }
        Mat m(r, c);
        std::size_t i0 = 0, j0 = 0;
        for (const auto& b : blocks) {
            m.set_block(i0, j0, b);
            i0 += b.rows();
            j0 += b.cols();
        }
        return m;
    }

    static Mat column(const std::vector<Scalar>& v) {
        Mat m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    static Mat row_vector(const std::vector<Scalar>& v) {
        Mat m(1, v.size());
        for (std::size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Scalar& at(std::size_t i, std::size_t j) {
        if (i >= rows_ || j >= cols_) fail(errc::size_mismatch, "matrix index out of range");
        return (*this)(i, j);
    }
    const Scalar& at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) fail(errc::size_mismatch, "matrix index out of range");
        return (*this)(i, j);
    }

    void set_block(std::size_t i0, std::size_t j0, const Mat& b) {
        if (i0 + b.rows() > rows_ || j0 + b.cols() > cols_)
            fail(errc::size_mismatch, "block does not fit");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    Mat block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
        if (i0 + r > rows_ || j0 + c > cols_) fail(errc::size_mismatch, "block out of range");
        Mat m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }

    Mat col(std::size_t j) const { return block(0, j, rows_, 1); }
    Mat row(std::size_t i) const { return block(i, 0, 1, cols_); }

    Mat transpose() const {
        Mat m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        x.require_same_shape(y);
        Mat m(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.e_.size(); ++i) m.e_[i] = x.e_[i] + y.e_[i];
        return m;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        x.require_same_shape(y);
        Mat m(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.e_.size(); ++i) m.e_[i] = x.e_[i] - y.e_[i];
        return m;
    }
    Mat operator-() const {
        Mat m(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = -e_[i];
        return m;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols_ != y.rows_) fail(errc::size_mismatch, "matrix product shape mismatch");
        Mat m(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const Scalar& xik = x(i, k);
                if (xik.is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) {
                    const Scalar& ykj = y(k, j);
                    if (!ykj.is_zero()) m(i, j) += xik * ykj;
                }
            }
        return m;
    }
    friend Mat operator*(const Scalar& s, const Mat& x) {
        Mat m(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.e_.size(); ++i) m.e_[i] = s * x.e_[i];
        return m;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.e_ == y.e_;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_square() const { return rows_ == cols_; }

    bool is_rational() const {
        for (const auto& x : e_)
            if (!x.is_rational()) return false;
        return true;
    }

    Scalar trace() const {
        if (!is_square()) fail(errc::size_mismatch, "trace of non-square matrix");
        Scalar t;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    std::vector<Scalar> flat() const { return e_; }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
        }
        return s + "]";
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> e_;

    void require_same_shape(const Mat& y) const {
        if (rows_ != y.rows_ || cols_ != y.cols_) fail(errc::size_mismatch, "shape mismatch");
    }
};

// I, X, X^2, ..., X^count
inline std::vector<Mat> power_chain(const Mat& x, std::size_t count) {
    if (!x.is_square()) fail(errc::size_mismatch, "powers of non-square matrix");
    std::vector<Mat> p;
    p.reserve(count + 1);
    p.push_back(Mat::identity(x.rows()));
    for (std::size_t i = 1; i <= count; ++i) p.push_back(p.back() * x);
    return p;
}

} // namespace enorbit
