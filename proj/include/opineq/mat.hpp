#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "opineq/errors.hpp"

namespace opineq {

// Minimal dense real matrix, row-major. Used for eigenvector frames,
// isometries and non-symmetric intermediate products; the symmetric
// types in psd.hpp wrap it.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {
        if (r < 0 || c < 0) throw DimensionMismatch("Mat: negative dimension");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

inline Mat operator+(const Mat& x, const Mat& y) {
    if (!x.same_shape(y)) throw DimensionMismatch("Mat+: shape mismatch");
    Mat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

inline Mat operator-(const Mat& x, const Mat& y) {
    if (!x.same_shape(y)) throw DimensionMismatch("Mat-: shape mismatch");
    Mat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

inline Mat operator*(double s, const Mat& x) {
    Mat r = x;
    for (double& v : r.a) v *= s;
    return r;
}

inline Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw DimensionMismatch("Mat*: inner dimension mismatch");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const double xik = x(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
        }
    }
    return r;
}

inline Mat transpose(const Mat& x) {
    Mat r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
    return r;
}

inline double frobenius_norm(const Mat& x) {
    double s = 0.0;
    for (double v : x.a) s += v * v;
    return std::sqrt(s);
}

inline double max_abs(const Mat& x) {
    double s = 0.0;
    for (double v : x.a) s = std::max(s, std::abs(v));
    return s;
}

inline bool all_finite(const Mat& x) {
    for (double v : x.a)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace opineq
