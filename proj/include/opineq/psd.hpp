#pragma once

/*
 * psd.hpp — dense real-symmetric matrix algebra.
 *
 * Everything downstream (operator means, positive-map checkers, the
 * sharpness search) reduces to a handful of primitives on small dense
 * symmetric matrices:
 *
 *   eig_sym        cyclic Jacobi eigendecomposition, A = Q diag(λ) Qᵀ
 *   mat_power      spectral power A^t = Q diag(λᵢᵗ) Qᵀ, any real t
 *   operator_norm  max |λ|; for A ⪰ 0 this is the top eigenvalue
 *   loewner_leq    numerical certificate for A ≤ B (min eig of B−A
 *                  against a relative tolerance with floor 1)
 *   band_membership  spectrum of A contained in [lo, hi]
 *
 * Scope is deliberately small: real symmetric entries only, dims ≤ 64,
 * no sparse or high-performance paths.
 */

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "opineq/mat.hpp"

namespace opineq {

inline constexpr int kMaxDim = 64;
inline constexpr double kDefaultLoewnerTol = 1e-9;

// Symmetric matrix; symmetrized on construction so entries (i,j) and
// (j,i) are bitwise identical.
class SymMatrix {
  public:
    SymMatrix() = default;

    explicit SymMatrix(int dim) : m_(check_dim(dim), dim) {}

    // Symmetrizes (X + Xᵀ)/2. Rejects non-finite entries and non-square
    // shapes; asymmetry checks belong to the parser (io.hpp).
    static SymMatrix from_mat(const Mat& x) {
        if (x.rows != x.cols) throw DimensionMismatch("SymMatrix: not square");
        check_dim(x.rows);
        if (!all_finite(x)) throw ComputationError("SymMatrix: non-finite entry");
        SymMatrix s(x.rows);
        for (int i = 0; i < x.rows; ++i) {
            s.m_(i, i) = x(i, i);
            for (int j = i + 1; j < x.cols; ++j) {
                const double v = 0.5 * (x(i, j) + x(j, i));
                s.m_(i, j) = v;
                s.m_(j, i) = v;
            }
        }
        return s;
    }

    static SymMatrix identity(int dim) { return from_mat(Mat::identity(check_dim(dim))); }

    static SymMatrix scalar(int dim, double value) {
        SymMatrix s(dim);
        for (int i = 0; i < dim; ++i) s.m_(i, i) = value;
        return s;
    }

    int dim() const { return m_.rows; }
    double at(int i, int j) const { return m_(i, j); }

    // Writes both (i,j) and (j,i).
    void set(int i, int j, double v) {
        m_(i, j) = v;
        m_(j, i) = v;
    }

    const Mat& mat() const { return m_; }

  private:
    static int check_dim(int dim) {
        if (dim < 1 || dim > kMaxDim) throw DimensionMismatch("SymMatrix: dim out of range [1, 64]");
        return dim;
    }

    Mat m_;
};

inline SymMatrix operator+(const SymMatrix& x, const SymMatrix& y) {
    return SymMatrix::from_mat(x.mat() + y.mat());
}
inline SymMatrix operator-(const SymMatrix& x, const SymMatrix& y) {
    return SymMatrix::from_mat(x.mat() - y.mat());
}
inline SymMatrix operator*(double s, const SymMatrix& x) { return SymMatrix::from_mat(s * x.mat()); }

// Ascending eigenvalues with the matching orthonormal eigenvector columns.
struct Eigensystem {
    std::vector<double> values;
    Mat vectors;

    int dim() const { return static_cast<int>(values.size()); }

    // Q diag(λ) Qᵀ, symmetrized.
    SymMatrix reconstruct() const {
        const int n = dim();
        Mat qd = vectors;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) qd(i, j) *= values[j];
        return SymMatrix::from_mat(qd * transpose(vectors));
    }
};

namespace detail {

// One cyclic sweep of two-sided Jacobi rotations. `a` is kept symmetric,
// `v` accumulates the rotations.
inline void jacobi_sweep(Mat& a, Mat& v) {
    const int n = a.rows;
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const double apq = a(p, q);
            if (apq == 0.0) continue;
            const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
            double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
            if (theta < 0.0) t = -t;
            const double c = 1.0 / std::sqrt(t * t + 1.0);
            const double s = t * c;
            const double tau = s / (1.0 + c);
            const double h = t * apq;

            a(p, p) -= h;
            a(q, q) += h;
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            for (int r = 0; r < n; ++r) {
                if (r == p || r == q) continue;
                const double arp = a(r, p);
                const double arq = a(r, q);
                a(r, p) = arp - s * (arq + tau * arp);
                a(p, r) = a(r, p);
                a(r, q) = arq + s * (arp - tau * arq);
                a(q, r) = a(r, q);
            }
            for (int r = 0; r < n; ++r) {
                const double vrp = v(r, p);
                const double vrq = v(r, q);
                v(r, p) = vrp - s * (vrq + tau * vrp);
                v(r, q) = vrq + s * (vrp - tau * vrq);
            }
        }
    }
}

inline double offdiag_mass(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows; ++i)
        for (int j = i + 1; j < a.cols; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace detail

// Cyclic Jacobi with a fixed sweep budget. Deterministic for fixed input;
// converges when the off-diagonal Frobenius mass drops below 1e-14·‖A‖_F.
inline Eigensystem eig_sym(const SymMatrix& A) {
    const int n = A.dim();
    Mat a = A.mat();
    Mat v = Mat::identity(n);

    const double norm = frobenius_norm(a);
    const double tol = 1e-14 * std::max(norm, 1e-300);
    constexpr int kMaxSweeps = 100;

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (detail::offdiag_mass(a) <= tol) {
            converged = true;
            break;
        }
        detail::jacobi_sweep(a, v);
    }
    if (!converged && detail::offdiag_mass(a) > tol)
        throw ComputationError("eig_sym: Jacobi iteration did not converge in 100 sweeps");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

    Eigensystem es;
    es.values.resize(static_cast<std::size_t>(n));
    es.vectors = Mat(n, n);
    for (int j = 0; j < n; ++j) {
        es.values[static_cast<std::size_t>(j)] = a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
        for (int i = 0; i < n; ++i) es.vectors(i, j) = v(i, order[static_cast<std::size_t>(j)]);
    }
    return es;
}

// Strictly positive definite matrix with its eigensystem cached so that
// spectral powers and inverses reuse one factorization.
class PosDefMatrix {
  public:
    explicit PosDefMatrix(const SymMatrix& base) : base_(base), eig_(eig_sym(base)) {
        validate();
    }

    // Builds Q diag(λ) Qᵀ from a known eigensystem (λ ascending after an
    // internal sort); avoids re-running Jacobi when the spectrum is known.
    static PosDefMatrix from_eigensystem(Eigensystem es) {
        const int n = es.dim();
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int i, int j) { return es.values[static_cast<std::size_t>(i)] < es.values[static_cast<std::size_t>(j)]; });
        Eigensystem sorted;
        sorted.values.resize(static_cast<std::size_t>(n));
        sorted.vectors = Mat(n, n);
        for (int j = 0; j < n; ++j) {
            sorted.values[static_cast<std::size_t>(j)] = es.values[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
            for (int i = 0; i < n; ++i) sorted.vectors(i, j) = es.vectors(i, order[static_cast<std::size_t>(j)]);
        }
        SymMatrix base = sorted.reconstruct();
        return PosDefMatrix(std::move(base), std::move(sorted));
    }

    const SymMatrix& sym() const { return base_; }
    const Eigensystem& eig() const { return eig_; }
    int dim() const { return base_.dim(); }
    double min_eig() const { return eig_.values.front(); }
    double max_eig() const { return eig_.values.back(); }

  private:
    PosDefMatrix(SymMatrix base, Eigensystem es) : base_(std::move(base)), eig_(std::move(es)) {
        validate();
    }

    void validate() const {
        if (eig_.values.front() <= 0.0)
            throw NotPositiveDefinite("PosDefMatrix: smallest eigenvalue " +
                                      std::to_string(eig_.values.front()) + " <= 0");
        const SymMatrix rec = eig_.reconstruct();
        const double scale = std::max(frobenius_norm(base_.mat()), 1e-300);
        if (frobenius_norm(rec.mat() - base_.mat()) > 1e-12 * scale)
            throw ComputationError("PosDefMatrix: eigensystem does not reconstruct the base");
    }

    SymMatrix base_;
    Eigensystem eig_;
};

// A^t through the cached spectrum; t may be negative (inverse powers) or 0.
inline PosDefMatrix mat_power(const PosDefMatrix& A, double t) {
    Eigensystem es = A.eig();
    for (double& v : es.values) {
        if (v <= 0.0) throw NotPositiveDefinite("mat_power: eigenvalue <= 0");
        v = std::pow(v, t);
    }
    return PosDefMatrix::from_eigensystem(std::move(es));
}

inline double operator_norm(const SymMatrix& A) {
    const Eigensystem es = eig_sym(A);
    return std::max(std::abs(es.values.front()), std::abs(es.values.back()));
}

inline double operator_norm(const PosDefMatrix& A) { return A.max_eig(); }

// Largest singular value of a general rectangular block, via the Gram matrix.
inline double spectral_norm(const Mat& x) {
    const SymMatrix gram = SymMatrix::from_mat(transpose(x) * x);
    const Eigensystem es = eig_sym(gram);
    return std::sqrt(std::max(0.0, es.values.back()));
}

struct LoewnerVerdict {
    bool holds = false;
    double margin = 0.0;   // min eigenvalue of (B − A)
    double rel_tol_used = kDefaultLoewnerTol;
    double scale = 1.0;    // max(‖A‖, ‖B‖, 1)
};

// Numerical certificate for A ≤ B. The tolerance is relative with floor 1,
// so instances of magnitude ~1e-3 and ~1e+2 are judged consistently.
inline LoewnerVerdict loewner_leq(const SymMatrix& A, const SymMatrix& B,
                                  double rel_tol = kDefaultLoewnerTol) {
    if (A.dim() != B.dim()) throw DimensionMismatch("loewner_leq: dimension mismatch");
    if (rel_tol < 0.0) throw UsageError("loewner_leq: rel_tol must be >= 0");
    const SymMatrix diff = B - A;
    const Eigensystem es = eig_sym(diff);
    LoewnerVerdict v;
    v.margin = es.values.front();
    v.rel_tol_used = rel_tol;
    v.scale = std::max({operator_norm(A), operator_norm(B), 1.0});
    v.holds = v.margin >= -rel_tol * v.scale;
    return v;
}

// True iff every eigenvalue lies in [lo·(1−1e-12), hi·(1+1e-12)].
inline bool band_membership(const PosDefMatrix& A, double lo, double hi) {
    if (lo <= 0.0) throw HypothesisViolation("band_membership: lo must be > 0");
    if (lo > hi) throw HypothesisViolation("band_membership: lo > hi");
    const double lo_slack = lo * (1.0 - 1e-12);
    const double hi_slack = hi * (1.0 + 1e-12);
    return A.min_eig() >= lo_slack && A.max_eig() <= hi_slack;
}

} // namespace opineq
