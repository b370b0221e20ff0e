#pragma once

/*
 * means.hpp — weighted operator means and the Kantorovich constant.
 *
 *   A ∇_ν B = (1−ν)A + νB
 *   A #_ν B = A^{1/2} (A^{−1/2} B A^{−1/2})^ν A^{1/2}
 *   K(h)    = (h+1)² / (4h),  K(h) ≥ 1,  K(h) = K(1/h)
 *
 * The geometric mean is computed exactly as the defining formula through
 * mat_power; dimensions here are tiny and fidelity beats speed. K^r with
 * r = min{ν, 1−ν} is the refinement factor appearing throughout the
 * checkers module.
 */

#include <algorithm>
#include <cmath>

#include "opineq/check_result.hpp"
#include "opineq/psd.hpp"

namespace opineq {

// ν ∈ [0, 1]; r = min{ν, 1−ν} is the exponent of the Kantorovich factor.
struct Weight {
    double nu = 0.5;

    Weight() = default;
    explicit Weight(double v) : nu(v) {
        if (!(v >= 0.0 && v <= 1.0)) throw HypothesisViolation("Weight: nu must lie in [0,1]");
    }

    double r() const { return std::min(nu, 1.0 - nu); }
};

inline double kantorovich(double h) {
    if (h <= 0.0) throw HypothesisViolation("kantorovich: h must be > 0");
    return (h + 1.0) * (h + 1.0) / (4.0 * h);
}

inline double kantorovich_pow(double h, double r) { return std::pow(kantorovich(h), r); }

// Spectral ratio parameters entering the refined bounds.
struct KantParams {
    double h = 1.0;         // outer ratio M/m
    double r = 0.0;         // min{ν, 1−ν}

    KantParams() = default;
    KantParams(double h_, Weight w) : h(h_), r(w.r()) {
        if (h <= 0.0) throw HypothesisViolation("KantParams: h must be > 0");
    }
};

inline PosDefMatrix arith_mean(const PosDefMatrix& A, const PosDefMatrix& B, Weight w) {
    if (A.dim() != B.dim()) throw DimensionMismatch("arith_mean: dimension mismatch");
    return PosDefMatrix((1.0 - w.nu) * A.sym() + w.nu * B.sym());
}

inline PosDefMatrix geo_mean(const PosDefMatrix& A, const PosDefMatrix& B, Weight w) {
    if (A.dim() != B.dim()) throw DimensionMismatch("geo_mean: dimension mismatch");
    const PosDefMatrix a_half = mat_power(A, 0.5);
    const PosDefMatrix a_ihalf = mat_power(A, -0.5);
    const SymMatrix rel = SymMatrix::from_mat(a_ihalf.sym().mat() * B.sym().mat() * a_ihalf.sym().mat());
    const PosDefMatrix rel_pow = mat_power(PosDefMatrix(rel), w.nu);
    return PosDefMatrix(SymMatrix::from_mat(a_half.sym().mat() * rel_pow.sym().mat() * a_half.sym().mat()));
}

// Scalar refined arithmetic–geometric mean bound:
//   K(b/a)^r · a^{1−ν} b^ν ≤ (1−ν)a + νb.
inline CheckResult young_refinement_check(double a, double b, Weight w) {
    if (a <= 0.0 || b <= 0.0) throw HypothesisViolation("young_refinement_check: a, b must be > 0");
    const double h = b / a;
    const double lhs = kantorovich_pow(h, w.r()) * std::pow(a, 1.0 - w.nu) * std::pow(b, w.nu);
    const double rhs = (1.0 - w.nu) * a + w.nu * b;
    CheckResult res = make_scalar_check("young_refinement", lhs, rhs,
                                        {{"h", h}, {"r", w.r()}, {"K_r", kantorovich_pow(h, w.r())}});
    // scalar rule from the contract: holds iff lhs ≤ rhs + 1e-12·rhs
    res.verdict = lhs <= rhs + 1e-12 * rhs;
    return res;
}

} // namespace opineq
