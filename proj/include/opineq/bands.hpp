#pragma once

/*
 * bands.hpp — spectral band hypotheses.
 *
 * SandwichBand: 0 < m ≤ m′ < M′ ≤ M with one operator in [m, m′] and the
 * other in [M′, M]; derived ratios h = M/m (outer) and h′ = M′/m′ (inner,
 * the one the refinement factor K^r(h′) is evaluated at).
 *
 * PolyaBand: spectra in [m1², M1²] and [m2², M2²] with one band strictly
 * below the other on square roots; derived m = m2/M1, M = M2/m1 and the
 * gap ratio h = m2²/M1² (or M2²/m1² for the mirrored gap).
 */

#include <cmath>
#include <variant>

#include "opineq/errors.hpp"

namespace opineq {

struct SandwichBand {
    enum class Orientation { AUpper, BUpper };

    double m = 1.0;
    double m_prime = 1.0;
    double M_prime = 2.0;
    double M = 2.0;
    Orientation orientation = Orientation::AUpper;

    void validate() const {
        if (!(0.0 < m && m <= m_prime && m_prime < M_prime && M_prime <= M))
            throw HypothesisViolation("SandwichBand: need 0 < m <= m' < M' <= M");
    }

    double h() const { return M / m; }
    double h_prime() const { return M_prime / m_prime; }

    // Spectrum interval for A under the declared orientation.
    double a_lo() const { return orientation == Orientation::AUpper ? M_prime : m; }
    double a_hi() const { return orientation == Orientation::AUpper ? M : m_prime; }
    double b_lo() const { return orientation == Orientation::AUpper ? m : M_prime; }
    double b_hi() const { return orientation == Orientation::AUpper ? m_prime : M; }
};

struct PolyaBand {
    enum class GapSide { ABelowB, BBelowA };

    double m1_sq = 1.0;
    double M1_sq = 1.0;
    double m2_sq = 4.0;
    double M2_sq = 4.0;
    GapSide gap_side = GapSide::ABelowB;

    double m1() const { return std::sqrt(m1_sq); }
    double M1() const { return std::sqrt(M1_sq); }
    double m2() const { return std::sqrt(m2_sq); }
    double M2() const { return std::sqrt(M2_sq); }

    void validate() const {
        if (!(0.0 < m1_sq && m1_sq <= M1_sq)) throw HypothesisViolation("PolyaBand: need 0 < m1^2 <= M1^2");
        if (!(0.0 < m2_sq && m2_sq <= M2_sq)) throw HypothesisViolation("PolyaBand: need 0 < m2^2 <= M2^2");
        if (gap_side == GapSide::ABelowB) {
            if (!(M1() < m2())) throw HypothesisViolation("PolyaBand: declared gap M1 < m2 does not hold");
        } else {
            if (!(M2() < m1())) throw HypothesisViolation("PolyaBand: declared gap M2 < m1 does not hold");
        }
    }

    // Ratio scalars of the unrefined bound: m = m2/M1, M = M2/m1.
    double little_m() const { return m2() / M1(); }
    double big_M() const { return M2() / m1(); }

    // Argument of K in the refined constant; > 1 for the A-below-B gap,
    // < 1 for the mirrored one.
    double gap_ratio() const {
        return gap_side == GapSide::ABelowB ? m2_sq / M1_sq : M2_sq / m1_sq;
    }
};

using Band = std::variant<SandwichBand, PolyaBand>;

} // namespace opineq
