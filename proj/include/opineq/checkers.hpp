#pragma once

/*
 * checkers.hpp — one verifier per operator inequality.
 *
 * Sandwich-band family (0 < m ≤ m′ < M′ ≤ M, one operator per sub-band,
 * h = M/m, h′ = M′/m′, r = min{ν, 1−ν}):
 *
 *   squared           Φ²(A∇_νB) ≤ C² · Φ²(A#_νB)            (map_of_mean)
 *                     Φ²(A∇_νB) ≤ C² · (Φ(A)#_νΦ(B))²        (mean_of_maps)
 *                     C = K(h)/K^r(h′) refined, K(h) classic
 *   power             same shape at exponent p ≥ 2,
 *                     C = K(h)/(4^{2/p−1}K^r(h′)) refined,
 *                     C = (M+m)²/(4^{2/p}Mm) classic
 *   power4            p ≥ 4 sharpening, C = √(K(h²))·K(h)/(2^{4/p−1}K^r(h′)),
 *                     plus the auxiliary certificate
 *                     M²m²T^{−2} + T² ≤ (M²+m²)I for T = Φ(A∇_νB)
 *   mean_inverse_sum  Φ(A∇_νB) + Mm·Φ(A^{−1}∇_νB^{−1}) ≤ (M+m)I
 *   inverse_amgm      K^r(h′)(A^{−1}#_νB^{−1}) ≤ A^{−1}∇_νB^{−1}
 *   relative_amgm     K(h)^r·A#_νB ≤ A∇_νB, h read off the spectrum of
 *                     A^{−1/2}BA^{−1/2} (edge nearest 1), not off a band
 *
 * Gap-band (Pólya–Szegő) family, ν = 1/2 throughout:
 *
 *   polya_szego          Φ(A)#Φ(B) ≤ c·Φ(A#B), c = (M+m)/(2√(Mm)) classic
 *                        or γ = (M+m)/(2√(MmK(h))) refined (strict gap)
 *   polya_szego_squared  (Φ(A)#Φ(B))² ≤ ψ·Φ²(A#B) with the piecewise ψ
 *                        from compute_psi
 *
 * Norm facts used by the proofs are re-checked directly (norm_lemmas),
 * and compare_constants certifies that every refined coefficient is at
 * most its classic counterpart.
 */

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "opineq/bands.hpp"
#include "opineq/check_result.hpp"
#include "opineq/maps.hpp"
#include "opineq/means.hpp"
#include "opineq/psd.hpp"

namespace opineq {

// A concrete test case: a matrix pair inside its declared band, a positive
// map, and the weight/exponent parameters.
struct Instance {
    PosDefMatrix A;
    PosDefMatrix B;
    MapSpec phi;
    Weight nu{0.5};
    double p = 2.0;
    Band band;
    std::uint64_t seed = 0;
    std::string digest;

    bool has_sandwich() const { return std::holds_alternative<SandwichBand>(band); }
    bool has_polya() const { return std::holds_alternative<PolyaBand>(band); }

    const SandwichBand& sandwich() const {
        if (const auto* b = std::get_if<SandwichBand>(&band)) return *b;
        throw HypothesisViolation("Instance: sandwich band required");
    }

    const PolyaBand& polya() const {
        if (const auto* b = std::get_if<PolyaBand>(&band)) return *b;
        throw HypothesisViolation("Instance: gap band required");
    }

    // Re-derives the hypotheses instead of trusting the producer.
    void validate() const {
        if (A.dim() != B.dim()) throw DimensionMismatch("Instance: A and B dims differ");
        if (phi.in_dim != A.dim()) throw DimensionMismatch("Instance: map input dim mismatch");
        if (has_sandwich()) {
            const SandwichBand& b = sandwich();
            b.validate();
            if (!band_membership(A, b.a_lo(), b.a_hi()))
                throw HypothesisViolation("Instance: A outside its sandwich sub-band");
            if (!band_membership(B, b.b_lo(), b.b_hi()))
                throw HypothesisViolation("Instance: B outside its sandwich sub-band");
        } else {
            const PolyaBand& b = polya();
            b.validate();
            if (!band_membership(A, b.m1_sq, b.M1_sq))
                throw HypothesisViolation("Instance: A outside [m1^2, M1^2]");
            if (!band_membership(B, b.m2_sq, b.M2_sq))
                throw HypothesisViolation("Instance: B outside [m2^2, M2^2]");
        }
    }
};

enum class Variant { MapOfMean, MeanOfMaps };

namespace detail {

inline SymMatrix scaled_power(const PosDefMatrix& X, double coeff_pow_p, double p) {
    return coeff_pow_p * mat_power(X, p).sym();
}

// Φ(A #_ν B) or Φ(A) #_ν Φ(B), the two right-hand carriers.
inline PosDefMatrix rhs_carrier(const Instance& inst, Variant variant) {
    if (variant == Variant::MapOfMean)
        return apply_map_pd(inst.phi, geo_mean(inst.A, inst.B, inst.nu));
    return geo_mean(apply_map_pd(inst.phi, inst.A), apply_map_pd(inst.phi, inst.B), inst.nu);
}

inline void stamp(CheckResult& r, const Instance& inst) {
    r.instance_digest = inst.digest;
    r.seed = inst.seed;
}

} // namespace detail

// Squared inequality. refined selects C = K(h)/K^r(h′); classic uses
// C = K(h).
inline CheckResult check_squared(const Instance& inst, Variant variant, bool refined) {
    const SandwichBand& b = inst.sandwich();
    b.validate();
    const double r = inst.nu.r();
    const double coeff = refined ? kantorovich(b.h()) / kantorovich_pow(b.h_prime(), r)
                                 : kantorovich(b.h());
    const PosDefMatrix phi_nabla = apply_map_pd(inst.phi, arith_mean(inst.A, inst.B, inst.nu));
    const SymMatrix lhs = mat_power(phi_nabla, 2.0).sym();
    const SymMatrix rhs = detail::scaled_power(detail::rhs_carrier(inst, variant), std::pow(coeff, 2.0), 2.0);

    CheckResult res = make_check("squared", lhs, rhs,
                                 {{"h", b.h()},
                                  {"h_prime", b.h_prime()},
                                  {"r", r},
                                  {"nu", inst.nu.nu},
                                  {"K_h", kantorovich(b.h())},
                                  {"K_r_h_prime", kantorovich_pow(b.h_prime(), r)},
                                  {"coeff", coeff},
                                  {"refined", refined ? 1.0 : 0.0}});
    detail::stamp(res, inst);
    return res;
}

// Φ(A∇_νB) + Mm·Φ(A^{−1}∇_νB^{−1}) ≤ (M+m)·I. Needs a unital map.
inline CheckResult check_mean_inverse_sum(const Instance& inst) {
    const SandwichBand& b = inst.sandwich();
    b.validate();
    if (!is_unital(inst.phi)) throw HypothesisViolation("check_mean_inverse_sum: map must be unital");
    const SymMatrix phi_nabla = apply_map(inst.phi, arith_mean(inst.A, inst.B, inst.nu));
    const PosDefMatrix inv_nabla =
        arith_mean(mat_power(inst.A, -1.0), mat_power(inst.B, -1.0), inst.nu);
    const SymMatrix lhs = phi_nabla + (b.M * b.m) * apply_map(inst.phi, inv_nabla);
    const SymMatrix rhs = SymMatrix::scalar(inst.phi.out_dim(), b.M + b.m);

    CheckResult res = make_check("mean_inverse_sum", lhs, rhs,
                                 {{"M", b.M}, {"m", b.m}, {"nu", inst.nu.nu}});
    detail::stamp(res, inst);
    return res;
}

// K^r(h′)(A^{−1} #_ν B^{−1}) ≤ A^{−1} ∇_ν B^{−1}. The map plays no role.
inline CheckResult check_reverse_amgm_inverse(const Instance& inst) {
    const SandwichBand& b = inst.sandwich();
    b.validate();
    const double r = inst.nu.r();
    const double kr = kantorovich_pow(b.h_prime(), r);
    const PosDefMatrix a_inv = mat_power(inst.A, -1.0);
    const PosDefMatrix b_inv = mat_power(inst.B, -1.0);
    const SymMatrix lhs = kr * geo_mean(a_inv, b_inv, inst.nu).sym();
    const SymMatrix rhs = arith_mean(a_inv, b_inv, inst.nu).sym();

    CheckResult res = make_check("inverse_amgm", lhs, rhs,
                                 {{"h_prime", b.h_prime()}, {"r", r}, {"K_r_h_prime", kr}, {"nu", inst.nu.nu}});
    detail::stamp(res, inst);
    return res;
}

// K(h)^r·A#_νB ≤ A∇_νB with h the edge of spec(A^{−1/2}BA^{−1/2}) nearest 1.
// Requires the relative spectrum to stay on one side of 1.
inline CheckResult check_relative_amgm(const PosDefMatrix& A, const PosDefMatrix& B, Weight w) {
    const PosDefMatrix a_ihalf = mat_power(A, -0.5);
    const PosDefMatrix rel =
        PosDefMatrix(SymMatrix::from_mat(a_ihalf.sym().mat() * B.sym().mat() * a_ihalf.sym().mat()));
    const double lo = rel.min_eig();
    const double hi = rel.max_eig();
    double h = 0.0;
    if (lo > 1.0)
        h = lo;
    else if (hi < 1.0)
        h = hi;
    else
        throw HypothesisViolation("check_relative_amgm: relative spectrum straddles 1");

    const double kr = kantorovich_pow(h, w.r());
    const SymMatrix lhs = kr * geo_mean(A, B, w).sym();
    const SymMatrix rhs = arith_mean(A, B, w).sym();
    return make_check("relative_amgm", lhs, rhs,
                      {{"h", h}, {"rel_lo", lo}, {"rel_hi", hi}, {"r", w.r()}, {"nu", w.nu}, {"K_r_h", kr}});
}

// p-th power inequality, p ≥ 2.
inline CheckResult check_power_p(const Instance& inst, Variant variant, bool refined) {
    const SandwichBand& b = inst.sandwich();
    b.validate();
    const double p = inst.p;
    if (p < 2.0) throw HypothesisViolation("check_power_p: p must be >= 2");
    const double r = inst.nu.r();
    const double coeff =
        refined ? kantorovich(b.h()) / (std::pow(4.0, 2.0 / p - 1.0) * kantorovich_pow(b.h_prime(), r))
                : (b.M + b.m) * (b.M + b.m) / (std::pow(4.0, 2.0 / p) * b.M * b.m);
    const PosDefMatrix phi_nabla = apply_map_pd(inst.phi, arith_mean(inst.A, inst.B, inst.nu));
    const SymMatrix lhs = mat_power(phi_nabla, p).sym();
    const SymMatrix rhs = detail::scaled_power(detail::rhs_carrier(inst, variant), std::pow(coeff, p), p);

    CheckResult res = make_check("power", lhs, rhs,
                                 {{"h", b.h()},
                                  {"h_prime", b.h_prime()},
                                  {"p", p},
                                  {"r", r},
                                  {"nu", inst.nu.nu},
                                  {"coeff", coeff},
                                  {"refined", refined ? 1.0 : 0.0}});
    detail::stamp(res, inst);
    return res;
}

// p ≥ 4 sharpening. Also certifies the auxiliary bound
// M²m²·T^{−2} + T² ≤ (M²+m²)I for T = Φ(A∇_νB) and reports its margin
// in the constants.
inline CheckResult check_power_p4(const Instance& inst, Variant variant) {
    const SandwichBand& b = inst.sandwich();
    b.validate();
    const double p = inst.p;
    if (p < 4.0) throw HypothesisViolation("check_power_p4: p must be >= 4");
    const double r = inst.nu.r();
    const double h = b.h();
    const double coeff = std::sqrt(kantorovich(h * h)) * kantorovich(h) /
                         (std::pow(2.0, 4.0 / p - 1.0) * kantorovich_pow(b.h_prime(), r));

    const PosDefMatrix phi_nabla = apply_map_pd(inst.phi, arith_mean(inst.A, inst.B, inst.nu));
    const SymMatrix lhs = mat_power(phi_nabla, p).sym();
    const SymMatrix rhs = detail::scaled_power(detail::rhs_carrier(inst, variant), std::pow(coeff, p), p);

    // auxiliary certificates on the same instance: the band square bound
    // M²m²T^{−2} + T² ≤ (M²+m²)I for T = Φ(A∇_νB), and the inverted
    // squared inequality Φ^{−2}(A#_νB) ≤ (K(h)/K^r(h′))²·Φ^{−2}(A∇_νB)
    const SymMatrix aux_lhs = (b.M * b.M * b.m * b.m) * mat_power(phi_nabla, -2.0).sym() +
                              mat_power(phi_nabla, 2.0).sym();
    const SymMatrix aux_rhs = SymMatrix::scalar(phi_nabla.dim(), b.M * b.M + b.m * b.m);
    const LoewnerVerdict aux = loewner_leq(aux_lhs, aux_rhs);

    const double c2 = kantorovich(h) / kantorovich_pow(b.h_prime(), r);
    const PosDefMatrix phi_sharp = apply_map_pd(inst.phi, geo_mean(inst.A, inst.B, inst.nu));
    const LoewnerVerdict inv_sq = loewner_leq(
        mat_power(phi_sharp, -2.0).sym(), (c2 * c2) * mat_power(phi_nabla, -2.0).sym());

    CheckResult res = make_check("power4", lhs, rhs,
                                 {{"h", h},
                                  {"h_prime", b.h_prime()},
                                  {"p", p},
                                  {"r", r},
                                  {"nu", inst.nu.nu},
                                  {"coeff", coeff},
                                  {"aux_margin", aux.margin},
                                  {"aux_holds", aux.holds ? 1.0 : 0.0},
                                  {"inverse_squared_margin", inv_sq.margin},
                                  {"inverse_squared_holds", inv_sq.holds ? 1.0 : 0.0}});
    res.verdict = res.verdict && aux.holds && inv_sq.holds;
    detail::stamp(res, inst);
    return res;
}

// Pólya–Szegő bound at ν = 1/2; classic constant or the gap-refined γ.
// The intermediate certificate (M+m)Φ(A#B) ≥ Mm·Φ(A)+Φ(B) rides along in
// the constants, as does the relative-spectrum containment of
// Φ(A)^{−1/2}Φ(B)Φ(A)^{−1/2} (reported, never asserted).
inline CheckResult check_polya_szego(const Instance& inst, bool refined) {
    const PolyaBand& b = inst.polya();
    b.validate();
    const double m = b.little_m();
    const double M = b.big_M();
    const double coeff = refined ? (M + m) / (2.0 * std::sqrt(M * m * kantorovich(b.gap_ratio())))
                                 : (M + m) / (2.0 * std::sqrt(M * m));

    const PosDefMatrix phi_a = apply_map_pd(inst.phi, inst.A);
    const PosDefMatrix phi_b = apply_map_pd(inst.phi, inst.B);
    const PosDefMatrix phi_geo = apply_map_pd(inst.phi, geo_mean(inst.A, inst.B, Weight(0.5)));
    const SymMatrix lhs = geo_mean(phi_a, phi_b, Weight(0.5)).sym();
    const SymMatrix rhs = coeff * phi_geo.sym();

    const SymMatrix inter_lhs = (M * m) * phi_a.sym() + phi_b.sym();
    const SymMatrix inter_rhs = (M + m) * phi_geo.sym();
    const LoewnerVerdict inter = loewner_leq(inter_lhs, inter_rhs);

    CheckResult res = make_check("polya_szego", lhs, rhs,
                                 {{"m", m},
                                  {"M", M},
                                  {"coeff", coeff},
                                  {"refined", refined ? 1.0 : 0.0},
                                  {"intermediate_margin", inter.margin},
                                  {"intermediate_holds", inter.holds ? 1.0 : 0.0}});
    if (refined) {
        res.constants["gap_ratio"] = b.gap_ratio();
        res.constants["K_gap"] = kantorovich(b.gap_ratio());
        // relative spectrum of the map images against the band-derived window
        const PosDefMatrix pa_ihalf = mat_power(phi_a, -0.5);
        const PosDefMatrix rel = PosDefMatrix(
            SymMatrix::from_mat(pa_ihalf.sym().mat() * phi_b.sym().mat() * pa_ihalf.sym().mat()));
        const double lo_expect = m * m;
        const double hi_expect = M * M;
        res.constants["rel_spec_lo"] = rel.min_eig();
        res.constants["rel_spec_hi"] = rel.max_eig();
        res.constants["rel_spec_in_band"] =
            (rel.min_eig() >= lo_expect * (1.0 - 1e-9) && rel.max_eig() <= hi_expect * (1.0 + 1e-9))
                ? 1.0
                : 0.0;
    }
    detail::stamp(res, inst);
    return res;
}

// Constants of the squared Pólya–Szegő bound.
struct PsiConstants {
    double gamma = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double t0 = 0.0;
    double psi = 0.0;
};

namespace detail {

// max over [α, β] of f(t) = (c(α+β)t − αβ)/t², the squaring lever shared
// by both first-order constants.
inline PsiConstants psi_from_coefficient(const PolyaBand& b, double coeff) {
    PsiConstants c;
    c.gamma = coeff;
    c.alpha = b.m1() * b.m2();
    c.beta = b.M1() * b.M2();
    c.t0 = 2.0 * c.alpha * c.beta / (c.gamma * (c.alpha + c.beta));
    if (c.alpha <= c.t0)
        c.psi = c.gamma * c.gamma * (c.alpha + c.beta) * (c.alpha + c.beta) / (4.0 * c.alpha * c.beta);
    else
        c.psi = (c.gamma * (c.alpha + c.beta) - c.beta) / c.alpha;
    return c;
}

} // namespace detail

inline PsiConstants compute_psi(const PolyaBand& b) {
    b.validate();
    const double m = b.little_m();
    const double M = b.big_M();
    return detail::psi_from_coefficient(
        b, (M + m) / (2.0 * std::sqrt(M * m * kantorovich(b.gap_ratio()))));
}

// Same squaring applied to the classic first-order constant; unlike the
// gap-refined version this one needs no gap hypothesis for its validity.
inline PsiConstants compute_psi_classic(const PolyaBand& b) {
    b.validate();
    const double m = b.little_m();
    const double M = b.big_M();
    return detail::psi_from_coefficient(b, (M + m) / (2.0 * std::sqrt(M * m)));
}

namespace detail {

inline CheckResult squared_polya_with(const Instance& inst, const PsiConstants& c,
                                      const std::string& id) {
    if (!is_unital(inst.phi))
        throw HypothesisViolation("check_squared_polya: map must be unital");

    const PosDefMatrix phi_a = apply_map_pd(inst.phi, inst.A);
    const PosDefMatrix phi_b = apply_map_pd(inst.phi, inst.B);
    const PosDefMatrix phi_geo = apply_map_pd(inst.phi, geo_mean(inst.A, inst.B, Weight(0.5)));
    const PosDefMatrix lhs_carrier = geo_mean(phi_a, phi_b, Weight(0.5));

    const SymMatrix lhs = mat_power(lhs_carrier, 2.0).sym();
    const SymMatrix rhs = c.psi * mat_power(phi_geo, 2.0).sym();

    const int k = phi_geo.dim();
    const bool side_ok = loewner_leq(SymMatrix::scalar(k, c.alpha), phi_geo.sym()).holds &&
                         loewner_leq(phi_geo.sym(), SymMatrix::scalar(k, c.beta)).holds &&
                         loewner_leq(SymMatrix::scalar(k, c.alpha), lhs_carrier.sym()).holds &&
                         loewner_leq(lhs_carrier.sym(), SymMatrix::scalar(k, c.beta)).holds;

    CheckResult res = make_check(id, lhs, rhs,
                                 {{"gamma", c.gamma},
                                  {"alpha", c.alpha},
                                  {"beta", c.beta},
                                  {"t0", c.t0},
                                  {"psi", c.psi},
                                  {"side_conditions_ok", side_ok ? 1.0 : 0.0}});
    stamp(res, inst);
    return res;
}

} // namespace detail

// (Φ(A)#Φ(B))² ≤ ψ·Φ²(A#B) with the gap-refined ψ, plus the side
// conditions α ≤ Φ(A#B) ≤ β and α ≤ Φ(A)#Φ(B) ≤ β. A side-condition
// failure points at a broken instance, not at the inequality, so it is
// reported under its own flag.
inline CheckResult check_squared_polya(const Instance& inst) {
    return detail::squared_polya_with(inst, compute_psi(inst.polya()), "polya_szego_squared");
}

// Squared bound at the classic constant.
inline CheckResult check_squared_polya_classic(const Instance& inst) {
    return detail::squared_polya_with(inst, compute_psi_classic(inst.polya()),
                                      "polya_szego_squared_classic");
}

// The three norm facts feeding the proofs. ‖AB‖ and ‖A^{1/2}B^{−1/2}‖ are
// largest singular values of non-symmetric products.
struct NormLemmaResults {
    CheckResult product_norm;    // ‖AB‖ ≤ ¼‖A+B‖²
    CheckResult power_sum_norm;  // ‖A^r+B^r‖ ≤ ‖(A+B)^r‖, r ≥ 1
    CheckResult order_norm_equiv;  // A ≤ αB ⇔ ‖A^{1/2}B^{−1/2}‖ ≤ √α

    bool all_hold() const {
        return product_norm.verdict && power_sum_norm.verdict && order_norm_equiv.verdict;
    }
};

// The equivalence is checked as two one-sided implications with a margin
// band: the order direction fires only when A ≤ αB holds with margin
// ≥ 1e-8·scale, the norm direction only when the norm is below
// √α·(1−1e-8). Exact-boundary cases are numerically undecidable and are
// skipped rather than guessed.
inline NormLemmaResults check_norm_lemmas(const PosDefMatrix& A, const PosDefMatrix& B, double r,
                                          double alpha) {
    if (A.dim() != B.dim()) throw DimensionMismatch("check_norm_lemmas: dimension mismatch");
    if (r < 1.0) throw HypothesisViolation("check_norm_lemmas: need r >= 1");
    if (alpha <= 0.0) throw HypothesisViolation("check_norm_lemmas: need alpha > 0");

    NormLemmaResults out;

    const double prod = spectral_norm(A.sym().mat() * B.sym().mat());
    const double sum_norm = operator_norm(A.sym() + B.sym());
    out.product_norm = make_scalar_check("norm_product", prod, 0.25 * sum_norm * sum_norm,
                                         {{"sum_norm", sum_norm}});

    const PosDefMatrix sum_pd = PosDefMatrix(A.sym() + B.sym());
    const double lhs_pow = operator_norm(mat_power(A, r).sym() + mat_power(B, r).sym());
    const double rhs_pow = operator_norm(mat_power(sum_pd, r).sym());
    out.power_sum_norm = make_scalar_check("norm_power_sum", lhs_pow, rhs_pow, {{"r", r}});

    const LoewnerVerdict order = loewner_leq(A.sym(), alpha * B.sym());
    const double norm_val =
        spectral_norm(mat_power(A, 0.5).sym().mat() * mat_power(B, -0.5).sym().mat());
    const double sqrt_alpha = std::sqrt(alpha);
    const bool forward_fires = order.margin >= 1e-8 * order.scale;
    const bool forward_ok = !forward_fires || norm_val <= sqrt_alpha * (1.0 + 1e-8);
    const bool converse_fires = norm_val <= sqrt_alpha * (1.0 - 1e-8);
    const bool converse_ok = !converse_fires || order.holds;

    out.order_norm_equiv = make_scalar_check("norm_order_equiv", norm_val, sqrt_alpha,
                                             {{"alpha", alpha},
                                              {"order_margin", order.margin},
                                              {"forward_fires", forward_fires ? 1.0 : 0.0},
                                              {"forward_ok", forward_ok ? 1.0 : 0.0},
                                              {"converse_fires", converse_fires ? 1.0 : 0.0},
                                              {"converse_ok", converse_ok ? 1.0 : 0.0}});
    out.order_norm_equiv.verdict = forward_ok && converse_ok;
    // margin measures protocol health, not the raw norm gap (which is
    // legitimately negative when alpha sits below the tight constant):
    // the slack of whichever implications fired, 0 when both are skipped.
    double slack = 0.0;
    bool fired = false;
    if (forward_fires) {
        slack = sqrt_alpha * (1.0 + 1e-8) - norm_val;
        fired = true;
    }
    if (converse_fires) {
        const double cslack = order.margin + order.rel_tol_used * order.scale;
        slack = fired ? std::min(slack, cslack) : cslack;
        fired = true;
    }
    out.order_norm_equiv.margin = fired ? slack : 0.0;
    out.order_norm_equiv.scale = std::max(1.0, sqrt_alpha);
    return out;
}

// Refined-versus-classic coefficient comparison.
struct ConstantComparison {
    double squared_refined = 0.0;
    double squared_classic = 0.0;
    double squared_ratio = 0.0;
    double power_refined = 0.0;
    double power_classic = 0.0;
    double power_ratio = 0.0;
    bool dominance = false;  // both ratios <= 1 (up to 1e-12)
};

// Accepts the boundary h′ = 1 (m′ = M′), where both ratios collapse to 1;
// checkers themselves never run on such bands.
inline ConstantComparison compare_constants(const SandwichBand& b, Weight nu, double p) {
    if (!(0.0 < b.m && b.m <= b.m_prime && b.m_prime <= b.M_prime && b.M_prime <= b.M))
        throw HypothesisViolation("compare_constants: need 0 < m <= m' <= M' <= M");
    if (p < 2.0) throw HypothesisViolation("compare_constants: p must be >= 2");
    const double r = nu.r();
    ConstantComparison c;
    c.squared_refined = kantorovich(b.h()) / kantorovich_pow(b.h_prime(), r);
    c.squared_classic = kantorovich(b.h());
    c.squared_ratio = c.squared_refined / c.squared_classic;
    c.power_refined =
        std::pow(kantorovich(b.h()) / (std::pow(4.0, 2.0 / p - 1.0) * kantorovich_pow(b.h_prime(), r)), p);
    c.power_classic = std::pow((b.M + b.m) * (b.M + b.m) / (std::pow(4.0, 2.0 / p) * b.M * b.m), p);
    c.power_ratio = c.power_refined / c.power_classic;
    c.dominance = c.squared_ratio <= 1.0 + 1e-12 && c.power_ratio <= 1.0 + 1e-12;
    return c;
}

// ---------------------------------------------------------------------------
// Checker registry: the twelve verdict-producing checks the harness runs.
// Each entry folds its variant/refinement combinations into one result whose
// margin is the worst normalized sub-margin.
// ---------------------------------------------------------------------------

enum class BandKind { Sandwich, Polya };

struct CheckerSpec {
    std::string id;
    BandKind band_kind = BandKind::Sandwich;
    std::function<CheckResult(const Instance&)> run;
};

namespace detail {

inline CheckResult aggregate(const std::string& id, const Instance& inst,
                             const std::vector<std::pair<std::string, CheckResult>>& parts) {
    const CheckResult* worst = &parts.front().second;
    for (const auto& [label, part] : parts)
        if (part.normalized_margin() < worst->normalized_margin()) worst = &part;

    CheckResult agg = *worst;
    agg.theorem_id = id;
    agg.verdict = true;
    for (const auto& [label, part] : parts) {
        agg.verdict = agg.verdict && part.verdict;
        agg.constants[label + "_margin"] = part.margin;
    }
    stamp(agg, inst);
    return agg;
}

} // namespace detail

inline const std::vector<CheckerSpec>& checker_registry() {
    static const std::vector<CheckerSpec> registry = [] {
        std::vector<CheckerSpec> r;

        r.push_back({"ando", BandKind::Sandwich, [](const Instance& inst) {
                         CheckResult res = ando_check(inst.phi, inst.A, inst.B, inst.nu);
                         detail::stamp(res, inst);
                         return res;
                     }});
        r.push_back({"choi", BandKind::Sandwich, [](const Instance& inst) {
                         CheckResult res = choi_check(inst.phi, inst.A);
                         detail::stamp(res, inst);
                         return res;
                     }});
        r.push_back({"constants", BandKind::Sandwich, [](const Instance& inst) {
                         const ConstantComparison c = compare_constants(inst.sandwich(), inst.nu, inst.p);
                         const double worst_ratio = std::max(c.squared_ratio, c.power_ratio);
                         CheckResult res = make_scalar_check("constants", worst_ratio, 1.0,
                                                             {{"squared_refined", c.squared_refined},
                                                              {"squared_classic", c.squared_classic},
                                                              {"squared_ratio", c.squared_ratio},
                                                              {"power_refined", c.power_refined},
                                                              {"power_classic", c.power_classic},
                                                              {"power_ratio", c.power_ratio}});
                         res.verdict = c.dominance;
                         detail::stamp(res, inst);
                         return res;
                     }});
        r.push_back({"inverse_amgm", BandKind::Sandwich,
                     [](const Instance& inst) { return check_reverse_amgm_inverse(inst); }});
        r.push_back({"mean_inverse_sum", BandKind::Sandwich,
                     [](const Instance& inst) { return check_mean_inverse_sum(inst); }});
        r.push_back({"norm_lemmas", BandKind::Sandwich, [](const Instance& inst) {
                         const double r_exp = std::max(1.0, inst.p / 2.0);
                         const double tight = spectral_norm(mat_power(inst.A, 0.5).sym().mat() *
                                                            mat_power(inst.B, -0.5).sym().mat());
                         const double alpha_hi = tight * tight * 1.02;
                         const double alpha_lo = tight * tight * 0.98;
                         const NormLemmaResults hi = check_norm_lemmas(inst.A, inst.B, r_exp, alpha_hi);
                         const NormLemmaResults lo = check_norm_lemmas(inst.A, inst.B, r_exp, alpha_lo);
                         return detail::aggregate("norm_lemmas", inst,
                                                  {{"product", hi.product_norm},
                                                   {"power_sum", hi.power_sum_norm},
                                                   {"order_above", hi.order_norm_equiv},
                                                   {"order_below", lo.order_norm_equiv}});
                     }});
        // The gap-refined constants γ and ψ are not order-correct on every
        // banded instance: valid pinching and compression instances violate
        // them (the sharpness search reproduces such witnesses on demand).
        // Random sweeps therefore assert the classic bounds, which hold for
        // every positive map, and report the refined margins alongside.
        r.push_back({"polya_szego", BandKind::Polya, [](const Instance& inst) {
                         CheckResult classic = check_polya_szego(inst, false);
                         const CheckResult refined = check_polya_szego(inst, true);
                         classic.theorem_id = "polya_szego";
                         classic.verdict =
                             classic.verdict && classic.constants.at("intermediate_holds") > 0.5;
                         classic.constants["refined_margin"] = refined.margin;
                         classic.constants["refined_holds"] = refined.verdict ? 1.0 : 0.0;
                         classic.constants["refined_coeff"] = refined.constants.at("coeff");
                         classic.constants["rel_spec_in_band"] =
                             refined.constants.at("rel_spec_in_band");
                         detail::stamp(classic, inst);
                         return classic;
                     }});
        r.push_back({"polya_szego_squared", BandKind::Polya, [](const Instance& inst) {
                         CheckResult classic = check_squared_polya_classic(inst);
                         const CheckResult refined = check_squared_polya(inst);
                         classic.theorem_id = "polya_szego_squared";
                         classic.verdict =
                             classic.verdict && classic.constants.at("side_conditions_ok") > 0.5;
                         classic.constants["refined_margin"] = refined.margin;
                         classic.constants["refined_holds"] = refined.verdict ? 1.0 : 0.0;
                         classic.constants["refined_psi"] = refined.constants.at("psi");
                         detail::stamp(classic, inst);
                         return classic;
                     }});
        r.push_back({"power", BandKind::Sandwich, [](const Instance& inst) {
                         return detail::aggregate(
                             "power", inst,
                             {{"map_of_mean_refined", check_power_p(inst, Variant::MapOfMean, true)},
                              {"map_of_mean_classic", check_power_p(inst, Variant::MapOfMean, false)},
                              {"mean_of_maps_refined", check_power_p(inst, Variant::MeanOfMaps, true)},
                              {"mean_of_maps_classic", check_power_p(inst, Variant::MeanOfMaps, false)}});
                     }});
        r.push_back({"power4", BandKind::Sandwich, [](const Instance& inst) {
                         // lift p into the p >= 4 regime this check needs
                         Instance shifted = inst;
                         if (shifted.p < 4.0) shifted.p += 2.0;
                         return detail::aggregate(
                             "power4", shifted,
                             {{"map_of_mean", check_power_p4(shifted, Variant::MapOfMean)},
                              {"mean_of_maps", check_power_p4(shifted, Variant::MeanOfMaps)}});
                     }});
        r.push_back({"relative_amgm", BandKind::Sandwich, [](const Instance& inst) {
                         CheckResult res = check_relative_amgm(inst.A, inst.B, inst.nu);
                         detail::stamp(res, inst);
                         return res;
                     }});
        r.push_back({"squared", BandKind::Sandwich, [](const Instance& inst) {
                         return detail::aggregate(
                             "squared", inst,
                             {{"map_of_mean_refined", check_squared(inst, Variant::MapOfMean, true)},
                              {"map_of_mean_classic", check_squared(inst, Variant::MapOfMean, false)},
                              {"mean_of_maps_refined", check_squared(inst, Variant::MeanOfMaps, true)},
                              {"mean_of_maps_classic", check_squared(inst, Variant::MeanOfMaps, false)}});
                     }});
        return r;
    }();
    return registry;
}

inline const CheckerSpec& find_checker(const std::string& id) {
    for (const CheckerSpec& c : checker_registry())
        if (c.id == id) return c;
    throw UsageError("unknown checker id: " + id);
}

} // namespace opineq
