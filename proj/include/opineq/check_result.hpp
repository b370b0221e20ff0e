#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "opineq/psd.hpp"

namespace opineq {

// Outcome of one inequality evaluation: both sides as matrices, the
// Löwner margin of rhs − lhs, and the named constants that went into
// the bound. Scalar inequalities use 1×1 matrices.
struct CheckResult {
    std::string theorem_id;
    SymMatrix lhs;
    SymMatrix rhs;
    double margin = 0.0;
    double scale = 1.0;
    double rel_tol = kDefaultLoewnerTol;
    bool verdict = false;
    std::map<std::string, double> constants;
    std::string instance_digest;
    std::uint64_t seed = 0;

    // margin normalized by the loewner scale; comparable across instances.
    double normalized_margin() const { return margin / scale; }
};

inline CheckResult make_check(std::string theorem_id, const SymMatrix& lhs, const SymMatrix& rhs,
                              std::map<std::string, double> constants = {},
                              std::string digest = {}, std::uint64_t seed = 0,
                              double rel_tol = kDefaultLoewnerTol) {
    const LoewnerVerdict v = loewner_leq(lhs, rhs, rel_tol);
    CheckResult r;
    r.theorem_id = std::move(theorem_id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = v.margin;
    r.scale = v.scale;
    r.rel_tol = rel_tol;
    r.verdict = v.holds;
    r.constants = std::move(constants);
    r.instance_digest = std::move(digest);
    r.seed = seed;
    return r;
}

inline CheckResult make_scalar_check(std::string theorem_id, double lhs, double rhs,
                                     std::map<std::string, double> constants = {},
                                     std::string digest = {}, std::uint64_t seed = 0,
                                     double rel_tol = kDefaultLoewnerTol) {
    return make_check(std::move(theorem_id), SymMatrix::scalar(1, lhs), SymMatrix::scalar(1, rhs),
                      std::move(constants), std::move(digest), seed, rel_tol);
}

} // namespace opineq
