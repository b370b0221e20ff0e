#pragma once

/*
 * maps.hpp — a closed catalog of positive linear maps Φ.
 *
 *   NormalizedTrace   X ↦ factor · tr(X), a 1×1 output
 *   Compression       X ↦ Vᵀ X V with V column-orthonormal (n×k)
 *   Pinching          X ↦ block-diagonal part of X under an index partition
 *   Mixture           X ↦ Σ wᵢ Φᵢ(X), wᵢ ≥ 0, equal output dims
 *
 * Every member is positive by construction (strictly positive on positive
 * definite inputs), which is what lets the checkers treat Φ(A) as a
 * PosDefMatrix without certifying positivity of an arbitrary linear map.
 * 1×1 outputs are ordinary SymMatrix values so all checker formulas stay
 * uniform.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "opineq/check_result.hpp"
#include "opineq/means.hpp"
#include "opineq/psd.hpp"

namespace opineq {

struct MapSpec {
    enum class Kind { NormalizedTrace, Compression, Pinching, Mixture };

    Kind kind = Kind::NormalizedTrace;
    int in_dim = 1;

    double factor = 1.0;                                   // NormalizedTrace
    Mat isometry;                                          // Compression: in_dim × k, VᵀV = I
    std::vector<int> partition;                            // Pinching: block label per index
    std::vector<std::pair<double, MapSpec>> components;    // Mixture

    static MapSpec normalized_trace(int in_dim, double factor) {
        if (in_dim < 1) throw DimensionMismatch("MapSpec: in_dim must be >= 1");
        if (factor <= 0.0) throw HypothesisViolation("MapSpec: trace factor must be > 0");
        MapSpec m;
        m.kind = Kind::NormalizedTrace;
        m.in_dim = in_dim;
        m.factor = factor;
        return m;
    }

    static MapSpec compression(Mat v) {
        if (v.rows < 1 || v.cols < 1 || v.cols > v.rows)
            throw DimensionMismatch("MapSpec: isometry must be n×k with 1 <= k <= n");
        const Mat gram = transpose(v) * v;
        if (max_abs(gram - Mat::identity(v.cols)) > 1e-12)
            throw HypothesisViolation("MapSpec: isometry columns are not orthonormal");
        MapSpec m;
        m.kind = Kind::Compression;
        m.in_dim = v.rows;
        m.isometry = std::move(v);
        return m;
    }

    static MapSpec identity_map(int dim) { return compression(Mat::identity(dim)); }

    static MapSpec pinching(std::vector<int> partition) {
        if (partition.empty()) throw DimensionMismatch("MapSpec: empty partition");
        MapSpec m;
        m.kind = Kind::Pinching;
        m.in_dim = static_cast<int>(partition.size());
        m.partition = std::move(partition);
        return m;
    }

    static MapSpec mixture(std::vector<std::pair<double, MapSpec>> components) {
        if (components.empty()) throw DimensionMismatch("MapSpec: empty mixture");
        const int in = components.front().second.in_dim;
        const int out = components.front().second.out_dim();
        double total = 0.0;
        for (const auto& [w, phi] : components) {
            if (w < 0.0) throw HypothesisViolation("MapSpec: mixture weight < 0");
            if (phi.in_dim != in || phi.out_dim() != out)
                throw DimensionMismatch("MapSpec: mixture components disagree on dimensions");
            total += w;
        }
        if (total <= 0.0) throw HypothesisViolation("MapSpec: mixture weights sum to 0");
        MapSpec m;
        m.kind = Kind::Mixture;
        m.in_dim = in;
        m.components = std::move(components);
        return m;
    }

    int out_dim() const {
        switch (kind) {
            case Kind::NormalizedTrace: return 1;
            case Kind::Compression: return isometry.cols;
            case Kind::Pinching: return in_dim;
            case Kind::Mixture: return components.front().second.out_dim();
        }
        return 0;
    }

    std::string kind_name() const {
        switch (kind) {
            case Kind::NormalizedTrace: return "normalized_trace";
            case Kind::Compression: return "compression";
            case Kind::Pinching: return "pinching";
            case Kind::Mixture: return "mixture";
        }
        return "?";
    }
};

inline SymMatrix apply_map(const MapSpec& phi, const SymMatrix& X) {
    if (X.dim() != phi.in_dim) throw DimensionMismatch("apply_map: input dimension mismatch");
    switch (phi.kind) {
        case MapSpec::Kind::NormalizedTrace: {
            double tr = 0.0;
            for (int i = 0; i < X.dim(); ++i) tr += X.at(i, i);
            return SymMatrix::scalar(1, phi.factor * tr);
        }
        case MapSpec::Kind::Compression:
            return SymMatrix::from_mat(transpose(phi.isometry) * X.mat() * phi.isometry);
        case MapSpec::Kind::Pinching: {
            SymMatrix out(X.dim());
            for (int i = 0; i < X.dim(); ++i)
                for (int j = i; j < X.dim(); ++j)
                    if (phi.partition[static_cast<std::size_t>(i)] == phi.partition[static_cast<std::size_t>(j)])
                        out.set(i, j, X.at(i, j));
            return out;
        }
        case MapSpec::Kind::Mixture: {
            SymMatrix acc(phi.out_dim());
            for (const auto& [w, comp] : phi.components)
                acc = acc + w * apply_map(comp, X);
            return acc;
        }
    }
    throw ComputationError("apply_map: unreachable");
}

inline SymMatrix apply_map(const MapSpec& phi, const PosDefMatrix& X) { return apply_map(phi, X.sym()); }

// Φ(X) as a PosDefMatrix; throws NotPositiveDefinite if the image is singular.
inline PosDefMatrix apply_map_pd(const MapSpec& phi, const PosDefMatrix& X) {
    return PosDefMatrix(apply_map(phi, X.sym()));
}

inline bool is_unital(const MapSpec& phi) {
    const SymMatrix image = apply_map(phi, SymMatrix::identity(phi.in_dim));
    return max_abs(image.mat() - Mat::identity(phi.out_dim())) <= 1e-12;
}

// Φ(A)^{−1} ≤ Φ(A^{−1}) for unital positive Φ.
inline CheckResult choi_check(const MapSpec& phi, const PosDefMatrix& A) {
    if (!is_unital(phi)) throw HypothesisViolation("choi_check: map must be unital");
    const SymMatrix lhs = mat_power(apply_map_pd(phi, A), -1.0).sym();
    const SymMatrix rhs = apply_map(phi, mat_power(A, -1.0));
    return make_check("choi", lhs, rhs);
}

// Φ(A #_ν B) ≤ Φ(A) #_ν Φ(B) for every positive Φ (not necessarily unital).
inline CheckResult ando_check(const MapSpec& phi, const PosDefMatrix& A, const PosDefMatrix& B,
                              Weight w) {
    const SymMatrix lhs = apply_map(phi, geo_mean(A, B, w));
    const SymMatrix rhs = geo_mean(apply_map_pd(phi, A), apply_map_pd(phi, B), w).sym();
    CheckResult res = make_check("ando", lhs, rhs);
    res.constants["nu"] = w.nu;
    return res;
}

} // namespace opineq
