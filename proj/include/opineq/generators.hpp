#pragma once

/*
 * generators.hpp — deterministic, seed-driven instance generation.
 *
 * The RNG is splitmix64: state advances by the 64-bit golden-ratio
 * constant and each output is the mix
 *
 *   z  = state += 0x9E3779B97F4A7C15
 *   z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
 *   z ^= z >> 27;  z *= 0x94D049BB133111EB
 *   return z ^ (z >> 31)
 *
 * i.e. a counter-based hash of seed + n·golden, so any language can
 * replay a stream from its seed. Substreams are carved out with
 * mix_seed(seed, salt) below.
 *
 * Spectra are drawn inside their band shrunk by `margin`, with the two
 * extreme draws pinned at the shrunk edges: interior spectra rarely
 * stress the constants, edge-pinned ones do.
 */

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "opineq/bands.hpp"
#include "opineq/checkers.hpp"
#include "opineq/maps.hpp"
#include "opineq/psd.hpp"

namespace opineq {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box–Muller; two stream values per variate, no cached state.
    double normal() {
        const double u1 = std::max(uniform01(), 0x1.0p-60);
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  private:
    std::uint64_t state_;
};

// Deterministic substream derivation: hash the salt into the seed with
// two splitmix steps so nearby salts decorrelate.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 a(seed);
    const std::uint64_t s = a.next();
    SplitMix64 b(s ^ (salt * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
    return b.next();
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

namespace detail {

// Modified Gram–Schmidt, two passes per column.
inline void orthonormalize(Mat& q, SplitMix64& rng) {
    const int n = q.rows;
    for (int j = 0; j < q.cols; ++j) {
        for (int attempt = 0;; ++attempt) {
            for (int pass = 0; pass < 2; ++pass) {
                for (int i = 0; i < j; ++i) {
                    double dot = 0.0;
                    for (int r = 0; r < n; ++r) dot += q(r, i) * q(r, j);
                    for (int r = 0; r < n; ++r) q(r, j) -= dot * q(r, i);
                }
            }
            double norm = 0.0;
            for (int r = 0; r < n; ++r) norm += q(r, j) * q(r, j);
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (int r = 0; r < n; ++r) q(r, j) /= norm;
                break;
            }
            if (attempt > 32) throw ComputationError("orthonormalize: degenerate column");
            for (int r = 0; r < n; ++r) q(r, j) = rng.normal();
        }
    }
}

} // namespace detail

// Orthogonalization of a matrix of independent standard normals.
inline Mat random_orthogonal(int dim, std::uint64_t seed) {
    if (dim < 1) throw DimensionMismatch("random_orthogonal: dim must be >= 1");
    SplitMix64 rng(seed);
    Mat q(dim, dim);
    for (double& v : q.a) v = rng.normal();
    detail::orthonormalize(q, rng);
    return q;
}

namespace detail {

// Spectrum in [lo, hi] shrunk by margin, extreme draws pinned at the
// shrunk edges; lo == hi produces a point spectrum. Conjugated by a
// random orthogonal frame.
inline PosDefMatrix posdef_with_spectrum(int dim, double lo, double hi, double margin,
                                         std::uint64_t seed) {
    if (lo <= 0.0) throw HypothesisViolation("posdef_with_spectrum: lo must be > 0");
    if (lo > hi) throw HypothesisViolation("posdef_with_spectrum: lo > hi");
    SplitMix64 rng(mix_seed(seed, 0xA11CE));
    const double width = hi - lo;
    const double in_lo = lo + margin * width;
    const double in_hi = hi - margin * width;

    std::vector<double> vals(static_cast<std::size_t>(dim));
    if (dim == 1 || width == 0.0) {
        for (double& v : vals) v = (width == 0.0) ? lo : rng.uniform(in_lo, in_hi);
    } else {
        vals[0] = in_lo;
        vals[static_cast<std::size_t>(dim - 1)] = in_hi;
        for (int i = 1; i < dim - 1; ++i) vals[static_cast<std::size_t>(i)] = rng.uniform(in_lo, in_hi);
    }

    Eigensystem es;
    es.values = std::move(vals);
    es.vectors = random_orthogonal(dim, mix_seed(seed, 0xF4A3E));
    return PosDefMatrix::from_eigensystem(std::move(es));
}

} // namespace detail

// Public band-constrained draw: strict band (lo < hi) per contract.
inline PosDefMatrix random_posdef_in_band(int dim, double lo, double hi, std::uint64_t seed,
                                          double margin = 1e-3) {
    if (lo >= hi) throw HypothesisViolation("random_posdef_in_band: need lo < hi");
    if (!(margin > 0.0 && margin < 1.0))
        throw HypothesisViolation("random_posdef_in_band: margin must lie in (0,1)");
    return detail::posdef_with_spectrum(dim, lo, hi, margin, seed);
}

struct GenConfig {
    int dim = 2;
    std::uint64_t seed = 0;
    Band band;
    double margin = 1e-3;

    void validate() const {
        if (dim < 1 || dim > 32) throw HypothesisViolation("GenConfig: dim must lie in [1, 32]");
        if (!(margin > 0.0 && margin < 1.0)) throw HypothesisViolation("GenConfig: margin must lie in (0,1)");
    }
};

// Unital members of the map catalog, uniformly over the four kinds.
inline MapSpec sample_unital_map(int dim, SplitMix64& rng) {
    switch (rng.below(4)) {
        case 0:
            return MapSpec::normalized_trace(dim, 1.0 / dim);
        case 1: {
            const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
            const Mat q = random_orthogonal(dim, rng.next());
            Mat v(dim, k);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < k; ++j) v(i, j) = q(i, j);
            return MapSpec::compression(std::move(v));
        }
        case 2: {
            const int blocks = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
            std::vector<int> part(static_cast<std::size_t>(dim));
            for (int& label : part) label = static_cast<int>(rng.below(static_cast<std::uint64_t>(blocks)));
            return MapSpec::pinching(std::move(part));
        }
        default: {
            const double w = rng.uniform(0.2, 0.8);
            std::vector<int> p1(static_cast<std::size_t>(dim)), p2(static_cast<std::size_t>(dim));
            for (int& label : p1) label = static_cast<int>(rng.below(2));
            for (int& label : p2) label = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
            return MapSpec::mixture({{w, MapSpec::pinching(std::move(p1))},
                                     {1.0 - w, MapSpec::pinching(std::move(p2))}});
        }
    }
}

namespace detail {

inline double grid_nu(SplitMix64& rng) { return 0.1 * static_cast<double>(rng.below(11)); }

inline double grid_p(SplitMix64& rng) {
    static constexpr double grid[] = {2.0, 2.5, 3.0, 4.0, 5.0};
    return grid[rng.below(5)];
}

inline std::string format_digest(const char* tag, const GenConfig& cfg, const MapSpec& phi,
                                 double nu, double p) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s;d=%d;s=%llu;phi=%s;nu=%.3f;p=%.3f", tag, cfg.dim,
                  static_cast<unsigned long long>(cfg.seed), phi.kind_name().c_str(), nu, p);
    return buf;
}

} // namespace detail

// A in the upper sub-band, B in the lower (or flipped per orientation),
// plus a unital map and grid-drawn ν, p.
inline Instance random_sandwich_pair(const GenConfig& cfg) {
    cfg.validate();
    const SandwichBand* sb = std::get_if<SandwichBand>(&cfg.band);
    if (!sb) throw HypothesisViolation("random_sandwich_pair: sandwich band required");
    sb->validate();

    PosDefMatrix A = detail::posdef_with_spectrum(cfg.dim, sb->a_lo(), sb->a_hi(), cfg.margin,
                                                  mix_seed(cfg.seed, 1));
    PosDefMatrix B = detail::posdef_with_spectrum(cfg.dim, sb->b_lo(), sb->b_hi(), cfg.margin,
                                                  mix_seed(cfg.seed, 2));
    SplitMix64 rng(mix_seed(cfg.seed, 3));
    MapSpec phi = sample_unital_map(cfg.dim, rng);
    const double nu = detail::grid_nu(rng);
    const double p = detail::grid_p(rng);

    Instance inst{std::move(A), std::move(B), std::move(phi), Weight(nu), p, cfg.band, cfg.seed, ""};
    inst.digest = detail::format_digest("sw", cfg, inst.phi, nu, p);
    inst.validate();
    return inst;
}

// A with spectrum in [m1², M1²], B in [m2², M2²]; ν pinned to 1/2 (the
// gap-band checks are # checks).
inline Instance random_polya_pair(const GenConfig& cfg) {
    cfg.validate();
    const PolyaBand* pb = std::get_if<PolyaBand>(&cfg.band);
    if (!pb) throw HypothesisViolation("random_polya_pair: gap band required");
    pb->validate();

    PosDefMatrix A = detail::posdef_with_spectrum(cfg.dim, pb->m1_sq, pb->M1_sq, cfg.margin,
                                                  mix_seed(cfg.seed, 1));
    PosDefMatrix B = detail::posdef_with_spectrum(cfg.dim, pb->m2_sq, pb->M2_sq, cfg.margin,
                                                  mix_seed(cfg.seed, 2));
    SplitMix64 rng(mix_seed(cfg.seed, 3));
    MapSpec phi = sample_unital_map(cfg.dim, rng);
    const double p = detail::grid_p(rng);

    Instance inst{std::move(A), std::move(B), std::move(phi), Weight(0.5), p, cfg.band, cfg.seed, ""};
    inst.digest = detail::format_digest("po", cfg, inst.phi, 0.5, p);
    inst.validate();
    return inst;
}

} // namespace opineq
