#pragma once

/*
 * sharpness.hpp — empirical probe of the gap-band constant γ.
 *
 * For an instance under a PolyaBand, the tightness metric is
 *
 *   ratio = λ_max( R^{−1/2} L R^{−1/2} ),  L = Φ(A)#Φ(B),  R = γ·Φ(A#B),
 *
 * the congruence-normalized top eigenvalue: it equals LHS/RHS when Φ has
 * scalar output and is Löwner-meaningful in general. The bound says
 * ratio ≤ 1; values near 1 witness near-tightness.
 *
 * search_sharpness climbs the ratio with random restarts: eigenvalues of
 * A and B are nudged and projected back into their bands, eigenvector
 * frames (and the isometry of a Compression map) are rotated by small
 * Givens angles, and a move is kept only if the ratio strictly
 * increases. The perturbation scale anneals geometrically from 1e-1 to
 * 1e-4 within each restart. Restarts own disjoint RNG streams and are
 * merged by maximum ratio, so the result does not depend on scheduling.
 *
 * The search reports evidence only: it never claims the constant is or
 * is not sharp, and the map Φ ranges over the closed catalog of maps.hpp
 * (stated in every report). A ratio above 1 + 1e-9 would contradict the
 * bound; it is recorded with its witness, never discarded.
 */

#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "opineq/checkers.hpp"
#include "opineq/generators.hpp"

namespace opineq {

struct SearchConfig {
    int dim = 2;
    int restarts = 8;
    double anneal_from = 1e-1;
    double anneal_to = 1e-4;
    double band_margin = 1e-3;
    int trace_points = 256;
    bool parallel = true;
};

struct SearchState {
    PolyaBand band;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
    SearchConfig config;

    double best_ratio = 0.0;
    std::optional<Instance> witness;
    std::uint64_t evaluations = 0;
    std::vector<std::uint64_t> seed_lineage;
    std::vector<double> ratio_trace;  // running best, downsampled

    bool violation = false;           // ratio exceeded 1 + 1e-9 somewhere
    double violation_ratio = 0.0;
    std::optional<Instance> violation_witness;
};

inline double sharpness_ratio(const Instance& inst) {
    const PolyaBand& b = inst.polya();
    b.validate();
    const double m = b.little_m();
    const double M = b.big_M();
    const double gamma = (M + m) / (2.0 * std::sqrt(M * m * kantorovich(b.gap_ratio())));

    const PosDefMatrix lhs = geo_mean(apply_map_pd(inst.phi, inst.A), apply_map_pd(inst.phi, inst.B),
                                      Weight(0.5));
    const PosDefMatrix rhs =
        PosDefMatrix(gamma * apply_map(inst.phi, geo_mean(inst.A, inst.B, Weight(0.5))));
    const PosDefMatrix rhs_ihalf = mat_power(rhs, -0.5);
    const PosDefMatrix normalized = PosDefMatrix(
        SymMatrix::from_mat(rhs_ihalf.sym().mat() * lhs.sym().mat() * rhs_ihalf.sym().mat()));
    return normalized.max_eig();
}

namespace detail {

struct Mutable {
    std::vector<double> a_vals, b_vals;
    Mat a_frame, b_frame;
    MapSpec phi;
};

inline PosDefMatrix assemble(const std::vector<double>& vals, const Mat& frame) {
    Eigensystem es;
    es.values = vals;
    es.vectors = frame;
    return PosDefMatrix::from_eigensystem(std::move(es));
}

inline Instance to_instance(const Mutable& c, const PolyaBand& band, std::uint64_t seed) {
    Instance inst{assemble(c.a_vals, c.a_frame), assemble(c.b_vals, c.b_frame), c.phi, Weight(0.5),
                  2.0, band, seed, ""};
    char buf[96];
    std::snprintf(buf, sizeof(buf), "sh;d=%d;s=%llu;phi=%s", inst.A.dim(),
                  static_cast<unsigned long long>(seed), c.phi.kind_name().c_str());
    inst.digest = buf;
    inst.validate();
    return inst;
}

inline void nudge_values(std::vector<double>& vals, double lo, double hi, double sigma,
                         double margin, SplitMix64& rng) {
    const double width = hi - lo;
    const double in_lo = lo + margin * width;
    const double in_hi = hi - margin * width;
    for (double& v : vals) {
        v += sigma * width * rng.normal();
        v = std::min(std::max(v, in_lo), in_hi);
    }
}

inline void rotate_frame(Mat& q, double sigma, SplitMix64& rng) {
    const int n = q.rows;
    if (n < 2) return;
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (j >= i) ++j;
    const double theta = sigma * rng.normal();
    const double c = std::cos(theta), s = std::sin(theta);
    for (int r = 0; r < q.cols; ++r) {
        const double qi = q(i, r), qj = q(j, r);
        q(i, r) = c * qi - s * qj;
        q(j, r) = s * qi + c * qj;
    }
    orthonormalize(q, rng);
}

struct RestartResult {
    double best_ratio = 0.0;
    std::optional<Instance> witness;
    std::uint64_t evaluations = 0;
    std::vector<double> trace;
    bool violation = false;
    double violation_ratio = 0.0;
    std::optional<Instance> violation_witness;
};

inline RestartResult run_restart(const PolyaBand& band, std::uint64_t steps, std::uint64_t seed,
                                 int map_cycle, const SearchConfig& cfg) {
    RestartResult out;
    if (steps == 0) return out;
    SplitMix64 rng(mix_seed(seed, 0x5EA4C4));

    GenConfig gen;
    gen.dim = cfg.dim;
    gen.seed = seed;
    gen.band = band;
    gen.margin = cfg.band_margin;

    Mutable cur;
    {
        Instance init = random_polya_pair(gen);
        cur.a_vals = init.A.eig().values;
        cur.b_vals = init.B.eig().values;
        cur.a_frame = init.A.eig().vectors;
        cur.b_frame = init.B.eig().vectors;
        // cycle the catalog across restarts so every kind gets searched
        switch (map_cycle % 4) {
            case 0: cur.phi = MapSpec::normalized_trace(cfg.dim, 1.0 / cfg.dim); break;
            case 1: {
                // proper corner compression; a square isometry would make the
                // ratio frame-invariant and freeze the climb
                const int k = std::max(1, cfg.dim - 1);
                const Mat q = random_orthogonal(cfg.dim, rng.next());
                Mat v(cfg.dim, k);
                for (int i = 0; i < cfg.dim; ++i)
                    for (int j = 0; j < k; ++j) v(i, j) = q(i, j);
                cur.phi = MapSpec::compression(std::move(v));
                break;
            }
            case 2: {
                std::vector<int> part(static_cast<std::size_t>(cfg.dim));
                for (int& l : part) l = static_cast<int>(rng.below(2));
                cur.phi = MapSpec::pinching(std::move(part));
                break;
            }
            default: cur.phi = init.phi; break;
        }
    }

    Instance cur_inst = to_instance(cur, band, seed);
    double cur_ratio = sharpness_ratio(cur_inst);
    out.evaluations = 1;
    out.best_ratio = cur_ratio;
    out.witness = cur_inst;
    out.trace.push_back(cur_ratio);

    const auto note_violation = [&](double ratio, const Instance& inst) {
        if (ratio > 1.0 + 1e-9 && !out.violation) {
            out.violation = true;
            out.violation_ratio = ratio;
            out.violation_witness = inst;
        }
    };
    note_violation(cur_ratio, cur_inst);

    const double decay = (steps > 1)
                             ? std::pow(cfg.anneal_to / cfg.anneal_from, 1.0 / static_cast<double>(steps - 1))
                             : 1.0;
    double sigma = cfg.anneal_from;
    for (std::uint64_t t = 1; t < steps; ++t, sigma *= decay) {
        Mutable prop = cur;
        switch (rng.below(5)) {
            case 0: nudge_values(prop.a_vals, band.m1_sq, band.M1_sq, sigma, cfg.band_margin, rng); break;
            case 1: nudge_values(prop.b_vals, band.m2_sq, band.M2_sq, sigma, cfg.band_margin, rng); break;
            case 2: rotate_frame(prop.a_frame, sigma, rng); break;
            case 3: rotate_frame(prop.b_frame, sigma, rng); break;
            default:
                if (prop.phi.kind == MapSpec::Kind::Compression && prop.phi.in_dim >= 2) {
                    Mat v = prop.phi.isometry;
                    rotate_frame(v, sigma, rng);
                    prop.phi = MapSpec::compression(std::move(v));
                } else {
                    rotate_frame(prop.a_frame, sigma, rng);
                }
                break;
        }

        Instance prop_inst = to_instance(prop, band, seed);
        const double ratio = sharpness_ratio(prop_inst);
        ++out.evaluations;
        note_violation(ratio, prop_inst);
        if (ratio > cur_ratio) {
            cur = std::move(prop);
            cur_ratio = ratio;
            if (ratio > out.best_ratio) {
                out.best_ratio = ratio;
                out.witness = std::move(prop_inst);
            }
        }
        out.trace.push_back(out.best_ratio);
    }
    return out;
}

} // namespace detail

inline SearchState search_sharpness(const PolyaBand& band, std::uint64_t budget, std::uint64_t seed,
                                    SearchConfig cfg = {}) {
    band.validate();
    if (budget < 1) throw UsageError("search_sharpness: budget must be >= 1");
    if (cfg.dim < 1 || cfg.dim > 32) throw UsageError("search_sharpness: dim must lie in [1, 32]");
    if (cfg.restarts < 1) throw UsageError("search_sharpness: restarts must be >= 1");

    const int restarts = static_cast<int>(std::min<std::uint64_t>(cfg.restarts, budget));
    std::vector<std::uint64_t> steps(static_cast<std::size_t>(restarts), budget / restarts);
    for (std::uint64_t i = 0; i < budget % restarts; ++i) ++steps[static_cast<std::size_t>(i)];

    SearchState state;
    state.band = band;
    state.budget = budget;
    state.seed = seed;
    state.config = cfg;
    for (int k = 0; k < restarts; ++k) state.seed_lineage.push_back(mix_seed(seed, 1000 + k));

    std::vector<detail::RestartResult> results(static_cast<std::size_t>(restarts));
    if (cfg.parallel && restarts > 1) {
        std::vector<std::future<detail::RestartResult>> jobs;
        jobs.reserve(static_cast<std::size_t>(restarts));
        for (int k = 0; k < restarts; ++k)
            jobs.push_back(std::async(std::launch::async, [&, k] {
                return detail::run_restart(band, steps[static_cast<std::size_t>(k)],
                                           state.seed_lineage[static_cast<std::size_t>(k)], k, cfg);
            }));
        for (int k = 0; k < restarts; ++k) results[static_cast<std::size_t>(k)] = jobs[static_cast<std::size_t>(k)].get();
    } else {
        for (int k = 0; k < restarts; ++k)
            results[static_cast<std::size_t>(k)] = detail::run_restart(
                band, steps[static_cast<std::size_t>(k)], state.seed_lineage[static_cast<std::size_t>(k)], k, cfg);
    }

    // deterministic max-merge in restart order
    std::vector<double> merged_trace;
    for (const detail::RestartResult& r : results) {
        state.evaluations += r.evaluations;
        if (r.witness && r.best_ratio > state.best_ratio) {
            state.best_ratio = r.best_ratio;
            state.witness = r.witness;
        }
        if (r.violation && !state.violation) {
            state.violation = true;
            state.violation_ratio = r.violation_ratio;
            state.violation_witness = r.violation_witness;
        }
        merged_trace.insert(merged_trace.end(), r.trace.begin(), r.trace.end());
    }

    // running maximum, downsampled to at most trace_points entries
    double run_max = 0.0;
    for (double& v : merged_trace) {
        run_max = std::max(run_max, v);
        v = run_max;
    }
    const std::size_t stride =
        std::max<std::size_t>(1, merged_trace.size() / static_cast<std::size_t>(std::max(1, cfg.trace_points)));
    for (std::size_t i = 0; i < merged_trace.size(); i += stride)
        state.ratio_trace.push_back(merged_trace[i]);
    if (!merged_trace.empty() && state.ratio_trace.back() != merged_trace.back())
        state.ratio_trace.push_back(merged_trace.back());

    return state;
}

} // namespace opineq
