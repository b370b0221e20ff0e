#pragma once

/*
 * io.hpp — JSON object formats shared repo-wide.
 *
 *   matrix     {"dim": n, "rows": [[...], ...]}          (rejects asymmetry
 *              beyond 1e-12 relative to the largest entry)
 *   map        {"kind": "normalized_trace" | "compression" | "pinching"
 *              | "mixture", ...}
 *   band       {"type": "sandwich" | "polya", ...}
 *   instance   {"A", "B", "phi", "nu", "p", "band", "seed", "digest"}
 *   check      {"theorem_id", "verdict", "margin", "constants",
 *               "instance_digest", "seed"}
 *
 * Batch files carry one object per line.
 */

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "opineq/checkers.hpp"
#include "opineq/maps.hpp"
#include "opineq/psd.hpp"
#include "opineq/sharpness.hpp"

namespace opineq {

using json = nlohmann::json;

inline json sym_to_json(const SymMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"dim", m.dim()}, {"rows", std::move(rows)}};
}

inline SymMatrix sym_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("rows")) throw UsageError("matrix: need dim and rows");
    const int dim = j.at("dim").get<int>();
    const json& rows = j.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
        throw UsageError("matrix: rows shape mismatch");
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const json& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw UsageError("matrix: rows shape mismatch");
        for (int jcol = 0; jcol < dim; ++jcol) {
            const double v = row.at(static_cast<std::size_t>(jcol)).get<double>();
            if (!std::isfinite(v)) throw UsageError("matrix: non-finite entry");
            m(i, jcol) = v;
        }
    }
    const double scale = std::max(max_abs(m), 1e-300);
    for (int i = 0; i < dim; ++i)
        for (int jcol = i + 1; jcol < dim; ++jcol)
            if (std::abs(m(i, jcol) - m(jcol, i)) > 1e-12 * scale)
                throw UsageError("matrix: asymmetric beyond 1e-12 relative");
    return SymMatrix::from_mat(m);
}

inline json mat_rows_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json map_to_json(const MapSpec& phi) {
    json j{{"kind", phi.kind_name()}, {"in_dim", phi.in_dim}};
    switch (phi.kind) {
        case MapSpec::Kind::NormalizedTrace:
            j["factor"] = phi.factor;
            break;
        case MapSpec::Kind::Compression:
            j["isometry"] = mat_rows_to_json(phi.isometry);
            break;
        case MapSpec::Kind::Pinching:
            j["partition"] = phi.partition;
            break;
        case MapSpec::Kind::Mixture: {
            json comps = json::array();
            for (const auto& [w, comp] : phi.components)
                comps.push_back(json{{"weight", w}, {"map", map_to_json(comp)}});
            j["components"] = std::move(comps);
            break;
        }
    }
    return j;
}

inline MapSpec map_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "normalized_trace")
        return MapSpec::normalized_trace(j.at("in_dim").get<int>(), j.at("factor").get<double>());
    if (kind == "compression") {
        const json& rows = j.at("isometry");
        const int n = static_cast<int>(rows.size());
        const int k = n > 0 ? static_cast<int>(rows.at(0).size()) : 0;
        Mat v(n, k);
        for (int i = 0; i < n; ++i)
            for (int jc = 0; jc < k; ++jc) v(i, jc) = rows.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(jc)).get<double>();
        return MapSpec::compression(std::move(v));
    }
    if (kind == "pinching") return MapSpec::pinching(j.at("partition").get<std::vector<int>>());
    if (kind == "mixture") {
        std::vector<std::pair<double, MapSpec>> comps;
        for (const json& c : j.at("components"))
            comps.emplace_back(c.at("weight").get<double>(), map_from_json(c.at("map")));
        return MapSpec::mixture(std::move(comps));
    }
    throw UsageError("map: unknown kind " + kind);
}

inline json band_to_json(const Band& band) {
    if (const auto* sb = std::get_if<SandwichBand>(&band)) {
        return json{{"type", "sandwich"},
                    {"m", sb->m},
                    {"m_prime", sb->m_prime},
                    {"M_prime", sb->M_prime},
                    {"M", sb->M},
                    {"orientation",
                     sb->orientation == SandwichBand::Orientation::AUpper ? "a_upper" : "b_upper"}};
    }
    const PolyaBand& pb = std::get<PolyaBand>(band);
    return json{{"type", "polya"},
                {"m1_sq", pb.m1_sq},
                {"M1_sq", pb.M1_sq},
                {"m2_sq", pb.m2_sq},
                {"M2_sq", pb.M2_sq},
                {"gap_side", pb.gap_side == PolyaBand::GapSide::ABelowB ? "a_below_b" : "b_below_a"}};
}

inline Band band_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "sandwich") {
        SandwichBand b;
        b.m = j.at("m").get<double>();
        b.m_prime = j.at("m_prime").get<double>();
        b.M_prime = j.at("M_prime").get<double>();
        b.M = j.at("M").get<double>();
        const std::string o = j.at("orientation").get<std::string>();
        if (o == "a_upper")
            b.orientation = SandwichBand::Orientation::AUpper;
        else if (o == "b_upper")
            b.orientation = SandwichBand::Orientation::BUpper;
        else
            throw UsageError("band: unknown orientation " + o);
        b.validate();
        return b;
    }
    if (type == "polya") {
        PolyaBand b;
        b.m1_sq = j.at("m1_sq").get<double>();
        b.M1_sq = j.at("M1_sq").get<double>();
        b.m2_sq = j.at("m2_sq").get<double>();
        b.M2_sq = j.at("M2_sq").get<double>();
        const std::string g = j.at("gap_side").get<std::string>();
        if (g == "a_below_b")
            b.gap_side = PolyaBand::GapSide::ABelowB;
        else if (g == "b_below_a")
            b.gap_side = PolyaBand::GapSide::BBelowA;
        else
            throw UsageError("band: unknown gap_side " + g);
        b.validate();
        return b;
    }
    throw UsageError("band: unknown type " + type);
}

inline json instance_to_json(const Instance& inst) {
    return json{{"A", sym_to_json(inst.A.sym())},
                {"B", sym_to_json(inst.B.sym())},
                {"phi", map_to_json(inst.phi)},
                {"nu", inst.nu.nu},
                {"p", inst.p},
                {"band", band_to_json(inst.band)},
                {"seed", inst.seed},
                {"digest", inst.digest}};
}

inline Instance instance_from_json(const json& j) {
    Instance inst{PosDefMatrix(sym_from_json(j.at("A"))),
                  PosDefMatrix(sym_from_json(j.at("B"))),
                  map_from_json(j.at("phi")),
                  Weight(j.at("nu").get<double>()),
                  j.at("p").get<double>(),
                  band_from_json(j.at("band")),
                  j.value("seed", std::uint64_t{0}),
                  j.value("digest", std::string{})};
    inst.validate();
    return inst;
}

inline json check_to_json(const CheckResult& r) {
    json constants(r.constants);
    constants["scale"] = r.scale;
    constants["rel_tol"] = r.rel_tol;
    return json{{"theorem_id", r.theorem_id}, {"verdict", r.verdict},   {"margin", r.margin},
                {"constants", std::move(constants)}, {"instance_digest", r.instance_digest},
                {"seed", r.seed}};
}

inline json search_to_json(const SearchState& s) {
    json j{{"band", band_to_json(Band{s.band})},
           {"budget", s.budget},
           {"seed", s.seed},
           {"best_ratio", s.best_ratio},
           {"evaluations", s.evaluations},
           {"seed_lineage", s.seed_lineage},
           {"ratio_trace", s.ratio_trace},
           {"map_scope", "catalog"},
           {"violation", s.violation}};
    if (s.witness) j["witness_instance"] = instance_to_json(*s.witness);
    if (s.violation) {
        j["violation_ratio"] = s.violation_ratio;
        if (s.violation_witness) j["violation_witness"] = instance_to_json(*s.violation_witness);
    }
    return j;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

} // namespace opineq
