// opineq — verify operator inequalities for positive linear maps on seeded
// random instances, reproduce the worked examples, and probe the sharpness
// of the gap-band constant.
//
// Subcommands:
//   repro      recompute the worked-example headline values
//   verify     run registered checkers over seeded random instances
//   fuzz       verify continuously with rotating seeds
//   sharpness  hill-climb the tightness ratio over a gap band
//   show       pretty-print an instance file (one JSON object per line)
//
// Exit codes: 0 all verdicts hold, 1 at least one inequality failed,
// 2 usage or configuration error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opineq/harness.hpp"

namespace {

using opineq::json;

struct OutputOptions {
    std::string out_path;
    std::string format = "ldo";
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--out", opts.out_path, "write the report to this file instead of stdout");
    cmd->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"ldo", "csv"}));
}

void emit(const opineq::Report& report, const OutputOptions& opts) {
    const std::string body = opts.format == "csv" ? report.to_csv() : report.to_ldo();
    if (opts.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(opts.out_path);
        if (!out) throw opineq::UsageError("cannot open output file: " + opts.out_path);
        out << body;
    }
}

struct VerifyFlags {
    std::optional<std::uint64_t> seed;
    std::optional<int> count;
    std::vector<int> dims;
    std::vector<std::string> theorems;
    std::optional<double> tolerance;
    std::string config_path;
    std::string corpus_out;
    std::string checks_out;
};

opineq::SuiteConfig build_suite_config(const VerifyFlags& flags, OutputOptions& opts) {
    opineq::SuiteConfig cfg;
    if (!flags.config_path.empty()) {
        const json j = opineq::load_json_file(flags.config_path);
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("count")) cfg.instance_count = j.at("count").get<int>();
        if (j.contains("dims")) cfg.dims = j.at("dims").get<std::vector<int>>();
        if (j.contains("theorems")) cfg.theorem_ids = j.at("theorems").get<std::vector<std::string>>();
        if (j.contains("tolerance")) cfg.rel_tol = j.at("tolerance").get<double>();
        if (j.contains("out") && opts.out_path.empty()) opts.out_path = j.at("out").get<std::string>();
        if (j.contains("format") && opts.format == "ldo") opts.format = j.at("format").get<std::string>();
    }
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.count) cfg.instance_count = *flags.count;
    if (!flags.dims.empty()) cfg.dims = flags.dims;
    if (!flags.theorems.empty()) cfg.theorem_ids = flags.theorems;
    if (flags.tolerance) cfg.rel_tol = *flags.tolerance;
    if (!flags.corpus_out.empty()) cfg.corpus_out = flags.corpus_out;
    if (!flags.checks_out.empty()) cfg.checks_out = flags.checks_out;
    cfg.validate();
    return cfg;
}

void print_summary(const opineq::Report& report, double wall_ms) {
    for (const opineq::TheoremSummary& t : report.theorems)
        std::cerr << "  " << t.theorem_id << ": " << t.pass << " pass, " << t.fail << " fail"
                  << " (min margin " << t.min_margin << ")\n";
    std::cerr << "  wall time: " << wall_ms << " ms\n";
}

int run_verify_once(const opineq::SuiteConfig& cfg, const OutputOptions& opts, bool quiet) {
    const auto t0 = std::chrono::steady_clock::now();
    const opineq::Report report = opineq::run_suite(cfg);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(report, opts);
    if (!quiet) print_summary(report, wall_ms);
    return report.all_pass() ? 0 : 1;
}

int cmd_show(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw opineq::UsageError("cannot open file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const json j = json::parse(line);
        if (j.contains("A") && j.contains("band")) {
            const opineq::Instance inst = opineq::instance_from_json(j);
            std::cout << "instance " << lineno << ": dim " << inst.A.dim() << ", phi "
                      << inst.phi.kind_name() << ", nu " << inst.nu.nu << ", p " << inst.p
                      << ", seed " << inst.seed << "\n  digest " << inst.digest << "\n  band "
                      << opineq::band_to_json(inst.band).dump() << "\n  A "
                      << opineq::sym_to_json(inst.A.sym()).dump() << "\n  B "
                      << opineq::sym_to_json(inst.B.sym()).dump() << "\n";
        } else {
            std::cout << j.dump(2) << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-inequality verification toolkit"};
    app.require_subcommand(1);

    // repro
    auto* repro = app.add_subcommand("repro", "reproduce the worked-example values");
    OutputOptions repro_out;
    add_output_flags(repro, repro_out);

    // verify / fuzz share flags
    VerifyFlags vf;
    OutputOptions verify_out;
    auto* verify = app.add_subcommand("verify", "run checkers over seeded random instances");
    auto add_verify_flags = [&](CLI::App* cmd) {
        cmd->add_option("--seed", vf.seed, "base RNG seed");
        cmd->add_option("--count", vf.count, "instances per checker");
        cmd->add_option("--dims", vf.dims, "matrix dimensions to cycle through")->delimiter(',');
        cmd->add_option("--theorems", vf.theorems, "checker ids (default: all)")->delimiter(',');
        cmd->add_option("--tolerance", vf.tolerance, "relative margin tolerance");
        cmd->add_option("--config", vf.config_path, "JSON config file; flags override");
        cmd->add_option("--corpus-out", vf.corpus_out, "dump generated instances here, one per line");
        cmd->add_option("--checks-out", vf.checks_out, "dump every check result here, one per line");
    };
    add_verify_flags(verify);
    add_output_flags(verify, verify_out);

    auto* fuzz = app.add_subcommand("fuzz", "continuous verify with rotating seeds");
    int fuzz_rounds = 10;
    add_verify_flags(fuzz);
    add_output_flags(fuzz, verify_out);
    fuzz->add_option("--rounds", fuzz_rounds, "number of seed rotations")->check(CLI::PositiveNumber);

    // sharpness
    auto* sharp = app.add_subcommand("sharpness", "search for near-tight gap-band instances");
    std::vector<double> band_vals;
    std::uint64_t sharp_budget = 10000;
    std::uint64_t sharp_seed = 1;
    int sharp_dim = 2;
    int sharp_restarts = 8;
    OutputOptions sharp_out;
    sharp->add_option("--band", band_vals, "m1_sq,M1_sq,m2_sq,M2_sq")->delimiter(',')->expected(4)->required();
    sharp->add_option("--budget", sharp_budget, "evaluation budget");
    sharp->add_option("--seed", sharp_seed, "RNG seed");
    sharp->add_option("--dim", sharp_dim, "matrix dimension");
    sharp->add_option("--restarts", sharp_restarts, "hill-climb restarts");
    add_output_flags(sharp, sharp_out);

    // show
    auto* show = app.add_subcommand("show", "pretty-print an instance or report file");
    std::string show_path;
    show->add_option("file", show_path, "file with one JSON object per line")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (repro->parsed()) {
            const opineq::Report report = opineq::run_repro();
            emit(report, repro_out);
            return report.all_pass() ? 0 : 1;
        }
        if (verify->parsed()) {
            const opineq::SuiteConfig cfg = build_suite_config(vf, verify_out);
            return run_verify_once(cfg, verify_out, false);
        }
        if (fuzz->parsed()) {
            opineq::SuiteConfig cfg = build_suite_config(vf, verify_out);
            const std::uint64_t base = cfg.seed;
            for (int round = 0; round < fuzz_rounds; ++round) {
                cfg.seed = base + static_cast<std::uint64_t>(round);
                std::cerr << "fuzz round " << (round + 1) << "/" << fuzz_rounds << " seed "
                          << cfg.seed << "\n";
                const int rc = run_verify_once(cfg, verify_out, true);
                if (rc != 0) return rc;
            }
            return 0;
        }
        if (sharp->parsed()) {
            if (sharp_budget < 1) throw opineq::UsageError("sharpness: budget must be >= 1");
            opineq::PolyaBand band;
            band.m1_sq = band_vals[0];
            band.M1_sq = band_vals[1];
            band.m2_sq = band_vals[2];
            band.M2_sq = band_vals[3];
            if (band.M1() < band.m2())
                band.gap_side = opineq::PolyaBand::GapSide::ABelowB;
            else if (band.M2() < band.m1())
                band.gap_side = opineq::PolyaBand::GapSide::BBelowA;
            else
                throw opineq::UsageError("sharpness: band has no strict gap on square roots");
            band.validate();
            opineq::SearchConfig cfg;
            cfg.dim = sharp_dim;
            cfg.restarts = sharp_restarts;
            const opineq::Report report = opineq::run_search(band, sharp_budget, sharp_seed, cfg);
            emit(report, sharp_out);
            return report.all_pass() ? 0 : 1;
        }
        if (show->parsed()) return cmd_show(show_path);
    } catch (const opineq::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const opineq::HypothesisViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
