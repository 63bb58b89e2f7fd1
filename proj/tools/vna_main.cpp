#include "vna/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct CommonOptions {
    std::vector<int> dims;
    std::uint64_t seed = 0;
    int trials = 20;
    double eps = 1e-9;
    double rank_eps = 1e-9;
    std::string out_path;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--dims", opt.dims, "Block dimensions of the algebra, e.g. --dims 2,3,2")
        ->required()
        ->delimiter(',');
    cmd->add_option("--seed", opt.seed, "Master seed; every sample derives from it");
    cmd->add_option("--trials", opt.trials, "Trial count for sampled checks");
    cmd->add_option("--eps", opt.eps, "Entrywise comparison threshold");
    cmd->add_option("--rank-eps", opt.rank_eps, "Pivot threshold for rank computations");
    cmd->add_option("--out", opt.out_path, "Write the JSON report to this file");
    cmd->add_flag("--quiet", opt.quiet, "Suppress the human-readable summary on stderr");
}

vna::ExperimentConfig make_config(const CommonOptions& opt) {
    vna::ExperimentConfig config;
    config.dims = opt.dims;
    config.master_seed = opt.seed;
    config.trials = opt.trials;
    config.tol = vna::Tolerance(opt.eps, opt.rank_eps);
    return config;
}

int emit(const vna::CommandResult& result, const CommonOptions& opt) {
    const std::string text = result.report.dump(2) + "\n";
    if (opt.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(opt.out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open " << opt.out_path << " for writing\n";
            return 1;
        }
        file << text;
    }
    if (!opt.quiet)
        std::cerr << result.report.at("command").get<std::string>() << ": "
                  << (result.passed ? "pass" : "FAIL") << "\n";
    return result.passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolkit for projections, partial ideals, and invariant families in "
                 "finite-dimensional von Neumann algebras"};
    app.require_subcommand(1);

    CommonOptions theorem_opt;
    CLI::App* theorem = app.add_subcommand(
        "theorem", "Round-trip every central mask and refute every sampled non-central family");
    add_common(theorem, theorem_opt);

    CommonOptions cover_opt;
    std::vector<int> cover_ranks;
    CLI::App* cover =
        app.add_subcommand("cover", "Emit a validated covering certificate for a projection");
    add_common(cover, cover_opt);
    cover->add_option("--ranks", cover_ranks, "Per-block ranks of the projection, e.g. --ranks 1,2")
        ->required()
        ->delimiter(',');

    CommonOptions ideal_opt;
    std::vector<int> ideal_ranks;
    std::string side_name = "right";
    CLI::App* ideal = app.add_subcommand(
        "partial-ideal", "Check the partial ideal induced by a one-sided ideal pA or Ap");
    add_common(ideal, ideal_opt);
    ideal->add_option("--ranks", ideal_ranks, "Per-block ranks of p")->required()->delimiter(',');
    ideal->add_option("--side", side_name, "Ideal side: left or right")
        ->check(CLI::IsMember({"left", "right"}));

    CommonOptions witness_opt;
    std::vector<int> witness_ranks;
    CLI::App* witness = app.add_subcommand(
        "witness", "Construct an invariance violation witness for a non-central projection");
    add_common(witness, witness_opt);
    witness->add_option("--ranks", witness_ranks,
                        "Per-block ranks of p (omitted: sample a non-central projection)")
        ->delimiter(',');

    CommonOptions check_opt;
    CLI::App* check = app.add_subcommand("check", "Run the property battery at this scale");
    add_common(check, check_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage errors are exit 1, whatever CLI11 thinks
    }

    try {
        if (theorem->parsed()) return emit(vna::run_theorem(make_config(theorem_opt)), theorem_opt);
        if (cover->parsed())
            return emit(vna::run_cover(make_config(cover_opt), cover_ranks), cover_opt);
        if (ideal->parsed())
            return emit(vna::run_partial_ideal(
                            make_config(ideal_opt), ideal_ranks,
                            side_name == "left" ? vna::IdealSide::left : vna::IdealSide::right),
                        ideal_opt);
        if (witness->parsed()) {
            std::optional<vna::RankVector> ranks;
            if (!witness_ranks.empty()) ranks = witness_ranks;
            return emit(vna::run_witness(make_config(witness_opt), ranks), witness_opt);
        }
        if (check->parsed()) return emit(vna::run_check(make_config(check_opt)), check_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
