#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gp/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gait-perturb: perturbation-training simulator and gait-waveform analysis"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "generate synthetic sessions on disk");
    std::string sim_config;
    std::string sim_out;
    std::uint64_t sim_seed = 0;
    bool sim_seed_set = false;
    simulate->add_option("--config", sim_config, "simulation config JSON");
    simulate->add_option("--out", sim_out, "output directory")->required();
    simulate->add_option("--seed", sim_seed, "override the config's master seed")
        ->each([&](const std::string&) { sim_seed_set = true; });

    // analyze
    auto* analyze = app.add_subcommand("analyze", "segment, score against the reference, test");
    gp::cli::AnalyzeArgs analyze_args;
    std::vector<std::string> analyze_dirs;
    std::string analyze_out;
    std::string analyze_channel;
    analyze->add_option("dirs", analyze_dirs, "session or cohort directories")->required();
    analyze->add_option("--out", analyze_out, "report output directory")->required();
    analyze->add_option("--channel", analyze_channel, "restrict to one channel (AccX..AngZ)");
    analyze->add_option("--aggregate", analyze_args.aggregate, "per-subject aggregate: mean|median");
    analyze->add_option("--dtw-cost", analyze_args.dtw_cost, "DTW local cost: abs|sq");
    analyze->add_option("--resample-len", analyze_args.resample_len, "reference length: auto|N");
    analyze->add_option("--baseline", analyze_args.baseline,
                        "task scored as the No-Disturbance condition: post|pre");
    analyze->add_option("--trim-steps", analyze_args.trim_steps,
                        "steps dropped at each end of every pass");

    // plot
    auto* plot = app.add_subcommand("plot", "render reference + intervention pass as SVG");
    gp::cli::PlotArgs plot_args;
    std::string plot_dir;
    std::string plot_out;
    plot->add_option("dir", plot_dir, "session or cohort directory")->required();
    plot->add_option("--subject", plot_args.subject, "subject id")->required();
    plot->add_option("--pass", plot_args.pass, "intervention pass (1-based)")->required();
    plot->add_option("--channel", plot_args.channel, "channel name (AccX..AngZ)")->required();
    plot->add_option("--out", plot_out, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : gp::cli::kExitUsage;
    }

    if (simulate->parsed()) {
        gp::cli::SimulateArgs args;
        if (!sim_config.empty()) args.config = sim_config;
        args.out_dir = sim_out;
        if (sim_seed_set) args.seed = sim_seed;
        return gp::cli::cmd_simulate(args);
    }
    if (analyze->parsed()) {
        for (const auto& d : analyze_dirs) analyze_args.session_dirs.emplace_back(d);
        analyze_args.out_dir = analyze_out;
        if (!analyze_channel.empty()) analyze_args.channel = analyze_channel;
        return gp::cli::cmd_analyze(analyze_args);
    }
    plot_args.session_dir = plot_dir;
    plot_args.out_file = plot_out;
    return gp::cli::cmd_plot(plot_args);
}
