#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gp/sim.hpp"

namespace gp::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Parses a simulation config file (JSON). Unknown keys are rejected by
// name; omitted keys keep their defaults. Throws ConfigError.
sim::SessionSimConfig load_sim_config(const std::filesystem::path& path);

struct SimulateArgs {
    std::optional<std::filesystem::path> config;
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed;  // overrides the config's master_seed
};

struct AnalyzeArgs {
    std::vector<std::filesystem::path> session_dirs;
    std::filesystem::path out_dir;
    std::optional<std::string> channel;
    std::string aggregate = "mean";    // mean | median
    std::string dtw_cost = "abs";      // abs | sq
    std::string resample_len = "auto"; // auto | <N>
    std::string baseline = "post";     // post | pre
    int trim_steps = 1;
};

struct PlotArgs {
    std::filesystem::path session_dir;
    std::string subject;
    int pass = 1;  // 1-based intervention pass
    std::string channel;
    std::filesystem::path out_file;
};

int cmd_simulate(const SimulateArgs& args);
int cmd_analyze(const AnalyzeArgs& args);
int cmd_plot(const PlotArgs& args);

}  // namespace gp::cli
