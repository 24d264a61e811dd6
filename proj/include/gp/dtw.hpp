#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gp/reference.hpp"
#include "gp/segment.hpp"
#include "gp/types.hpp"

namespace gp::dtw {

enum class LocalCost { abs_diff, squared_diff };
enum class Normalize { none, path_length };

struct DtwConfig {
    LocalCost local_cost = LocalCost::abs_diff;
    // Sakoe-Chiba band half-width in samples; must be >= |len(a) - len(b)|
    std::optional<int> window;
    Normalize normalize = Normalize::none;
};

struct DtwResult {
    double distance = 0.0;
    // (i, j) index pairs from (0,0) to (n-1,m-1); moves are (+1,0), (0,+1), (+1,+1)
    std::vector<std::pair<int, int>> path;
};

// Minimum summed local cost over all monotone boundary-respecting warping
// paths, with the achieving path (full DP matrix). Under normalize ==
// path_length the distance is divided by the number of path nodes.
// Throws EmptySeries / InfeasibleWindow.
DtwResult dtw_distance(std::span<const double> a, std::span<const double> b,
                       const DtwConfig& cfg = {});

// Distance-only kernel (two DP rows, no path); normalize must be `none`.
double dtw_cost(std::span<const double> a, std::span<const double> b, const DtwConfig& cfg = {});

// One DTW distance per step on the selected channel, against the reference.
// Steps are not resampled first; DTW absorbs the length mismatch. The
// default entry point runs the steps in parallel; the _serial variant is the
// reference implementation and produces bit-identical results.
std::vector<double> step_distances(const std::vector<StepWaveform>& steps,
                                   const ReferenceWaveform& ref, Channel channel,
                                   const DtwConfig& cfg = {});
std::vector<double> step_distances_serial(const std::vector<StepWaveform>& steps,
                                          const ReferenceWaveform& ref, Channel channel,
                                          const DtwConfig& cfg = {});

}  // namespace gp::dtw
