#pragma once

#include <array>
#include <vector>

#include "gp/types.hpp"

namespace gp {

// One gait cycle cut out of a recording: the raw samples (no resampling)
// with timestamps in [start_t, end_t).
struct StepWaveform {
    double start_t = 0.0;
    double end_t = 0.0;
    std::vector<double> times;
    std::array<std::vector<double>, kNumChannels> channels;

    std::size_t length() const { return times.size(); }
    double duration() const { return end_t - start_t; }
};

struct SegmentationConfig {
    double swing_peak_threshold = 50.0;  // deg/s, on AngY
    double min_step_duration = 0.4;      // s
    double max_step_duration = 2.0;      // s
    int trim_steps = 1;                  // steps dropped at each end
};

// Heel-strike detection on sagittal angular velocity (AngY): find swing
// peaks above swing_peak_threshold, then take the first descending
// zero-crossing after each peak. Candidates closer than min_step_duration
// to the previous kept strike are dropped; of the remaining runs whose
// consecutive gaps stay within max_step_duration, the longest is returned,
// so consecutive output strikes always lie within the configured band.
// Throws NoStepsDetected when fewer than 2 strikes survive.
std::vector<double> detect_heel_strikes(const Recording& rec, const SegmentationConfig& cfg);

// Splits [strikes[i], strikes[i+1]) into StepWaveforms, then drops
// cfg.trim_steps from each end. Strikes must be strictly increasing and
// inside the recording span. Throws TooFewSteps when trimming leaves none.
std::vector<StepWaveform> split_steps(const Recording& rec, const std::vector<double>& strikes,
                                      const SegmentationConfig& cfg);

}  // namespace gp
