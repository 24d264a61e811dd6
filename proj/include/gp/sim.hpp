#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gp/controller.hpp"
#include "gp/rng.hpp"
#include "gp/segment.hpp"
#include "gp/session.hpp"
#include "gp/types.hpp"

namespace gp::sim {

struct Harmonic {
    int order = 1;
    double amplitude = 0.0;
    double phase = 0.0;  // radians
};

// Periodic per-channel template plus per-cycle timing jitter and additive
// Gaussian noise. AngY must keep a nonzero fundamental so strike detection
// has a signal to work with.
struct GaitProfile {
    double cycle_duration_mean = 1.1;     // s
    double cycle_duration_jitter = 0.02;  // fractional std-dev
    std::array<std::vector<Harmonic>, kNumChannels> harmonics;
    std::array<double, kNumChannels> noise_sigma{};
};

GaitProfile default_gait_profile();

// Additive damped-sinusoid transient injected after each valve command: a
// software stand-in for the boot-plus-wearer response, not a biomechanical
// model. direction: forward adds the transient, backward subtracts it.
struct ResponseModel {
    double latency = 0.05;    // s between valve-on and visible response
    double frequency = 3.0;   // Hz
    double decay = 0.15;      // s time constant
    std::array<double, kNumChannels> amplitude{0.0, 0.0, 0.0, 0.0, 40.0, 0.0};
};

struct GeneratedPass {
    Recording recording;
    std::vector<double> strikes;  // ground truth, n_cycles + 1 entries
};

// n_cycles jittered cycles of the harmonic template plus noise, sampled at
// `sample_rate`. The recording includes a partial lead-in/lead-out cycle so
// that the first and last ground-truth strikes are detectable events, not
// recording edges.
GeneratedPass generate_pass(const GaitProfile& profile, int n_cycles, Rng& rng,
                            double sample_rate);

// Pure closed-form template value at a cycle fraction (noise-free).
double template_value(const GaitProfile& profile, Channel channel, double fraction);

// Adds the direction-signed transient of each command, starting at
// onset_t + latency. Commands must lie inside the recording span
// (CommandOutOfRange). Untouched samples stay bit-identical; overlapping
// transients superpose.
Recording apply_response(const Recording& rec, const std::vector<PerturbationCommand>& commands,
                         const ResponseModel& model);

struct SessionSimConfig {
    int subjects = 10;
    int with_passes = 5;  // Table-layout: 1 pre / with_passes / 1 post
    int cycles_per_pass = 12;
    double sample_rate = 100.0;  // Hz

    // per-subject profile randomization ranges
    double cycle_duration_min = 0.95;
    double cycle_duration_max = 1.25;
    double amplitude_scale_min = 0.9;
    double amplitude_scale_max = 1.1;

    GaitProfile base_profile = default_gait_profile();
    SegmentationConfig segmentation{};  // the online strike detector's config
    ControllerConfig controller{};
    ResponseModel response{};
    std::uint64_t master_seed = 42;
};

// One subject end to end: clean pre pass, `with_passes` closed-loop
// intervention passes (generate -> detect strikes -> controller -> response
// injection), clean post pass. Deterministic in (cfg, subject_index).
Session run_session(const SessionSimConfig& cfg, int subject_index = 0);

// All subjects, simulated in parallel over independent sub-seeded streams.
std::vector<Session> run_cohort(const SessionSimConfig& cfg);

}  // namespace gp::sim
