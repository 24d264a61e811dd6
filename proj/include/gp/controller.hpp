#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "gp/rng.hpp"
#include "gp/types.hpp"

namespace gp {

// The standard 8-phase decomposition of one gait cycle. IC is the
// zero-measure start instant; each later phase owns a half-open fraction
// interval.
enum class GaitPhase { IC = 0, LR, MSt, TSt, PSw, ISw, MSw, TSw };

inline const char* gait_phase_name(GaitPhase p) {
    static constexpr const char* names[8] = {"IC", "LR", "MSt", "TSt", "PSw", "ISw", "MSw", "TSw"};
    return names[static_cast<int>(p)];
}

// fraction in [0,1): IC at exactly 0, then LR (0,0.12), MSt [0.12,0.31),
// TSt [0.31,0.50), PSw [0.50,0.62), ISw [0.62,0.75), MSw [0.75,0.87),
// TSw [0.87,1.0). Throws OutOfRange outside [0,1).
GaitPhase classify_phase(double fraction);

// The four firing bins partition [0,1): [0,0.12) [0.12,0.50) [0.50,0.75)
// [0.75,1.0). classify_bin(f) always equals the bin of classify_phase(f).
PhaseBin classify_bin(double fraction);
PhaseBin bin_of_phase(GaitPhase phase);

struct CycleEstimate {
    double fraction = 0.0;  // in [0, 1)
    double duration = 0.0;  // s
};

// Trailing-mean cadence estimate over the last `window` inter-strike
// intervals; fraction of the current cycle clamped below 1 so a slow step
// cannot wrap into the next cycle's first bin. nullopt while fewer than
// 2 strikes have been seen (warm-up).
std::optional<CycleEstimate> estimate_cycle(const std::deque<double>& strike_times, double now,
                                            int window);

struct Plan {
    PhaseBin bin = PhaseBin::IC_LR;
    Direction direction = Direction::forward;
};

// Uniform over the 4 x 2 (bin, direction) combinations; reproducible under
// a fixed seed.
Plan draw_plan(Rng& rng);

struct ControllerConfig {
    double pulse_duration = 0.5;   // s
    int cycle_window = 3;          // strike intervals in the cadence estimate
    double fire_probability = 1.0; // per-cycle probability of arming
    std::uint64_t rng_seed = 1;
};

enum class ControllerState { WARMUP, ARMED, FIRING, DONE };

// Single-owner perturbation state machine: feed it the clock (and heel
// strikes as they happen) in timestamp order; it emits at most one 0.5 s
// valve command per gait cycle, in a bin and direction drawn per cycle.
class PerturbationController {
public:
    explicit PerturbationController(const ControllerConfig& cfg);

    // Advance to `now`, delivering an optional heel-strike event (the
    // strike's own timestamp, <= now). Returns a command at the tick where
    // the estimated fraction first enters the armed bin. Throws
    // ClockRegression when now decreases.
    std::optional<PerturbationCommand> tick(double now, std::optional<double> strike_t);

    ControllerState state() const { return state_; }
    std::int64_t cycle_index() const { return cycle_index_; }
    const std::vector<CommandRecord>& log() const { return log_; }

private:
    ControllerConfig cfg_;
    Rng rng_;
    ControllerState state_ = ControllerState::WARMUP;
    std::deque<double> strikes_;
    std::int64_t cycle_index_ = -1;  // becomes 0 at the first strike
    Plan plan_{};
    double fire_off_t_ = 0.0;
    double last_now_ = 0.0;
    bool has_ticked_ = false;
    std::vector<CommandRecord> log_;
};

}  // namespace gp
