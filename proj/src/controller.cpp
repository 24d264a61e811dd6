#include "gp/controller.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gp/csv.hpp"
#include "gp/errors.hpp"

namespace gp {

namespace {

void check_fraction(double fraction) {
    if (!(fraction >= 0.0) || !(fraction < 1.0)) {
        throw OutOfRange("cycle fraction " + csv::format_double(fraction) +
                         " outside [0, 1)");
    }
}

}  // namespace

GaitPhase classify_phase(double fraction) {
    check_fraction(fraction);
    if (fraction == 0.0) return GaitPhase::IC;
    if (fraction < 0.12) return GaitPhase::LR;
    if (fraction < 0.31) return GaitPhase::MSt;
    if (fraction < 0.50) return GaitPhase::TSt;
    if (fraction < 0.62) return GaitPhase::PSw;
    if (fraction < 0.75) return GaitPhase::ISw;
    if (fraction < 0.87) return GaitPhase::MSw;
    return GaitPhase::TSw;
}

PhaseBin classify_bin(double fraction) {
    check_fraction(fraction);
    if (fraction < 0.12) return PhaseBin::IC_LR;
    if (fraction < 0.50) return PhaseBin::MSt_TSt;
    if (fraction < 0.75) return PhaseBin::PSw_ISw;
    return PhaseBin::MSw_TSw;
}

PhaseBin bin_of_phase(GaitPhase phase) {
    switch (phase) {
        case GaitPhase::IC:
        case GaitPhase::LR:
            return PhaseBin::IC_LR;
        case GaitPhase::MSt:
        case GaitPhase::TSt:
            return PhaseBin::MSt_TSt;
        case GaitPhase::PSw:
        case GaitPhase::ISw:
            return PhaseBin::PSw_ISw;
        default:
            return PhaseBin::MSw_TSw;
    }
}

std::optional<CycleEstimate> estimate_cycle(const std::deque<double>& strike_times, double now,
                                            int window) {
    if (strike_times.size() < 2) return std::nullopt;
    const std::size_t intervals = strike_times.size() - 1;
    const std::size_t used = std::min<std::size_t>(intervals, static_cast<std::size_t>(window));
    double sum = 0.0;
    for (std::size_t k = strike_times.size() - used; k < strike_times.size(); ++k) {
        sum += strike_times[k] - strike_times[k - 1];
    }
    CycleEstimate est;
    est.duration = sum / static_cast<double>(used);
    const double raw = (now - strike_times.back()) / est.duration;
    est.fraction = std::clamp(raw, 0.0, std::nextafter(1.0, 0.0));
    return est;
}

Plan draw_plan(Rng& rng) {
    // 8 divides 2^64, so three raw bits are exactly uniform
    const std::uint64_t v = rng.bits() & 7;
    return {static_cast<PhaseBin>(v >> 1),
            (v & 1) ? Direction::backward : Direction::forward};
}

PerturbationController::PerturbationController(const ControllerConfig& cfg)
    : cfg_(cfg), rng_(cfg.rng_seed) {}

std::optional<PerturbationCommand> PerturbationController::tick(
    double now, std::optional<double> strike_t) {
    if (has_ticked_ && now < last_now_) {
        throw ClockRegression("controller clock moved backwards: " + csv::format_double(now) +
                              " after " + csv::format_double(last_now_));
    }
    last_now_ = now;
    has_ticked_ = true;

    if (state_ == ControllerState::FIRING && now >= fire_off_t_) {
        state_ = ControllerState::DONE;
    }

    if (strike_t) {
        strikes_.push_back(*strike_t);
        while (strikes_.size() > static_cast<std::size_t>(cfg_.cycle_window) + 1) {
            strikes_.pop_front();
        }
        ++cycle_index_;
        // one plan per cycle; rng consumption is unconditional so the
        // stream only depends on the strike count
        const bool fire = rng_.bernoulli(cfg_.fire_probability);
        const Plan plan = draw_plan(rng_);
        if (state_ != ControllerState::FIRING) {
            if (fire && strikes_.size() >= 2) {
                plan_ = plan;
                state_ = ControllerState::ARMED;
            } else {
                state_ = strikes_.size() >= 2 ? ControllerState::DONE : ControllerState::WARMUP;
            }
        }
        // a pulse still running from the previous cycle keeps the valve;
        // this cycle's plan is dropped and no command is emitted for it
    }

    if (state_ == ControllerState::ARMED) {
        const auto est = estimate_cycle(strikes_, now, cfg_.cycle_window);
        if (est && classify_bin(est->fraction) == plan_.bin) {
            PerturbationCommand cmd;
            cmd.direction = plan_.direction;
            cmd.onset_t = now;
            cmd.duration = cfg_.pulse_duration;
            fire_off_t_ = now + cfg_.pulse_duration;
            state_ = ControllerState::FIRING;
            log_.push_back({cmd, plan_.bin, cycle_index_, est->fraction});
            return cmd;
        }
    }
    return std::nullopt;
}

}  // namespace gp
