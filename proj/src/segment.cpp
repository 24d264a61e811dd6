#include "gp/segment.hpp"

#include <algorithm>
#include <string>

#include "gp/errors.hpp"

namespace gp {

std::vector<double> detect_heel_strikes(const Recording& rec, const SegmentationConfig& cfg) {
    const auto& samples = rec.samples;
    const std::size_t n = samples.size();
    if (n < 3 || rec.duration() <= cfg.min_step_duration) {
        throw NoStepsDetected("recording too short for step detection");
    }

    auto angy = [&](std::size_t i) { return samples[i].ang[1]; };

    // swing peaks: local maxima of AngY above the threshold
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (angy(i) > cfg.swing_peak_threshold && angy(i) > angy(i - 1) &&
            angy(i) >= angy(i + 1)) {
            peaks.push_back(i);
        }
    }

    // first descending zero-crossing after each peak; several peaks mapping
    // to one crossing collapse to a single strike
    std::vector<double> candidates;
    for (std::size_t p : peaks) {
        for (std::size_t j = p + 1; j < n; ++j) {
            if (angy(j - 1) > 0.0 && angy(j) <= 0.0) {
                const double t = samples[j].t;
                if (candidates.empty() || t > candidates.back()) candidates.push_back(t);
                break;
            }
        }
    }

    // enforce the minimum inter-strike spacing (keep-first)
    std::vector<double> spaced;
    for (double t : candidates) {
        if (spaced.empty() || t - spaced.back() >= cfg.min_step_duration) spaced.push_back(t);
    }

    // gaps longer than max_step_duration are artifacts; keep the longest
    // contiguous run so output intervals stay inside the band
    std::vector<double> best;
    std::size_t run_start = 0;
    for (std::size_t i = 1; i <= spaced.size(); ++i) {
        if (i == spaced.size() || spaced[i] - spaced[i - 1] > cfg.max_step_duration) {
            if (i - run_start > best.size()) {
                best.assign(spaced.begin() + static_cast<std::ptrdiff_t>(run_start),
                            spaced.begin() + static_cast<std::ptrdiff_t>(i));
            }
            run_start = i;
        }
    }

    if (best.size() < 2) {
        throw NoStepsDetected("fewer than 2 heel strikes detected (" +
                              std::to_string(best.size()) + ")");
    }
    return best;
}

std::vector<StepWaveform> split_steps(const Recording& rec, const std::vector<double>& strikes,
                                      const SegmentationConfig& cfg) {
    if (strikes.size() < 2) throw TooFewSteps("need at least 2 strikes to form a step");
    for (std::size_t i = 1; i < strikes.size(); ++i) {
        if (strikes[i] <= strikes[i - 1]) {
            throw TooFewSteps("strike times must be strictly increasing");
        }
    }

    const auto& samples = rec.samples;
    std::vector<StepWaveform> steps;
    steps.reserve(strikes.size() - 1);

    auto lower = [&](double t) {
        return std::lower_bound(samples.begin(), samples.end(), t,
                                [](const ImuSample& s, double v) { return s.t < v; });
    };

    for (std::size_t k = 0; k + 1 < strikes.size(); ++k) {
        StepWaveform step;
        step.start_t = strikes[k];
        step.end_t = strikes[k + 1];
        for (auto it = lower(strikes[k]); it != samples.end() && it->t < strikes[k + 1]; ++it) {
            step.times.push_back(it->t);
            for (Channel c : all_channels()) {
                step.channels[static_cast<int>(c)].push_back(channel_value(*it, c));
            }
        }
        steps.push_back(std::move(step));
    }

    const int trim = cfg.trim_steps;
    if (trim < 0 || steps.size() <= static_cast<std::size_t>(2 * trim)) {
        throw TooFewSteps("no steps remain after trimming " + std::to_string(trim) +
                          " from each end of " + std::to_string(steps.size()));
    }
    if (trim > 0) {
        steps.erase(steps.end() - trim, steps.end());
        steps.erase(steps.begin(), steps.begin() + trim);
    }
    return steps;
}

}  // namespace gp
