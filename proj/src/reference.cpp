#include "gp/reference.hpp"

#include <algorithm>
#include <cmath>

#include "gp/errors.hpp"

namespace gp {

std::vector<double> resample_linear(const std::vector<double>& series, std::size_t target_len) {
    const std::size_t n = series.size();
    if (n < 2 || target_len < 2) {
        throw DegenerateInput("resample_linear requires n >= 2 and target length >= 2");
    }
    std::vector<double> out(target_len);
    const double scale = static_cast<double>(n - 1) / static_cast<double>(target_len - 1);
    for (std::size_t i = 1; i + 1 < target_len; ++i) {
        const double x = static_cast<double>(i) * scale;
        std::size_t k = static_cast<std::size_t>(x);
        if (k > n - 2) k = n - 2;
        const double frac = x - static_cast<double>(k);
        out[i] = series[k] + frac * (series[k + 1] - series[k]);
    }
    out[0] = series.front();
    out[target_len - 1] = series.back();
    return out;
}

std::size_t auto_target_length(const std::vector<StepWaveform>& steps) {
    if (steps.empty()) throw EmptyStepList("no steps to size the reference from");
    std::vector<std::size_t> lengths;
    lengths.reserve(steps.size());
    for (const auto& s : steps) lengths.push_back(s.length());
    std::sort(lengths.begin(), lengths.end());
    const std::size_t k = lengths.size();
    const double median = k % 2 == 1
                              ? static_cast<double>(lengths[k / 2])
                              : 0.5 * static_cast<double>(lengths[k / 2 - 1] + lengths[k / 2]);
    const auto rounded = static_cast<std::size_t>(std::llround(median));
    return std::max<std::size_t>(rounded, 50);
}

ReferenceWaveform build_reference(const std::vector<StepWaveform>& steps,
                                  std::optional<std::size_t> target_len) {
    if (steps.empty()) throw EmptyStepList("cannot build a reference from zero steps");
    const std::size_t len = target_len.value_or(auto_target_length(steps));

    ReferenceWaveform ref;
    ref.length = len;
    ref.source_step_count = steps.size();

    double total_duration = 0.0;
    for (int c = 0; c < kNumChannels; ++c) ref.channels[c].assign(len, 0.0);
    for (const StepWaveform& step : steps) {
        total_duration += step.duration();
        for (int c = 0; c < kNumChannels; ++c) {
            const std::vector<double> r = resample_linear(step.channels[c], len);
            for (std::size_t i = 0; i < len; ++i) ref.channels[c][i] += r[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(steps.size());
    for (int c = 0; c < kNumChannels; ++c) {
        for (double& v : ref.channels[c]) v *= inv;
    }
    ref.nominal_cycle_duration = total_duration * inv;
    return ref;
}

Recording reference_as_recording(const ReferenceWaveform& ref) {
    Recording rec;
    rec.samples.resize(ref.length);
    const double dt = ref.length > 1
                          ? ref.nominal_cycle_duration / static_cast<double>(ref.length - 1)
                          : 0.0;
    for (std::size_t i = 0; i < ref.length; ++i) {
        ImuSample& s = rec.samples[i];
        s.t = static_cast<double>(i) * dt;
        for (Channel c : all_channels()) {
            channel_value(s, c) = ref.channels[static_cast<int>(c)][i];
        }
    }
    return rec;
}

}  // namespace gp
