#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "gp/segment.hpp"
#include "gp/types.hpp"

namespace gp {

// Per-subject "initial gait" template: unperturbed steps resampled to a
// common length and averaged pointwise per channel.
struct ReferenceWaveform {
    std::size_t length = 0;
    std::array<std::vector<double>, kNumChannels> channels;
    std::size_t source_step_count = 0;
    double nominal_cycle_duration = 0.0;  // mean source step duration, s
};

// Linear interpolation at uniformly spaced fractional indices
// i*(n-1)/(L-1). Endpoints are preserved exactly; L == n reproduces the
// input. Throws DegenerateInput when n < 2 or L < 2.
std::vector<double> resample_linear(const std::vector<double>& series, std::size_t target_len);

// Auto target length: rounded median step sample count, clamped to >= 50.
std::size_t auto_target_length(const std::vector<StepWaveform>& steps);

// Resamples every channel of every step to target_len (auto when nullopt)
// and averages pointwise. Throws EmptyStepList.
ReferenceWaveform build_reference(const std::vector<StepWaveform>& steps,
                                  std::optional<std::size_t> target_len = std::nullopt);

// Reference as a Recording with a synthetic uniform time column over
// [0, nominal_cycle_duration], for CSV export.
Recording reference_as_recording(const ReferenceWaveform& ref);

}  // namespace gp
