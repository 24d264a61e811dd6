#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gp {

// One timestamped 6-axis reading from the heel-mounted sensor.
// acc in m/s^2, ang in deg/s; t in seconds, strictly increasing within a
// recording.
struct ImuSample {
    double t = 0.0;
    std::array<double, 3> acc{};  // X, Y, Z
    std::array<double, 3> ang{};  // X, Y, Z
};

enum class Leg { left, right };

constexpr int kNumChannels = 6;

enum class Channel { AccX = 0, AccY, AccZ, AngX, AngY, AngZ };

inline const char* channel_name(Channel c) {
    static constexpr const char* names[kNumChannels] = {"AccX", "AccY", "AccZ",
                                                        "AngX", "AngY", "AngZ"};
    return names[static_cast<int>(c)];
}

std::optional<Channel> channel_from_name(const std::string& name);

inline double channel_value(const ImuSample& s, Channel c) {
    const int i = static_cast<int>(c);
    return i < 3 ? s.acc[i] : s.ang[i - 3];
}

inline double& channel_value(ImuSample& s, Channel c) {
    const int i = static_cast<int>(c);
    return i < 3 ? s.acc[i] : s.ang[i - 3];
}

inline std::array<Channel, kNumChannels> all_channels() {
    return {Channel::AccX, Channel::AccY, Channel::AccZ,
            Channel::AngX, Channel::AngY, Channel::AngZ};
}

// One continuous walking pass. sample_rate_hint is advisory metadata only;
// all timing math uses the explicit per-sample timestamps.
struct Recording {
    std::vector<ImuSample> samples;
    std::optional<double> sample_rate_hint;
    Leg leg = Leg::left;

    double duration() const {
        return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
    }
};

enum class Direction { forward, backward };

inline const char* direction_name(Direction d) {
    return d == Direction::forward ? "forward" : "backward";
}

std::optional<Direction> direction_from_name(const std::string& name);

// The four firing windows of the gait cycle, as fractions of the cycle:
// [0, 0.12), [0.12, 0.50), [0.50, 0.75), [0.75, 1.0).
enum class PhaseBin { IC_LR = 0, MSt_TSt, PSw_ISw, MSw_TSw };

inline const char* phase_bin_name(PhaseBin b) {
    static constexpr const char* names[4] = {"IC_LR", "MSt_TSt", "PSw_ISw", "MSw_TSw"};
    return names[static_cast<int>(b)];
}

std::optional<PhaseBin> phase_bin_from_name(const std::string& name);

// Valve actuation order. forward drives the front muscle pair, backward the
// rear pair; the valve is on for exactly [onset_t, onset_t + duration].
struct PerturbationCommand {
    Direction direction = Direction::forward;
    double onset_t = 0.0;
    double duration = 0.5;
};

// One command-log row: the command plus the controller context it fired in.
struct CommandRecord {
    PerturbationCommand command;
    PhaseBin bin = PhaseBin::IC_LR;
    std::int64_t cycle_index = 0;
    double fraction_at_onset = 0.0;
};

}  // namespace gp
