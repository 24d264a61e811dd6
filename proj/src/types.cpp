#include "gp/types.hpp"

namespace gp {

std::optional<Channel> channel_from_name(const std::string& name) {
    for (Channel c : all_channels()) {
        if (name == channel_name(c)) return c;
    }
    return std::nullopt;
}

std::optional<Direction> direction_from_name(const std::string& name) {
    if (name == "forward") return Direction::forward;
    if (name == "backward") return Direction::backward;
    return std::nullopt;
}

std::optional<PhaseBin> phase_bin_from_name(const std::string& name) {
    for (int i = 0; i < 4; ++i) {
        const auto b = static_cast<PhaseBin>(i);
        if (name == phase_bin_name(b)) return b;
    }
    return std::nullopt;
}

}  // namespace gp
