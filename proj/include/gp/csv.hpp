#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gp/types.hpp"

namespace gp::csv {

inline constexpr std::string_view kRecordingHeader =
    "t,acc_x,acc_y,acc_z,ang_x,ang_y,ang_z,units=si";
inline constexpr std::string_view kCommandHeader =
    "onset_t,duration,direction,bin,cycle_index,fraction_at_onset";

// Shortest decimal rendering that round-trips the exact double.
std::string format_double(double v);

// Strict full-string parse; throws MalformedRow-free std::invalid_argument-free:
// returns false on failure so callers can attach row context.
bool parse_double(std::string_view text, double& out);

// Reads a recording CSV (see kRecordingHeader). Rejects bad column counts,
// non-numeric fields, non-finite values and non-monotone timestamps.
Recording read_recording(const std::filesystem::path& path);

// Writes a recording; the result re-reads to a bit-identical Recording.
// Rejects recordings with fewer than 2 samples or non-positive duration.
void write_recording(const Recording& rec, const std::filesystem::path& path);

std::vector<CommandRecord> read_command_log(const std::filesystem::path& path);
void write_command_log(const std::vector<CommandRecord>& log,
                       const std::filesystem::path& path);

}  // namespace gp::csv
