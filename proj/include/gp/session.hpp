#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gp/types.hpp"

namespace gp {

// One subject's full data set, organized by task. The canonical layout is
// 1 pre / 5 with-intervention / 1 post pass; other counts load fine but set
// task_count_warning. post may be absent when the manifest omits it, so a
// partially collected session can still be analyzed.
struct Session {
    std::string subject_id;
    Leg leg = Leg::left;
    Recording pre;
    std::vector<Recording> with_intervention;
    std::optional<Recording> post;
    // parallel to with_intervention; empty vectors where no log was listed
    std::vector<std::vector<CommandRecord>> command_logs;
    bool task_count_warning = false;
};

inline constexpr int kDefaultWithPassCount = 5;

// Loads a session manifest (JSON: subject_id, leg, pre, with[], post,
// optional commands[]). Relative paths resolve against the manifest's
// directory. A listed-but-unreadable file raises MissingFile naming the task;
// counts differing from the 1/5/1 default only set task_count_warning.
Session load_session(const std::filesystem::path& manifest_path);

// Writes manifest + all recordings + command logs under `dir`; the manifest
// path is returned and reloads to an equivalent Session.
std::filesystem::path save_session(const Session& session, const std::filesystem::path& dir);

}  // namespace gp
