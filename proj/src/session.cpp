#include "gp/session.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "gp/csv.hpp"
#include "gp/errors.hpp"

namespace gp {

namespace {

using nlohmann::json;

Recording load_task_file(const std::filesystem::path& base, const std::string& rel,
                         const std::string& task, Leg leg) {
    const std::filesystem::path p = base / rel;
    if (!std::filesystem::exists(p)) {
        throw MissingFile("task \"" + task + "\": missing file " + p.string());
    }
    Recording rec = csv::read_recording(p);
    rec.leg = leg;
    return rec;
}

}  // namespace

Session load_session(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw MissingFile("cannot open manifest: " + manifest_path.string());

    json m;
    try {
        in >> m;
    } catch (const json::exception& e) {
        throw MalformedRow(0, "bad manifest " + manifest_path.string() + ": " + e.what());
    }
    const std::filesystem::path base = manifest_path.parent_path();

    Session s;
    if (!m.contains("subject_id") || !m["subject_id"].is_string()) {
        throw MalformedRow(0, "manifest " + manifest_path.string() + " lacks subject_id");
    }
    s.subject_id = m["subject_id"].get<std::string>();
    const std::string leg = m.value("leg", "left");
    if (leg != "left" && leg != "right") {
        throw MalformedRow(0, "manifest " + manifest_path.string() + ": bad leg \"" + leg + "\"");
    }
    s.leg = leg == "left" ? Leg::left : Leg::right;

    if (!m.contains("pre")) {
        throw MissingFile("task \"pre\": not listed in manifest " + manifest_path.string());
    }
    s.pre = load_task_file(base, m["pre"].get<std::string>(), "pre", s.leg);

    if (m.contains("with")) {
        for (const auto& entry : m["with"]) {
            s.with_intervention.push_back(
                load_task_file(base, entry.get<std::string>(), "with", s.leg));
        }
    }
    s.command_logs.resize(s.with_intervention.size());
    if (m.contains("commands")) {
        const auto& cmds = m["commands"];
        if (cmds.size() > s.with_intervention.size()) {
            throw MalformedRow(0, "manifest " + manifest_path.string() +
                                      ": more command logs than intervention recordings");
        }
        for (std::size_t i = 0; i < cmds.size(); ++i) {
            if (cmds[i].is_null()) continue;
            const std::filesystem::path p = base / cmds[i].get<std::string>();
            if (!std::filesystem::exists(p)) {
                throw MissingFile("task \"commands\": missing file " + p.string());
            }
            s.command_logs[i] = csv::read_command_log(p);
        }
    }

    if (m.contains("post")) {
        s.post = load_task_file(base, m["post"].get<std::string>(), "post", s.leg);
    }

    s.task_count_warning =
        s.with_intervention.size() != kDefaultWithPassCount || !s.post.has_value();
    return s;
}

std::filesystem::path save_session(const Session& session, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    json m;
    m["subject_id"] = session.subject_id;
    m["leg"] = session.leg == Leg::left ? "left" : "right";

    csv::write_recording(session.pre, dir / "pre.csv");
    m["pre"] = "pre.csv";

    json with = json::array();
    json commands = json::array();
    for (std::size_t i = 0; i < session.with_intervention.size(); ++i) {
        const std::string rec_name = "with_" + std::to_string(i + 1) + ".csv";
        const std::string cmd_name = "commands_" + std::to_string(i + 1) + ".csv";
        csv::write_recording(session.with_intervention[i], dir / rec_name);
        with.push_back(rec_name);
        const auto& log =
            i < session.command_logs.size() ? session.command_logs[i] : std::vector<CommandRecord>{};
        csv::write_command_log(log, dir / cmd_name);
        commands.push_back(cmd_name);
    }
    if (!with.empty()) {
        m["with"] = with;
        m["commands"] = commands;
    }
    if (session.post) {
        csv::write_recording(*session.post, dir / "post.csv");
        m["post"] = "post.csv";
    }

    const std::filesystem::path manifest = dir / "manifest.json";
    std::ofstream out(manifest, std::ios::binary | std::ios::trunc);
    if (!out || !(out << m.dump(2) << '\n') || !out.flush()) {
        throw IoFailure("failed to write manifest " + manifest.string());
    }
    return manifest;
}

}  // namespace gp
