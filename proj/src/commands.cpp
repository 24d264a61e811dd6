#include "gp/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gp/analysis.hpp"
#include "gp/csv.hpp"
#include "gp/errors.hpp"
#include "gp/svg.hpp"

namespace gp::cli {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& scope) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) {
            throw ConfigError("unknown config key \"" + (scope.empty() ? key : scope + "." + key) +
                              "\"");
        }
    }
}

double require_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key \"" + key + "\" must be a number");
    return v.get<double>();
}

std::pair<double, double> require_range(const json& v, const std::string& key) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError("config key \"" + key + "\" must be [lo, hi]");
    }
    const double lo = v[0].get<double>();
    const double hi = v[1].get<double>();
    if (!(lo <= hi)) throw ConfigError("config key \"" + key + "\": lo must be <= hi");
    return {lo, hi};
}

}  // namespace

sim::SessionSimConfig load_sim_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config root must be an object");

    reject_unknown_keys(cfg,
                        {"subjects", "with_passes", "cycles_per_pass", "sample_rate",
                         "master_seed", "cycle_duration_range", "cycle_jitter",
                         "amplitude_scale_range", "noise_sigma_acc", "noise_sigma_ang",
                         "fire_probability", "pulse_duration", "cycle_window", "response"},
                        "");

    sim::SessionSimConfig out;
    if (cfg.contains("subjects")) out.subjects = static_cast<int>(require_number(cfg["subjects"], "subjects"));
    if (cfg.contains("with_passes")) {
        out.with_passes = static_cast<int>(require_number(cfg["with_passes"], "with_passes"));
    }
    if (cfg.contains("cycles_per_pass")) {
        out.cycles_per_pass =
            static_cast<int>(require_number(cfg["cycles_per_pass"], "cycles_per_pass"));
    }
    if (cfg.contains("sample_rate")) out.sample_rate = require_number(cfg["sample_rate"], "sample_rate");
    if (cfg.contains("master_seed")) {
        if (!cfg["master_seed"].is_number_unsigned() && !cfg["master_seed"].is_number_integer()) {
            throw ConfigError("config key \"master_seed\" must be an integer");
        }
        out.master_seed = cfg["master_seed"].get<std::uint64_t>();
    }
    if (cfg.contains("cycle_duration_range")) {
        std::tie(out.cycle_duration_min, out.cycle_duration_max) =
            require_range(cfg["cycle_duration_range"], "cycle_duration_range");
    }
    if (cfg.contains("cycle_jitter")) {
        out.base_profile.cycle_duration_jitter = require_number(cfg["cycle_jitter"], "cycle_jitter");
    }
    if (cfg.contains("amplitude_scale_range")) {
        std::tie(out.amplitude_scale_min, out.amplitude_scale_max) =
            require_range(cfg["amplitude_scale_range"], "amplitude_scale_range");
    }
    if (cfg.contains("noise_sigma_acc")) {
        const double s = require_number(cfg["noise_sigma_acc"], "noise_sigma_acc");
        for (int c = 0; c < 3; ++c) out.base_profile.noise_sigma[c] = s;
    }
    if (cfg.contains("noise_sigma_ang")) {
        const double s = require_number(cfg["noise_sigma_ang"], "noise_sigma_ang");
        for (int c = 3; c < kNumChannels; ++c) out.base_profile.noise_sigma[c] = s;
    }
    if (cfg.contains("fire_probability")) {
        out.controller.fire_probability = require_number(cfg["fire_probability"], "fire_probability");
        if (out.controller.fire_probability < 0.0 || out.controller.fire_probability > 1.0) {
            throw ConfigError("config key \"fire_probability\" must be in [0, 1]");
        }
    }
    if (cfg.contains("pulse_duration")) {
        out.controller.pulse_duration = require_number(cfg["pulse_duration"], "pulse_duration");
        if (out.controller.pulse_duration <= 0.0) {
            throw ConfigError("config key \"pulse_duration\" must be > 0");
        }
    }
    if (cfg.contains("cycle_window")) {
        out.controller.cycle_window = static_cast<int>(require_number(cfg["cycle_window"], "cycle_window"));
        if (out.controller.cycle_window < 1) {
            throw ConfigError("config key \"cycle_window\" must be >= 1");
        }
    }
    if (cfg.contains("response")) {
        const json& r = cfg["response"];
        if (!r.is_object()) throw ConfigError("config key \"response\" must be an object");
        reject_unknown_keys(r, {"latency", "frequency", "decay", "amplitude"}, "response");
        if (r.contains("latency")) out.response.latency = require_number(r["latency"], "response.latency");
        if (r.contains("frequency")) {
            out.response.frequency = require_number(r["frequency"], "response.frequency");
        }
        if (r.contains("decay")) {
            out.response.decay = require_number(r["decay"], "response.decay");
            if (out.response.decay <= 0.0) throw ConfigError("config key \"response.decay\" must be > 0");
        }
        if (r.contains("amplitude")) {
            const json& a = r["amplitude"];
            if (!a.is_array() || a.size() != kNumChannels) {
                throw ConfigError("config key \"response.amplitude\" must be an array of 6 numbers");
            }
            for (int c = 0; c < kNumChannels; ++c) {
                out.response.amplitude[c] = require_number(a[c], "response.amplitude");
            }
        }
    }

    if (out.subjects < 1 || out.with_passes < 1 || out.cycles_per_pass < 1 ||
        out.sample_rate <= 0.0) {
        throw ConfigError("subjects, with_passes, cycles_per_pass must be >= 1 and sample_rate > 0");
    }
    return out;
}

int cmd_simulate(const SimulateArgs& args) {
    try {
        sim::SessionSimConfig cfg;
        if (args.config) cfg = load_sim_config(*args.config);
        if (args.seed) cfg.master_seed = *args.seed;

        const std::vector<Session> sessions = sim::run_cohort(cfg);
        std::filesystem::create_directories(args.out_dir);
        for (const Session& s : sessions) {
            save_session(s, args.out_dir / s.subject_id);
        }
        std::cout << "wrote " << sessions.size() << " session(s) to " << args.out_dir.string()
                  << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "simulate failed: " << e.what() << "\n";
        return kExitRuntime;
    }
}

namespace {

std::vector<std::filesystem::path> discover_manifests(
    const std::vector<std::filesystem::path>& dirs) {
    std::vector<std::filesystem::path> manifests;
    for (const auto& dir : dirs) {
        if (std::filesystem::exists(dir / "manifest.json")) {
            manifests.push_back(dir / "manifest.json");
            continue;
        }
        std::vector<std::filesystem::path> children;
        if (std::filesystem::is_directory(dir)) {
            for (const auto& entry : std::filesystem::directory_iterator(dir)) {
                if (entry.is_directory() && std::filesystem::exists(entry.path() / "manifest.json")) {
                    children.push_back(entry.path() / "manifest.json");
                }
            }
        }
        std::sort(children.begin(), children.end());
        manifests.insert(manifests.end(), children.begin(), children.end());
    }
    return manifests;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content) || !out.flush()) {
        throw IoFailure("failed to write " + path.string());
    }
}

analysis::AnalysisOptions options_from_args(const AnalyzeArgs& args) {
    analysis::AnalysisOptions opts;
    opts.segmentation.trim_steps = args.trim_steps;

    if (args.channel) {
        const auto c = channel_from_name(*args.channel);
        if (!c) throw ConfigError("unknown channel \"" + *args.channel + "\"");
        opts.channel = *c;
    }
    if (args.aggregate == "mean") {
        opts.aggregate = analysis::Aggregate::mean;
    } else if (args.aggregate == "median") {
        opts.aggregate = analysis::Aggregate::median;
    } else {
        throw ConfigError("aggregate must be mean or median, got \"" + args.aggregate + "\"");
    }
    if (args.dtw_cost == "abs") {
        opts.dtw.local_cost = dtw::LocalCost::abs_diff;
    } else if (args.dtw_cost == "sq") {
        opts.dtw.local_cost = dtw::LocalCost::squared_diff;
    } else {
        throw ConfigError("dtw-cost must be abs or sq, got \"" + args.dtw_cost + "\"");
    }
    if (args.resample_len != "auto") {
        double v = 0.0;
        if (!csv::parse_double(args.resample_len, v) || v < 2 ||
            v != std::floor(v)) {
            throw ConfigError("resample-len must be auto or an integer >= 2, got \"" +
                              args.resample_len + "\"");
        }
        opts.resample_len = static_cast<std::size_t>(v);
    }
    if (args.baseline == "post") {
        opts.baseline = analysis::Baseline::post;
    } else if (args.baseline == "pre") {
        opts.baseline = analysis::Baseline::pre;
    } else {
        throw ConfigError("baseline must be post or pre, got \"" + args.baseline + "\"");
    }
    return opts;
}

std::string distances_table(const analysis::CohortReport& report) {
    std::ostringstream out;
    out << "subject,task,pass,step,channel,distance\n";
    for (const auto& s : report.subjects) {
        for (const auto& row : s.rows) {
            out << row.subject << ',' << analysis::task_name(row.task) << ',' << row.pass << ','
                << row.step << ',' << channel_name(row.channel) << ','
                << csv::format_double(row.distance) << '\n';
        }
    }
    return out.str();
}

std::string wilcoxon_table(const analysis::CohortReport& report) {
    std::ostringstream out;
    out << "channel,n,statistic,p,method,sig05,sig01\n";
    for (const auto& t : report.wilcoxon) {
        out << channel_name(t.channel) << ',' << t.result.n_effective << ','
            << csv::format_double(t.result.statistic) << ','
            << csv::format_double(t.result.p_two_sided) << ','
            << stats::p_method_name(t.result.method) << ','
            << (t.result.sig_05 ? "true" : "false") << ','
            << (t.result.sig_01 ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace

int cmd_analyze(const AnalyzeArgs& args) {
    analysis::AnalysisOptions opts;
    try {
        opts = options_from_args(args);
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const auto manifests = discover_manifests(args.session_dirs);
        if (manifests.empty()) {
            std::cerr << "no session manifests found under the given director"
                      << (args.session_dirs.size() == 1 ? "y" : "ies") << "\n";
            return kExitRuntime;
        }

        std::vector<Session> sessions;
        std::vector<std::string> load_notices;
        for (const auto& m : manifests) {
            try {
                sessions.push_back(load_session(m));
            } catch (const Error& e) {
                load_notices.push_back("session " + m.string() + " skipped: " + e.what());
            }
        }
        std::sort(sessions.begin(), sessions.end(),
                  [](const Session& a, const Session& b) { return a.subject_id < b.subject_id; });

        analysis::CohortReport report = analysis::analyze_cohort(sessions, opts);
        report.notices.insert(report.notices.begin(), load_notices.begin(), load_notices.end());

        std::filesystem::create_directories(args.out_dir);
        write_text_file(args.out_dir / "distances.csv", distances_table(report));
        write_text_file(args.out_dir / "wilcoxon.csv", wilcoxon_table(report));
        for (const auto& s : report.subjects) {
            csv::write_recording(reference_as_recording(s.reference),
                                 args.out_dir / ("reference_" + s.subject_id + ".csv"));
        }
        std::string notices;
        for (const auto& n : report.notices) notices += n + "\n";
        write_text_file(args.out_dir / "notices.txt", notices);

        std::cout << wilcoxon_table(report);
        for (const auto& n : report.notices) std::cerr << "notice: " << n << "\n";
        if (report.subjects.empty()) {
            std::cerr << "no subject could be analyzed\n";
            return kExitRuntime;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "analyze failed: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_plot(const PlotArgs& args) {
    const auto channel = channel_from_name(args.channel);
    if (!channel) {
        std::cerr << "usage error: unknown channel \"" << args.channel << "\"\n";
        return kExitUsage;
    }

    try {
        const auto manifests = discover_manifests({args.session_dir});
        std::optional<Session> session;
        for (const auto& m : manifests) {
            Session s = load_session(m);
            if (s.subject_id == args.subject) {
                session = std::move(s);
                break;
            }
        }
        if (!session) {
            std::cerr << "unknown subject \"" << args.subject << "\" under "
                      << args.session_dir.string() << "\n";
            return kExitRuntime;
        }
        if (args.pass < 1 ||
            static_cast<std::size_t>(args.pass) > session->with_intervention.size()) {
            std::cerr << "unknown intervention pass " << args.pass << " (session has "
                      << session->with_intervention.size() << ")\n";
            return kExitRuntime;
        }

        analysis::AnalysisOptions opts;
        const auto pre_strikes = detect_heel_strikes(session->pre, opts.segmentation);
        const auto pre_steps = split_steps(session->pre, pre_strikes, opts.segmentation);
        const ReferenceWaveform ref = build_reference(pre_steps);

        svg::Panel ref_panel;
        ref_panel.title = session->subject_id + "  reference (initial gait), " + args.channel;
        ref_panel.x_label = "time within cycle [s]";
        ref_panel.y_label = args.channel;
        {
            svg::Series s;
            const Recording r = reference_as_recording(ref);
            for (const ImuSample& smp : r.samples) {
                s.x.push_back(smp.t);
                s.y.push_back(channel_value(smp, *channel));
            }
            s.color = "#1f77b4";
            ref_panel.series.push_back(std::move(s));
        }

        svg::Panel pass_panel;
        pass_panel.title = session->subject_id + "  intervention pass " +
                           std::to_string(args.pass) + ", " + args.channel;
        pass_panel.x_label = "time [s]";
        pass_panel.y_label = args.channel;
        {
            svg::Series s;
            const Recording& rec = session->with_intervention[static_cast<std::size_t>(args.pass - 1)];
            for (const ImuSample& smp : rec.samples) {
                s.x.push_back(smp.t);
                s.y.push_back(channel_value(smp, *channel));
            }
            s.color = "#2ca02c";
            pass_panel.series.push_back(std::move(s));
        }
        const auto& logs = session->command_logs;
        if (static_cast<std::size_t>(args.pass) <= logs.size()) {
            for (const CommandRecord& r : logs[static_cast<std::size_t>(args.pass - 1)]) {
                pass_panel.markers.push_back(
                    {r.command.onset_t,
                     std::string(direction_name(r.command.direction)).substr(0, 1) + "/" +
                         phase_bin_name(r.bin),
                     "#d62728"});
            }
        }

        write_text_file(args.out_file, svg::render({ref_panel, pass_panel}));
        std::cout << "wrote " << args.out_file.string() << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "plot failed: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace gp::cli
