#include "gp/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "gp/errors.hpp"

namespace gp::analysis {

namespace {

double aggregate_values(std::vector<double> values, Aggregate how) {
    if (values.empty()) return 0.0;
    if (how == Aggregate::mean) {
        double sum = 0.0;
        for (double v : values) sum += v;
        return sum / static_cast<double>(values.size());
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

struct TaskPass {
    Task task;
    int pass;  // 1-based within task
    const Recording* recording;
};

std::vector<TaskPass> session_passes(const Session& session) {
    std::vector<TaskPass> passes;
    passes.push_back({Task::pre, 1, &session.pre});
    for (std::size_t i = 0; i < session.with_intervention.size(); ++i) {
        passes.push_back({Task::with_intervention, static_cast<int>(i) + 1,
                          &session.with_intervention[i]});
    }
    if (session.post) passes.push_back({Task::post, 1, &*session.post});
    return passes;
}

}  // namespace

std::vector<Channel> selected_channels(const AnalysisOptions& opts) {
    if (opts.channel) return {*opts.channel};
    const auto all = all_channels();
    return {all.begin(), all.end()};
}

SubjectAnalysis analyze_subject(const Session& session, const AnalysisOptions& opts) {
    SubjectAnalysis out;
    out.subject_id = session.subject_id;

    const std::vector<double> pre_strikes = detect_heel_strikes(session.pre, opts.segmentation);
    const std::vector<StepWaveform> pre_steps =
        split_steps(session.pre, pre_strikes, opts.segmentation);
    out.reference = build_reference(pre_steps, opts.resample_len);

    const std::vector<Channel> channels = selected_channels(opts);
    const Task baseline_task = opts.baseline == Baseline::post ? Task::post : Task::pre;

    std::array<std::vector<double>, kNumChannels> baseline_values;
    std::array<std::vector<double>, kNumChannels> disturbance_values;
    bool saw_baseline_task = false;

    for (const TaskPass& tp : session_passes(session)) {
        try {
            std::vector<StepWaveform> steps;
            if (tp.task == Task::pre) {
                steps = pre_steps;
            } else {
                const std::vector<double> strikes =
                    detect_heel_strikes(*tp.recording, opts.segmentation);
                steps = split_steps(*tp.recording, strikes, opts.segmentation);
            }
            if (tp.task == baseline_task) saw_baseline_task = true;
            for (Channel c : channels) {
                const std::vector<double> distances =
                    dtw::step_distances(steps, out.reference, c, opts.dtw);
                const int ci = static_cast<int>(c);
                for (std::size_t s = 0; s < distances.size(); ++s) {
                    out.rows.push_back({out.subject_id, tp.task, tp.pass,
                                        static_cast<int>(s) + 1, c, distances[s]});
                    if (tp.task == baseline_task) baseline_values[ci].push_back(distances[s]);
                    if (tp.task == Task::with_intervention) {
                        disturbance_values[ci].push_back(distances[s]);
                    }
                }
            }
        } catch (const Error& e) {
            out.pass_notices.push_back("subject " + out.subject_id + " task " +
                                       task_name(tp.task) + " pass " + std::to_string(tp.pass) +
                                       " skipped: " + e.what());
        }
    }

    if (saw_baseline_task && !baseline_values[static_cast<int>(channels.front())].empty()) {
        std::array<double, kNumChannels> agg{};
        for (Channel c : channels) {
            agg[static_cast<int>(c)] =
                aggregate_values(baseline_values[static_cast<int>(c)], opts.aggregate);
        }
        out.baseline_aggregate = agg;
    }
    if (!disturbance_values[static_cast<int>(channels.front())].empty()) {
        std::array<double, kNumChannels> agg{};
        for (Channel c : channels) {
            agg[static_cast<int>(c)] =
                aggregate_values(disturbance_values[static_cast<int>(c)], opts.aggregate);
        }
        out.disturbance_aggregate = agg;
    }
    return out;
}

CohortReport analyze_cohort(const std::vector<Session>& sessions, const AnalysisOptions& opts) {
    CohortReport report;
    const auto n = static_cast<std::ptrdiff_t>(sessions.size());
    std::vector<std::optional<SubjectAnalysis>> results(sessions.size());
    std::vector<std::string> failures(sessions.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            results[static_cast<std::size_t>(i)] =
                analyze_subject(sessions[static_cast<std::size_t>(i)], opts);
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(i)] = e.what();
        }
    }

    for (std::size_t i = 0; i < sessions.size(); ++i) {
        if (results[i]) {
            report.subjects.push_back(std::move(*results[i]));
        } else {
            report.notices.push_back("subject " + sessions[i].subject_id +
                                     " skipped: " + failures[i]);
        }
    }
    for (const SubjectAnalysis& s : report.subjects) {
        report.notices.insert(report.notices.end(), s.pass_notices.begin(),
                              s.pass_notices.end());
    }
    std::sort(report.subjects.begin(), report.subjects.end(),
              [](const SubjectAnalysis& a, const SubjectAnalysis& b) {
                  return a.subject_id < b.subject_id;
              });

    // paired per-channel tests over subjects that have both conditions
    stats::ConditionValues baseline;
    stats::ConditionValues disturbance;
    for (const SubjectAnalysis& s : report.subjects) {
        if (s.baseline_aggregate && s.disturbance_aggregate) {
            baseline[s.subject_id] = *s.baseline_aggregate;
            disturbance[s.subject_id] = *s.disturbance_aggregate;
        } else {
            report.notices.push_back(
                "subject " + s.subject_id + " excluded from the paired test: missing " +
                std::string(s.baseline_aggregate ? "disturbance" : "baseline") + " condition");
        }
    }

    if (baseline.empty()) {
        report.notices.push_back(
            "wilcoxon skipped: no subject has both conditions (baseline = " +
            std::string(opts.baseline == Baseline::post ? "post" : "pre") + " task)");
        return report;
    }
    for (Channel c : selected_channels(opts)) {
        std::vector<double> a;
        std::vector<double> b;
        for (const auto& [subject, values] : disturbance) {
            a.push_back(values[static_cast<std::size_t>(static_cast<int>(c))]);
            b.push_back(baseline.at(subject)[static_cast<std::size_t>(static_cast<int>(c))]);
        }
        try {
            report.wilcoxon.push_back({c, stats::wilcoxon_signed_rank(a, b)});
        } catch (const AllZeroDifferences&) {
            report.notices.push_back(std::string("wilcoxon skipped on ") + channel_name(c) +
                                     ": all paired differences are zero");
        }
    }
    return report;
}

}  // namespace gp::analysis
