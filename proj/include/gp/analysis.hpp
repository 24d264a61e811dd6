#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gp/dtw.hpp"
#include "gp/reference.hpp"
#include "gp/segment.hpp"
#include "gp/session.hpp"
#include "gp/stats.hpp"

namespace gp::analysis {

enum class Task { pre, with_intervention, post };

inline const char* task_name(Task t) {
    switch (t) {
        case Task::pre: return "pre";
        case Task::with_intervention: return "with";
        default: return "post";
    }
}

enum class Aggregate { mean, median };
// Which task plays the "No Disturbance" role in the headline pairing
// against the intervention distances.
enum class Baseline { post, pre };

struct AnalysisOptions {
    SegmentationConfig segmentation{};
    dtw::DtwConfig dtw{};
    std::optional<std::size_t> resample_len;  // nullopt = auto
    Aggregate aggregate = Aggregate::mean;
    Baseline baseline = Baseline::post;
    std::optional<Channel> channel;  // restrict tables to one channel
};

struct DistanceRow {
    std::string subject;
    Task task = Task::pre;
    int pass = 1;   // 1-based within the task
    int step = 1;   // 1-based within the pass
    Channel channel = Channel::AccX;
    double distance = 0.0;
};

struct SubjectAnalysis {
    std::string subject_id;
    ReferenceWaveform reference;
    std::vector<DistanceRow> rows;
    // per-channel aggregates; empty optional when a task had no usable steps
    std::optional<std::array<double, kNumChannels>> baseline_aggregate;
    std::optional<std::array<double, kNumChannels>> disturbance_aggregate;
    std::vector<std::string> pass_notices;  // skipped passes, with reasons
};

struct ChannelTest {
    Channel channel = Channel::AccX;
    stats::WilcoxonResult result;
};

struct CohortReport {
    std::vector<SubjectAnalysis> subjects;
    std::vector<ChannelTest> wilcoxon;  // empty when the pairing was skipped
    std::vector<std::string> notices;   // skipped subjects / channels, with reasons
};

// Full single-subject pipeline: segment every task, build the reference
// from the pre task, score every step of every task against it.
SubjectAnalysis analyze_subject(const Session& session, const AnalysisOptions& opts);

// All subjects (parallel), then the per-channel paired tests between the
// baseline and disturbance aggregates. Per-subject failures become notices;
// the remaining subjects are still processed.
CohortReport analyze_cohort(const std::vector<Session>& sessions, const AnalysisOptions& opts);

std::vector<Channel> selected_channels(const AnalysisOptions& opts);

}  // namespace gp::analysis
