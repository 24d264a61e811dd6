#include "gp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "gp/csv.hpp"
#include "gp/errors.hpp"

namespace gp::sim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// partial phantom cycles around the pass so edge strikes are detectable
constexpr double kLeadInCycles = 0.5;
constexpr double kLeadOutCycles = 0.3;

}  // namespace

GaitProfile default_gait_profile() {
    GaitProfile p;
    p.cycle_duration_mean = 1.1;
    p.cycle_duration_jitter = 0.02;
    // AngY: swing peak at 75% of the cycle, descending zero-crossing exactly
    // at the cycle boundary; the second harmonic keeps that crossing fixed
    // (both terms vanish at fraction 0) while shaping the stance trough.
    p.harmonics[static_cast<int>(Channel::AngY)] = {{1, 120.0, std::numbers::pi},
                                                    {2, 30.0, 0.0}};
    p.harmonics[static_cast<int>(Channel::AccX)] = {{1, 1.2, 0.3}, {2, 0.6, 1.1}};
    p.harmonics[static_cast<int>(Channel::AccY)] = {{1, 2.0, -0.7}, {3, 0.5, 0.4}};
    p.harmonics[static_cast<int>(Channel::AccZ)] = {{1, 3.0, 1.9}, {2, 1.0, -1.2}};
    p.harmonics[static_cast<int>(Channel::AngX)] = {{1, 25.0, 0.9}, {2, 8.0, -0.5}};
    p.harmonics[static_cast<int>(Channel::AngZ)] = {{1, 40.0, 0.8}, {3, 10.0, -0.9}};
    p.noise_sigma = {0.1, 0.1, 0.1, 2.0, 2.0, 2.0};
    return p;
}

double template_value(const GaitProfile& profile, Channel channel, double fraction) {
    double v = 0.0;
    for (const Harmonic& h : profile.harmonics[static_cast<int>(channel)]) {
        v += h.amplitude * std::sin(kTwoPi * h.order * fraction + h.phase);
    }
    return v;
}

GeneratedPass generate_pass(const GaitProfile& profile, int n_cycles, Rng& rng,
                            double sample_rate) {
    if (n_cycles < 1) throw Error("generate_pass needs at least one cycle");
    if (sample_rate <= 0.0) throw Error("sample rate must be positive");
    const double mean = profile.cycle_duration_mean;
    if (mean <= 0.0) throw Error("cycle duration must be positive");

    std::vector<double> durations(static_cast<std::size_t>(n_cycles), mean);
    if (profile.cycle_duration_jitter > 0.0) {
        for (double& d : durations) {
            d = mean * (1.0 + profile.cycle_duration_jitter * rng.normal());
            d = std::clamp(d, 0.5 * mean, 1.5 * mean);
        }
    }

    GeneratedPass pass;
    pass.strikes.resize(static_cast<std::size_t>(n_cycles) + 1);
    pass.strikes[0] = kLeadInCycles * mean;
    for (int k = 0; k < n_cycles; ++k) {
        pass.strikes[static_cast<std::size_t>(k) + 1] =
            pass.strikes[static_cast<std::size_t>(k)] + durations[static_cast<std::size_t>(k)];
    }
    const double total = pass.strikes.back() + kLeadOutCycles * mean;

    // fraction of the (possibly phantom) cycle containing t
    auto fraction_at = [&](double t) {
        if (t < pass.strikes.front()) return 1.0 - (pass.strikes.front() - t) / mean;
        if (t >= pass.strikes.back()) return (t - pass.strikes.back()) / mean;
        const auto it = std::upper_bound(pass.strikes.begin(), pass.strikes.end(), t);
        const std::size_t k = static_cast<std::size_t>(it - pass.strikes.begin()) - 1;
        return (t - pass.strikes[k]) / durations[k];
    };

    const double dt = 1.0 / sample_rate;
    const auto n_samples = static_cast<std::size_t>(std::floor(total / dt)) + 1;
    pass.recording.sample_rate_hint = sample_rate;
    pass.recording.samples.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        ImuSample& s = pass.recording.samples[i];
        s.t = static_cast<double>(i) * dt;
        const double f = fraction_at(s.t);
        for (Channel c : all_channels()) {
            channel_value(s, c) = template_value(profile, c, f);
        }
    }
    for (Channel c : all_channels()) {
        const double sigma = profile.noise_sigma[static_cast<int>(c)];
        if (sigma <= 0.0) continue;
        for (ImuSample& s : pass.recording.samples) {
            channel_value(s, c) += sigma * rng.normal();
        }
    }
    return pass;
}

Recording apply_response(const Recording& rec, const std::vector<PerturbationCommand>& commands,
                         const ResponseModel& model) {
    if (rec.samples.empty()) throw Error("apply_response on an empty recording");
    const double t0 = rec.samples.front().t;
    const double t1 = rec.samples.back().t;
    for (const PerturbationCommand& cmd : commands) {
        if (cmd.onset_t < t0 || cmd.onset_t > t1) {
            throw CommandOutOfRange("command onset " + csv::format_double(cmd.onset_t) +
                                    " outside recording span [" + csv::format_double(t0) + ", " +
                                    csv::format_double(t1) + "]");
        }
    }

    Recording out = rec;
    const double support = 10.0 * model.decay;  // transient tail below 5e-5 of peak
    for (const PerturbationCommand& cmd : commands) {
        const double start = cmd.onset_t + model.latency;
        const double sign = cmd.direction == Direction::forward ? 1.0 : -1.0;
        const auto first =
            std::lower_bound(out.samples.begin(), out.samples.end(), start,
                             [](const ImuSample& s, double v) { return s.t < v; });
        for (auto it = first; it != out.samples.end() && it->t <= start + support; ++it) {
            const double tau = it->t - start;
            const double g = std::sin(kTwoPi * model.frequency * tau) * std::exp(-tau / model.decay);
            for (Channel c : all_channels()) {
                const double amp = model.amplitude[static_cast<int>(c)];
                if (amp != 0.0) channel_value(*it, c) += sign * amp * g;
            }
        }
    }
    return out;
}

namespace {

// rng stream tags: (subject, kind, pass) packed into disjoint bit fields so
// every generator, controller and profile stream is independent
enum class Stream : std::uint64_t { profile = 0, generator = 1, controller = 2 };

std::uint64_t stream_tag(int subject_index, Stream kind, int pass = 0) {
    return (static_cast<std::uint64_t>(subject_index) << 20) |
           (static_cast<std::uint64_t>(kind) << 10) | static_cast<std::uint64_t>(pass);
}

GaitProfile randomized_profile(const SessionSimConfig& cfg, Rng& rng) {
    GaitProfile p = cfg.base_profile;
    p.cycle_duration_mean = rng.uniform(cfg.cycle_duration_min, cfg.cycle_duration_max);
    const double scale = rng.uniform(cfg.amplitude_scale_min, cfg.amplitude_scale_max);
    for (auto& channel : p.harmonics) {
        for (Harmonic& h : channel) h.amplitude *= scale;
    }
    return p;
}

struct ClosedLoopPass {
    Recording recording;
    std::vector<CommandRecord> log;
};

ClosedLoopPass run_intervention_pass(const SessionSimConfig& cfg, const GaitProfile& profile,
                                     Rng& gen_rng, std::uint64_t controller_seed) {
    ClosedLoopPass result;
    GeneratedPass pass = generate_pass(profile, cfg.cycles_per_pass, gen_rng, cfg.sample_rate);

    // close the loop on *detected* strikes, as the wearable module would
    const std::vector<double> strikes = detect_heel_strikes(pass.recording, cfg.segmentation);

    ControllerConfig ctrl_cfg = cfg.controller;
    ctrl_cfg.rng_seed = controller_seed;
    PerturbationController controller(ctrl_cfg);

    std::vector<PerturbationCommand> commands;
    std::size_t next_strike = 0;
    for (const ImuSample& s : pass.recording.samples) {
        std::optional<double> strike;
        if (next_strike < strikes.size() && strikes[next_strike] <= s.t) {
            strike = strikes[next_strike];
            ++next_strike;
        }
        if (auto cmd = controller.tick(s.t, strike)) commands.push_back(*cmd);
    }

    result.recording = apply_response(pass.recording, commands, cfg.response);
    result.log = controller.log();
    return result;
}

}  // namespace

Session run_session(const SessionSimConfig& cfg, int subject_index) {
    if (cfg.subjects < 1 || cfg.with_passes < 1 || cfg.cycles_per_pass < 1) {
        throw Error("session sim counts must all be >= 1");
    }

    Session session;
    char id[32];
    std::snprintf(id, sizeof(id), "subject_%02d", subject_index + 1);
    session.subject_id = id;
    session.leg = Leg::right;

    Rng profile_rng(derive_seed(cfg.master_seed, stream_tag(subject_index, Stream::profile)));
    const GaitProfile profile = randomized_profile(cfg, profile_rng);

    {
        Rng rng(derive_seed(cfg.master_seed, stream_tag(subject_index, Stream::generator, 0)));
        session.pre = generate_pass(profile, cfg.cycles_per_pass, rng, cfg.sample_rate).recording;
        session.pre.leg = session.leg;
    }
    for (int pass = 0; pass < cfg.with_passes; ++pass) {
        Rng rng(derive_seed(cfg.master_seed,
                            stream_tag(subject_index, Stream::generator, 1 + pass)));
        const std::uint64_t ctrl_seed =
            derive_seed(cfg.master_seed, stream_tag(subject_index, Stream::controller, pass));
        ClosedLoopPass p = run_intervention_pass(cfg, profile, rng, ctrl_seed);
        p.recording.leg = session.leg;
        session.with_intervention.push_back(std::move(p.recording));
        session.command_logs.push_back(std::move(p.log));
    }
    {
        Rng rng(derive_seed(cfg.master_seed,
                            stream_tag(subject_index, Stream::generator, 1 + cfg.with_passes)));
        Recording post = generate_pass(profile, cfg.cycles_per_pass, rng, cfg.sample_rate).recording;
        post.leg = session.leg;
        session.post = std::move(post);
    }
    session.task_count_warning = cfg.with_passes != kDefaultWithPassCount;
    return session;
}

std::vector<Session> run_cohort(const SessionSimConfig& cfg) {
    std::vector<Session> sessions(static_cast<std::size_t>(cfg.subjects));
    std::string first_error;
    const int n = cfg.subjects;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            sessions[static_cast<std::size_t>(i)] = run_session(cfg, i);
        } catch (const std::exception& e) {
#pragma omp critical
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty()) throw Error("cohort simulation failed: " + first_error);
    return sessions;
}

}  // namespace gp::sim
