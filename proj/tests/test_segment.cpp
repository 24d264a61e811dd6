#include <doctest.h>

#include <cmath>

#include "gp/errors.hpp"
#include "gp/rng.hpp"
#include "gp/segment.hpp"
#include "gp/sim.hpp"

using namespace gp;

namespace {

sim::GaitProfile clean_profile() {
    sim::GaitProfile p = sim::default_gait_profile();
    p.cycle_duration_mean = 1.0;
    p.cycle_duration_jitter = 0.0;
    p.noise_sigma = {};
    return p;
}

}  // namespace

TEST_CASE("detect recovers 13 strikes from 12 clean 1s cycles") {
    Rng rng(1);
    const auto pass = sim::generate_pass(clean_profile(), 12, rng, 100.0);
    const auto strikes = detect_heel_strikes(pass.recording, {});
    REQUIRE(strikes.size() == 13);
    for (std::size_t i = 0; i < strikes.size(); ++i) {
        CHECK(std::abs(strikes[i] - pass.strikes[i]) <= 0.01 + 1e-12);
    }
    for (std::size_t i = 1; i < strikes.size(); ++i) {
        CHECK(strikes[i] - strikes[i - 1] == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("constant-zero recording has no steps") {
    Recording rec;
    for (int i = 0; i < 500; ++i) rec.samples.push_back({0.01 * i, {}, {}});
    CHECK_THROWS_AS(detect_heel_strikes(rec, {}), NoStepsDetected);
}

TEST_CASE("detection under AngY noise stays within one strike of truth") {
    sim::GaitProfile p = clean_profile();
    p.noise_sigma[static_cast<int>(Channel::AngY)] = 5.0;
    int ok = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(100 + static_cast<std::uint64_t>(trial));
        const auto pass = sim::generate_pass(p, 12, rng, 100.0);
        const auto strikes = detect_heel_strikes(pass.recording, {});
        if (std::llabs(static_cast<long long>(strikes.size()) - 13) <= 1) ++ok;
    }
    CHECK(ok >= 19);
}

TEST_CASE("detection is translation-equivariant") {
    Rng rng(7);
    sim::GaitProfile p = clean_profile();
    p.cycle_duration_jitter = 0.03;
    p.noise_sigma[static_cast<int>(Channel::AngY)] = 3.0;
    const auto pass = sim::generate_pass(p, 10, rng, 100.0);

    const double shift = 1024.0;
    Recording shifted = pass.recording;
    for (ImuSample& s : shifted.samples) s.t += shift;

    const auto a = detect_heel_strikes(pass.recording, {});
    const auto b = detect_heel_strikes(shifted, {});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == a[i] + shift);
}

TEST_CASE("split_steps counts and trimming") {
    Rng rng(3);
    const auto pass = sim::generate_pass(clean_profile(), 12, rng, 100.0);
    const auto strikes = detect_heel_strikes(pass.recording, {});
    REQUIRE(strikes.size() == 13);

    SUBCASE("trim 1 drops the first and last of 12 steps") {
        SegmentationConfig cfg;
        cfg.trim_steps = 1;
        const auto steps = split_steps(pass.recording, strikes, cfg);
        CHECK(steps.size() == 10);
    }
    SUBCASE("two strikes, no trim: one step covering [s1, s2)") {
        SegmentationConfig cfg;
        cfg.trim_steps = 0;
        const std::vector<double> two = {strikes[0], strikes[1]};
        const auto steps = split_steps(pass.recording, two, cfg);
        REQUIRE(steps.size() == 1);
        CHECK(steps[0].start_t == strikes[0]);
        CHECK(steps[0].end_t == strikes[1]);
        for (double t : steps[0].times) {
            CHECK(t >= strikes[0]);
            CHECK(t < strikes[1]);
        }
    }
    SUBCASE("three strikes with trim 1 leaves nothing") {
        SegmentationConfig cfg;
        cfg.trim_steps = 1;
        const std::vector<double> three = {strikes[0], strikes[1], strikes[2]};
        CHECK_THROWS_AS(split_steps(pass.recording, three, cfg), TooFewSteps);
    }
}

TEST_CASE("untrimmed steps concatenate to the exact sample range") {
    Rng rng(9);
    sim::GaitProfile p = clean_profile();
    p.cycle_duration_jitter = 0.05;
    p.noise_sigma[static_cast<int>(Channel::AngY)] = 2.0;
    const auto pass = sim::generate_pass(p, 8, rng, 100.0);
    const auto strikes = detect_heel_strikes(pass.recording, {});

    SegmentationConfig cfg;
    cfg.trim_steps = 0;
    const auto steps = split_steps(pass.recording, strikes, cfg);

    std::vector<double> concat_times;
    for (const auto& step : steps) {
        REQUIRE(step.length() >= 2);
        for (int c = 0; c < kNumChannels; ++c) REQUIRE(step.channels[c].size() == step.length());
        concat_times.insert(concat_times.end(), step.times.begin(), step.times.end());
    }

    std::vector<double> expected;
    for (const ImuSample& s : pass.recording.samples) {
        if (s.t >= strikes.front() && s.t < strikes.back()) expected.push_back(s.t);
    }
    CHECK(concat_times == expected);
}
