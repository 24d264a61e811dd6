#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gp/csv.hpp"
#include "gp/errors.hpp"
#include "gp/rng.hpp"
#include "gp/session.hpp"
#include "test_util.hpp"

using namespace gp;

namespace {

Recording random_recording(Rng& rng, std::size_t n) {
    Recording rec;
    double t = rng.uniform(-5.0, 5.0);
    for (std::size_t i = 0; i < n; ++i) {
        ImuSample s;
        s.t = t;
        for (Channel c : all_channels()) {
            // mix of magnitudes, including values with awkward decimal forms
            channel_value(s, c) = rng.normal(0.0, std::exp(rng.uniform(-8.0, 8.0)));
        }
        rec.samples.push_back(s);
        t += rng.uniform(0.001, 0.1);
    }
    return rec;
}

bool identical(const Recording& a, const Recording& b) {
    if (a.samples.size() != b.samples.size()) return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        if (a.samples[i].t != b.samples[i].t) return false;
        for (Channel c : all_channels()) {
            if (channel_value(a.samples[i], c) != channel_value(b.samples[i], c)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("read_recording parses a well-formed file") {
    testutil::TempDir dir("ingest");
    const auto p = dir.path() / "rec.csv";
    testutil::write_file(p,
                         "t,acc_x,acc_y,acc_z,ang_x,ang_y,ang_z,units=si\n"
                         "0,1,2,3,4,5,6\n"
                         "0.01,1.5,2.5,3.5,4.5,5.5,6.5\n"
                         "0.02,-1,-2,-3,-4,-5,-6\n");
    const Recording rec = csv::read_recording(p);
    REQUIRE(rec.samples.size() == 3);
    CHECK(rec.samples[0].acc[0] == 1.0);
    CHECK(rec.samples[1].t == 0.01);
    CHECK(rec.samples[2].ang[2] == -6.0);
}

TEST_CASE("read_recording rejects equal timestamps with the offending row") {
    testutil::TempDir dir("ingest");
    const auto p = dir.path() / "rec.csv";
    testutil::write_file(p,
                         "t,acc_x,acc_y,acc_z,ang_x,ang_y,ang_z,units=si\n"
                         "0,0,0,0,0,0,0\n"
                         "0.01,0,0,0,0,0,0\n"
                         "0.01,0,0,0,0,0,0\n");
    try {
        csv::read_recording(p);
        FAIL("expected NonMonotoneTime");
    } catch (const NonMonotoneTime& e) {
        CHECK(e.row == 3);
    }
}

TEST_CASE("read_recording error taxonomy") {
    testutil::TempDir dir("ingest");

    SUBCASE("empty file") {
        testutil::write_file(dir.path() / "e.csv", "");
        CHECK_THROWS_AS(csv::read_recording(dir.path() / "e.csv"), EmptyFile);
    }
    SUBCASE("header only") {
        testutil::write_file(dir.path() / "h.csv",
                             "t,acc_x,acc_y,acc_z,ang_x,ang_y,ang_z,units=si\n");
        CHECK_THROWS_AS(csv::read_recording(dir.path() / "h.csv"), EmptyFile);
    }
    SUBCASE("bad column count") {
        testutil::write_file(dir.path() / "c.csv",
                             "t,acc_x,acc_y,acc_z,ang_x,ang_y,ang_z,units=si\n"
                             "0,1,2,3\n");
        CHECK_THROWS_AS(csv::read_recording(dir.path() / "c.csv"), MalformedRow);
    }
    SUBCASE("non-numeric field") {
        testutil::write_file(dir.path() / "n.csv",
                             "t,acc_x,acc_y,acc_z,ang_x,ang_y,ang_z,units=si\n"
                             "0,1,2,oops,4,5,6\n");
        CHECK_THROWS_AS(csv::read_recording(dir.path() / "n.csv"), MalformedRow);
    }
    SUBCASE("non-finite value") {
        testutil::write_file(dir.path() / "f.csv",
                             "t,acc_x,acc_y,acc_z,ang_x,ang_y,ang_z,units=si\n"
                             "0,1,2,inf,4,5,6\n");
        CHECK_THROWS_AS(csv::read_recording(dir.path() / "f.csv"), MalformedRow);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(csv::read_recording(dir.path() / "nope.csv"), MissingFile);
    }
}

TEST_CASE("write_recording rejects invalid recordings and counts lines") {
    testutil::TempDir dir("ingest");

    Recording empty;
    CHECK_THROWS_AS(csv::write_recording(empty, dir.path() / "x.csv"), IoFailure);

    Rng rng(11);
    const Recording rec = random_recording(rng, 1000);
    csv::write_recording(rec, dir.path() / "big.csv");
    const std::string text = testutil::read_file(dir.path() / "big.csv");
    CHECK(std::count(text.begin(), text.end(), '\n') == 1001);  // header + 1000 rows
}

TEST_CASE("recording round-trip is bit-exact") {
    testutil::TempDir dir("ingest");
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const Recording rec = random_recording(rng, 2 + static_cast<std::size_t>(rng.below(64)));
        const auto p = dir.path() / "rt.csv";
        csv::write_recording(rec, p);
        const Recording back = csv::read_recording(p);
        REQUIRE(identical(rec, back));
    }
}

TEST_CASE("command log round-trip") {
    testutil::TempDir dir("ingest");
    std::vector<CommandRecord> log;
    log.push_back({{Direction::forward, 1.2345678901234, 0.5}, PhaseBin::PSw_ISw, 3, 0.512});
    log.push_back({{Direction::backward, 7.25, 0.5}, PhaseBin::IC_LR, 8, 0.0});
    const auto p = dir.path() / "cmd.csv";
    csv::write_command_log(log, p);
    const auto back = csv::read_command_log(p);
    REQUIRE(back.size() == 2);
    CHECK(back[0].command.onset_t == log[0].command.onset_t);
    CHECK(back[0].command.direction == Direction::forward);
    CHECK(back[0].bin == PhaseBin::PSw_ISw);
    CHECK(back[1].cycle_index == 8);
    CHECK(back[1].fraction_at_onset == 0.0);
}

namespace {

// writes a 12-sample constant-cadence recording usable as any task file
void write_dummy_recording(const std::filesystem::path& p) {
    std::string text = "t,acc_x,acc_y,acc_z,ang_x,ang_y,ang_z,units=si\n";
    for (int i = 0; i < 12; ++i) {
        text += csv::format_double(0.1 * i) + ",0,0,0,0,0,0\n";
    }
    testutil::write_file(p, text);
}

}  // namespace

TEST_CASE("load_session attaches tasks per the manifest") {
    testutil::TempDir dir("session");
    for (const char* name : {"pre.csv", "w1.csv", "w2.csv", "w3.csv", "w4.csv", "w5.csv",
                             "post.csv"}) {
        write_dummy_recording(dir.path() / name);
    }
    testutil::write_file(dir.path() / "manifest.json", R"({
      "subject_id": "s1", "leg": "right",
      "pre": "pre.csv",
      "with": ["w1.csv", "w2.csv", "w3.csv", "w4.csv", "w5.csv"],
      "post": "post.csv"
    })");

    const Session s = load_session(dir.path() / "manifest.json");
    CHECK(s.subject_id == "s1");
    CHECK(s.leg == Leg::right);
    CHECK(s.with_intervention.size() == 5);
    CHECK(s.post.has_value());
    CHECK_FALSE(s.task_count_warning);

    SUBCASE("listed-but-missing post file raises MissingFile naming the task") {
        std::filesystem::remove(dir.path() / "post.csv");
        try {
            load_session(dir.path() / "manifest.json");
            FAIL("expected MissingFile");
        } catch (const MissingFile& e) {
            CHECK(std::string(e.what()).find("post") != std::string::npos);
        }
    }
}

TEST_CASE("load_session flags non-default task counts") {
    testutil::TempDir dir("session");
    for (const char* name : {"pre.csv", "w1.csv", "w2.csv", "w3.csv", "post.csv"}) {
        write_dummy_recording(dir.path() / name);
    }
    testutil::write_file(dir.path() / "manifest.json", R"({
      "subject_id": "s1", "leg": "left",
      "pre": "pre.csv",
      "with": ["w1.csv", "w2.csv", "w3.csv"],
      "post": "post.csv"
    })");
    const Session s = load_session(dir.path() / "manifest.json");
    CHECK(s.with_intervention.size() == 3);
    CHECK(s.task_count_warning);
}

TEST_CASE("session save/load round trip with command logs") {
    testutil::TempDir dir("session");
    Rng rng(5);
    Session s;
    s.subject_id = "roundtrip";
    s.leg = Leg::right;
    s.pre = random_recording(rng, 40);
    s.with_intervention.push_back(random_recording(rng, 30));
    s.command_logs.push_back(
        {{{Direction::backward, s.with_intervention[0].samples[5].t, 0.5},
          PhaseBin::MSt_TSt,
          1,
          0.25}});
    s.post = random_recording(rng, 35);

    save_session(s, dir.path() / "out");
    const Session back = load_session(dir.path() / "out" / "manifest.json");
    CHECK(back.subject_id == "roundtrip");
    CHECK(identical(back.pre, s.pre));
    REQUIRE(back.with_intervention.size() == 1);
    CHECK(identical(back.with_intervention[0], s.with_intervention[0]));
    REQUIRE(back.command_logs.size() == 1);
    REQUIRE(back.command_logs[0].size() == 1);
    CHECK(back.command_logs[0][0].command.onset_t == s.command_logs[0][0].command.onset_t);
    REQUIRE(back.post.has_value());
    CHECK(identical(*back.post, *s.post));
}
