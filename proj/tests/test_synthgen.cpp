#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tripwire/synthgen.hpp"

using namespace tripwire;

TEST_CASE("splitmix64 reference values") {
    // First outputs for seed 0; shared fixed points for any reimplementation.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
    SplitMix64 u(123);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform01();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("generation is deterministic in the seed") {
    Scenario s = scenario_by_name("single-entry", 99);
    const Generated a = generate(s);
    const Generated b = generate(s);
    CHECK(a.recording == b.recording);
    CHECK(a.annotations == b.annotations);

    s.seed = 100;
    const Generated c = generate(s);
    CHECK(c.recording.frames[0].temps != a.recording.frames[0].temps);
    CHECK(c.annotations == a.annotations);  // ground truth does not depend on noise
}

TEST_CASE("empty scenario stays near the background") {
    Scenario s;
    s.name = "empty";
    s.n_frames = 50;
    s.noise_std = 0.1;
    s.seed = 5;
    const Generated g = generate(s);
    CHECK(g.annotations.deltas.empty());
    CHECK(g.recording.size() == 50);
    for (const ThermalFrame& f : g.recording.frames) {
        for (double t : f.temps) {
            CHECK(t > s.background_temp - 6.0 * s.noise_std);
            CHECK(t < s.background_temp + 6.0 * s.noise_std);
        }
    }
}

TEST_CASE("one upward walker with the room on top yields one +1 delta") {
    Scenario s = scenario_by_name("single-entry", 1);
    const Generated g = generate(s);
    REQUIRE(g.annotations.deltas.size() == 1);
    CHECK(g.annotations.deltas.begin()->second == 1);
    CHECK(g.annotations.initial_count == 0);

    SUBCASE("the delta frame is the last frame with a warm walker pixel") {
        const int delta_frame = g.annotations.deltas.begin()->first;
        // Rebuild "warm" from the noiseless rendering: subtract background and
        // noise bound; the body contribution must exceed 3 sigma somewhere.
        Scenario clean = s;
        clean.noise_std = 0.0;
        const Generated quiet = generate(clean);
        auto has_warm_pixel = [&](int n) {
            for (double t : quiet.recording.frames[n].temps) {
                if (t - clean.background_temp > 3.0 * s.noise_std) return true;
            }
            return false;
        };
        CHECK(has_warm_pixel(delta_frame));
        for (int n = delta_frame + 1; n < quiet.recording.size(); ++n) {
            CHECK_FALSE(has_warm_pixel(n));
        }
    }
}

TEST_CASE("direction and room side set the delta sign") {
    Scenario s = scenario_by_name("single-exit", 1);
    const Generated g = generate(s);
    REQUIRE(g.annotations.deltas.size() == 1);
    CHECK(g.annotations.deltas.begin()->second == -1);

    s.entry_direction = EntryDirection::kInsideIsBottom;
    const Generated flipped = generate(s);
    REQUIRE(flipped.annotations.deltas.size() == 1);
    CHECK(flipped.annotations.deltas.begin()->second == 1);
}

TEST_CASE("standard suite shape") {
    const std::vector<Scenario> suite = standard_suite();
    CHECK(suite.size() >= 7);

    SUBCASE("two-simultaneous yields two deltas") {
        const Scenario* two = nullptr;
        for (const Scenario& s : suite) {
            if (s.name == "two-simultaneous") two = &s;
        }
        REQUIRE(two != nullptr);
        Scenario s = *two;
        s.seed = 17;
        const Generated g = generate(s);
        int total = 0;
        for (const auto& [frame, delta] : g.annotations.deltas) total += delta;
        CHECK(total == 2);
    }
    SUBCASE("lingering and warm-clutter yield no deltas") {
        for (const char* name : {"lingering", "warm-clutter"}) {
            const Generated g = generate(scenario_by_name(name, 3));
            CHECK(g.annotations.deltas.empty());
        }
    }
    SUBCASE("unknown names are rejected with the catalog") {
        CHECK_THROWS_WITH_AS(scenario_by_name("nope", 1), doctest::Contains("single-entry"),
                             std::invalid_argument);
    }
}

TEST_CASE("rendered body size sits in the plausible human range") {
    // Render each walker of each suite scenario alone and take its widest
    // per-frame footprint (the mid-transit frame).
    for (const Scenario& base : standard_suite()) {
        for (size_t wi = 0; wi < base.walkers.size(); ++wi) {
            Scenario solo = base;
            solo.noise_std = 0.0;
            solo.clutter.clear();
            solo.walkers = {base.walkers[wi]};
            const Generated g = generate(solo);
            int best_count = 0;
            for (const ThermalFrame& f : g.recording.frames) {
                int count = 0;
                for (double t : f.temps) {
                    if (t > solo.background_temp + 1e-9) ++count;
                }
                best_count = std::max(best_count, count);
            }
            CAPTURE(base.name);
            CHECK(best_count >= 100);
            CHECK(best_count <= 300);
        }
    }
}

TEST_CASE("scenario validation") {
    Scenario s;
    s.n_frames = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    s = Scenario{};
    Walker w;
    w.column = 2.0;  // body sticks out of the frame horizontally
    s.walkers.push_back(w);
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    s = Scenario{};
    w = Walker{};
    w.body_temp = s.background_temp;  // not warmer than the noise floor
    s.walkers.push_back(w);
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    s = Scenario{};
    w = Walker{};
    w.speed = 0.0;
    s.walkers.push_back(w);
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
