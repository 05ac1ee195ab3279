#include "tripwire/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tripwire {

double SplitMix64::gaussian() {
    const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;        // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

// Signed distance the walker has advanced from its start row at local frame
// offset dt, honoring an optional pause-and-reverse. Progress grows 1 unit
// per frame while walking; the reversal retraces it back to below zero.
double walk_progress(const Walker& w, int dt, int frames_to_turn) {
    if (w.pause_frames <= 0) return static_cast<double>(dt);
    if (dt <= frames_to_turn) return static_cast<double>(dt);
    if (dt <= frames_to_turn + w.pause_frames) return static_cast<double>(frames_to_turn);
    return static_cast<double>(2 * frames_to_turn + w.pause_frames - dt);
}

struct WalkerPath {
    double start_row = 0.0;      // center row just outside the frame
    int frames_to_turn = 0;      // lingering only: frames from start to the hold row
    double row_sign = 0.0;       // -1 when walking up (rows decrease), +1 down
};

WalkerPath plan(const Walker& w) {
    WalkerPath p;
    p.row_sign = w.direction == WalkDirection::kUp ? -1.0 : 1.0;
    p.start_row = w.direction == WalkDirection::kUp ? (kRows - 0.5) + w.radius_v
                                                    : -0.5 - w.radius_v;
    if (w.pause_frames > 0) {
        // Hold 3 rows past the mid-line on the destination side.
        const double turn_row = w.direction == WalkDirection::kUp ? kMidlineRow - 3.0
                                                                  : kMidlineRow + 3.0;
        p.frames_to_turn =
            static_cast<int>(std::ceil(std::abs(turn_row - p.start_row) / w.speed));
    }
    return p;
}

// Center row of the walker at `frame`; false once it deposits no heat.
bool center_row(const Walker& w, const WalkerPath& p, int frame, double& row_out) {
    const int dt = frame - w.start_frame;
    if (dt < 0) return false;
    const double progress = walk_progress(w, dt, p.frames_to_turn);
    if (progress < 0.0) return false;
    const double row = p.start_row + p.row_sign * w.speed * progress;
    // Past the far edge and fully out of frame: inactive.
    if (row < -0.5 - w.radius_v || row > (kRows - 0.5) + w.radius_v) return false;
    row_out = row;
    return true;
}

double ellipse_heat(double amplitude, double center_v, double center_h, double radius_v,
                    double radius_h, int row, int col) {
    const double dv = (row - center_v) / radius_v;
    const double dh = (col - center_h) / radius_h;
    const double d2 = dv * dv + dh * dh;
    if (d2 >= 1.0) return 0.0;
    return amplitude * (1.0 - d2);
}

// Peak heat this walker deposits on any grid pixel at `frame`; 0 if none.
// The falloff decreases monotonically away from the center on each axis, so
// the peak sits at the in-bounds pixel nearest the center.
double walker_peak_heat(const Walker& w, const WalkerPath& p, double amplitude, int frame) {
    double cv = 0.0;
    if (!center_row(w, p, frame, cv)) return 0.0;
    const int r = std::clamp(static_cast<int>(std::lround(cv)), 0, kRows - 1);
    const int c = std::clamp(static_cast<int>(std::lround(w.column)), 0, kCols - 1);
    return ellipse_heat(amplitude, cv, w.column, w.radius_v, w.radius_h, r, c);
}

}  // namespace

void Scenario::validate() const {
    if (n_frames < 1) throw std::invalid_argument("scenario needs at least 1 frame");
    if (!(fps > 0.0)) throw std::invalid_argument("fps must be positive");
    if (noise_std < 0.0) throw std::invalid_argument("noise_std must be >= 0");
    for (const Walker& w : walkers) {
        if (w.start_frame < 0) throw std::invalid_argument("walker start_frame must be >= 0");
        if (!(w.speed > 0.0)) throw std::invalid_argument("walker speed must be positive");
        if (!(w.radius_v > 0.0 && w.radius_h > 0.0)) {
            throw std::invalid_argument("walker radii must be positive");
        }
        if (w.pause_frames < 0) throw std::invalid_argument("pause_frames must be >= 0");
        if (!(w.body_temp > background_temp + 3.0 * noise_std)) {
            throw std::invalid_argument("walker body_temp must exceed background by > 3 sigma");
        }
        if (w.column - w.radius_h < -0.5 || w.column + w.radius_h > kCols - 0.5) {
            throw std::invalid_argument("walker body must fit the frame horizontally");
        }
    }
    for (const WarmClutter& c : clutter) {
        if (c.start_frame < 0) throw std::invalid_argument("clutter start_frame must be >= 0");
        if (!(c.radius_v > 0.0 && c.radius_h > 0.0)) {
            throw std::invalid_argument("clutter radii must be positive");
        }
        if (!(c.delta_temp > 3.0 * noise_std)) {
            throw std::invalid_argument("clutter delta_temp must exceed 3 sigma");
        }
    }
}

Generated generate(const Scenario& scenario) {
    scenario.validate();

    std::vector<WalkerPath> paths;
    paths.reserve(scenario.walkers.size());
    for (const Walker& w : scenario.walkers) paths.push_back(plan(w));

    Generated out;
    out.recording.fps = scenario.fps;
    out.recording.door_id = scenario.name;
    out.recording.entry_direction = scenario.entry_direction;
    out.recording.frames.resize(scenario.n_frames);

    SplitMix64 rng(scenario.seed);
    for (int n = 0; n < scenario.n_frames; ++n) {
        ThermalFrame& frame = out.recording.frames[n];
        frame.index = n;

        std::array<double, kPixels> heat{};
        for (size_t wi = 0; wi < scenario.walkers.size(); ++wi) {
            const Walker& w = scenario.walkers[wi];
            double cv = 0.0;
            if (!center_row(w, paths[wi], n, cv)) continue;
            const double amplitude = w.body_temp - scenario.background_temp;
            for (int r = 0; r < kRows; ++r) {
                for (int c = 0; c < kCols; ++c) {
                    heat[pixel_index(r, c)] +=
                        ellipse_heat(amplitude, cv, w.column, w.radius_v, w.radius_h, r, c);
                }
            }
        }
        for (const WarmClutter& cl : scenario.clutter) {
            if (n < cl.start_frame) continue;
            for (int r = 0; r < kRows; ++r) {
                for (int c = 0; c < kCols; ++c) {
                    heat[pixel_index(r, c)] += ellipse_heat(cl.delta_temp, cl.row, cl.col,
                                                            cl.radius_v, cl.radius_h, r, c);
                }
            }
        }
        for (int i = 0; i < kPixels; ++i) {
            frame.temps[i] = scenario.background_temp + heat[i] +
                             scenario.noise_std * rng.gaussian();
        }
    }

    // Ground truth by construction: a non-lingering walker is annotated at
    // the last frame on which it still heats some pixel past 3 sigma. A
    // walker still in frame when the recording ends gets no annotation.
    out.annotations.initial_count = 0;
    const double warm_threshold = 3.0 * scenario.noise_std;
    std::map<int, int> deltas;
    for (size_t wi = 0; wi < scenario.walkers.size(); ++wi) {
        const Walker& w = scenario.walkers[wi];
        if (w.pause_frames > 0) continue;
        const double amplitude = w.body_temp - scenario.background_temp;
        int last_warm = -1;
        for (int n = w.start_frame; n < scenario.n_frames; ++n) {
            double cv = 0.0;
            if (!center_row(w, paths[wi], n, cv)) {
                if (n > w.start_frame) break;  // pause-free walkers never come back
                continue;
            }
            if (walker_peak_heat(w, paths[wi], amplitude, n) > warm_threshold) last_warm = n;
        }
        if (last_warm < 0 || last_warm == scenario.n_frames - 1) continue;
        const bool entered = (w.direction == WalkDirection::kUp) ==
                             (scenario.entry_direction == EntryDirection::kInsideIsTop);
        deltas[last_warm] += entered ? 1 : -1;
    }
    std::erase_if(deltas, [](const auto& kv) { return kv.second == 0; });
    out.annotations.deltas = std::move(deltas);
    return out;
}

std::vector<Scenario> standard_suite() {
    std::vector<Scenario> suite;

    auto base = [](const std::string& name, int n_frames) {
        Scenario s;
        s.name = name;
        s.n_frames = n_frames;
        return s;
    };
    auto walker = [](int start, WalkDirection dir) {
        Walker w;
        w.start_frame = start;
        w.direction = dir;
        return w;
    };

    {
        Scenario s = base("single-entry", 140);
        s.walkers.push_back(walker(30, WalkDirection::kUp));
        suite.push_back(s);
    }
    {
        Scenario s = base("single-exit", 140);
        s.walkers.push_back(walker(30, WalkDirection::kDown));
        suite.push_back(s);
    }
    {
        Scenario s = base("lingering", 160);
        Walker w = walker(30, WalkDirection::kUp);
        w.pause_frames = 20;
        s.walkers.push_back(w);
        suite.push_back(s);
    }
    {
        // Both people are in the frame together for most of the transit; the
        // starts are staggered by more than the metric window so the two
        // ground-truth changes stay distinguishable.
        Scenario s = base("two-simultaneous", 130);
        Walker a = walker(30, WalkDirection::kUp);
        a.column = 8.0;
        a.radius_h = 7.0;
        a.radius_v = 7.0;
        Walker b = a;
        b.start_frame = 58;
        b.column = 24.0;
        s.walkers.push_back(a);
        s.walkers.push_back(b);
        suite.push_back(s);
    }
    {
        // 28 frames = 1.75 s apart at 16 fps: clearly separate events.
        Scenario s = base("back-to-back", 140);
        s.walkers.push_back(walker(30, WalkDirection::kUp));
        s.walkers.push_back(walker(58, WalkDirection::kUp));
        suite.push_back(s);
    }
    {
        Scenario s = base("slow-walker", 200);
        Walker w = walker(30, WalkDirection::kUp);
        w.speed = 0.6;
        s.walkers.push_back(w);
        suite.push_back(s);
    }
    {
        Scenario s = base("warm-clutter", 120);
        s.clutter.push_back(WarmClutter{.start_frame = 20});
        suite.push_back(s);
    }
    return suite;
}

Scenario scenario_by_name(const std::string& name, std::uint64_t seed) {
    for (Scenario& s : standard_suite()) {
        if (s.name == name) {
            s.seed = seed;
            return s;
        }
    }
    std::string names;
    for (const Scenario& s : standard_suite()) {
        if (!names.empty()) names += ", ";
        names += s.name;
    }
    throw std::invalid_argument("unknown scenario '" + name + "' (available: " + names + ")");
}

}  // namespace tripwire
