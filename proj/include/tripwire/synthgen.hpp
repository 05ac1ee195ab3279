#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tripwire/frames.hpp"

namespace tripwire {

/// SplitMix64. Fixed, documented constants so independently written
/// generators can reproduce recordings bit for bit:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1): top 53 bits of next() scaled by 2^-53.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via one Box-Muller evaluation from two fresh draws:
    /// sqrt(-2 ln u1) * cos(2 pi u2), u1 in (0, 1], u2 in [0, 1). The sine
    /// companion is never used, so there is no carried pair state.
    double gaussian();

private:
    std::uint64_t state_;
};

enum class WalkDirection { kUp, kDown };  // up = toward row 0 (the image top)

/// One simulated person. The body is an axis-aligned ellipse with a smooth
/// quadratic falloff: at normalized elliptical distance d from the center the
/// added heat is (body_temp - background_temp) * max(0, 1 - d^2). The center
/// starts just outside the frame on the origin edge and moves along the row
/// axis at `speed` rows per frame. With pause_frames > 0 the walker instead
/// stops 3 rows past the mid-line, holds for pause_frames frames, retraces
/// its path, and leaves the way it came (a lingering event, no count change).
struct Walker {
    int start_frame = 0;
    WalkDirection direction = WalkDirection::kUp;
    double speed = 1.0;       // rows per frame, > 0
    double body_temp = 29.0;  // deg C at the body center
    double radius_v = 6.0;    // ellipse semi-axis along rows
    double radius_h = 9.0;    // ellipse semi-axis along columns
    double column = 16.0;     // center column, constant for the whole walk
    int pause_frames = 0;
};

/// A static warm ellipse (same falloff as a walker body) that appears at
/// start_frame and never moves: clutter that must not be counted.
struct WarmClutter {
    int start_frame = 0;
    double row = 6.0;
    double col = 10.0;
    double radius_v = 3.0;
    double radius_h = 5.0;
    double delta_temp = 5.0;  // deg C above background at the center
};

struct Scenario {
    std::string name;
    std::uint64_t seed = 1;
    int n_frames = 200;
    double fps = 16.0;
    double background_temp = 21.0;
    double noise_std = 0.05;  // deg C, i.i.d. Gaussian per pixel per frame
    std::vector<Walker> walkers;
    std::vector<WarmClutter> clutter;
    EntryDirection entry_direction = EntryDirection::kInsideIsTop;

    void validate() const;  // throws std::invalid_argument
};

struct Generated {
    Recording recording;
    AnnotationTrack annotations;
};

/// Renders the scenario. Each pixel is background_temp plus every active
/// body's heat plus noise_std * gaussian noise; noise is drawn from a single
/// SplitMix64 stream seeded with scenario.seed, frame by frame, pixel by
/// pixel in row-major order, one gaussian per pixel. The ground-truth
/// annotation for a non-lingering walker is a +/-1 delta at the last frame
/// on which any grid pixel of that walker is warmer than background by more
/// than 3 * noise_std (the frame the person has completely left); walkers
/// that pause and reverse contribute no delta. Deltas landing on one frame
/// are summed and zero sums dropped. Deterministic given the scenario.
Generated generate(const Scenario& scenario);

/// Fixed catalog of named scenarios covering the challenge taxonomy:
/// single-entry, single-exit, lingering, two-simultaneous, back-to-back,
/// slow-walker, warm-clutter.
std::vector<Scenario> standard_suite();

/// Looks up a standard_suite scenario by name and applies the seed.
/// Throws std::invalid_argument for unknown names.
Scenario scenario_by_name(const std::string& name, std::uint64_t seed);

}  // namespace tripwire
