#pragma once

#include <map>
#include <string>
#include <vector>

#include "tripwire/detection.hpp"
#include "tripwire/frames.hpp"

namespace tripwire {

/// Arithmetic mean of the (row, column) coordinates. Throws
/// std::invalid_argument on an empty set.
Centroid centroid(const std::vector<int>& pixels);

struct TraceSample {
    int frame = 0;
    double v = 0.0;  // vertical (row) centroid coordinate
};

/// The per-frame vertical centroid of one event, in frame order.
struct CentroidTrace {
    std::vector<TraceSample> samples;
};

enum class CrossDirection { kUp, kDown };  // up = lower half -> upper half

struct Crossing {
    int frame = 0;  // frame of the sample that landed in the new half
    CrossDirection direction = CrossDirection::kUp;
};

/// Mid-line crossings of the trace. A crossing happens between consecutive
/// samples whose half-assignment differs. A sample exactly on the mid-line
/// keeps the previous sample's half (a leading mid-line sample counts as
/// upper), so a centroid resting on the line cannot double-cross.
std::vector<Crossing> crossings(const CentroidTrace& trace);

enum class Verdict { kEntry, kExit, kLingering };

std::string to_string(Verdict v);

/// Event decision from the first and last mid-line crossings:
/// no crossing -> lingering; first and last in the same direction -> entry
/// if that direction points into the room, else exit; opposite directions ->
/// lingering (the person backed out).
Verdict classify(const CentroidTrace& trace, EntryDirection entry_direction);

/// A completed, classified door event.
struct DoorEvent {
    int end_frame = 0;
    Verdict verdict = Verdict::kLingering;
    CentroidTrace trace;
    std::string door_id;
};

/// Count changes implied by classified events: entry -> +1 and exit -> -1 at
/// the event's end frame, lingering -> nothing. Deltas landing on the same
/// frame are summed; zero sums are dropped.
std::map<int, int> events_to_deltas(const std::vector<DoorEvent>& events);

/// Merges per-door delta maps (summing collisions) and expands them into a
/// room-level count series of length n_frames.
CountSeries aggregate_doors(const std::vector<std::map<int, int>>& delta_maps, int initial_count,
                            int n_frames);

}  // namespace tripwire
