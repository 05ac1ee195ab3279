#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tripwire/classification.hpp"
#include "tripwire/config.hpp"
#include "tripwire/detection.hpp"
#include "tripwire/frames.hpp"

namespace tripwire {

struct PipelineResult {
    std::vector<DoorEvent> events;  // ordered by end frame, then discovery order
    std::map<int, int> deltas;      // nonzero count changes from the events
    CountSeries estimate;           // initial_count + cumulative deltas, length = recording
};

/// The full counting chain for one door: background subtraction per frame,
/// event detection with the configured algorithm, mid-line classification,
/// and expansion into an estimated count series.
PipelineResult run_pipeline(const Recording& rec, const Config& config);

/// Per-frame diagnostics behind count plots and debugging sessions.
struct FrameInspection {
    int frame = 0;
    int foreground_pixels = 0;
    std::optional<double> centroid_v;  // of all foreground pixels; empty mask -> nullopt
};

struct InspectResult {
    std::vector<FrameInspection> frames;
    std::vector<BlobTrack> tracks;  // multi-person tracks over the same masks
};

InspectResult inspect_recording(const Recording& rec, const Config& config);

}  // namespace tripwire
