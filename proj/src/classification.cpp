#include "tripwire/classification.hpp"

#include <stdexcept>

namespace tripwire {

Centroid centroid(const std::vector<int>& pixels) {
    if (pixels.empty()) throw std::invalid_argument("centroid of empty pixel set");
    long long sum_v = 0;
    long long sum_h = 0;
    for (int p : pixels) {
        sum_v += pixel_row(p);
        sum_h += pixel_col(p);
    }
    const double n = static_cast<double>(pixels.size());
    return Centroid{sum_v / n, sum_h / n};
}

std::vector<Crossing> crossings(const CentroidTrace& trace) {
    if (trace.samples.empty()) throw std::invalid_argument("trace needs at least one sample");

    std::vector<Crossing> out;
    // false = upper half, true = lower half; exact mid-line inherits.
    bool lower = trace.samples.front().v > kMidlineRow;
    for (size_t i = 1; i < trace.samples.size(); ++i) {
        const TraceSample& s = trace.samples[i];
        bool now = lower;
        if (s.v > kMidlineRow) now = true;
        if (s.v < kMidlineRow) now = false;
        if (now != lower) {
            out.push_back({s.frame, lower ? CrossDirection::kUp : CrossDirection::kDown});
            lower = now;
        }
    }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::kEntry: return "entry";
        case Verdict::kExit: return "exit";
        case Verdict::kLingering: return "lingering";
    }
    return "?";
}

Verdict classify(const CentroidTrace& trace, EntryDirection entry_direction) {
    const std::vector<Crossing> cs = crossings(trace);
    if (cs.empty()) return Verdict::kLingering;
    if (cs.front().direction != cs.back().direction) return Verdict::kLingering;

    const bool moved_up = cs.front().direction == CrossDirection::kUp;
    const bool entered = (entry_direction == EntryDirection::kInsideIsTop) ? moved_up : !moved_up;
    return entered ? Verdict::kEntry : Verdict::kExit;
}

std::map<int, int> events_to_deltas(const std::vector<DoorEvent>& events) {
    std::map<int, int> deltas;
    for (const DoorEvent& e : events) {
        int change = 0;
        if (e.verdict == Verdict::kEntry) change = 1;
        if (e.verdict == Verdict::kExit) change = -1;
        if (change == 0) continue;
        deltas[e.end_frame] += change;
    }
    std::erase_if(deltas, [](const auto& kv) { return kv.second == 0; });
    return deltas;
}

CountSeries aggregate_doors(const std::vector<std::map<int, int>>& delta_maps, int initial_count,
                            int n_frames) {
    AnnotationTrack merged;
    merged.initial_count = initial_count;
    for (const auto& deltas : delta_maps) {
        for (const auto& [frame, delta] : deltas) {
            merged.deltas[frame] += delta;
        }
    }
    std::erase_if(merged.deltas, [](const auto& kv) { return kv.second == 0; });
    return cumulative_counts(merged, n_frames);
}

}  // namespace tripwire
