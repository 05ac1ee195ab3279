#pragma once

#include <limits>
#include <vector>

#include "tripwire/background.hpp"
#include "tripwire/frames.hpp"

namespace tripwire {

struct DetectionParams {
    int k_min_pixels = 100;  // baseline: an event needs one frame with >= K foreground pixels
    int l_min_pixels = 100;  // multi-person: minimum connected-component size of a blob
    // Association gate for the tracker. Defaults to "no gate": blobs are
    // associated regardless of distance, as in the original scheme.
    double max_assoc_dist = std::numeric_limits<double>::infinity();

    void validate() const;
};

/// (row, column) position, fractional.
struct Centroid {
    double v = 0.0;  // row coordinate, 0 = image top
    double h = 0.0;  // column coordinate

    bool operator==(const Centroid&) const = default;
};

double centroid_distance(const Centroid& a, const Centroid& b);

/// An 8-connected component of foreground pixels of size >= L in one frame.
struct Blob {
    int frame_index = 0;
    std::vector<int> pixels;  // sorted row-major indices
    Centroid centroid;

    bool operator==(const Blob&) const = default;
};

/// All 8-connected components of `mask` with at least `l_min` pixels, ordered
/// by centroid column then centroid row (then smallest pixel index). Pixel
/// lists are sorted; the ordering is stable across runs.
std::vector<Blob> extract_blobs(const ForegroundMask& mask, int frame_index, int l_min);

/// A maximal run of frames that all contain foreground, bounded by empty
/// frames (stream edges count as empty), in which at least one frame reached
/// K foreground pixels.
struct BaselineEvent {
    int start_frame = 0;
    int end_frame = 0;  // inclusive
    std::vector<std::vector<int>> pixels_per_frame;  // sorted indices, one entry per frame
};

/// Segments the mask stream into baseline events. Runs whose peak foreground
/// count stays below `k_min` are discarded.
std::vector<BaselineEvent> baseline_segment(const std::vector<ForegroundMask>& masks, int k_min);

/// A chain of blobs in consecutive frames, linked by centroid association.
/// One terminated track = one multi-person event.
struct BlobTrack {
    enum class State { kOpen, kTerminated };

    int id = 0;
    std::vector<Blob> blobs;  // one per consecutive frame
    State state = State::kOpen;

    int start_frame() const { return blobs.front().frame_index; }
    int end_frame() const { return blobs.back().frame_index; }
};

struct TrackStepResult {
    std::vector<BlobTrack> grown;       // previous tracks extended by a matched blob
    std::vector<BlobTrack> born;        // new one-blob tracks from unmatched blobs
    std::vector<BlobTrack> terminated;  // previous tracks with no match
};

/// One association step. Repeatedly the globally closest (open track, blob)
/// pair is matched and removed until one side runs out. Distance ties break
/// toward the lower track id, then the lower blob index. Unmatched blobs are
/// born as new tracks with ids drawn from `next_track_id`; unmatched tracks
/// terminate. Pairs farther than `max_assoc_dist` are never matched.
TrackStepResult step_tracks(std::vector<BlobTrack> open_tracks, std::vector<Blob> current_blobs,
                            int& next_track_id,
                            double max_assoc_dist = std::numeric_limits<double>::infinity());

/// Runs extract_blobs + step_tracks over the whole mask stream. Tracks still
/// open at stream end are terminated and included, so no event is dropped.
/// Returned in order of termination (then id).
std::vector<BlobTrack> track_events(const std::vector<ForegroundMask>& masks,
                                    const DetectionParams& params);

}  // namespace tripwire
