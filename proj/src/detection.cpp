#include "tripwire/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tripwire {

void DetectionParams::validate() const {
    if (k_min_pixels < 1) throw std::invalid_argument("k_min_pixels must be >= 1");
    if (l_min_pixels < 1) throw std::invalid_argument("l_min_pixels must be >= 1");
    if (!(max_assoc_dist > 0.0)) throw std::invalid_argument("max_assoc_dist must be positive");
}

double centroid_distance(const Centroid& a, const Centroid& b) {
    return std::hypot(a.v - b.v, a.h - b.h);
}

namespace {

Centroid centroid_of_pixels(const std::vector<int>& pixels) {
    long long sum_v = 0;
    long long sum_h = 0;
    for (int p : pixels) {
        sum_v += pixel_row(p);
        sum_h += pixel_col(p);
    }
    const double n = static_cast<double>(pixels.size());
    return Centroid{sum_v / n, sum_h / n};
}

std::vector<int> mask_pixels(const ForegroundMask& mask) {
    std::vector<int> pixels;
    for (int i = 0; i < kPixels; ++i) {
        if (mask[i]) pixels.push_back(i);
    }
    return pixels;
}

}  // namespace

std::vector<Blob> extract_blobs(const ForegroundMask& mask, int frame_index, int l_min) {
    if (l_min < 1) throw std::invalid_argument("l_min must be >= 1");

    std::vector<Blob> blobs;
    ForegroundMask visited;
    std::vector<int> stack;
    for (int start = 0; start < kPixels; ++start) {
        if (!mask[start] || visited[start]) continue;

        std::vector<int> component;
        visited[start] = true;
        stack.push_back(start);
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            component.push_back(p);
            const int r = pixel_row(p);
            const int c = pixel_col(p);
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int nr = r + dr;
                    const int nc = c + dc;
                    if (nr < 0 || nr >= kRows || nc < 0 || nc >= kCols) continue;
                    const int np = pixel_index(nr, nc);
                    if (mask[np] && !visited[np]) {
                        visited[np] = true;
                        stack.push_back(np);
                    }
                }
            }
        }
        if (static_cast<int>(component.size()) < l_min) continue;

        std::sort(component.begin(), component.end());
        Blob blob;
        blob.frame_index = frame_index;
        blob.centroid = centroid_of_pixels(component);
        blob.pixels = std::move(component);
        blobs.push_back(std::move(blob));
    }

    std::sort(blobs.begin(), blobs.end(), [](const Blob& a, const Blob& b) {
        if (a.centroid.h != b.centroid.h) return a.centroid.h < b.centroid.h;
        if (a.centroid.v != b.centroid.v) return a.centroid.v < b.centroid.v;
        return a.pixels.front() < b.pixels.front();
    });
    return blobs;
}

std::vector<BaselineEvent> baseline_segment(const std::vector<ForegroundMask>& masks, int k_min) {
    if (k_min < 1) throw std::invalid_argument("k_min must be >= 1");

    std::vector<BaselineEvent> events;
    BaselineEvent current;
    bool in_run = false;
    int peak = 0;

    auto close_run = [&](int end_frame) {
        if (peak >= k_min) {
            current.end_frame = end_frame;
            events.push_back(std::move(current));
        }
        current = BaselineEvent{};
        in_run = false;
        peak = 0;
    };

    for (int n = 0; n < static_cast<int>(masks.size()); ++n) {
        const int count = static_cast<int>(masks[n].count());
        if (count == 0) {
            if (in_run) close_run(n - 1);
            continue;
        }
        if (!in_run) {
            in_run = true;
            current.start_frame = n;
        }
        current.pixels_per_frame.push_back(mask_pixels(masks[n]));
        peak = std::max(peak, count);
    }
    if (in_run) close_run(static_cast<int>(masks.size()) - 1);
    return events;
}

TrackStepResult step_tracks(std::vector<BlobTrack> open_tracks, std::vector<Blob> current_blobs,
                            int& next_track_id, double max_assoc_dist) {
    TrackStepResult result;

    const size_t n_tracks = open_tracks.size();
    const size_t n_blobs = current_blobs.size();
    std::vector<char> track_done(n_tracks, 0);
    std::vector<char> blob_done(n_blobs, 0);

    // Repeated global minimum over all unmatched (track, blob) pairs.
    // O(n^2) per pick; blob counts per frame are tiny.
    const size_t n_matches = std::min(n_tracks, n_blobs);
    for (size_t k = 0; k < n_matches; ++k) {
        bool found = false;
        double best_dist = 0.0;
        size_t best_t = 0;
        size_t best_b = 0;
        for (size_t t = 0; t < n_tracks; ++t) {
            if (track_done[t]) continue;
            for (size_t b = 0; b < n_blobs; ++b) {
                if (blob_done[b]) continue;
                const double d =
                    centroid_distance(open_tracks[t].blobs.back().centroid,
                                      current_blobs[b].centroid);
                if (d > max_assoc_dist) continue;
                // Ties: lower track id first, then lower blob ordering index.
                bool better = !found || d < best_dist;
                if (found && d == best_dist) {
                    better = open_tracks[t].id < open_tracks[best_t].id ||
                             (open_tracks[t].id == open_tracks[best_t].id && b < best_b);
                }
                if (better) {
                    found = true;
                    best_dist = d;
                    best_t = t;
                    best_b = b;
                }
            }
        }
        if (!found) break;  // everything left is beyond the gate
        track_done[best_t] = 1;
        blob_done[best_b] = 1;
        open_tracks[best_t].blobs.push_back(std::move(current_blobs[best_b]));
    }

    for (size_t t = 0; t < n_tracks; ++t) {
        if (track_done[t]) {
            result.grown.push_back(std::move(open_tracks[t]));
        } else {
            open_tracks[t].state = BlobTrack::State::kTerminated;
            result.terminated.push_back(std::move(open_tracks[t]));
        }
    }
    for (size_t b = 0; b < n_blobs; ++b) {
        if (blob_done[b]) continue;
        BlobTrack track;
        track.id = next_track_id++;
        track.blobs.push_back(std::move(current_blobs[b]));
        result.born.push_back(std::move(track));
    }
    return result;
}

std::vector<BlobTrack> track_events(const std::vector<ForegroundMask>& masks,
                                    const DetectionParams& params) {
    params.validate();

    std::vector<BlobTrack> done;
    std::vector<BlobTrack> open;
    int next_id = 0;
    for (int n = 0; n < static_cast<int>(masks.size()); ++n) {
        std::vector<Blob> blobs = extract_blobs(masks[n], n, params.l_min_pixels);
        TrackStepResult step =
            step_tracks(std::move(open), std::move(blobs), next_id, params.max_assoc_dist);
        for (auto& t : step.terminated) done.push_back(std::move(t));
        open = std::move(step.grown);
        for (auto& t : step.born) open.push_back(std::move(t));
    }
    std::sort(open.begin(), open.end(),
              [](const BlobTrack& a, const BlobTrack& b) { return a.id < b.id; });
    for (auto& t : open) {
        t.state = BlobTrack::State::kTerminated;
        done.push_back(std::move(t));
    }
    return done;
}

}  // namespace tripwire
