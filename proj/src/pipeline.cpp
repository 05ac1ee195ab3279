#include "tripwire/pipeline.hpp"

#include <algorithm>

#include "tripwire/background.hpp"

namespace tripwire {

namespace {

std::vector<ForegroundMask> subtract_stream(const Recording& rec, const Config& config) {
    std::vector<ForegroundMask> masks;
    masks.reserve(rec.frames.size());
    BackgroundModel model =
        BackgroundModel::from_warmup(rec.frames, config.warmup_frames, config.background_params());
    for (const ThermalFrame& frame : rec.frames) {
        masks.push_back(model.subtract(frame, config.use_mrf, config.mrf_iterations));
    }
    return masks;
}

CentroidTrace trace_of_baseline(const BaselineEvent& event) {
    CentroidTrace trace;
    trace.samples.reserve(event.pixels_per_frame.size());
    for (size_t i = 0; i < event.pixels_per_frame.size(); ++i) {
        const Centroid c = centroid(event.pixels_per_frame[i]);
        trace.samples.push_back({event.start_frame + static_cast<int>(i), c.v});
    }
    return trace;
}

CentroidTrace trace_of_track(const BlobTrack& track) {
    CentroidTrace trace;
    trace.samples.reserve(track.blobs.size());
    for (const Blob& blob : track.blobs) {
        trace.samples.push_back({blob.frame_index, blob.centroid.v});
    }
    return trace;
}

std::vector<DoorEvent> detect_and_classify(const Recording& rec,
                                           const std::vector<ForegroundMask>& masks,
                                           const Config& config) {
    std::vector<DoorEvent> events;
    if (config.algorithm == Algorithm::kBaseline) {
        for (const BaselineEvent& ev : baseline_segment(masks, config.k_min_pixels)) {
            DoorEvent door_event;
            door_event.end_frame = ev.end_frame;
            door_event.trace = trace_of_baseline(ev);
            door_event.verdict = classify(door_event.trace, rec.entry_direction);
            door_event.door_id = rec.door_id;
            events.push_back(std::move(door_event));
        }
    } else {
        for (const BlobTrack& track : track_events(masks, config.detection_params())) {
            DoorEvent door_event;
            door_event.end_frame = track.end_frame();
            door_event.trace = trace_of_track(track);
            door_event.verdict = classify(door_event.trace, rec.entry_direction);
            door_event.door_id = rec.door_id;
            events.push_back(std::move(door_event));
        }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const DoorEvent& a, const DoorEvent& b) {
                         return a.end_frame < b.end_frame;
                     });
    return events;
}

}  // namespace

PipelineResult run_pipeline(const Recording& rec, const Config& config) {
    config.validate();
    PipelineResult result;
    if (!rec.frames.empty()) {
        const std::vector<ForegroundMask> masks = subtract_stream(rec, config);
        result.events = detect_and_classify(rec, masks, config);
        result.deltas = events_to_deltas(result.events);
    }
    AnnotationTrack track;
    track.deltas = result.deltas;
    track.initial_count = config.initial_count;
    result.estimate = cumulative_counts(track, rec.size());
    return result;
}

InspectResult inspect_recording(const Recording& rec, const Config& config) {
    config.validate();
    InspectResult result;
    if (rec.frames.empty()) return result;

    const std::vector<ForegroundMask> masks = subtract_stream(rec, config);
    result.frames.reserve(masks.size());
    for (int n = 0; n < static_cast<int>(masks.size()); ++n) {
        FrameInspection info;
        info.frame = n;
        info.foreground_pixels = static_cast<int>(masks[n].count());
        if (info.foreground_pixels > 0) {
            std::vector<int> pixels;
            pixels.reserve(info.foreground_pixels);
            for (int i = 0; i < kPixels; ++i) {
                if (masks[n][i]) pixels.push_back(i);
            }
            info.centroid_v = centroid(pixels).v;
        }
        result.frames.push_back(info);
    }
    result.tracks = track_events(masks, config.detection_params());
    return result;
}

}  // namespace tripwire
