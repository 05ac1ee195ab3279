// tripwire: people counting from overhead 24x32 thermal door sensors.
//
//   tripwire gen      render a synthetic scenario with ground-truth annotations
//   tripwire count    estimate per-frame occupancy from one or more recordings
//   tripwire eval     compare an estimate against annotations (JSON report)
//   tripwire inspect  dump per-frame masks, centroids and blob tracks as CSV
//
// Exit codes: 0 success, 2 bad input (parse/validation), 1 internal error.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tripwire/config.hpp"
#include "tripwire/frames.hpp"
#include "tripwire/metrics.hpp"
#include "tripwire/pipeline.hpp"
#include "tripwire/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitBadInput = 2;

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;  // key=value
    std::string dump_config_path;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Flat key=value config file");
    cmd->add_option("--set", opts.overrides,
                    "Override one config key, e.g. --set algorithm=baseline (repeatable; "
                    "wins over --config)");
    cmd->add_option("--dump-config", opts.dump_config_path,
                    "Write the effective config to this path and continue");
}

tripwire::Config resolve_config(const CommonOptions& opts) {
    tripwire::Config config;
    if (!opts.config_path.empty()) {
        config = tripwire::parse_config_file(opts.config_path);
    }
    for (const std::string& entry : opts.overrides) {
        const size_t eq = entry.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--set expects key=value, got '" + entry + "'");
        }
        tripwire::apply_config_entry(config, entry.substr(0, eq), entry.substr(eq + 1));
    }
    config.validate();
    if (!opts.dump_config_path.empty()) {
        std::ofstream out(opts.dump_config_path, std::ios::trunc);
        if (!out) throw std::runtime_error(opts.dump_config_path + ": cannot open for writing");
        out << tripwire::dump_config(config);
    }
    return config;
}

void write_text_atomic(const fs::path& path, const std::string& text) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(tmp.string() + ": cannot open for writing");
        out << text;
        out.flush();
        if (!out) throw std::runtime_error(tmp.string() + ": write failed");
    }
    fs::rename(tmp, path);
}

std::string format_frac(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

int run_count(const std::vector<std::string>& recording_paths, const CommonOptions& common,
              const std::string& out_dir, double fps) {
    const tripwire::Config config = resolve_config(common);
    fs::create_directories(out_dir);

    std::vector<std::map<int, int>> per_door_deltas;
    std::vector<tripwire::DoorEvent> all_events;
    int n_frames = -1;
    for (const std::string& path : recording_paths) {
        tripwire::RecordingMeta meta;
        meta.fps = fps;
        meta.door_id = fs::path(path).stem().string();
        meta.entry_direction = config.entry_direction;
        const tripwire::Recording rec = tripwire::parse_recording(path, meta);
        if (n_frames < 0) {
            n_frames = rec.size();
        } else if (rec.size() != n_frames) {
            throw tripwire::ParseError(path + ": recording length " + std::to_string(rec.size()) +
                                       " does not match the first door's " +
                                       std::to_string(n_frames) +
                                       " (multi-door counting needs a shared clock)");
        }
        tripwire::PipelineResult result = tripwire::run_pipeline(rec, config);
        per_door_deltas.push_back(std::move(result.deltas));
        for (auto& e : result.events) all_events.push_back(std::move(e));
    }

    const tripwire::CountSeries counts =
        tripwire::aggregate_doors(per_door_deltas, config.initial_count, std::max(n_frames, 0));
    tripwire::write_counts(counts, fs::path(out_dir) / "counts.csv");

    std::stable_sort(all_events.begin(), all_events.end(),
                     [](const auto& a, const auto& b) { return a.end_frame < b.end_frame; });
    std::string events_csv = "end_frame,verdict,door_id\n";
    for (const tripwire::DoorEvent& e : all_events) {
        events_csv += std::to_string(e.end_frame) + ',' + tripwire::to_string(e.verdict) + ',' +
                      e.door_id + '\n';
    }
    write_text_atomic(fs::path(out_dir) / "events.csv", events_csv);
    return kExitOk;
}

int run_eval(const std::string& annotations_path, const std::string& counts_path,
             const std::string& recording_path, double fps, const CommonOptions& common) {
    const tripwire::Config config = resolve_config(common);

    tripwire::CountSeries estimate;
    if (!counts_path.empty()) {
        estimate = tripwire::parse_counts(counts_path);
    } else {
        tripwire::RecordingMeta meta;
        meta.fps = fps;
        meta.door_id = fs::path(recording_path).stem().string();
        meta.entry_direction = config.entry_direction;
        const tripwire::Recording rec = tripwire::parse_recording(recording_path, meta);
        estimate = tripwire::run_pipeline(rec, config).estimate;
    }

    const tripwire::AnnotationTrack annotations =
        tripwire::parse_annotations(annotations_path, config.initial_count);
    tripwire::CountSeries truth;
    try {
        truth = tripwire::cumulative_counts(annotations, estimate.size());
    } catch (const std::invalid_argument& e) {
        throw tripwire::ParseError(annotations_path + ": " + e.what());
    }

    const tripwire::MetricsReport report =
        tripwire::evaluate(truth, estimate, config.metrics_params());
    json doc;
    doc["mae"] = report.mae;
    doc["mae_pp"] = report.mae_pp ? json(*report.mae_pp) : json(nullptr);
    doc["ccr_wcc"] = report.ccr_wcc;
    doc["w"] = report.w;
    doc["n_frames"] = report.n_frames;
    doc["matched"] = report.matched;
    doc["missed"] = report.missed;
    doc["spurious"] = report.spurious;
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
}

int run_gen(const std::string& scenario_name, std::uint64_t seed, const std::string& out_dir,
            bool list_scenarios) {
    if (list_scenarios) {
        for (const tripwire::Scenario& s : tripwire::standard_suite()) {
            std::cout << s.name << '\n';
        }
        return kExitOk;
    }
    const tripwire::Scenario scenario = tripwire::scenario_by_name(scenario_name, seed);
    const tripwire::Generated data = tripwire::generate(scenario);
    fs::create_directories(out_dir);
    tripwire::write_recording(data.recording, fs::path(out_dir) / "recording.csv");
    tripwire::write_annotations(data.annotations, fs::path(out_dir) / "annotations.csv");
    return kExitOk;
}

int run_inspect(const std::string& recording_path, const CommonOptions& common,
                const std::string& out_dir, double fps) {
    const tripwire::Config config = resolve_config(common);
    tripwire::RecordingMeta meta;
    meta.fps = fps;
    meta.door_id = fs::path(recording_path).stem().string();
    meta.entry_direction = config.entry_direction;
    const tripwire::Recording rec = tripwire::parse_recording(recording_path, meta);
    const tripwire::InspectResult result = tripwire::inspect_recording(rec, config);
    fs::create_directories(out_dir);

    std::string frames_csv = "frame,foreground_pixels,centroid_v\n";
    for (const tripwire::FrameInspection& f : result.frames) {
        frames_csv += std::to_string(f.frame) + ',' + std::to_string(f.foreground_pixels) + ',';
        if (f.centroid_v) frames_csv += format_frac(*f.centroid_v);
        frames_csv += '\n';
    }
    write_text_atomic(fs::path(out_dir) / "frames.csv", frames_csv);

    // One row per (frame, track): the per-frame blob table in frame order.
    std::vector<std::tuple<int, int, const tripwire::Blob*>> rows;
    for (const tripwire::BlobTrack& track : result.tracks) {
        for (const tripwire::Blob& blob : track.blobs) {
            rows.emplace_back(blob.frame_index, track.id, &blob);
        }
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    std::string blobs_csv = "frame,track_id,size,centroid_v,centroid_h\n";
    for (const auto& [frame, track_id, blob] : rows) {
        blobs_csv += std::to_string(frame) + ',' + std::to_string(track_id) + ',' +
                     std::to_string(blob->pixels.size()) + ',' + format_frac(blob->centroid.v) +
                     ',' + format_frac(blob->centroid.h) + '\n';
    }
    write_text_atomic(fs::path(out_dir) / "blobs.csv", blobs_csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"People counting from overhead low-resolution thermal door sensors"};
    app.require_subcommand(1);

    // count
    auto* count_cmd = app.add_subcommand("count", "Estimate occupancy counts from recordings");
    std::vector<std::string> count_recordings;
    CommonOptions count_common;
    std::string count_out_dir = ".";
    double count_fps = 16.0;
    count_cmd->add_option("recordings", count_recordings, "Recording CSVs, one per door")
        ->required();
    count_cmd->add_option("--out-dir", count_out_dir, "Directory for counts.csv and events.csv");
    count_cmd->add_option("--fps", count_fps, "Frames per second of the recordings");
    add_common_options(count_cmd, count_common);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate an estimate against annotations");
    std::string eval_annotations, eval_counts, eval_recording;
    double eval_fps = 16.0;
    CommonOptions eval_common;
    eval_cmd->add_option("--annotations", eval_annotations, "Ground-truth annotations CSV")
        ->required();
    auto* counts_opt =
        eval_cmd->add_option("--counts", eval_counts, "Estimated counts CSV to evaluate");
    eval_cmd->add_option("--recording", eval_recording,
                         "Recording CSV to run the pipeline on instead of --counts")
        ->excludes(counts_opt);
    eval_cmd->add_option("--fps", eval_fps, "Frames per second of --recording");
    add_common_options(eval_cmd, eval_common);

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic recording with ground truth");
    std::string gen_scenario, gen_out_dir = ".";
    std::uint64_t gen_seed = 1;
    bool gen_list = false;
    gen_cmd->add_option("--scenario", gen_scenario, "Scenario name from the standard suite");
    gen_cmd->add_option("--seed", gen_seed, "RNG seed");
    gen_cmd->add_option("--out-dir", gen_out_dir,
                        "Directory for recording.csv and annotations.csv");
    gen_cmd->add_flag("--list", gen_list, "List available scenarios and exit");

    // inspect
    auto* inspect_cmd = app.add_subcommand("inspect", "Dump per-frame diagnostics as CSV");
    std::string inspect_recording_path, inspect_out_dir = ".";
    double inspect_fps = 16.0;
    CommonOptions inspect_common;
    inspect_cmd->add_option("recording", inspect_recording_path, "Recording CSV")->required();
    inspect_cmd->add_option("--out-dir", inspect_out_dir,
                            "Directory for frames.csv and blobs.csv");
    inspect_cmd->add_option("--fps", inspect_fps, "Frames per second of the recording");
    add_common_options(inspect_cmd, inspect_common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (count_cmd->parsed()) {
            return run_count(count_recordings, count_common, count_out_dir, count_fps);
        }
        if (eval_cmd->parsed()) {
            if (eval_counts.empty() && eval_recording.empty()) {
                std::cerr << "eval: provide --counts or --recording\n";
                return kExitBadInput;
            }
            return run_eval(eval_annotations, eval_counts, eval_recording, eval_fps, eval_common);
        }
        if (gen_cmd->parsed()) {
            if (!gen_list && gen_scenario.empty()) {
                std::cerr << "gen: provide --scenario or --list\n";
                return kExitBadInput;
            }
            return run_gen(gen_scenario, gen_seed, gen_out_dir, gen_list);
        }
        if (inspect_cmd->parsed()) {
            return run_inspect(inspect_recording_path, inspect_common, inspect_out_dir,
                               inspect_fps);
        }
    } catch (const tripwire::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
