#pragma once

#include <filesystem>
#include <string>

#include "tripwire/background.hpp"
#include "tripwire/detection.hpp"
#include "tripwire/frames.hpp"
#include "tripwire/metrics.hpp"

namespace tripwire {

enum class Algorithm { kBaseline, kMulti };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& text);

/// Every tunable of the pipeline and the evaluation, with the reference
/// defaults. Persisted as a flat key=value file; unknown keys are rejected.
struct Config {
    // background model
    double alpha = 0.05;
    double sigma = 0.4;
    double eta = 0.015;
    double theta_pf = 0.015;
    double gamma = 0.2;
    bool use_mrf = true;
    int mrf_iterations = 1;
    int warmup_frames = 1;
    // event detection
    int k_min_pixels = 100;
    int l_min_pixels = 100;
    double max_assoc_dist = std::numeric_limits<double>::infinity();
    // event classification / counting
    Algorithm algorithm = Algorithm::kMulti;
    EntryDirection entry_direction = EntryDirection::kInsideIsTop;
    int initial_count = 0;
    // evaluation
    int window_w = 16;

    BackgroundParams background_params() const;
    DetectionParams detection_params() const;
    MetricsParams metrics_params() const;
    void validate() const;  // throws std::invalid_argument
};

/// Applies one `key=value` override. Throws std::invalid_argument on unknown
/// keys or unparseable values.
void apply_config_entry(Config& config, const std::string& key, const std::string& value);

/// Parses flat key=value text ('#' starts a comment, blank lines ignored).
Config parse_config_text(const std::string& text, const Config& base = Config{});

Config parse_config_file(const std::filesystem::path& path, const Config& base = Config{});

/// Canonical key=value dump; parse_config_text(dump_config(c)) reproduces c.
std::string dump_config(const Config& config);

}  // namespace tripwire
