#include "tripwire/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tripwire {

std::string to_string(Algorithm a) {
    return a == Algorithm::kBaseline ? "baseline" : "multi";
}

Algorithm algorithm_from_string(const std::string& text) {
    if (text == "baseline") return Algorithm::kBaseline;
    if (text == "multi") return Algorithm::kMulti;
    throw std::invalid_argument("unknown algorithm '" + text + "' (expected baseline or multi)");
}

BackgroundParams Config::background_params() const {
    return BackgroundParams{alpha, sigma, eta, theta_pf, gamma};
}

DetectionParams Config::detection_params() const {
    return DetectionParams{k_min_pixels, l_min_pixels, max_assoc_dist};
}

MetricsParams Config::metrics_params() const { return MetricsParams{window_w}; }

void Config::validate() const {
    background_params().validate();
    detection_params().validate();
    metrics_params().validate();
    if (mrf_iterations < 1) throw std::invalid_argument("mrf_iterations must be >= 1");
    if (warmup_frames < 1) throw std::invalid_argument("warmup_frames must be >= 1");
    if (initial_count < 0) throw std::invalid_argument("initial_count must be >= 0");
}

namespace {

double parse_double_value(const std::string& key, const std::string& value) {
    if (value == "inf") return std::numeric_limits<double>::infinity();
    double out = 0.0;
    const char* first = value.data();
    const char* last = first + value.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw std::invalid_argument("config key '" + key + "': bad number '" + value + "'");
    }
    return out;
}

int parse_int_value(const std::string& key, const std::string& value) {
    int out = 0;
    const char* first = value.data();
    const char* last = first + value.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw std::invalid_argument("config key '" + key + "': bad integer '" + value + "'");
    }
    return out;
}

bool parse_bool_value(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw std::invalid_argument("config key '" + key + "': bad boolean '" + value +
                                "' (expected true or false)");
}

std::string format_value(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_entry(Config& config, const std::string& key, const std::string& value) {
    if (key == "alpha") config.alpha = parse_double_value(key, value);
    else if (key == "sigma") config.sigma = parse_double_value(key, value);
    else if (key == "eta") config.eta = parse_double_value(key, value);
    else if (key == "theta_pf") config.theta_pf = parse_double_value(key, value);
    else if (key == "gamma") config.gamma = parse_double_value(key, value);
    else if (key == "use_mrf") config.use_mrf = parse_bool_value(key, value);
    else if (key == "mrf_iterations") config.mrf_iterations = parse_int_value(key, value);
    else if (key == "warmup_frames") config.warmup_frames = parse_int_value(key, value);
    else if (key == "k_min_pixels") config.k_min_pixels = parse_int_value(key, value);
    else if (key == "l_min_pixels") config.l_min_pixels = parse_int_value(key, value);
    else if (key == "max_assoc_dist") config.max_assoc_dist = parse_double_value(key, value);
    else if (key == "algorithm") config.algorithm = algorithm_from_string(value);
    else if (key == "entry_direction") config.entry_direction = entry_direction_from_string(value);
    else if (key == "initial_count") config.initial_count = parse_int_value(key, value);
    else if (key == "window_w") config.window_w = parse_int_value(key, value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

Config parse_config_text(const std::string& text, const Config& base) {
    Config config = base;
    std::istringstream in(text);
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config row " + std::to_string(row) +
                                        ": expected key=value, got '" + line + "'");
        }
        apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    config.validate();
    return config;
}

Config parse_config_file(const std::filesystem::path& path, const Config& base) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config_text(buf.str(), base);
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string dump_config(const Config& c) {
    std::ostringstream out;
    out << "alpha=" << format_value(c.alpha) << '\n'
        << "sigma=" << format_value(c.sigma) << '\n'
        << "eta=" << format_value(c.eta) << '\n'
        << "theta_pf=" << format_value(c.theta_pf) << '\n'
        << "gamma=" << format_value(c.gamma) << '\n'
        << "use_mrf=" << (c.use_mrf ? "true" : "false") << '\n'
        << "mrf_iterations=" << c.mrf_iterations << '\n'
        << "warmup_frames=" << c.warmup_frames << '\n'
        << "k_min_pixels=" << c.k_min_pixels << '\n'
        << "l_min_pixels=" << c.l_min_pixels << '\n'
        << "max_assoc_dist=" << format_value(c.max_assoc_dist) << '\n'
        << "algorithm=" << to_string(c.algorithm) << '\n'
        << "entry_direction=" << to_string(c.entry_direction) << '\n'
        << "initial_count=" << c.initial_count << '\n'
        << "window_w=" << c.window_w << '\n';
    return out.str();
}

}  // namespace tripwire
