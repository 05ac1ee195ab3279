#include "tripwire/frames.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

namespace tripwire {

namespace {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

bool parse_double(std::string_view text, double& out) {
    const char* first = text.data();
    const char* last = first + text.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

bool parse_int(std::string_view text, long long& out) {
    const char* first = text.data();
    const char* last = first + text.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

// Strips a trailing '\r' so CRLF files still parse; the writer always emits LF.
void chomp(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    return in;
}

template <typename WriteBody>
void write_atomic(const std::filesystem::path& path, WriteBody&& body) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(tmp.string() + ": cannot open for writing");
        body(out);
        out.flush();
        if (!out) throw std::runtime_error(tmp.string() + ": write failed");
    }
    std::filesystem::rename(tmp, path);
}

std::string recording_header() {
    std::string h = "frame";
    for (int i = 0; i < kPixels; ++i) {
        h += ",t";
        h += std::to_string(i);
    }
    return h;
}

[[noreturn]] void fail(const std::filesystem::path& path, int row, const std::string& what) {
    throw ParseError(path.string() + " row " + std::to_string(row) + ": " + what);
}

}  // namespace

std::string to_string(EntryDirection dir) {
    return dir == EntryDirection::kInsideIsTop ? "inside-is-top" : "inside-is-bottom";
}

EntryDirection entry_direction_from_string(const std::string& text) {
    if (text == "inside-is-top") return EntryDirection::kInsideIsTop;
    if (text == "inside-is-bottom") return EntryDirection::kInsideIsBottom;
    throw std::invalid_argument("unknown entry direction '" + text +
                                "' (expected inside-is-top or inside-is-bottom)");
}

void validate_frame(const ThermalFrame& frame, const std::string& context) {
    const std::string prefix = context.empty() ? "frame " + std::to_string(frame.index)
                                               : context;
    for (int i = 0; i < kPixels; ++i) {
        const double t = frame.temps[i];
        if (!std::isfinite(t)) {
            throw ParseError(prefix + ": t" + std::to_string(i) + " is not finite");
        }
        if (t < kMinTempC || t > kMaxTempC) {
            throw ParseError(prefix + ": t" + std::to_string(i) + " = " + format_double(t) +
                             " outside sanity band [-20,120] C");
        }
    }
}

Recording parse_recording(const std::filesystem::path& path, const RecordingMeta& meta) {
    std::ifstream in = open_input(path);
    if (meta.fps <= 0) throw std::invalid_argument("fps must be positive");

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file (missing header)");
    chomp(line);
    if (line != recording_header()) {
        throw ParseError(path.string() + " row 1: bad header (expected frame,t0,...,t767)");
    }

    Recording rec;
    rec.fps = meta.fps;
    rec.door_id = meta.door_id;
    rec.entry_direction = meta.entry_direction;

    int row = 1;
    int expected_index = 0;
    while (std::getline(in, line)) {
        ++row;
        chomp(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);

        long long index = 0;
        if (!parse_int(fields[0], index)) {
            fail(path, row, "bad frame index '" + std::string(fields[0]) + "'");
        }
        const std::string where = "frame " + std::to_string(index);
        if (fields.size() != kPixels + 1) {
            fail(path, row, where + ": expected 768 values, got " +
                                std::to_string(fields.size() - 1));
        }
        if (index != expected_index) {
            fail(path, row, where + ": frame indices must increase by 1 from 0 (expected " +
                                std::to_string(expected_index) + ")");
        }

        ThermalFrame frame;
        frame.index = static_cast<int>(index);
        for (int i = 0; i < kPixels; ++i) {
            double v = 0.0;
            if (!parse_double(fields[i + 1], v)) {
                fail(path, row, where + ": bad value '" + std::string(fields[i + 1]) + "' at t" +
                                    std::to_string(i));
            }
            frame.temps[i] = v;
        }
        try {
            validate_frame(frame, where);
        } catch (const ParseError& e) {
            fail(path, row, e.what());
        }
        rec.frames.push_back(frame);
        ++expected_index;
    }
    return rec;
}

void write_recording(const Recording& rec, const std::filesystem::path& path) {
    write_atomic(path, [&](std::ostream& out) {
        out << recording_header() << '\n';
        std::string line;
        for (const ThermalFrame& frame : rec.frames) {
            line.clear();
            line += std::to_string(frame.index);
            for (int i = 0; i < kPixels; ++i) {
                line += ',';
                line += format_double(frame.temps[i]);
            }
            line += '\n';
            out << line;
        }
    });
}

AnnotationTrack parse_annotations(const std::filesystem::path& path, int initial_count) {
    std::ifstream in = open_input(path);
    if (initial_count < 0) throw std::invalid_argument("initial_count must be non-negative");

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file (missing header)");
    chomp(line);
    if (line != "frame,delta") {
        throw ParseError(path.string() + " row 1: bad header (expected frame,delta)");
    }

    AnnotationTrack ann;
    ann.initial_count = initial_count;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        chomp(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2) fail(path, row, "expected 2 fields (frame,delta)");

        long long frame = 0, delta = 0;
        if (!parse_int(fields[0], frame) || frame < 0) {
            fail(path, row, "bad frame index '" + std::string(fields[0]) + "'");
        }
        if (!parse_int(fields[1], delta)) {
            fail(path, row, "non-integer delta '" + std::string(fields[1]) + "'");
        }
        if (delta == 0) {
            fail(path, row, "zero delta at frame " + std::to_string(frame));
        }
        auto [it, inserted] = ann.deltas.emplace(static_cast<int>(frame), static_cast<int>(delta));
        (void)it;
        if (!inserted) fail(path, row, "duplicate frame " + std::to_string(frame));
    }
    return ann;
}

void write_annotations(const AnnotationTrack& ann, const std::filesystem::path& path) {
    write_atomic(path, [&](std::ostream& out) {
        out << "frame,delta\n";
        for (const auto& [frame, delta] : ann.deltas) {
            out << frame << ',' << delta << '\n';
        }
    });
}

CountSeries parse_counts(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file (missing header)");
    chomp(line);
    if (line != "frame,count") {
        throw ParseError(path.string() + " row 1: bad header (expected frame,count)");
    }

    CountSeries series;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        chomp(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2) fail(path, row, "expected 2 fields (frame,count)");

        long long frame = 0, count = 0;
        if (!parse_int(fields[0], frame)) {
            fail(path, row, "bad frame index '" + std::string(fields[0]) + "'");
        }
        if (frame != series.size()) {
            fail(path, row, "frame indices must increase by 1 from 0 (expected " +
                                std::to_string(series.size()) + ")");
        }
        if (!parse_int(fields[1], count)) {
            fail(path, row, "non-integer count '" + std::string(fields[1]) + "'");
        }
        series.counts.push_back(static_cast<int>(count));
    }
    return series;
}

void write_counts(const CountSeries& series, const std::filesystem::path& path) {
    write_atomic(path, [&](std::ostream& out) {
        out << "frame,count\n";
        for (int n = 0; n < series.size(); ++n) {
            out << n << ',' << series.counts[n] << '\n';
        }
    });
}

CountSeries cumulative_counts(const AnnotationTrack& ann, int n_frames) {
    if (n_frames < 0) throw std::invalid_argument("n_frames must be non-negative");
    if (!ann.deltas.empty()) {
        const int last = ann.deltas.rbegin()->first;
        if (last >= n_frames) {
            throw std::invalid_argument("annotation delta at frame " + std::to_string(last) +
                                        " exceeds recording length " + std::to_string(n_frames));
        }
        if (ann.deltas.begin()->first < 0) throw std::invalid_argument("negative delta frame");
    }
    CountSeries series;
    series.counts.resize(n_frames);
    int running = ann.initial_count;
    auto it = ann.deltas.begin();
    for (int n = 0; n < n_frames; ++n) {
        while (it != ann.deltas.end() && it->first == n) {
            running += it->second;
            ++it;
        }
        series.counts[n] = running;
    }
    return series;
}

}  // namespace tripwire
