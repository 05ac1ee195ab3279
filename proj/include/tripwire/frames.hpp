#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tripwire {

// Fixed sensor geometry: 24 rows x 32 columns, stored row-major with row 0 at
// the top of the image. Rows run parallel to the door frame, so a person
// crossing the door moves along the row (vertical) axis. This orientation is
// part of the on-disk format contract.
inline constexpr int kRows = 24;
inline constexpr int kCols = 32;
inline constexpr int kPixels = kRows * kCols;

// Temperatures outside this band are rejected as sensor corruption.
inline constexpr double kMinTempC = -20.0;
inline constexpr double kMaxTempC = 120.0;

constexpr int pixel_index(int row, int col) { return row * kCols + col; }
constexpr int pixel_row(int index) { return index / kCols; }
constexpr int pixel_col(int index) { return index % kCols; }

// Mid-line of the 24-row frame in row coordinates: rows 0..11 form the upper
// half, rows 12..23 the lower half. Crossing it is what makes an event an
// entry or an exit.
inline constexpr double kMidlineRow = 11.5;

/// Which vertical half of the image is the interior of the room.
enum class EntryDirection { kInsideIsTop, kInsideIsBottom };

std::string to_string(EntryDirection dir);
EntryDirection entry_direction_from_string(const std::string& text);

/// Raised on malformed input files. Messages name the file, the offending
/// data row and, where known, the frame index.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One 24x32 grid of Celsius temperatures at a frame ordinal.
struct ThermalFrame {
    int index = 0;
    std::array<double, kPixels> temps{};

    double at(int row, int col) const { return temps[pixel_index(row, col)]; }
    bool operator==(const ThermalFrame&) const = default;
};

/// Throws ParseError if any temperature is non-finite or outside the sanity
/// band. `context` prefixes the error message.
void validate_frame(const ThermalFrame& frame, const std::string& context = {});

struct RecordingMeta {
    double fps = 16.0;
    std::string door_id;
    EntryDirection entry_direction = EntryDirection::kInsideIsTop;
};

/// An ordered thermal sequence from one door sensor. Frame indices run
/// 0,1,2,... without gaps.
struct Recording {
    std::vector<ThermalFrame> frames;
    double fps = 16.0;
    std::string door_id;
    EntryDirection entry_direction = EntryDirection::kInsideIsTop;

    int size() const { return static_cast<int>(frames.size()); }
    bool operator==(const Recording&) const = default;
};

/// Sparse ground-truth people-count changes: frame index -> nonzero delta,
/// plus the people count before frame 0.
struct AnnotationTrack {
    std::map<int, int> deltas;
    int initial_count = 0;

    bool operator==(const AnnotationTrack&) const = default;
};

/// Per-frame integer occupancy counts. Values may go negative: estimation
/// drift is preserved, never clamped.
struct CountSeries {
    std::vector<int> counts;

    int size() const { return static_cast<int>(counts.size()); }
    bool operator==(const CountSeries&) const = default;
};

// CSV formats (UTF-8, LF line endings, '.' decimal separator):
//   recording.csv    header "frame,t0,t1,...,t767", one frame per row
//   annotations.csv  header "frame,delta", one row per nonzero change
//   counts.csv       header "frame,count", one row per frame
// Writers emit to a temporary file and rename into place. Temperatures are
// written with shortest-round-trip precision, so parse(write(x)) == x.

Recording parse_recording(const std::filesystem::path& path, const RecordingMeta& meta);
void write_recording(const Recording& rec, const std::filesystem::path& path);

AnnotationTrack parse_annotations(const std::filesystem::path& path, int initial_count = 0);
void write_annotations(const AnnotationTrack& ann, const std::filesystem::path& path);

CountSeries parse_counts(const std::filesystem::path& path);
void write_counts(const CountSeries& series, const std::filesystem::path& path);

/// Expands annotation deltas into a length-`n_frames` count series. A delta
/// takes effect at its own frame: counts[n] = initial + sum of deltas at
/// indices <= n. Throws std::invalid_argument if a delta index >= n_frames.
CountSeries cumulative_counts(const AnnotationTrack& ann, int n_frames);

}  // namespace tripwire
