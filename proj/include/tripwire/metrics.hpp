#pragma once

#include <optional>

#include "tripwire/frames.hpp"

namespace tripwire {

struct MetricsParams {
    int window_w = 16;  // jitter tolerance of the windowed change metric, in frames

    void validate() const;
};

struct MetricsReport {
    double mae = 0.0;
    // Sum of absolute count errors over the summed true counts. Undefined
    // (nullopt) when the true counts sum to zero or less.
    std::optional<double> mae_pp;
    double ccr_wcc = 1.0;
    int w = 16;
    int n_frames = 0;
    int matched = 0;   // true changes matched by an equal estimated change in the window
    int missed = 0;    // true changes with no equal estimated change in the window
    int spurious = 0;  // estimated changes absorbed by no window match (the M term)
};

/// Mean absolute error between per-frame counts: (1/N) sum |est - truth|.
/// Throws std::invalid_argument on length mismatch or empty series.
double mae(const CountSeries& truth, const CountSeries& est);

/// Per-person MAE: sum |est - truth| / sum truth. Returns nullopt when the
/// denominator is not positive.
std::optional<double> mae_pp(const CountSeries& truth, const CountSeries& est);

struct CcrResult {
    double value = 1.0;
    int matched = 0;
    int missed = 0;
    int spurious = 0;
};

/// Windowed count-change correct-classification rate.
///
/// Over the N-1 change positions (delta_y[n] = y[n+1]-y[n], 0-based; the
/// formulation is 1-based but only the window semantics matter):
///   e[n]     = min over d in [-w,w], n+d in range, of |delta_y[n] - delta_est[n+d]|
///   dsel[n]  = the argmin d (ties: smallest |d| wins, negative before
///              positive at equal magnitude)
///   Nhat     = union of { n + dsel[n] } over all n
///   M        = #{ n not in Nhat : delta_est[n] != 0 }
///   CCR      = #{ n : delta_y[n] != 0 and e[n] == 0 }
///              / ( #{ n : delta_y[n] != 0 or e[n] != 0 } + M )
/// Out-of-range window offsets are skipped, never clamped. A 0/0 ratio (no
/// changes anywhere) is defined as 1.0. Throws on length mismatch or N < 2.
CcrResult ccr_wcc(const CountSeries& truth, const CountSeries& est, int w);

/// All three metrics plus the change diagnostics in one report.
MetricsReport evaluate(const CountSeries& truth, const CountSeries& est,
                       const MetricsParams& params);

}  // namespace tripwire
