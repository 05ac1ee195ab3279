#include "tripwire/metrics.hpp"

#include <cstdlib>
#include <stdexcept>

namespace tripwire {

void MetricsParams::validate() const {
    if (window_w < 0) throw std::invalid_argument("window_w must be >= 0");
}

namespace {

void require_same_length(const CountSeries& truth, const CountSeries& est) {
    if (truth.size() != est.size()) {
        throw std::invalid_argument("count series length mismatch: truth has " +
                                    std::to_string(truth.size()) + " frames, estimate has " +
                                    std::to_string(est.size()));
    }
}

long long abs_error_sum(const CountSeries& truth, const CountSeries& est) {
    long long sum = 0;
    for (int n = 0; n < truth.size(); ++n) {
        sum += std::llabs(static_cast<long long>(est.counts[n]) - truth.counts[n]);
    }
    return sum;
}

}  // namespace

double mae(const CountSeries& truth, const CountSeries& est) {
    require_same_length(truth, est);
    if (truth.size() == 0) throw std::invalid_argument("mae of empty series");
    return static_cast<double>(abs_error_sum(truth, est)) / truth.size();
}

std::optional<double> mae_pp(const CountSeries& truth, const CountSeries& est) {
    require_same_length(truth, est);
    if (truth.size() == 0) throw std::invalid_argument("mae_pp of empty series");
    long long person_frames = 0;
    for (int v : truth.counts) person_frames += v;
    if (person_frames <= 0) return std::nullopt;
    return static_cast<double>(abs_error_sum(truth, est)) / static_cast<double>(person_frames);
}

CcrResult ccr_wcc(const CountSeries& truth, const CountSeries& est, int w) {
    require_same_length(truth, est);
    if (truth.size() < 2) throw std::invalid_argument("ccr_wcc needs at least 2 frames");
    if (w < 0) throw std::invalid_argument("window must be >= 0");

    const int c = truth.size() - 1;  // number of change positions
    std::vector<int> dy(c), de(c);
    for (int n = 0; n < c; ++n) {
        dy[n] = truth.counts[n + 1] - truth.counts[n];
        de[n] = est.counts[n + 1] - est.counts[n];
    }

    // Offsets probed as 0, -1, +1, -2, +2, ...: taking only strict
    // improvements realizes the tie rule (smallest |d| wins, negative before
    // positive at equal magnitude).
    std::vector<int> probe_order;
    probe_order.reserve(2 * w + 1);
    probe_order.push_back(0);
    for (int a = 1; a <= w; ++a) {
        probe_order.push_back(-a);
        probe_order.push_back(a);
    }

    std::vector<int> err(c);
    std::vector<char> in_nhat(c, 0);
    for (int n = 0; n < c; ++n) {
        int best_e = -1;
        int best_d = 0;
        for (int d : probe_order) {
            const int j = n + d;
            if (j < 0 || j >= c) continue;
            const int e = std::abs(dy[n] - de[j]);
            if (best_e < 0 || e < best_e) {
                best_e = e;
                best_d = d;
            }
        }
        err[n] = best_e;  // d = 0 is always in range, so best_e >= 0
        in_nhat[n + best_d] = 1;
    }

    CcrResult result;
    int denom_set = 0;
    for (int n = 0; n < c; ++n) {
        if (dy[n] != 0 && err[n] == 0) ++result.matched;
        if (dy[n] != 0 && err[n] != 0) ++result.missed;
        if (dy[n] != 0 || err[n] != 0) ++denom_set;
        if (!in_nhat[n] && de[n] != 0) ++result.spurious;
    }
    const int denom = denom_set + result.spurious;
    result.value = denom == 0 ? 1.0 : static_cast<double>(result.matched) / denom;
    return result;
}

MetricsReport evaluate(const CountSeries& truth, const CountSeries& est,
                       const MetricsParams& params) {
    params.validate();
    MetricsReport report;
    report.mae = mae(truth, est);
    report.mae_pp = mae_pp(truth, est);
    const CcrResult ccr = ccr_wcc(truth, est, params.window_w);
    report.ccr_wcc = ccr.value;
    report.matched = ccr.matched;
    report.missed = ccr.missed;
    report.spurious = ccr.spurious;
    report.w = params.window_w;
    report.n_frames = truth.size();
    return report;
}

}  // namespace tripwire
