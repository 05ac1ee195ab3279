#include "tripwire/background.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tripwire {

void BackgroundParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    if (!(theta_pf > 0.0)) throw std::invalid_argument("theta_pf must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
}

BackgroundModel::BackgroundModel(const ThermalFrame& first_frame, const BackgroundParams& params)
    : mu_(first_frame.temps), params_(params) {
    params_.validate();
    log_peak_ = -std::log(params_.sigma * std::sqrt(2.0 * std::numbers::pi));
    inv_two_sigma_sq_ = 1.0 / (2.0 * params_.sigma * params_.sigma);
    log_eta_ = std::log(params_.eta);
    log_theta_pf_ = std::log(params_.theta_pf);
}

BackgroundModel BackgroundModel::from_warmup(const std::vector<ThermalFrame>& frames,
                                             int warmup_frames, const BackgroundParams& params) {
    if (frames.empty()) throw std::invalid_argument("warmup needs at least one frame");
    if (warmup_frames < 1) throw std::invalid_argument("warmup_frames must be >= 1");
    const int w = std::min<int>(warmup_frames, static_cast<int>(frames.size()));
    ThermalFrame mean = frames[0];
    if (w > 1) {
        std::array<double, kPixels> acc{};
        for (int n = 0; n < w; ++n) {
            for (int i = 0; i < kPixels; ++i) acc[i] += frames[n].temps[i];
        }
        for (int i = 0; i < kPixels; ++i) mean.temps[i] = acc[i] / w;
    }
    return BackgroundModel(mean, params);
}

double BackgroundModel::log_density(int pixel, double temp) const {
    const double d = temp - mu_[pixel];
    return log_peak_ - d * d * inv_two_sigma_sq_;
}

double BackgroundModel::density(int pixel, double temp) const {
    return std::exp(log_density(pixel, temp));
}

ForegroundMask BackgroundModel::classify(const ThermalFrame& frame) const {
    ForegroundMask mask;
    for (int i = 0; i < kPixels; ++i) {
        mask[i] = log_density(i, frame.temps[i]) < log_eta_;
    }
    return mask;
}

ForegroundMask BackgroundModel::refine(const ThermalFrame& frame,
                                       const ForegroundMask& seed) const {
    ForegroundMask out;
    for (int r = 0; r < kRows; ++r) {
        for (int c = 0; c < kCols; ++c) {
            int q_fg = 0;
            int q_bg = 0;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int nr = r + dr;
                    const int nc = c + dc;
                    if (nr < 0 || nr >= kRows || nc < 0 || nc >= kCols) continue;
                    if (seed[pixel_index(nr, nc)]) ++q_fg; else ++q_bg;
                }
            }
            const int i = pixel_index(r, c);
            const double threshold = log_theta_pf_ + (q_fg - q_bg) / params_.gamma;
            out[i] = log_density(i, frame.temps[i]) < threshold;
        }
    }
    return out;
}

void BackgroundModel::update(const ThermalFrame& frame, const ForegroundMask& mask) {
    const double a = params_.alpha;
    for (int i = 0; i < kPixels; ++i) {
        if (!mask[i]) {
            mu_[i] = a * frame.temps[i] + (1.0 - a) * mu_[i];
        }
    }
}

ForegroundMask BackgroundModel::subtract(const ThermalFrame& frame, bool use_mrf,
                                         int mrf_iterations) {
    if (mrf_iterations < 1) throw std::invalid_argument("mrf_iterations must be >= 1");
    ForegroundMask mask = classify(frame);
    if (use_mrf) {
        for (int k = 0; k < mrf_iterations; ++k) {
            mask = refine(frame, mask);
        }
    }
    update(frame, mask);
    return mask;
}

}  // namespace tripwire
