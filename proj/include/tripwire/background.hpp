#pragma once

#include <array>
#include <bitset>
#include <vector>

#include "tripwire/frames.hpp"

namespace tripwire {

/// Per-frame binary segmentation, row-major. true = foreground (warm body),
/// false = background.
using ForegroundMask = std::bitset<kPixels>;

/// Parameters of the running-Gaussian-average model and its MRF refinement.
struct BackgroundParams {
    double alpha = 0.05;     // mean-update weight, 0 < alpha < 1
    double sigma = 0.4;      // Gaussian std dev in deg C, same for all pixels
    double eta = 0.015;      // density threshold of the background test
    double theta_pf = 0.015; // MRF constant: theta times the (uniform) foreground density
    double gamma = 0.2;      // MRF coupling; smaller = stronger neighbor influence

    void validate() const;  // throws std::invalid_argument
};

/// Per-pixel running Gaussian average of the background temperature.
///
/// Per frame: classify against the stored means, optionally refine with the
/// MRF pass, then update the means from background-labeled pixels only
/// (foreground pixels leave their mean untouched). All decisions are made in
/// the log-density domain, so extreme neighbor counts or tiny gamma cannot
/// overflow.
class BackgroundModel {
public:
    /// Seeds every per-pixel mean from `first_frame`, which is assumed
    /// person-free.
    BackgroundModel(const ThermalFrame& first_frame, const BackgroundParams& params);

    /// Seeds the means from the per-pixel average of the first
    /// min(warmup_frames, frames.size()) frames. `frames` must be nonempty.
    static BackgroundModel from_warmup(const std::vector<ThermalFrame>& frames,
                                       int warmup_frames, const BackgroundParams& params);

    /// Gaussian background density of temperature `temp` at pixel `pixel`:
    /// exp(-(temp-mu)^2 / (2 sigma^2)) / (sigma sqrt(2 pi)).
    double density(int pixel, double temp) const;
    double log_density(int pixel, double temp) const;

    /// Pointwise hypothesis test: background iff density >= eta (ties go to
    /// background).
    ForegroundMask classify(const ThermalFrame& frame) const;

    /// One synchronous MRF pass: pixel x stays background iff
    ///   log density >= log(theta_pf) + (Q_F[x] - Q_B[x]) / gamma
    /// where Q_F/Q_B count foreground/background neighbors of x in `seed`
    /// over the 8-neighborhood (border pixels use in-bounds neighbors only).
    /// Every decision reads `seed`, never the partially refined mask.
    ForegroundMask refine(const ThermalFrame& frame, const ForegroundMask& seed) const;

    /// Mean update: background pixels get mu <- alpha*T + (1-alpha)*mu,
    /// foreground pixels keep their mean bit-exactly.
    void update(const ThermalFrame& frame, const ForegroundMask& mask);

    /// classify, then `mrf_iterations` refine passes if use_mrf, then update
    /// with the final mask. Returns the final mask.
    ForegroundMask subtract(const ThermalFrame& frame, bool use_mrf, int mrf_iterations = 1);

    const std::array<double, kPixels>& mean() const { return mu_; }
    const BackgroundParams& params() const { return params_; }

private:
    std::array<double, kPixels> mu_{};
    BackgroundParams params_;
    // Derived constants of the log-domain tests.
    double log_peak_ = 0.0;          // log(1 / (sigma sqrt(2 pi)))
    double inv_two_sigma_sq_ = 0.0;  // 1 / (2 sigma^2)
    double log_eta_ = 0.0;
    double log_theta_pf_ = 0.0;
};

}  // namespace tripwire
