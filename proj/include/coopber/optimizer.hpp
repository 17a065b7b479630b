#pragma once

#include <functional>
#include <span>
#include <vector>

#include "coopber/analytic.hpp"
#include "coopber/types.hpp"

namespace coopber::optimizer {

/// Coarse scan bracket and resolution for the threshold search, in dB.
struct SearchGrid {
    double lo_db = -20.0;
    double hi_db = 20.0;
    double step_db = 0.5;
    double tolerance_db = 0.01;
};

struct ThresholdOptimum {
    double gamma_opt_db = 0.0;
    double ber = 0.0;
    /// More than one local minimum on the coarse grid; the global grid minimum
    /// was refined.
    bool multimodal = false;
};

struct ThresholdPoint {
    double total_snr_db;
    double gamma_opt_db;
    double ber_at_opt;
    bool multimodal;
};

struct ThresholdCurve {
    std::vector<ThresholdPoint> points;

    /// True when gamma_opt never decreases with SNR. Reported, not enforced.
    bool thresholds_non_decreasing() const;
};

/// Golden-section search for a minimum of `f` on [lo, hi], stopping once the
/// bracket is narrower than `tolerance`. Returns the abscissa of the best
/// evaluated point.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tolerance);

/// Threshold (dB) minimising the analytic end-to-end BER at one total SNR.
/// `tmpl` fixes M, the power split and the channel variances; its threshold
/// and absolute powers are ignored.
ThresholdOptimum find_gamma_opt(double total_snr_db, const SystemConfig& tmpl,
                                const analytic::E2eOptions& options = {}, const SearchGrid& grid = {});

/// One find_gamma_opt per SNR; `snr_db` must be non-empty and strictly increasing.
ThresholdCurve sweep(const SystemConfig& tmpl, std::span<const double> snr_db,
                     const analytic::E2eOptions& options = {}, const SearchGrid& grid = {});

}  // namespace coopber::optimizer
