#include "coopber/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coopber::optimizer {

bool ThresholdCurve::thresholds_non_decreasing() const {
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].gamma_opt_db < points[i - 1].gamma_opt_db) return false;
    }
    return true;
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tolerance) {
    if (!(lo <= hi)) throw std::invalid_argument("golden_section_minimize: lo > hi");
    if (!(tolerance > 0.0)) throw std::invalid_argument("golden_section_minimize: tolerance must be > 0");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tolerance) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

namespace {

/// Number of local minima of a sampled curve, ignoring flat steps.
int count_local_minima(const std::vector<double>& v) {
    std::vector<int> slope;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double diff = v[i] - v[i - 1];
        const double scale = std::max(std::abs(v[i]), std::abs(v[i - 1]));
        if (std::abs(diff) <= 1e-14 * scale) continue;
        slope.push_back(diff > 0.0 ? 1 : -1);
    }
    if (slope.empty()) return 1;
    int minima = 0;
    if (slope.front() > 0) ++minima;
    if (slope.back() < 0) ++minima;
    for (std::size_t i = 1; i < slope.size(); ++i) {
        if (slope[i - 1] < 0 && slope[i] > 0) ++minima;
    }
    return minima;
}

}  // namespace

ThresholdOptimum find_gamma_opt(double total_snr_db, const SystemConfig& tmpl,
                                const analytic::E2eOptions& options, const SearchGrid& grid) {
    if (!(grid.step_db > 0.0 && grid.lo_db < grid.hi_db)) throw std::invalid_argument("find_gamma_opt: bad grid");
    const SystemConfig base = tmpl.with_total_snr(db_to_linear(total_snr_db));
    auto objective = [&](double threshold_db) {
        return analytic::p_e2e(base.with_threshold(db_to_linear(threshold_db)), options).value;
    };

    const int n = static_cast<int>(std::lround((grid.hi_db - grid.lo_db) / grid.step_db)) + 1;
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = grid.lo_db + i * grid.step_db;
        ys[i] = objective(xs[i]);
    }
    const auto best = static_cast<int>(std::min_element(ys.begin(), ys.end()) - ys.begin());

    ThresholdOptimum out;
    out.multimodal = count_local_minima(ys) > 1;
    const double lo = xs[std::max(0, best - 1)];
    const double hi = xs[std::min(n - 1, best + 1)];
    const double x = golden_section_minimize(objective, lo, hi, grid.tolerance_db);
    const double fx = objective(x);
    if (fx <= ys[best]) {
        out.gamma_opt_db = x;
        out.ber = fx;
    } else {
        out.gamma_opt_db = xs[best];
        out.ber = ys[best];
    }
    return out;
}

ThresholdCurve sweep(const SystemConfig& tmpl, std::span<const double> snr_db,
                     const analytic::E2eOptions& options, const SearchGrid& grid) {
    if (snr_db.empty()) throw std::invalid_argument("sweep: empty SNR list");
    for (std::size_t i = 1; i < snr_db.size(); ++i) {
        if (!(snr_db[i] > snr_db[i - 1])) throw std::invalid_argument("sweep: SNR list must be strictly increasing");
    }
    ThresholdCurve curve;
    curve.points.reserve(snr_db.size());
    for (double snr : snr_db) {
        const ThresholdOptimum opt = find_gamma_opt(snr, tmpl, options, grid);
        curve.points.push_back({snr, opt.gamma_opt_db, opt.ber, opt.multimodal});
    }
    return curve;
}

}  // namespace coopber::optimizer
