#include "coopber/commands.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "coopber/analytic.hpp"
#include "coopber/montecarlo.hpp"
#include "coopber/optimizer.hpp"

namespace coopber::commands {

namespace {

double parse_double(std::string_view text, std::string_view what) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + std::string(what) + " from '" + s + "'");
    }
    if (used != s.size()) throw UsageError("trailing characters in " + std::string(what) + ": '" + s + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    while (true) {
        const std::size_t end = text.find(sep, begin);
        parts.push_back(text.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin));
        if (end == std::string_view::npos) break;
        begin = end + 1;
    }
    return parts;
}

constexpr std::array<double, 9> kReferenceThresholdsDb{-7.9, -3.9, -0.7, 1.9, 4.0, 5.7, 7.25, 8.4, 9.5};

}  // namespace

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::analytic: return "analytic";
        case Mode::sim: return "sim";
        case Mode::perfect_sim: return "perfect-sim";
    }
    return "unknown";
}

std::vector<double> SnrRange::points() const {
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double v = start + k * step;
        if (v > stop + 1e-9 * std::max(1.0, std::abs(stop))) break;
        out.push_back(v);
    }
    return out;
}

void SweepSpec::validate() const {
    if (relays.empty()) throw UsageError("at least one relay count is required");
    for (int m : relays) {
        if (m < 0) throw UsageError("relay count must be >= 0");
    }
    if (!(std::isfinite(snr.start) && std::isfinite(snr.stop) && snr.start <= snr.stop)) {
        throw UsageError("SNR range needs start <= stop");
    }
    if (!(snr.step > 0.0)) throw UsageError("SNR step must be > 0");
    if (modes.empty()) throw UsageError("at least one mode is required");
    if (trials < 1) throw UsageError("trials must be >= 1");
    if (chunk_size < 1) throw UsageError("chunk size must be >= 1");
    if (!(p_s_share > 0.0 && p_r_share > 0.0)) throw UsageError("power split shares must be > 0");
    if (std::isnan(threshold_db)) throw UsageError("threshold is not a number");
    if (!(slope_lo_db < slope_hi_db)) throw UsageError("slope window needs lo < hi");
}

SystemConfig SweepSpec::config(int m_relays, double total_snr_db) const {
    ScenarioDb s;
    s.m_relays = m_relays;
    s.threshold_db = threshold_db;
    s.total_snr_db = total_snr_db;
    s.sigma2_sd_db = sigma2_sd_db;
    s.sigma2_sr_db = sigma2_sr_db;
    s.sigma2_rd_db = sigma2_rd_db;
    s.p_s_share = p_s_share;
    s.p_r_share = p_r_share;
    return s.to_config();
}

bool SweepSpec::has_reference_thresholds(int m_relays) const {
    return m_relays == 4 && sigma2_sd_db == -3.0 && sigma2_sr_db == 0.0 && sigma2_rd_db == 0.0 &&
           p_s_share == p_r_share;
}

SnrRange parse_snr_range(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("SNR range must look like start:stop:step");
    SnrRange r{parse_double(parts[0], "SNR start"), parse_double(parts[1], "SNR stop"),
               parse_double(parts[2], "SNR step")};
    if (!(r.start <= r.stop)) throw UsageError("SNR range needs start <= stop");
    if (!(r.step > 0.0)) throw UsageError("SNR step must be > 0");
    return r;
}

std::pair<double, double> parse_power_split(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw UsageError("power split must look like P_s:P_r");
    const double s = parse_double(parts[0], "power split");
    const double r = parse_double(parts[1], "power split");
    if (!(s > 0.0 && r > 0.0 && std::isfinite(s) && std::isfinite(r))) {
        throw UsageError("power split shares must be positive");
    }
    return {s, r};
}

std::pair<double, double> parse_window_db(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw UsageError("window must look like lo:hi");
    const double lo = parse_double(parts[0], "window start");
    const double hi = parse_double(parts[1], "window stop");
    if (!(lo < hi)) throw UsageError("window needs lo < hi");
    return {lo, hi};
}

std::vector<Mode> parse_modes(std::string_view text) {
    std::vector<Mode> modes;
    if (text.empty()) throw UsageError("at least one mode is required");
    for (auto p : split(text, ',')) {
        Mode m;
        if (p == "analytic") {
            m = Mode::analytic;
        } else if (p == "sim") {
            m = Mode::sim;
        } else if (p == "perfect-sim") {
            m = Mode::perfect_sim;
        } else {
            throw UsageError("unknown mode '" + std::string(p) + "' (analytic, sim, perfect-sim)");
        }
        if (std::find(modes.begin(), modes.end(), m) == modes.end()) modes.push_back(m);
    }
    return modes;
}

std::vector<int> parse_relays(std::string_view text) {
    std::vector<int> out;
    for (auto p : split(text, ',')) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
        if (ec != std::errc() || ptr != p.data() + p.size() || v < 0) {
            throw UsageError("bad relay count '" + std::string(p) + "'");
        }
        out.push_back(v);
    }
    return out;
}

std::string format_value(double v) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.12g", v);
    return buf.data();
}

std::optional<double> reference_gamma_opt_db(double total_snr_db) {
    for (std::size_t i = 0; i < kReferenceThresholdsDb.size(); ++i) {
        if (std::abs(total_snr_db - 3.0 * static_cast<double>(i)) < 1e-9) return kReferenceThresholdsDb[i];
    }
    return std::nullopt;
}

namespace {

BerEstimate evaluate_mode(const SweepSpec& spec, const SystemConfig& config, Mode mode) {
    if (mode == Mode::analytic) return analytic::p_e2e(config);
    montecarlo::SimRun run;
    run.config = config;
    run.seed = spec.seed;
    run.n_trials = spec.trials;
    run.chunk_size = spec.chunk_size;
    run.threads = spec.threads;
    run.importance_sampling = spec.importance_sampling;
    run.mode = mode == Mode::sim ? montecarlo::DecodingMode::error_propagation
                                 : montecarlo::DecodingMode::perfect_decoding;
    return montecarlo::run_sim(run);
}

std::string mode_column(Mode mode) {
    std::string name(to_string(mode));
    std::replace(name.begin(), name.end(), '-', '_');
    return name;
}

}  // namespace

void write_sweep_csv(const SweepSpec& spec, int m_relays, std::ostream& out) {
    spec.validate();
    out << "snr_db";
    for (Mode m : spec.modes) out << ',' << mode_column(m) << ',' << mode_column(m) << "_ci";
    out << '\n';
    for (double snr : spec.snr.points()) {
        const SystemConfig config = spec.config(m_relays, snr);
        out << format_value(snr);
        for (Mode m : spec.modes) {
            const BerEstimate e = evaluate_mode(spec, config, m);
            out << ',' << format_value(e.value) << ',' << format_value(e.ci_halfwidth);
        }
        out << '\n';
    }
}

void write_table1_csv(const SweepSpec& spec, int m_relays, std::ostream& out) {
    spec.validate();
    const std::vector<double> snrs = spec.snr.points();
    const SystemConfig tmpl = spec.config(m_relays, snrs.front());
    const optimizer::ThresholdCurve curve = optimizer::sweep(tmpl, snrs);
    const bool with_reference = spec.has_reference_thresholds(m_relays);
    out << "snr_db,gamma_opt_db,ber_at_opt,reference_gamma_opt_db,delta_db\n";
    for (const auto& p : curve.points) {
        out << format_value(p.total_snr_db) << ',' << format_value(p.gamma_opt_db) << ','
            << format_value(p.ber_at_opt) << ',';
        const auto ref = with_reference ? reference_gamma_opt_db(p.total_snr_db) : std::nullopt;
        if (ref) out << format_value(*ref) << ',' << format_value(p.gamma_opt_db - *ref);
        else out << ',';
        out << '\n';
    }
}

double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("least_squares_slope: need at least two (x, y) pairs");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("least_squares_slope: all x values are equal");
    return sxy / sxx;
}

SlopeRow estimate_slope(const SweepSpec& spec, int m_relays, Mode mode) {
    spec.validate();
    std::vector<double> xs;
    std::vector<double> ys;
    for (double snr : spec.snr.points()) {
        if (snr < spec.slope_lo_db - 1e-9 || snr > spec.slope_hi_db + 1e-9) continue;
        const BerEstimate e = evaluate_mode(spec, spec.config(m_relays, snr), mode);
        if (!(e.value > 0.0)) continue;
        xs.push_back(snr / 10.0);
        ys.push_back(std::log10(e.value));
    }
    if (xs.size() < 2) {
        throw NumericalError("slope (" + std::string(to_string(mode)) +
                             "): fewer than two SNR points with a nonzero BER in the window");
    }
    const double slope = least_squares_slope(xs, ys);
    return {m_relays, mode, slope, -slope, xs.size()};
}

void write_slope_csv(const SweepSpec& spec, std::ostream& out) {
    spec.validate();
    out << "relays,mode,slope,diversity_order,points\n";
    for (int m : spec.relays) {
        for (Mode mode : spec.modes) {
            const SlopeRow row = estimate_slope(spec, m, mode);
            out << row.m_relays << ',' << to_string(row.mode) << ',' << format_value(row.slope) << ','
                << format_value(row.diversity_order) << ',' << row.points << '\n';
        }
    }
}

}  // namespace coopber::commands
