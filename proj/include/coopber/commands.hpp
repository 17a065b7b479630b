#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coopber/types.hpp"

namespace coopber::commands {

/// Bad command-line or scenario input (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

enum class Mode { analytic, sim, perfect_sim };

std::string_view to_string(Mode mode);

struct SnrRange {
    double start = 0.0;
    double stop = 24.0;
    double step = 3.0;

    std::vector<double> points() const;
};

struct SweepSpec {
    std::vector<int> relays{4};
    double threshold_db = 5.0;
    SnrRange snr;
    double sigma2_sd_db = -3.0;
    double sigma2_sr_db = 0.0;
    double sigma2_rd_db = 0.0;
    double p_s_share = 1.0;
    double p_r_share = 1.0;
    std::vector<Mode> modes{Mode::analytic};
    std::uint64_t trials = 10'000'000;
    std::uint64_t seed = 1;
    std::uint64_t chunk_size = 1 << 16;
    unsigned threads = 0;
    bool importance_sampling = false;
    double slope_lo_db = 15.0;
    double slope_hi_db = 24.0;

    /// Throws UsageError.
    void validate() const;

    SystemConfig config(int m_relays, double total_snr_db) const;

    /// True for the default published scenario (M = 4, -3/0/0 dB, 1:1 split),
    /// where reference optimum thresholds exist.
    bool has_reference_thresholds(int m_relays) const;
};

SnrRange parse_snr_range(std::string_view text);
/// "P_s:P_r", both positive.
std::pair<double, double> parse_power_split(std::string_view text);
/// "lo:hi" in dB with lo < hi.
std::pair<double, double> parse_window_db(std::string_view text);
std::vector<Mode> parse_modes(std::string_view text);
std::vector<int> parse_relays(std::string_view text);

/// 12 significant digits, '.' decimal separator.
std::string format_value(double v);

/// Published optimum thresholds (dB) for M = 4 at total SNR 0, 3, ..., 24 dB.
std::optional<double> reference_gamma_opt_db(double total_snr_db);

/// One row per SNR point: snr_db, then (value, ci) per requested mode.
void write_sweep_csv(const SweepSpec& spec, int m_relays, std::ostream& out);

/// snr_db, gamma_opt_db, ber_at_opt, reference_gamma_opt_db, delta_db
void write_table1_csv(const SweepSpec& spec, int m_relays, std::ostream& out);

/// Least-squares slope of ys against xs.
double least_squares_slope(std::span<const double> xs, std::span<const double> ys);

struct SlopeRow {
    int m_relays;
    Mode mode;
    double slope;             // d log10(BER) / d (SNR_dB / 10)
    double diversity_order;   // -slope
    std::size_t points;
};

/// Diversity estimate per mode over the SNR points inside
/// [slope_lo_db, slope_hi_db]. Points with zero BER are dropped; fewer than
/// two usable points raise NumericalError.
SlopeRow estimate_slope(const SweepSpec& spec, int m_relays, Mode mode);

void write_slope_csv(const SweepSpec& spec, std::ostream& out);

}  // namespace coopber::commands
