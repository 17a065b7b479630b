#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coopber {

/// Raised when a numerical routine cannot produce a trustworthy value
/// (quadrature non-convergence, probability far outside [0, 1], an oracle
/// that cannot run). `what()` names the failing sub-term.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double db_to_linear(double db);
double linear_to_db(double linear);

/// Physical parameters of one operating point. All values are linear.
struct SystemConfig {
    int m_relays = 4;
    double gamma_th = 1.0;
    double p_s = 1.0;
    double p_r = 1.0;
    double n0 = 1.0;
    double sigma2_sd = 1.0;
    double sigma2_sr = 1.0;
    double sigma2_rd = 1.0;

    /// (P_s + P_r) / N0
    double total_snr() const { return (p_s + p_r) / n0; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// Copy with transmit powers rescaled so that total_snr() equals the
    /// given value; the P_s:P_r ratio and N0 are preserved.
    SystemConfig with_total_snr(double total_snr_linear) const;
    SystemConfig with_threshold(double gamma_th_linear) const;
};

/// Convenience constructor that takes the quantities usually quoted in dB.
/// Powers are split as p_s_share : p_r_share of the total, with N0 = 1.
struct ScenarioDb {
    int m_relays = 4;
    double threshold_db = 5.0;
    double total_snr_db = 0.0;
    double sigma2_sd_db = -3.0;
    double sigma2_sr_db = 0.0;
    double sigma2_rd_db = 0.0;
    double p_s_share = 1.0;
    double p_r_share = 1.0;

    SystemConfig to_config() const;
};

/// Mean per-link SNRs in linear scale.
struct LinkBudget {
    double gamma_sd_bar;
    double gamma_sr_bar;
    double gamma_rd_bar;

    /// gamma_bar = transmit power * channel variance / N0
    static LinkBudget from_config(const SystemConfig& config);
    void validate() const;
};

enum class EstimateKind { analytic, simulated, perfect_decoding_simulated };

std::string_view to_string(EstimateKind kind);

struct BerEstimate {
    double value = 0.0;
    EstimateKind kind = EstimateKind::analytic;
    std::uint64_t trials = 0;
    double ci_halfwidth = 0.0;

    static BerEstimate analytic(double value) { return {value, EstimateKind::analytic, 0, 0.0}; }
    void validate() const;
};

/// Probabilities within 1e-9 of [0, 1] are clamped; anything further out
/// raises NumericalError tagged with `what`.
double clamp_probability(double p, std::string_view what);

inline constexpr double kClampSlack = 1e-9;

}  // namespace coopber
