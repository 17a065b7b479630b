#include "coopber/types.hpp"

#include <cmath>

namespace coopber {

namespace {

void require_positive_finite(double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

void SystemConfig::validate() const {
    if (m_relays < 0) throw std::invalid_argument("m_relays must be >= 0");
    if (!(gamma_th >= 0.0) || std::isnan(gamma_th)) {
        throw std::invalid_argument("gamma_th must be >= 0");
    }
    require_positive_finite(p_s, "p_s");
    require_positive_finite(p_r, "p_r");
    require_positive_finite(n0, "n0");
    require_positive_finite(sigma2_sd, "sigma2_sd");
    require_positive_finite(sigma2_sr, "sigma2_sr");
    require_positive_finite(sigma2_rd, "sigma2_rd");
    if (!std::isfinite(total_snr())) throw std::invalid_argument("total SNR is not finite");
}

SystemConfig SystemConfig::with_total_snr(double total_snr_linear) const {
    require_positive_finite(total_snr_linear, "total_snr");
    SystemConfig out = *this;
    const double total_power = total_snr_linear * n0;
    const double share_s = p_s / (p_s + p_r);
    out.p_s = total_power * share_s;
    out.p_r = total_power * (1.0 - share_s);
    return out;
}

SystemConfig SystemConfig::with_threshold(double gamma_th_linear) const {
    SystemConfig out = *this;
    out.gamma_th = gamma_th_linear;
    return out;
}

SystemConfig ScenarioDb::to_config() const {
    require_positive_finite(p_s_share, "p_s_share");
    require_positive_finite(p_r_share, "p_r_share");
    SystemConfig c;
    c.m_relays = m_relays;
    c.gamma_th = db_to_linear(threshold_db);
    c.n0 = 1.0;
    const double total = db_to_linear(total_snr_db);
    c.p_s = total * p_s_share / (p_s_share + p_r_share);
    c.p_r = total * p_r_share / (p_s_share + p_r_share);
    c.sigma2_sd = db_to_linear(sigma2_sd_db);
    c.sigma2_sr = db_to_linear(sigma2_sr_db);
    c.sigma2_rd = db_to_linear(sigma2_rd_db);
    c.validate();
    return c;
}

LinkBudget LinkBudget::from_config(const SystemConfig& config) {
    config.validate();
    LinkBudget b{config.p_s * config.sigma2_sd / config.n0,
                 config.p_s * config.sigma2_sr / config.n0,
                 config.p_r * config.sigma2_rd / config.n0};
    b.validate();
    return b;
}

void LinkBudget::validate() const {
    require_positive_finite(gamma_sd_bar, "gamma_sd_bar");
    require_positive_finite(gamma_sr_bar, "gamma_sr_bar");
    require_positive_finite(gamma_rd_bar, "gamma_rd_bar");
}

std::string_view to_string(EstimateKind kind) {
    switch (kind) {
        case EstimateKind::analytic: return "analytic";
        case EstimateKind::simulated: return "simulated";
        case EstimateKind::perfect_decoding_simulated: return "perfect-decoding-simulated";
    }
    return "unknown";
}

void BerEstimate::validate() const {
    if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("BER outside [0, 1]");
    if (!(ci_halfwidth >= 0.0)) throw std::invalid_argument("negative CI half-width");
    if (kind != EstimateKind::analytic && trials == 0) {
        throw std::invalid_argument("simulated estimate without trials");
    }
}

double clamp_probability(double p, std::string_view what) {
    if (std::isnan(p) || p < -kClampSlack || p > 1.0 + kClampSlack) {
        throw NumericalError("model inconsistency in " + std::string(what) +
                             ": probability " + std::to_string(p) + " outside [0, 1]");
    }
    if (p < 0.0) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

}  // namespace coopber
