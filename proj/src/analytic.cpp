#include "coopber/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "coopber/quadrature.hpp"

namespace coopber::analytic {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

/// log Q(z) that stays finite where Q itself underflows.
double log_q(double z) {
    if (z < 30.0) return std::log(0.5 * std::erfc(z / std::numbers::sqrt2));
    const double z2 = z * z;
    const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2) +
                          105.0 / (z2 * z2 * z2 * z2);
    return -0.5 * z2 - std::log(z * std::sqrt(2.0 * kPi)) + std::log(series);
}

}  // namespace

double q_function(double x) {
    const double q = 0.5 * std::erfc(x / std::numbers::sqrt2);
    return q < 1e-300 ? 0.0 : q;
}

double mgf_rayleigh(double gamma_bar, double s) {
    require(gamma_bar > 0.0, "mgf_rayleigh: gamma_bar must be > 0");
    require(s >= 0.0, "mgf_rayleigh: s must be >= 0");
    const double denom = 1.0 + gamma_bar * s;
    if (!(denom > 0.0)) throw std::domain_error("mgf_rayleigh: 1 + gamma_bar * s <= 0");
    return 1.0 / denom;
}

double p_dec(double gamma_th, double gamma_sr_bar) {
    require(gamma_th >= 0.0, "p_dec: gamma_th must be >= 0");
    require(gamma_sr_bar > 0.0, "p_dec: gamma_sr_bar must be > 0");
    return std::exp(-gamma_th / gamma_sr_bar);
}

double binomial_coefficient(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
    return std::round(c);
}

double p_num_relays(int m, int i, double p_dec) {
    require(m >= 0, "p_num_relays: m must be >= 0");
    if (i < 0 || i > m) throw std::out_of_range("p_num_relays: i outside [0, m]");
    require(p_dec >= 0.0 && p_dec <= 1.0, "p_num_relays: p_dec outside [0, 1]");
    return binomial_coefficient(m, i) * std::pow(p_dec, i) * std::pow(1.0 - p_dec, m - i);
}

double p_non_coop(double gamma_sd_bar) {
    require(gamma_sd_bar > 0.0, "p_non_coop: gamma_sd_bar must be > 0");
    auto integrand = [gamma_sd_bar](double theta) {
        const double s = std::sin(theta);
        return mgf_rayleigh(gamma_sd_bar, 1.0 / (s * s));
    };
    const auto r = quadrature::integrate_doubling(integrand, 0.0, kPi / 2.0, "P_non-coop");
    return clamp_probability(r.value / kPi, "P_non-coop");
}

double mgf_best_relay(int n_r, double gamma_rd_bar, double s) {
    require(n_r >= 1, "mgf_best_relay: n_r must be >= 1 (empty set is the non-cooperative branch)");
    require(gamma_rd_bar > 0.0, "mgf_best_relay: gamma_rd_bar must be > 0");
    require(s >= 0.0, "mgf_best_relay: s must be >= 0");
    const long double x = static_cast<long double>(gamma_rd_bar) * s;
    long double sum = 0.0L;
    long double magnitude = 0.0L;
    for (int k = 0; k < n_r; ++k) {
        const long double term = binomial_coefficient(n_r - 1, k) / (k + 1.0L + x);
        sum += (k % 2 == 0) ? term : -term;
        magnitude += term;
    }
    const long double expansion = n_r * sum;
    // The alternating sum loses about log10(magnitude / result) digits. When
    // fewer than ~12 remain, use the equivalent factorisation prod k / (k + x).
    if (expansion > n_r * magnitude * 1e-7L) return static_cast<double>(expansion);
    long double product = 1.0L;
    for (int k = 1; k <= n_r; ++k) product *= k / (k + x);
    return static_cast<double>(product);
}

double p_coop(double gamma_sd_bar, double gamma_rd_bar, int n_r) {
    require(gamma_sd_bar > 0.0 && gamma_rd_bar > 0.0, "p_coop: mean SNRs must be > 0");
    require(n_r >= 1, "p_coop: n_r must be >= 1");
    auto integrand = [=](double theta) {
        const double sn = std::sin(theta);
        const double s = 1.0 / (sn * sn);
        return mgf_rayleigh(gamma_sd_bar, s) * mgf_best_relay(n_r, gamma_rd_bar, s);
    };
    const auto r = quadrature::integrate_doubling(
        integrand, 0.0, kPi / 2.0, "P_coop(n_r=" + std::to_string(n_r) + ")");
    return clamp_probability(r.value / kPi, "P_coop");
}

double p_sr(double gamma_th, double gamma_sr_bar) {
    require(gamma_th >= 0.0, "p_sr: gamma_th must be >= 0");
    require(gamma_sr_bar > 0.0, "p_sr: gamma_sr_bar must be > 0");
    const double a = 1.0 + 1.0 / gamma_sr_bar;
    const double first = q_function(std::sqrt(2.0 * gamma_th));
    const double log_second =
        gamma_th / gamma_sr_bar - 0.5 * std::log(a) + log_q(std::sqrt(2.0 * gamma_th * a));
    const double raw = first - std::exp(log_second);
    return clamp_probability(raw, "P_SR");
}

double p_prop_closed(int m, int n_r, double gamma_sd_bar, double gamma_rd_bar) {
    if (n_r < 1 || n_r > m) throw std::out_of_range("p_prop_closed: need 1 <= n_r <= m");
    require(gamma_sd_bar > 0.0 && gamma_rd_bar > 0.0, "p_prop_closed: mean SNRs must be > 0");
    const long double a = gamma_sd_bar;
    const long double b = gamma_rd_bar;
    long double sum = 0.0L;
    for (int k = 0; k < n_r; ++k) {
        const long double bracket = -a / (b + (k + 1) * a) + 1.0L / (k + 1);
        const long double term = binomial_coefficient(n_r - 1, k) * bracket;
        sum += (k % 2 == 0) ? term : -term;
    }
    return clamp_probability(static_cast<double>(n_r * sum), "P_prop");
}

double p_prop_closed_mixed_index(int m, int n_r, double gamma_sd_bar, double gamma_rd_bar) {
    if (n_r < 1 || n_r > m) throw std::out_of_range("p_prop_closed_mixed_index: need 1 <= n_r <= m");
    require(gamma_sd_bar > 0.0 && gamma_rd_bar > 0.0, "p_prop_closed_mixed_index: mean SNRs must be > 0");
    const double a = gamma_sd_bar;
    const double b = gamma_rd_bar;
    const double lead = m * binomial_coefficient(m - 1, n_r - 1);
    double sum = 0.0;
    for (int k = 0; k <= m - n_r; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += lead * sign * binomial_coefficient(m - n_r, k) *
               (-a / (b + (k + 1) * a) + 1.0 / (k + 1));
    }
    return sum;
}

namespace {

/// Density of the maximum of n unit-mean exponentials.
double max_exponential_pdf(int n, double t) {
    return n * std::pow(-std::expm1(-t), n - 1) * std::exp(-t);
}

/// Upper limit beyond which the order-statistic tail mass is below 1e-19.
double tail_limit(int n) { return std::log(static_cast<double>(n)) + 44.0; }

}  // namespace

double p_prop_oracle(int n_r, double gamma_sd_bar, double gamma_rd_bar) {
    require(n_r >= 1, "p_prop_oracle: n_r must be >= 1");
    require(gamma_sd_bar > 0.0 && gamma_rd_bar > 0.0, "p_prop_oracle: mean SNRs must be > 0");
    const double ratio = gamma_rd_bar / gamma_sd_bar;
    // gamma_r = gamma_rd_bar * t; P(gamma_sd < gamma_r | t) = 1 - exp(-ratio * t)
    auto integrand = [=](double t) {
        return -std::expm1(-ratio * t) * max_exponential_pdf(n_r, t);
    };
    const auto r = quadrature::integrate_adaptive(integrand, 0.0, tail_limit(n_r), "P_prop oracle",
                                                  1e-15, 1e-13);
    return clamp_probability(r.value, "P_prop oracle");
}

double p_prop_gaussian_oracle(int n_r, double gamma_sd_bar, double gamma_rd_bar) {
    require(n_r >= 1, "p_prop_gaussian_oracle: n_r must be >= 1");
    require(gamma_sd_bar > 0.0 && gamma_rd_bar > 0.0, "p_prop_gaussian_oracle: mean SNRs must be > 0");
    const double a = gamma_sd_bar;
    const double b = gamma_rd_bar;
    const double u_max = 44.0;
    auto conditional = [](double g_sd, double g_r) {
        const double spread = g_sd + g_r;
        if (spread <= 0.0) return 0.5;
        return q_function((g_sd - g_r) / std::sqrt(0.5 * spread));
    };
    auto outer = [&](double t) {
        const double g_r = b * t;
        auto inner = [&](double u) { return conditional(a * u, g_r) * std::exp(-u); };
        // Split where the two SNRs cross; the conditional error changes fastest there.
        const double cross = g_r / a;
        double value = 0.0;
        if (cross > 0.0 && cross < u_max) {
            value = quadrature::integrate_adaptive(inner, 0.0, cross, "P_prop gaussian", 1e-13, 1e-11).value +
                    quadrature::integrate_adaptive(inner, cross, u_max, "P_prop gaussian", 1e-13, 1e-11).value;
        } else {
            value = quadrature::integrate_adaptive(inner, 0.0, u_max, "P_prop gaussian", 1e-13, 1e-11).value;
        }
        return value * max_exponential_pdf(n_r, t);
    };
    const auto r = quadrature::integrate_adaptive(outer, 0.0, tail_limit(n_r), "P_prop gaussian",
                                                  1e-12, 1e-10);
    return clamp_probability(r.value, "P_prop gaussian oracle");
}

double p_div(double p_sr, double p_prop, double p_coop) {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    require(in_unit(p_sr) && in_unit(p_prop) && in_unit(p_coop), "p_div: inputs must lie in [0, 1]");
    return p_sr * p_prop + (1.0 - p_sr) * p_coop;
}

E2eBreakdown p_e2e_breakdown(const SystemConfig& config, const E2eOptions& options) {
    const LinkBudget link = LinkBudget::from_config(config);
    const int m = config.m_relays;

    E2eBreakdown out;
    out.p_non_coop = p_non_coop(link.gamma_sd_bar);
    out.p_dec = p_dec(config.gamma_th, link.gamma_sr_bar);
    out.p_empty_set = std::pow(1.0 - out.p_dec, m);
    out.p_sr = options.perfect_decoding ? 0.0 : p_sr(config.gamma_th, link.gamma_sr_bar);

    double total = out.p_empty_set * out.p_non_coop;
    for (int n = 1; n <= m; ++n) {
        const double weight = p_num_relays(m, n, out.p_dec);
        if (weight == 0.0) continue;
        const double cooperative = p_coop(link.gamma_sd_bar, link.gamma_rd_bar, n);
        double propagated = 0.0;
        if (out.p_sr > 0.0) {
            propagated = options.propagation == PropagationModel::step
                             ? p_prop_closed(m, n, link.gamma_sd_bar, link.gamma_rd_bar)
                             : p_prop_gaussian_oracle(n, link.gamma_sd_bar, link.gamma_rd_bar);
        }
        total += weight * p_div(out.p_sr, propagated, cooperative);
    }
    out.p_e2e = clamp_probability(total, "P_e2e");
    return out;
}

BerEstimate p_e2e(const SystemConfig& config, const E2eOptions& options) {
    return BerEstimate::analytic(p_e2e_breakdown(config, options).p_e2e);
}

}  // namespace coopber::analytic
