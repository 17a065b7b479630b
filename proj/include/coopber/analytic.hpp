#pragma once

#include "coopber/types.hpp"

namespace coopber::analytic {

/// Gaussian tail Q(x) = erfc(x / sqrt 2) / 2. Results below 1e-300 are
/// flushed to zero.
double q_function(double x);

/// MGF of an exponentially distributed SNR with mean gamma_bar,
/// E[exp(-s * gamma)] = 1 / (1 + gamma_bar * s).
double mgf_rayleigh(double gamma_bar, double s);

/// Probability that a relay's instantaneous source-relay SNR exceeds the
/// threshold, exp(-gamma_th / gamma_sr_bar).
double p_dec(double gamma_th, double gamma_sr_bar);

/// Binomial probability that exactly `i` of `m` relays pass the threshold.
double p_num_relays(int m, int i, double p_dec);

double binomial_coefficient(int n, int k);

/// Average BPSK error of the direct link alone, by integrating the Rayleigh
/// MGF over theta in (0, pi/2).
double p_non_coop(double gamma_sd_bar);

/// MGF of the largest of n_r i.i.d. exponential SNRs (mean gamma_rd_bar),
/// evaluated through the alternating binomial expansion of its density.
double mgf_best_relay(int n_r, double gamma_rd_bar, double s);

/// Average error of MRC combining of the direct link and the best of n_r
/// relays, all forwarding correctly.
double p_coop(double gamma_sd_bar, double gamma_rd_bar, int n_r);

/// Conditional BPSK error at a relay given that its instantaneous SNR is
/// above gamma_th:
///   Q(sqrt(2 t)) - exp(t / g) * sqrt(1 / (1 + 1/g)) * Q(sqrt(2 t (1 + 1/g)))
/// with t = gamma_th, g = gamma_sr_bar.
double p_sr(double gamma_th, double gamma_sr_bar);

/// P(gamma_sd < max of n_r relay SNRs): the destination is assumed wrong
/// exactly when a flipped relay symbol outweighs the direct path. Closed form
/// obtained by expanding the order-statistic density of the maximum.
/// `m` is only checked (1 <= n_r <= m).
double p_prop_closed(int m, int n_r, double gamma_sd_bar, double gamma_rd_bar);

/// The alternative closed form with coefficient m * C(m-1, n_r-1) and the sum
/// running to m - n_r. Kept for comparison; it only coincides with
/// p_prop_closed when m == n_r == 1.
double p_prop_closed_mixed_index(int m, int n_r, double gamma_sd_bar, double gamma_rd_bar);

/// Same quantity as p_prop_closed, by quadrature: the inner integral over
/// gamma_sd is done analytically, the outer one over the order-statistic
/// density numerically.
double p_prop_oracle(int n_r, double gamma_sd_bar, double gamma_rd_bar);

/// Exact destination error under a flipped relay symbol: the average of
/// Q((g_sd - g_r) / sqrt((g_sd + g_r) / 2)) over both SNR densities.
double p_prop_gaussian_oracle(int n_r, double gamma_sd_bar, double gamma_rd_bar);

/// P_SR * P_prop + (1 - P_SR) * P_coop
double p_div(double p_sr, double p_prop, double p_coop);

enum class PropagationModel {
    step,      // p_prop_closed
    gaussian,  // p_prop_gaussian_oracle
};

struct E2eOptions {
    PropagationModel propagation = PropagationModel::step;
    /// Relays in the decision set never err (P_SR forced to zero).
    bool perfect_decoding = false;
};

/// Per-operating-point intermediate terms, mainly for reports.
struct E2eBreakdown {
    double p_dec = 0.0;
    double p_sr = 0.0;
    double p_non_coop = 0.0;
    double p_empty_set = 0.0;
    double p_e2e = 0.0;
};

E2eBreakdown p_e2e_breakdown(const SystemConfig& config, const E2eOptions& options = {});

/// End-to-end BER of threshold-based best-relay selection with error
/// propagation. M = 0 reduces exactly to p_non_coop.
BerEstimate p_e2e(const SystemConfig& config, const E2eOptions& options = {});

}  // namespace coopber::analytic
