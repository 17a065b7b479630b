#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>

#include <boost/random/normal_distribution.hpp>
#include <vector>

#include "coopber/types.hpp"

namespace coopber::montecarlo {

using Rng = std::mt19937_64;
using NormalDist = boost::random::normal_distribution<double>;

/// Independent stream for chunk `chunk_index` of a run seeded with `seed`.
/// The stream depends only on the pair, never on which thread runs it.
Rng make_chunk_rng(std::uint64_t seed, std::uint64_t chunk_index);

enum class DecodingMode {
    error_propagation,  // the selected relay forwards its own hard decision
    perfect_decoding,   // the selected relay forwards the transmitted symbol
};

/// Fading coefficients for one symbol.
struct ChannelDraw {
    std::complex<double> h_sd;
    std::vector<std::complex<double>> h_sr;
    std::vector<std::complex<double>> h_rd;
};

/// Lifecycle of one transmitted symbol (x = +1).
struct TrialOutcome {
    std::vector<int> selection_set;     // relays with gamma_sr > gamma_th
    std::optional<int> selected_relay;  // argmax gamma_rd over selection_set
    bool relay_bit_correct = true;
    bool destination_bit_correct = true;
};

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
std::complex<double> complex_gaussian(Rng& rng, NormalDist& normal, double variance);

ChannelDraw draw_channels(const SystemConfig& config, Rng& rng);

/// Runs the two-phase protocol over a given fading draw; only the noise is
/// drawn from `rng`. `out` is overwritten (its buffers are reused).
void evaluate_trial(const SystemConfig& config, const ChannelDraw& channels, Rng& rng,
                    DecodingMode mode, TrialOutcome& out);

TrialOutcome run_trial(const SystemConfig& config, Rng& rng,
                       DecodingMode mode = DecodingMode::error_propagation);

struct SimRun {
    SystemConfig config;
    std::uint64_t seed = 1;
    std::uint64_t n_trials = 10'000'000;
    DecodingMode mode = DecodingMode::error_propagation;
    std::uint64_t chunk_size = 1 << 16;
    /// Worker threads; 0 means std::thread::hardware_concurrency(). Results do
    /// not depend on this value.
    unsigned threads = 0;
    /// Draw every fading coefficient from a defensive mixture of its nominal
    /// law and a deep-fade law and weight each error by the likelihood
    /// ratio. Needed where the BER is far below 1 / n_trials.
    bool importance_sampling = false;
};

struct SimReport {
    BerEstimate ber;
    std::uint64_t errors = 0;            // unweighted error count
    std::uint64_t relay_errors = 0;      // selected relay forwarded a wrong symbol
    std::vector<std::uint64_t> set_size_histogram;  // index = |C|, length M + 1
};

SimReport run_sim_detailed(const SimRun& sim);

/// BER = errors / n_trials with a 95% normal-approximation interval.
BerEstimate run_sim(const SimRun& sim);

/// Empirical relay decoding error among symbols whose source-relay SNR
/// passed the threshold. Stops after `n_kept` accepted symbols; throws
/// NumericalError when fewer than one in 1e6 symbols pass.
BerEstimate measure_conditional_psr(const SystemConfig& config, std::uint64_t n_kept,
                                    std::uint64_t seed = 1);

}  // namespace coopber::montecarlo
