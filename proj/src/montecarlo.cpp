#include "coopber/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace coopber::montecarlo {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Re(conj(a) * b) without the generic complex multiply.
double real_inner(std::complex<double> a, std::complex<double> b) {
    return a.real() * b.real() + a.imag() * b.imag();
}

/// Fading law of one link under importance sampling: a half/half mixture of
/// the nominal exponential power (mean `variance`) and a deep-fade one (mean
/// `tilt * variance`).
struct LinkProposal {
    double variance = 1.0;
    double tilt = 1.0;

    bool biased() const { return tilt < 1.0; }

    /// nominal density / mixture density at power x
    double weight(double x) const {
        if (!biased()) return 1.0;
        const double ratio = std::exp(-x * (1.0 / tilt - 1.0) / variance) / tilt;
        return 1.0 / (0.5 + 0.5 * ratio);
    }
};

struct ProposalSet {
    LinkProposal sd;
    LinkProposal sr;
    LinkProposal rd;
};

ProposalSet make_proposals(const SystemConfig& c, bool importance_sampling) {
    ProposalSet p{{c.sigma2_sd, 1.0}, {c.sigma2_sr, 1.0}, {c.sigma2_rd, 1.0}};
    if (!importance_sampling) return p;
    const LinkBudget link = LinkBudget::from_config(c);
    // Deep-fade components put the mean SNR near the decision boundary:
    // unit SNR on the destination links, the threshold on the relay links.
    p.sd.tilt = std::min(1.0, 1.0 / link.gamma_sd_bar);
    p.rd.tilt = std::min(1.0, 1.0 / link.gamma_rd_bar);
    if (c.gamma_th > 0.0) p.sr.tilt = std::min(1.0, c.gamma_th / link.gamma_sr_bar);
    return p;
}

/// Per-stream state: one engine plus the normal distribution that draws from it.
class TrialEngine {
public:
    TrialEngine(const SystemConfig& config, Rng& rng) : config_(config), rng_(rng) {
        channels_.h_sr.resize(config.m_relays);
        channels_.h_rd.resize(config.m_relays);
    }

    std::complex<double> cgauss(double variance) { return complex_gaussian(rng_, normal_, variance); }

    const ChannelDraw& draw_nominal() {
        channels_.h_sd = cgauss(config_.sigma2_sd);
        for (int i = 0; i < config_.m_relays; ++i) {
            channels_.h_sr[i] = cgauss(config_.sigma2_sr);
            channels_.h_rd[i] = cgauss(config_.sigma2_rd);
        }
        return channels_;
    }

    /// Mixture draw; returns the likelihood-ratio weight of the whole symbol.
    double draw_biased(const ProposalSet& p) {
        double w = 1.0;
        auto draw = [&](const LinkProposal& link) {
            double variance = link.variance;
            if (link.biased() && (rng_() & 1U)) variance *= link.tilt;
            const auto h = cgauss(variance);
            w *= link.weight(std::norm(h));
            return h;
        };
        channels_.h_sd = draw(p.sd);
        for (int i = 0; i < config_.m_relays; ++i) {
            channels_.h_sr[i] = draw(p.sr);
            channels_.h_rd[i] = draw(p.rd);
        }
        return w;
    }

    void evaluate(const ChannelDraw& ch, DecodingMode mode, TrialOutcome& out) {
        const SystemConfig& c = config_;
        const double amp_s = std::sqrt(c.p_s);
        const double amp_r = std::sqrt(c.p_r);

        // Phase 1: x = +1 broadcast to destination and relays.
        const std::complex<double> y_sd = amp_s * ch.h_sd + cgauss(c.n0);

        out.selection_set.clear();
        out.selected_relay.reset();
        double best_rd = -1.0;
        for (int i = 0; i < c.m_relays; ++i) {
            const double gamma_sr = c.p_s * std::norm(ch.h_sr[i]) / c.n0;
            if (gamma_sr > c.gamma_th) {
                out.selection_set.push_back(i);
                const double g = std::norm(ch.h_rd[i]);
                if (g > best_rd) {
                    best_rd = g;
                    out.selected_relay = i;
                }
            }
        }

        // MRC weights a1 = sqrt(P_s) h_sd* / N0 and a2 = sqrt(P_r) h_rd* / N0.
        const double branch_sd = amp_s / c.n0 * real_inner(ch.h_sd, y_sd);
        if (!out.selected_relay) {
            out.relay_bit_correct = true;
            out.destination_bit_correct = branch_sd >= 0.0;
            return;
        }

        // Phase 2: the selected relay decodes, re-modulates and forwards.
        const int r = *out.selected_relay;
        const std::complex<double> y_sr = amp_s * ch.h_sr[r] + cgauss(c.n0);
        const double relay_decision = real_inner(ch.h_sr[r], y_sr) >= 0.0 ? 1.0 : -1.0;
        const double x_r = mode == DecodingMode::perfect_decoding ? 1.0 : relay_decision;
        out.relay_bit_correct = x_r > 0.0;

        const std::complex<double> y_rd = amp_r * ch.h_rd[r] * x_r + cgauss(c.n0);
        const double branch_rd = amp_r / c.n0 * real_inner(ch.h_rd[r], y_rd);
        out.destination_bit_correct = branch_sd + branch_rd >= 0.0;
    }

    const ChannelDraw& channels() const { return channels_; }

private:
    const SystemConfig& config_;
    Rng& rng_;
    NormalDist normal_;
    ChannelDraw channels_;
};

struct ChunkTally {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    std::uint64_t relay_errors = 0;
    double weight_sum = 0.0;
    double weight_sq_sum = 0.0;
    std::vector<std::uint64_t> set_sizes;
};

ChunkTally run_chunk(const SimRun& sim, const ProposalSet& proposals, std::uint64_t chunk) {
    const std::uint64_t begin = chunk * sim.chunk_size;
    const std::uint64_t end = std::min(sim.n_trials, begin + sim.chunk_size);
    Rng rng = make_chunk_rng(sim.seed, chunk);
    TrialEngine engine(sim.config, rng);
    TrialOutcome outcome;
    outcome.selection_set.reserve(sim.config.m_relays);

    ChunkTally tally;
    tally.set_sizes.assign(sim.config.m_relays + 1, 0);
    for (std::uint64_t t = begin; t < end; ++t) {
        const double w = sim.importance_sampling ? engine.draw_biased(proposals) : 1.0;
        if (!sim.importance_sampling) engine.draw_nominal();
        engine.evaluate(engine.channels(), sim.mode, outcome);
        ++tally.trials;
        ++tally.set_sizes[outcome.selection_set.size()];
        if (outcome.selected_relay && !outcome.relay_bit_correct) ++tally.relay_errors;
        if (!outcome.destination_bit_correct) {
            ++tally.errors;
            tally.weight_sum += w;
            tally.weight_sq_sum += w * w;
        }
    }
    return tally;
}

}  // namespace

Rng make_chunk_rng(std::uint64_t seed, std::uint64_t chunk_index) {
    std::uint64_t seed_state = seed;
    std::uint64_t state = splitmix64(seed_state) + 0x9E3779B97F4A7C15ULL * chunk_index;
    std::array<std::uint32_t, 8> words{};
    for (std::size_t i = 0; i < words.size(); i += 2) {
        const std::uint64_t v = splitmix64(state);
        words[i] = static_cast<std::uint32_t>(v);
        words[i + 1] = static_cast<std::uint32_t>(v >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

std::complex<double> complex_gaussian(Rng& rng, NormalDist& normal, double variance) {
    const double scale = std::sqrt(0.5 * variance);
    const double re = normal(rng);
    const double im = normal(rng);
    return {scale * re, scale * im};
}

ChannelDraw draw_channels(const SystemConfig& config, Rng& rng) {
    config.validate();
    TrialEngine engine(config, rng);
    return engine.draw_nominal();
}

void evaluate_trial(const SystemConfig& config, const ChannelDraw& channels, Rng& rng,
                    DecodingMode mode, TrialOutcome& out) {
    config.validate();
    if (channels.h_sr.size() != static_cast<std::size_t>(config.m_relays) ||
        channels.h_rd.size() != static_cast<std::size_t>(config.m_relays)) {
        throw std::invalid_argument("evaluate_trial: channel draw does not match relay count");
    }
    TrialEngine engine(config, rng);
    engine.evaluate(channels, mode, out);
}

TrialOutcome run_trial(const SystemConfig& config, Rng& rng, DecodingMode mode) {
    config.validate();
    TrialEngine engine(config, rng);
    TrialOutcome out;
    const ChannelDraw& ch = engine.draw_nominal();
    engine.evaluate(ch, mode, out);
    return out;
}

SimReport run_sim_detailed(const SimRun& sim) {
    sim.config.validate();
    if (sim.n_trials < 1) throw std::invalid_argument("run_sim: n_trials must be >= 1");
    if (sim.chunk_size < 1) throw std::invalid_argument("run_sim: chunk_size must be >= 1");

    const ProposalSet proposals = make_proposals(sim.config, sim.importance_sampling);
    const std::uint64_t n_chunks = (sim.n_trials + sim.chunk_size - 1) / sim.chunk_size;
    std::vector<ChunkTally> tallies(n_chunks);

    unsigned workers = sim.threads != 0 ? sim.threads : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_chunks));

    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t c = next++; c < n_chunks; c = next++) {
            tallies[c] = run_chunk(sim, proposals, c);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    }

    // Merge in chunk order so floating-point sums do not depend on scheduling.
    SimReport report;
    report.set_size_histogram.assign(sim.config.m_relays + 1, 0);
    double weight_sum = 0.0;
    double weight_sq_sum = 0.0;
    for (const ChunkTally& t : tallies) {
        report.errors += t.errors;
        report.relay_errors += t.relay_errors;
        weight_sum += t.weight_sum;
        weight_sq_sum += t.weight_sq_sum;
        for (std::size_t k = 0; k < t.set_sizes.size(); ++k) report.set_size_histogram[k] += t.set_sizes[k];
    }

    const double n = static_cast<double>(sim.n_trials);
    BerEstimate& ber = report.ber;
    ber.kind = sim.mode == DecodingMode::perfect_decoding ? EstimateKind::perfect_decoding_simulated
                                                          : EstimateKind::simulated;
    ber.trials = sim.n_trials;
    if (sim.importance_sampling) {
        ber.value = std::min(1.0, weight_sum / n);
        const double variance = std::max(0.0, weight_sq_sum / n - (weight_sum / n) * (weight_sum / n));
        ber.ci_halfwidth = 1.96 * std::sqrt(variance / n);
    } else {
        ber.value = static_cast<double>(report.errors) / n;
        ber.ci_halfwidth = 1.96 * std::sqrt(ber.value * (1.0 - ber.value) / n);
    }
    return report;
}

BerEstimate run_sim(const SimRun& sim) { return run_sim_detailed(sim).ber; }

BerEstimate measure_conditional_psr(const SystemConfig& config, std::uint64_t n_kept, std::uint64_t seed) {
    config.validate();
    if (n_kept < 100'000) throw std::invalid_argument("measure_conditional_psr: n_kept must be >= 1e5");
    constexpr std::uint64_t kMinAttempts = 10'000'000;

    Rng rng = make_chunk_rng(seed, 0);
    NormalDist normal;
    const double amp_s = std::sqrt(config.p_s);
    std::uint64_t attempts = 0;
    std::uint64_t kept = 0;
    std::uint64_t errors = 0;
    while (kept < n_kept) {
        ++attempts;
        const auto h = complex_gaussian(rng, normal, config.sigma2_sr);
        if (config.p_s * std::norm(h) / config.n0 > config.gamma_th) {
            ++kept;
            const auto y = amp_s * h + complex_gaussian(rng, normal, config.n0);
            if (real_inner(h, y) < 0.0) ++errors;
        }
        if (attempts >= kMinAttempts && static_cast<double>(kept) < 1e-6 * static_cast<double>(attempts)) {
            throw NumericalError("threshold too high for oracle: acceptance fraction below 1e-6");
        }
    }
    BerEstimate out;
    out.kind = EstimateKind::simulated;
    out.trials = kept;
    out.value = static_cast<double>(errors) / static_cast<double>(kept);
    out.ci_halfwidth = 1.96 * std::sqrt(out.value * (1.0 - out.value) / static_cast<double>(kept));
    return out;
}

}  // namespace coopber::montecarlo
