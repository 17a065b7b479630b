// coopber: BER of threshold-based best-relay selection with decode-and-forward
// relays, analytic and simulated.
//
//   coopber sweep  --relays 3,4,5 --threshold-db 5 --mode analytic,sim --out fig.csv
//   coopber table1 --snr-db 0:24:3
//   coopber slope  --relays 4 --mode perfect-sim --trials 10000000
//
// Shared options may also come from a key=value scenario file (--scenario);
// flags given on the command line take precedence.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "coopber/commands.hpp"

namespace {

using coopber::commands::SweepSpec;
using coopber::commands::UsageError;

struct RawOptions {
    std::string relays = "4";
    double threshold_db = 5.0;
    std::string snr_db = "0:24:3";
    double sigma2_sd_db = -3.0;
    double sigma2_sr_db = 0.0;
    double sigma2_rd_db = 0.0;
    std::string power_split = "1:1";
    double trials = 1e7;
    std::uint64_t seed = 1;
    std::string mode = "analytic";
    std::string out;
    std::uint64_t chunk_size = 1 << 16;
    unsigned threads = 0;
    std::string importance_sampling = "auto";
    std::string window_db = "15:24";
};

SweepSpec to_spec(const RawOptions& raw, bool importance_default) {
    SweepSpec spec;
    spec.relays = coopber::commands::parse_relays(raw.relays);
    spec.threshold_db = raw.threshold_db;
    spec.snr = coopber::commands::parse_snr_range(raw.snr_db);
    spec.sigma2_sd_db = raw.sigma2_sd_db;
    spec.sigma2_sr_db = raw.sigma2_sr_db;
    spec.sigma2_rd_db = raw.sigma2_rd_db;
    std::tie(spec.p_s_share, spec.p_r_share) = coopber::commands::parse_power_split(raw.power_split);
    if (!(raw.trials >= 1.0)) throw UsageError("--trials must be >= 1");
    spec.trials = static_cast<std::uint64_t>(raw.trials);
    spec.seed = raw.seed;
    spec.modes = coopber::commands::parse_modes(raw.mode);
    spec.chunk_size = raw.chunk_size;
    spec.threads = raw.threads;
    if (raw.importance_sampling == "auto") {
        spec.importance_sampling = importance_default;
    } else if (raw.importance_sampling == "on") {
        spec.importance_sampling = true;
    } else if (raw.importance_sampling == "off") {
        spec.importance_sampling = false;
    } else {
        throw UsageError("--importance-sampling takes auto, on or off");
    }
    const auto window = coopber::commands::parse_window_db(raw.window_db);
    spec.slope_lo_db = window.first;
    spec.slope_hi_db = window.second;
    spec.validate();
    return spec;
}

std::string per_relay_path(const std::string& out, int m, bool several) {
    if (!several) return out;
    std::filesystem::path p(out);
    const std::string stem = p.stem().string() + "_M" + std::to_string(m);
    return (p.parent_path() / (stem + p.extension().string())).string();
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream file(path);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    fn(file);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Best-relay decode-and-forward BER: analytic chain, Monte Carlo and threshold optimisation"};
    app.require_subcommand(1);
    app.set_config("--scenario", "", "key=value scenario file; command-line flags override it");

    RawOptions raw;
    app.add_option("--relays", raw.relays, "relay count M, or a comma list (one output per M)");
    app.add_option("--threshold-db", raw.threshold_db, "relay selection threshold in dB");
    app.add_option("--snr-db", raw.snr_db, "total SNR sweep start:stop:step in dB");
    app.add_option("--sigma2-sd-db", raw.sigma2_sd_db, "source-destination channel variance in dB");
    app.add_option("--sigma2-sr-db", raw.sigma2_sr_db, "source-relay channel variance in dB");
    app.add_option("--sigma2-rd-db", raw.sigma2_rd_db, "relay-destination channel variance in dB");
    app.add_option("--power-split", raw.power_split, "P_s:P_r ratio of the total power");
    app.add_option("--trials", raw.trials, "Monte Carlo trials per SNR point");
    app.add_option("--seed", raw.seed, "Monte Carlo master seed");
    app.add_option("--mode", raw.mode, "comma list of analytic, sim, perfect-sim");
    app.add_option("--out", raw.out, "output CSV path (default stdout)");
    app.add_option("--chunk-size", raw.chunk_size, "trials per RNG stream");
    app.add_option("--threads", raw.threads, "worker threads (0 = all cores)");
    app.add_option("--importance-sampling", raw.importance_sampling,
                   "auto, on or off; auto enables it for slope only");
    app.add_option("--window-db", raw.window_db, "slope fit window lo:hi in dB");

    auto* sweep = app.add_subcommand("sweep", "BER per SNR point for each requested mode")->fallthrough();
    auto* table1 = app.add_subcommand("table1", "BER-minimising threshold per SNR point")->fallthrough();
    auto* slope = app.add_subcommand("slope", "diversity order from the high-SNR BER slope")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return coopber::commands::kExitUsage;
    }

    try {
        if (sweep->parsed()) {
            const SweepSpec spec = to_spec(raw, false);
            const bool several = spec.relays.size() > 1;
            if (several && raw.out.empty()) throw UsageError("--out is required when several relay counts are given");
            for (int m : spec.relays) {
                with_output(per_relay_path(raw.out, m, several),
                            [&](std::ostream& os) { coopber::commands::write_sweep_csv(spec, m, os); });
            }
        } else if (table1->parsed()) {
            const SweepSpec spec = to_spec(raw, false);
            const bool several = spec.relays.size() > 1;
            if (several && raw.out.empty()) throw UsageError("--out is required when several relay counts are given");
            for (int m : spec.relays) {
                with_output(per_relay_path(raw.out, m, several),
                            [&](std::ostream& os) { coopber::commands::write_table1_csv(spec, m, os); });
            }
        } else if (slope->parsed()) {
            const SweepSpec spec = to_spec(raw, true);
            with_output(raw.out, [&](std::ostream& os) { coopber::commands::write_slope_csv(spec, os); });
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return coopber::commands::kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return coopber::commands::kExitUsage;
    } catch (const coopber::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return coopber::commands::kExitNumerical;
    }
    return coopber::commands::kExitOk;
}
