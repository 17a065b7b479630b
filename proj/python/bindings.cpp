#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coopber/analytic.hpp"
#include "coopber/montecarlo.hpp"
#include "coopber/optimizer.hpp"

namespace py = pybind11;
using namespace coopber;

PYBIND11_MODULE(_coopber, m) {
    m.doc() = "BER of threshold-based best-relay selection in decode-and-forward networks";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("m_relays", &SystemConfig::m_relays)
        .def_readwrite("gamma_th", &SystemConfig::gamma_th)
        .def_readwrite("p_s", &SystemConfig::p_s)
        .def_readwrite("p_r", &SystemConfig::p_r)
        .def_readwrite("n0", &SystemConfig::n0)
        .def_readwrite("sigma2_sd", &SystemConfig::sigma2_sd)
        .def_readwrite("sigma2_sr", &SystemConfig::sigma2_sr)
        .def_readwrite("sigma2_rd", &SystemConfig::sigma2_rd)
        .def("total_snr", &SystemConfig::total_snr)
        .def("validate", &SystemConfig::validate)
        .def("with_total_snr", &SystemConfig::with_total_snr, py::arg("total_snr_linear"))
        .def("with_threshold", &SystemConfig::with_threshold, py::arg("gamma_th_linear"))
        .def("__repr__", [](const SystemConfig& c) {
            return "SystemConfig(m_relays=" + std::to_string(c.m_relays) + ", gamma_th=" + std::to_string(c.gamma_th) +
                   ", p_s=" + std::to_string(c.p_s) + ", p_r=" + std::to_string(c.p_r) + ")";
        });

    m.def(
        "scenario",
        [](int m_relays, double threshold_db, double total_snr_db, double sigma2_sd_db, double sigma2_sr_db,
           double sigma2_rd_db, double p_s_share, double p_r_share) {
            return ScenarioDb{m_relays, threshold_db, total_snr_db, sigma2_sd_db,
                              sigma2_sr_db, sigma2_rd_db, p_s_share, p_r_share}
                .to_config();
        },
        py::arg("m_relays") = 4, py::arg("threshold_db") = 5.0, py::arg("total_snr_db") = 0.0,
        py::arg("sigma2_sd_db") = -3.0, py::arg("sigma2_sr_db") = 0.0, py::arg("sigma2_rd_db") = 0.0,
        py::arg("p_s_share") = 1.0, py::arg("p_r_share") = 1.0,
        "SystemConfig from dB quantities, N0 = 1.");

    py::enum_<EstimateKind>(m, "EstimateKind")
        .value("analytic", EstimateKind::analytic)
        .value("simulated", EstimateKind::simulated)
        .value("perfect_decoding_simulated", EstimateKind::perfect_decoding_simulated);

    py::class_<BerEstimate>(m, "BerEstimate")
        .def_readonly("value", &BerEstimate::value)
        .def_readonly("kind", &BerEstimate::kind)
        .def_readonly("trials", &BerEstimate::trials)
        .def_readonly("ci_halfwidth", &BerEstimate::ci_halfwidth);

    m.def("q_function", &analytic::q_function, py::arg("x"));
    m.def("p_non_coop", &analytic::p_non_coop, py::arg("gamma_sd_bar"));
    m.def("p_coop", &analytic::p_coop, py::arg("gamma_sd_bar"), py::arg("gamma_rd_bar"), py::arg("n_r"));
    m.def("p_sr", &analytic::p_sr, py::arg("gamma_th"), py::arg("gamma_sr_bar"));
    m.def("p_prop_closed", &analytic::p_prop_closed, py::arg("m"), py::arg("n_r"), py::arg("gamma_sd_bar"),
          py::arg("gamma_rd_bar"));
    m.def("p_prop_oracle", &analytic::p_prop_oracle, py::arg("n_r"), py::arg("gamma_sd_bar"),
          py::arg("gamma_rd_bar"));
    m.def("mgf_best_relay", &analytic::mgf_best_relay, py::arg("n_r"), py::arg("gamma_rd_bar"), py::arg("s"));
    m.def(
        "p_e2e",
        [](const SystemConfig& c, bool perfect_decoding, bool gaussian_propagation) {
            analytic::E2eOptions o;
            o.perfect_decoding = perfect_decoding;
            o.propagation = gaussian_propagation ? analytic::PropagationModel::gaussian
                                                 : analytic::PropagationModel::step;
            return analytic::p_e2e(c, o);
        },
        py::arg("config"), py::arg("perfect_decoding") = false, py::arg("gaussian_propagation") = false);

    m.def(
        "run_sim",
        [](const SystemConfig& c, std::uint64_t n_trials, std::uint64_t seed, bool perfect_decoding,
           std::uint64_t chunk_size, unsigned threads, bool importance_sampling) {
            montecarlo::SimRun run;
            run.config = c;
            run.n_trials = n_trials;
            run.seed = seed;
            run.mode = perfect_decoding ? montecarlo::DecodingMode::perfect_decoding
                                        : montecarlo::DecodingMode::error_propagation;
            run.chunk_size = chunk_size;
            run.threads = threads;
            run.importance_sampling = importance_sampling;
            py::gil_scoped_release release;
            return montecarlo::run_sim(run);
        },
        py::arg("config"), py::arg("n_trials") = 1'000'000, py::arg("seed") = 1, py::arg("perfect_decoding") = false,
        py::arg("chunk_size") = 1 << 16, py::arg("threads") = 0, py::arg("importance_sampling") = false);

    m.def("measure_conditional_psr", &montecarlo::measure_conditional_psr, py::arg("config"),
          py::arg("n_kept") = 100'000, py::arg("seed") = 1);

    py::class_<optimizer::ThresholdOptimum>(m, "ThresholdOptimum")
        .def_readonly("gamma_opt_db", &optimizer::ThresholdOptimum::gamma_opt_db)
        .def_readonly("ber", &optimizer::ThresholdOptimum::ber)
        .def_readonly("multimodal", &optimizer::ThresholdOptimum::multimodal);

    m.def(
        "find_gamma_opt",
        [](double total_snr_db, const SystemConfig& tmpl) { return optimizer::find_gamma_opt(total_snr_db, tmpl); },
        py::arg("total_snr_db"), py::arg("template"));
}
