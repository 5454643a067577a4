#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "rws/fitness.hpp"
#include "rws/parallel.hpp"
#include "rws/pram.hpp"
#include "rws/rng.hpp"
#include "rws/selection.hpp"
#include "rws/stats.hpp"

namespace py = pybind11;

namespace {

rws::FitnessVector to_fitness(const std::vector<double>& values) {
    return rws::FitnessVector(values);
}

py::tuple result_tuple(const rws::SelectionResult& r) {
    return py::make_tuple(r.index, r.winning_bid ? py::cast(*r.winning_bid) : py::none());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weighted random selection: exact log-bid sampling, the biased "
              "independent baseline, a prefix-sum reference, a CRCW write-race "
              "simulator and a Monte Carlo statistics harness.";

    py::register_exception<rws::AllZeroFitnessError>(m, "AllZeroFitnessError",
                                                     PyExc_ValueError);
    py::register_exception<rws::InvalidFitnessError>(m, "InvalidFitnessError",
                                                     PyExc_ValueError);
    py::register_exception<rws::InvalidTrialCountError>(m, "InvalidTrialCountError",
                                                        PyExc_ValueError);
    py::register_exception<rws::ZeroExpectationViolationError>(
        m, "ZeroExpectationViolationError", PyExc_ValueError);

    m.def(
        "analytic_probabilities",
        [](const std::vector<double>& f) { return rws::analytic_probabilities(to_fitness(f)); },
        py::arg("fitness"), "Normalized selection probabilities F_i = f_i / sum(f).");

    m.def("bid", &rws::bid, py::arg("fitness"), py::arg("u"),
          "Logarithmic random bid log(u) / fitness (-inf when fitness is 0).");

    m.def(
        "make_bids",
        [](const std::vector<double>& f, std::uint64_t seed, std::uint64_t stream_base) {
            return rws::make_bids(to_fitness(f), rws::SubstreamRng(seed), stream_base);
        },
        py::arg("fitness"), py::arg("seed"), py::arg("stream_base") = 0,
        "One log-bid per index, drawn from per-index substreams.");

    m.def(
        "argmax_bid",
        [](const std::vector<double>& bids) { return result_tuple(rws::argmax_bid(bids)); },
        py::arg("bids"), "(index, bid) of the maximum bid, lowest index on ties.");

    m.def(
        "select_log_bid",
        [](const std::vector<double>& f, std::uint64_t seed, std::uint64_t stream_base) {
            return result_tuple(rws::select_log_bid(to_fitness(f), rws::SubstreamRng(seed),
                                                    stream_base));
        },
        py::arg("fitness"), py::arg("seed"), py::arg("stream_base") = 0,
        "Exact fitness-proportionate selection; returns (index, winning_bid).");

    m.def(
        "select_log_bid_parallel",
        [](const std::vector<double>& f, std::uint64_t seed, unsigned workers,
           std::size_t chunk_size, std::uint64_t stream_base) {
            return result_tuple(rws::select_log_bid_parallel(
                to_fitness(f), seed, {.worker_count = workers, .chunk_size = chunk_size},
                stream_base));
        },
        py::arg("fitness"), py::arg("seed"), py::arg("workers") = 0,
        py::arg("chunk_size") = 1024, py::arg("stream_base") = 0,
        "Multi-threaded log-bid selection; bit-identical to select_log_bid.");

    m.def(
        "select_prefix_sum",
        [](const std::vector<double>& f, double u) {
            return rws::select_prefix_sum(to_fitness(f), u).index;
        },
        py::arg("fitness"), py::arg("u"),
        "Prefix-sum reference selector for a unit uniform u.");

    m.def(
        "select_independent",
        [](const std::vector<double>& f, std::uint64_t seed, std::uint64_t stream_base) {
            return result_tuple(rws::select_independent(to_fitness(f), rws::SubstreamRng(seed),
                                                        stream_base));
        },
        py::arg("fitness"), py::arg("seed"), py::arg("stream_base") = 0,
        "The biased argmax(f_i * u_i) baseline.");

    py::class_<rws::RoundTrace>(m, "RoundTrace")
        .def_readonly("round_number", &rws::RoundTrace::round_number)
        .def_readonly("active_before", &rws::RoundTrace::active_before)
        .def_readonly("winner", &rws::RoundTrace::winner)
        .def_readonly("s_after", &rws::RoundTrace::s_after)
        .def_readonly("active_after", &rws::RoundTrace::active_after);

    py::class_<rws::SimulationReport>(m, "SimulationReport")
        .def_property_readonly("index",
                               [](const rws::SimulationReport& r) { return r.result.index; })
        .def_property_readonly(
            "winning_bid",
            [](const rws::SimulationReport& r) {
                return r.result.winning_bid ? py::cast(*r.result.winning_bid) : py::none();
            })
        .def_readonly("rounds", &rws::SimulationReport::rounds)
        .def_readonly("trace", &rws::SimulationReport::trace)
        .def_readonly("finite_bids", &rws::SimulationReport::finite_bids);

    m.def(
        "simulate_max_race",
        [](const std::vector<double>& bids, std::uint64_t seed, std::size_t trace_cap) {
            rws::UniformSource conflict =
                rws::SubstreamRng(seed).stream(rws::kConflictStreamBase);
            return rws::simulate_max_race(bids, conflict, {.trace_cap = trace_cap});
        },
        py::arg("bids"), py::arg("seed"), py::arg("trace_cap") = 10'000,
        "Synchronous CRCW write-race simulation over a bid vector.");

    py::class_<rws::RoundStats>(m, "RoundStats")
        .def_readonly("mean_rounds", &rws::RoundStats::mean_rounds)
        .def_readonly("max_rounds", &rws::RoundStats::max_rounds)
        .def_readonly("histogram", &rws::RoundStats::histogram)
        .def_readonly("trials", &rws::RoundStats::trials)
        .def_readonly("k", &rws::RoundStats::k);

    m.def(
        "round_statistics",
        [](const std::vector<double>& f, std::uint64_t trials, std::uint64_t seed) {
            return rws::round_statistics(to_fitness(f), trials, seed);
        },
        py::arg("fitness"), py::arg("trials"), py::arg("seed"),
        "Round-count statistics of the write-race protocol over fresh bids.");

    m.def(
        "reduce_tree_max",
        [](const std::vector<double>& bids) {
            const auto reduced = rws::reduce_tree_max(bids);
            return py::make_tuple(reduced.result.index, reduced.depth);
        },
        py::arg("bids"), "(index, depth) of the binary-tree max reduction baseline.");

    m.def(
        "contention_report",
        [](const std::vector<double>& f, std::uint64_t trials, std::uint64_t seed,
           unsigned workers) {
            return rws::contention_report(to_fitness(f), trials, seed,
                                          {.worker_count = workers})
                .mean_shared_updates;
        },
        py::arg("fitness"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 0,
        "Mean successful shared-cell replacements per parallel selection.");

    py::class_<rws::FrequencyTable>(m, "FrequencyTable")
        .def_readonly("n", &rws::FrequencyTable::n)
        .def_readonly("trials", &rws::FrequencyTable::trials)
        .def_readonly("counts", &rws::FrequencyTable::counts)
        .def_readonly("empirical", &rws::FrequencyTable::empirical)
        .def_readonly("expected", &rws::FrequencyTable::expected);

    py::class_<rws::GoodnessOfFit>(m, "GoodnessOfFit")
        .def_readonly("tv_distance", &rws::GoodnessOfFit::tv_distance)
        .def_readonly("chi_square", &rws::GoodnessOfFit::chi_square)
        .def_readonly("degrees_of_freedom", &rws::GoodnessOfFit::degrees_of_freedom);

    m.def(
        "run_experiment",
        [](const std::string& algorithm, const std::vector<double>& f, std::uint64_t trials,
           std::uint64_t seed, unsigned workers) {
            return rws::run_experiment(rws::algorithm_from_name(algorithm), to_fitness(f),
                                       trials, seed, {.workers = workers});
        },
        py::arg("algorithm"), py::arg("fitness"), py::arg("trials"), py::arg("seed"),
        py::arg("workers") = 1,
        "Monte Carlo frequency table for one of: prefix-sum, independent, log-bid, "
        "log-bid-parallel, pram-sim.");

    m.def("tv_distance", &rws::tv_distance, py::arg("table"),
          "Total-variation distance between empirical and expected.");
    m.def("chi_square", &rws::chi_square, py::arg("table"),
          "Pearson chi-square with zero-expectation indices excluded.");

    py::class_<rws::PairedExperiment>(m, "PairedExperiment")
        .def_readonly("fitness", &rws::PairedExperiment::fitness)
        .def_readonly("independent", &rws::PairedExperiment::independent)
        .def_readonly("log_bid", &rws::PairedExperiment::log_bid);

    m.def(
        "table1_experiment",
        [](std::uint64_t trials, std::uint64_t seed, unsigned workers) {
            return rws::table1_experiment(trials, seed, {.workers = workers});
        },
        py::arg("trials"), py::arg("seed"), py::arg("workers") = 1,
        "Paired independent/log-bid run with f_i = i, i = 0..9.");
    m.def(
        "table2_experiment",
        [](std::uint64_t trials, std::uint64_t seed, unsigned workers) {
            return rws::table2_experiment(trials, seed, {.workers = workers});
        },
        py::arg("trials"), py::arg("seed"), py::arg("workers") = 1,
        "Paired independent/log-bid run with f_0 = 1 and f_1..f_99 = 2.");

    m.attr("__version__") = "0.1.0";
}
