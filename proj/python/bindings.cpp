#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <stdexcept>

#include "upfmec/delay.hpp"
#include "upfmec/engine.hpp"
#include "upfmec/metrics.hpp"
#include "upfmec/oracle.hpp"
#include "upfmec/report_io.hpp"
#include "upfmec/scenario_io.hpp"

namespace py = pybind11;
using namespace upfmec;

namespace {

Scheme scheme_from(const std::string& name) {
    auto s = parse_scheme(name);
    if (!s) throw py::value_error("unknown scheme \"" + name + "\"; valid: " + scheme_names());
    return *s;
}

std::vector<ServerLoad> loads_from(const std::vector<std::tuple<double, double, double>>& raw) {
    std::vector<ServerLoad> out;
    for (const auto& [queue, headroom, capacity] : raw) out.push_back({queue, headroom, capacity, false});
    return out;
}

template <class Writer>
std::string render(Writer&& w) {
    std::ostringstream os;
    w(os);
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_upfmec, m) {
    m.doc() = "Discrete-epoch UPF/MEC data plane simulator";

    py::register_exception<ScenarioParseError>(m, "ScenarioParseError", PyExc_ValueError);
    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
    py::register_exception<oracle::BoundExceeded>(m, "BoundExceeded", PyExc_ValueError);

    py::class_<Scenario>(m, "Scenario")
        .def_static("from_file", [](const std::string& p) { return load_scenario(p); })
        .def_static("from_json", &parse_scenario)
        .def("to_json", &dump_scenario)
        .def("validate", [](const Scenario& s) { return validate_scenario(s).violations; })
        .def_readwrite("name", &Scenario::name)
        .def_readonly("num_upfs", &Scenario::num_upfs)
        .def_readonly("num_mecs", &Scenario::num_mecs)
        .def_readwrite("seed", &Scenario::seed)
        .def_readwrite("horizon_epochs", &Scenario::horizon_epochs)
        .def_readwrite("drain_cap_epochs", &Scenario::drain_cap_epochs)
        .def_property(
            "scheme", [](const Scenario& s) { return std::string(to_string(s.scheme)); },
            [](Scenario& s, const std::string& name) { s.scheme = scheme_from(name); })
        .def("scaled", &scale_topology, py::arg("pairs"))
        .def(py::self == py::self);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("scenario_name", &RunResult::scenario_name)
        .def_property_readonly("scheme",
                               [](const RunResult& r) { return std::string(to_string(r.scheme)); })
        .def_readonly("seed", &RunResult::seed)
        .def_readonly("generated", &RunResult::generated)
        .def_readonly("completed", &RunResult::completed)
        .def_readonly("dropped", &RunResult::dropped)
        .def_readonly("residual", &RunResult::residual)
        .def_readonly("truncated", &RunResult::truncated)
        .def_property_readonly("epochs", [](const RunResult& r) { return r.epochs.size(); })
        .def("e2e_samples",
             [](const RunResult& r, std::optional<std::string> qos) {
                 std::optional<QosClass> q;
                 if (qos) {
                     q = parse_qos(*qos);
                     if (!q) throw py::value_error("unknown QoS class \"" + *qos + "\"");
                 }
                 return e2e_samples(r, q);
             },
             py::arg("qos") = py::none())
        .def("summary_json",
             [](const RunResult& r) { return render([&](auto& os) { write_summary_json(os, summarize(r)); }); })
        .def("requests_csv",
             [](const RunResult& r) { return render([&](auto& os) { write_requests_csv(os, r); }); });

    m.def(
        "run",
        [](Scenario s, std::optional<std::string> scheme, std::optional<std::uint64_t> seed) {
            if (scheme) s.scheme = scheme_from(*scheme);
            if (seed) s.seed = *seed;
            py::gil_scoped_release release;
            return run_to_completion(s);
        },
        py::arg("scenario"), py::arg("scheme") = py::none(), py::arg("seed") = py::none());

    m.def(
        "compare_csv",
        [](const Scenario& base, const std::vector<std::uint64_t>& seeds,
           std::optional<std::vector<std::string>> schemes) {
            std::vector<Scheme> chosen(kAllSchemes.begin(), kAllSchemes.end());
            if (schemes) {
                chosen.clear();
                for (const auto& n : *schemes) chosen.push_back(scheme_from(n));
            }
            std::vector<Scenario> grid;
            for (auto sc : chosen) {
                for (auto seed : seeds) {
                    auto s = base;
                    s.scheme = sc;
                    s.seed = seed;
                    grid.push_back(std::move(s));
                }
            }
            std::vector<RunResult> runs;
            {
                py::gil_scoped_release release;
                runs = run_batch(grid);
            }
            const auto rows = compare_schemes(runs);
            return render([&](auto& os) { write_comparison_csv(os, rows); });
        },
        py::arg("scenario"), py::arg("seeds"), py::arg("schemes") = py::none());

    m.def("scheme_names", [] {
        std::vector<std::string> out;
        for (auto s : kAllSchemes) out.emplace_back(to_string(s));
        return out;
    });

    m.def("upf_projected_delay", &upf_projected_delay, py::arg("queue_len"), py::arg("headroom"),
          py::arg("capacity"), py::arg("delta_ms") = 1.0);
    m.def("net_delay", &net_delay, py::arg("n_share"), py::arg("bytes_mec"),
          py::arg("bw_bits_per_ms"), py::arg("delta_ms") = 1.0);
    m.def("worst_case_batch_delay", &worst_case_batch_delay, py::arg("queue_len"), py::arg("batch"),
          py::arg("headroom"), py::arg("capacity"));

    m.def(
        "minmax_batch_optimum",
        [](std::size_t n, const std::vector<std::tuple<double, double, double>>& upfs) {
            const auto p = oracle::minmax_batch_optimum(n, loads_from(upfs));
            return py::make_tuple(p.counts, p.worst_case_epochs);
        },
        py::arg("n"), py::arg("upfs"),
        "upfs is a list of (queue_len, headroom, capacity); returns (counts, worst_case_epochs)");
    m.def(
        "sequential_heuristic_batch",
        [](std::size_t n, const std::vector<std::tuple<double, double, double>>& upfs) {
            const auto p = oracle::sequential_heuristic_batch(n, loads_from(upfs));
            return py::make_tuple(p.counts, p.worst_case_epochs);
        },
        py::arg("n"), py::arg("upfs"));
}
