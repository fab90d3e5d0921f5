#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ffgraph/checks.hpp"
#include "ffgraph/group.hpp"

namespace py = pybind11;
using namespace ffgraph;

namespace {

PointC2 as_point(std::pair<Complex, Complex> pq) { return {pq.first, pq.second}; }

std::pair<Complex, Complex> as_pair(const PointC2& pt) { return {pt.p, pt.q}; }

py::dict report_dict(const CheckReport& r) {
    py::dict d;
    d["check"] = r.check_id;
    d["samples"] = r.samples;
    d["max_error"] = r.max_error;
    d["threshold"] = r.threshold;
    d["pass"] = r.pass;
    d["worst_input"] = r.worst_input;
    d["note"] = r.note;
    return d;
}

}  // namespace

PYBIND11_MODULE(_ffgraph, m) {
    m.doc() = "focus-focus neighborhood model: fiberwise addition, chart atlas, checks";

    py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("epsilon", &ModelParams::epsilon)
        .def_readwrite("delta", &ModelParams::delta)
        .def("add_invariant_term",
             [](ModelParams& p, int i, int j, double c) { p.invariant.add_term(i, j, c); },
             py::arg("i"), py::arg("j"), py::arg("c"))
        .def("s1", &ModelParams::s1)
        .def("s2", &ModelParams::s2)
        .def("validate", &ModelParams::validate);

    py::enum_<SectionKind>(m, "SectionKind")
        .value("Sigma0", SectionKind::Sigma0)
        .value("Sigma1", SectionKind::Sigma1)
        .value("Sigma2", SectionKind::Sigma2)
        .value("SigmaS", SectionKind::SigmaS);

    py::enum_<DeckDirection>(m, "DeckDirection")
        .value("Up", DeckDirection::Up)
        .value("Down", DeckDirection::Down);

    m.def("hamiltonian",
          [](std::pair<Complex, Complex> pt) { return hamiltonian(as_point(pt)); });
    m.def("flow", [](std::pair<Complex, Complex> pt, double t1, double t2) {
        return as_pair(flow(as_point(pt), {t1, t2}));
    });
    m.def("section", [](SectionKind kind, Complex b, const ModelParams& params) {
        return as_pair(section(kind, b, params));
    });
    m.def("travel_time", [](Complex b, const ModelParams& params) {
        const TimePair t = travel_time(b, params);
        return std::make_pair(t.t1, t.t2);
    });
    m.def("deck", [](std::pair<Complex, Complex> pt, DeckDirection dir,
                     const ModelParams& params) {
        return as_pair(deck(as_point(pt), dir, params));
    });
    m.def("normalize", [](std::pair<Complex, Complex> pt, const ModelParams& params) {
        return as_pair(normalize(as_point(pt), params).pt);
    });
    m.def("same_point", [](std::pair<Complex, Complex> a, std::pair<Complex, Complex> b,
                           double tol, const ModelParams& params) {
        return same_point(as_point(a), as_point(b), tol, params);
    });
    m.def("add", [](std::pair<Complex, Complex> x, std::pair<Complex, Complex> y,
                    const ModelParams& params) {
        return as_pair(add({normalize(as_point(x), params)},
                           {normalize(as_point(y), params)}, params)
                           .pt);
    });
    m.def("inverse", [](std::pair<Complex, Complex> x, const ModelParams& params) {
        return as_pair(inverse(normalize(as_point(x), params), params).pt);
    });
    m.def("recover_partials",
          [](Complex b, const ModelParams& params) { return recover_partials(b, params); });
    m.def("locate", [](std::pair<Complex, Complex> x, std::pair<Complex, Complex> y,
                       std::pair<Complex, Complex> z, const ModelParams& params) {
        const GraphPoint gp{normalize(as_point(x), params), normalize(as_point(y), params),
                            normalize(as_point(z), params)};
        py::list out;
        for (const ChartLocation& loc : locate(gp, params)) {
            py::dict d;
            d["chart"] = chart_name(loc.chart);
            d["coords"] = std::vector<Complex>(loc.coords.begin(), loc.coords.end());
            out.append(d);
        }
        return out;
    });

    m.def("check_ids", [] { return check_ids(); });
    m.def("run_check",
          [](const std::string& id, const ModelParams& params, std::size_t samples,
             std::uint64_t seed) {
              ToleranceConfig tol;
              tol.samples = samples;
              tol.seed = seed;
              return report_dict(run_check(id, params, tol));
          },
          py::arg("check_id"), py::arg("params"), py::arg("samples") = 1000,
          py::arg("seed") = 42);
    m.def("run_suite",
          [](const ModelParams& params, std::size_t samples, std::uint64_t seed) {
              ToleranceConfig tol;
              tol.samples = samples;
              tol.seed = seed;
              py::list out;
              for (const CheckReport& r : run_suite(params, tol)) out.append(report_dict(r));
              return out;
          },
          py::arg("params"), py::arg("samples") = 1000, py::arg("seed") = 42);
}
