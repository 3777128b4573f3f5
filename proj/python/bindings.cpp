#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tfim/analysis.hpp"
#include "tfim/bdg.hpp"
#include "tfim/ed.hpp"
#include "tfim/errors.hpp"
#include "tfim/floquet_k.hpp"
#include "tfim/lrt.hpp"

namespace py = pybind11;
using namespace tfim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Linear response, Floquet and BdG solvers for the driven Ising chain";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidConfig>(m, "InvalidConfig", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    py::class_<DriveConfig>(m, "DriveConfig")
        .def(py::init([](int L, int l, double h, double dh, double omega) {
                 return make_config(L, l < 0 ? L : l, h, dh, omega);
             }),
             py::arg("L") = 64, py::arg("l") = -1, py::arg("h") = 1.0, py::arg("dh") = 1e-2, py::arg("omega") = 0.5)
        .def_readonly("L", &DriveConfig::L)
        .def_readonly("l", &DriveConfig::l)
        .def_readonly("h", &DriveConfig::h)
        .def_readonly("dh", &DriveConfig::dh)
        .def_readonly("omega", &DriveConfig::omega)
        .def_property_readonly("tau", &DriveConfig::tau)
        .def_property_readonly("v0", &DriveConfig::v0)
        .def("__repr__", [](const DriveConfig& c) {
            return "DriveConfig(L=" + std::to_string(c.L) + ", l=" + std::to_string(c.l) +
                   ", dh=" + std::to_string(c.dh) + ", omega=" + std::to_string(c.omega) + ")";
        });

    m.def("chi_second", &chi_second, py::arg("omega"));
    m.def("chi_prime", [](double w, int panels) { return chi_prime(w, {panels}); }, py::arg("omega"),
          py::arg("panels") = 128);
    m.def("chi_local_spectral", &chi_local_spectral, py::arg("j"), py::arg("omega"));
    m.def("chi_subchain_spectral", &chi_subchain_spectral, py::arg("l"), py::arg("omega"));
    m.def("m_eq_finite", &m_eq_finite, py::arg("L"));
    m.def("lrt_energy", &lrt_energy, py::arg("t"), py::arg("cfg"));

    m.def(
        "lrt_trace",
        [](const DriveConfig& c, const std::vector<double>& t) {
            auto tr = lrt_trace(c, t);
            py::dict d;
            d["t"] = tr.t;
            d["m"] = tr.m;
            d["transient"] = tr.transient;
            d["chi1"] = tr.chi1;
            d["chi2"] = tr.chi2;
            return d;
        },
        py::arg("cfg"), py::arg("t"));

    m.def(
        "magnetization_trace",
        [](const DriveConfig& c, int periods, int steps, int samples) {
            KspaceTrace tr;
            {
                py::gil_scoped_release release;
                tr = magnetization_trace(c, periods, {steps, samples});
            }
            py::dict d;
            d["t"] = tr.t;
            d["m"] = tr.m;
            d["e0"] = tr.e0;
            d["e"] = tr.e;
            return d;
        },
        py::arg("cfg"), py::arg("periods"), py::arg("steps") = 4096, py::arg("samples") = 64);

    m.def(
        "bdg_run",
        [](const DriveConfig& c, int periods, int steps, int samples) {
            BdgRun r;
            {
                py::gil_scoped_release release;
                r = bdg_run(c, periods, {steps, samples});
            }
            py::dict d;
            d["t"] = r.t;
            d["Ml"] = r.Ml;
            d["m"] = r.m;
            d["e0_boundary"] = r.e0_boundary;
            return d;
        },
        py::arg("cfg"), py::arg("periods"), py::arg("steps") = 1024, py::arg("samples") = 64);

    m.def(
        "ed_evolve",
        [](const DriveConfig& c, int periods, int steps, int samples) {
            auto s = ed_evolve(c, periods, {steps, samples});
            py::dict d;
            d["t"] = s.t;
            d["m"] = s.m;
            d["Ml"] = s.Ml;
            d["e0"] = s.e0;
            d["norm"] = s.norm;
            return d;
        },
        py::arg("cfg"), py::arg("periods"), py::arg("steps") = 4096, py::arg("samples") = 64);

    m.def(
        "period_fourier",
        [](const std::vector<double>& s, int samples, int n, double omega, int M) {
            auto pf = period_fourier(s, samples, n, omega, M);
            return py::make_tuple(pf.a0, pf.ac, pf.as);
        },
        py::arg("series"), py::arg("samples"), py::arg("n"), py::arg("omega"), py::arg("M") = 1,
        "Returns (a0, cosine coefficients, sine coefficients) of period n (1-based).");

    m.def(
        "detect_tstar",
        [](const std::vector<double>& t, const std::vector<double>& e0, const DriveConfig& c, double thr) {
            auto r = detect_tstar(t, e0, c, thr);
            py::object ts = py::none(), ns = py::none();
            if (r.found) {
                ts = py::float_(r.tstar);
                ns = py::int_(r.nstar);
            }
            return py::make_tuple(ts, ns);
        },
        py::arg("t"), py::arg("e0"), py::arg("cfg"), py::arg("threshold") = -1.0);

    m.def(
        "revival_time", [](const DriveConfig& c) { return revival_time(c).tstar; }, py::arg("cfg"));

    m.def(
        "quasienergy_gaps",
        [](const DriveConfig& c, int steps) {
            auto q = quasienergies(monodromy(c, steps), c.omega);
            std::vector<double> g;
            for (const auto& p : quasidegeneracy_scan(q)) g.push_back(p.gap);
            return g;
        },
        py::arg("cfg"), py::arg("steps") = 1024, "Gaps of greedily paired neighbouring quasi-energies.");

    m.def(
        "sweep_omega",
        [](const DriveConfig& c, const std::vector<double>& omegas, int periods, int steps, int samples) {
            SweepOptions o;
            o.n_periods = periods;
            o.steps_per_period = steps;
            o.samples_per_period = samples;
            std::vector<py::dict> rows;
            for (const auto& r : sweep_omega(c, omegas, o)) {
                py::dict d;
                d["omega"] = r.omega;
                d["sine2"] = r.sine2;
                d["cosine2"] = r.cosine2;
                d["mean_shift"] = r.mean_shift;
                d["chi1"] = r.chi1;
                d["chi2"] = r.chi2;
                rows.push_back(d);
            }
            return rows;
        },
        py::arg("cfg"), py::arg("omegas"), py::arg("periods") = 200, py::arg("steps") = 4096,
        py::arg("samples") = 64);
}
