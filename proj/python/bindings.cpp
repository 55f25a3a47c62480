#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kuperberg/curves.hpp"
#include "kuperberg/oracle.hpp"
#include "kuperberg/params.hpp"
#include "kuperberg/pressure.hpp"
#include "kuperberg/symbolic.hpp"
#include "kuperberg/transverse.hpp"

namespace py = pybind11;
using namespace kup;

PYBIND11_MODULE(_kuperberg, m) {
    m.doc() = "Kuperberg minimal set: curves, widths, pressure and dimension bounds";

    py::register_exception<out_of_strip>(m, "OutOfStrip", PyExc_ArithmeticError);
    py::register_exception<no_root>(m, "NoRoot", PyExc_ArithmeticError);
    py::register_exception<param_error>(m, "ParamError", PyExc_ValueError);

    py::class_<plug_params>(m, "PlugParams")
        .def(py::init([](double a, double R, double alpha, double beta, double b, double epsilon, double delta) {
                 return plug_params{a, R, alpha, beta, b, epsilon, delta};
             }),
             py::arg("a") = 10.0, py::arg("R") = 0.5, py::arg("alpha") = 0.0, py::arg("beta") = 0.0,
             py::arg("b") = 0.1, py::arg("epsilon") = 0.01, py::arg("delta") = 0.01)
        .def_readwrite("a", &plug_params::a)
        .def_readwrite("R", &plug_params::R)
        .def_readwrite("alpha", &plug_params::alpha)
        .def_readwrite("beta", &plug_params::beta)
        .def_readwrite("b", &plug_params::b)
        .def_readwrite("epsilon", &plug_params::epsilon)
        .def_readwrite("delta", &plug_params::delta);

    py::class_<derived_constants>(m, "DerivedConstants")
        .def_readonly("C", &derived_constants::C)
        .def_readonly("K", &derived_constants::K)
        .def_readonly("K_width", &derived_constants::K_width)
        .def_readonly("p", &derived_constants::p)
        .def_readonly("C_floor", &derived_constants::C_floor)
        .def_readonly("K_floor", &derived_constants::K_floor)
        .def_readonly("N_eps", &derived_constants::N_eps)
        .def_readonly("N_b", &derived_constants::N_b);

    m.def("validate", &validate);
    m.def("derive_constants", &derive_constants);

    m.def("q_eval", [](const plug_params& p, const word& w, double s) {
        auto st = q_eval(p, w, s);
        return py::make_tuple(st.q, st.x);
    });
    m.def("vertex", &vertex);
    m.def("solve_endpoints", [](const plug_params& p, const word& w) {
        auto e = solve_endpoints(p, w);
        return py::make_tuple(e.s_minus, e.s_plus);
    });
    m.def("escape_time", &escape_time);
    m.def("n_threshold", &n_threshold);
    m.def("interval", [](const plug_params& p, const word& w) {
        auto iv = interval(p, w);
        return py::make_tuple(iv.a_minus, iv.a_plus);
    });
    m.def("width_exact", &width_exact);
    m.def("width_asymptotic", &width_asymptotic, py::arg("p"), py::arg("dc"), py::arg("w"), py::arg("dual") = false);
    m.def("admissible", [](const derived_constants& dc, long i, long j) {
        return admissible({dc.N_eps, dc.C_floor, dc.K_floor}, i, j);
    });
    m.def("dual", &dual);

    m.def("pressure_upper", &pressure_upper);
    m.def("pressure_lower", [](const plug_params& p, const derived_constants& dc, double t, int n_max, long max_symbol) {
        pressure_settings st;
        st.n_max = n_max;
        st.max_symbol = max_symbol;
        return pressure_lower(p, dc, t, st);
    }, py::arg("p"), py::arg("dc"), py::arg("t"), py::arg("n_max") = 10, py::arg("max_symbol") = 200);
    m.def("spectral_pressure", &spectral_pressure, py::arg("p"), py::arg("dc"), py::arg("t"), py::arg("M") = 200,
          py::arg("interlace") = true, py::arg("offset") = 0);
    m.def("bowen_root", [](const std::function<double(double)>& f, double lo, double hi) { return bowen_root(f, lo, hi); });
    m.def("dimension_report", [](const plug_params& p, int n_max, long max_symbol, long spectral_M) {
        pressure_settings st;
        st.n_max = n_max;
        st.max_symbol = max_symbol;
        st.spectral_M = spectral_M;
        return to_json(make_dimension_report(p, st)).dump();
    }, py::arg("p"), py::arg("n_max") = 10, py::arg("max_symbol") = 200, py::arg("spectral_M") = 200);
    m.def("brute_endpoints", [](const plug_params& p, const word& w, long grid) {
        return oracle::brute_endpoints(p, w, grid);
    }, py::arg("p"), py::arg("w"), py::arg("grid") = 100000);
    m.def("box_count_estimate", [](const plug_params& p, int n, long max_symbol) {
        auto dc = derive_constants(validate(p));
        return oracle::box_count_estimate(p, dc, n, max_symbol).slope;
    });
}
