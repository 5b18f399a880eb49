#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stdsn/errors.hpp"
#include "stdsn/iongen.hpp"
#include "stdsn/phasespace.hpp"
#include "stdsn/squeezing.hpp"
#include "stdsn/state.hpp"
#include "stdsn/stats.hpp"

namespace py = pybind11;
using namespace stdsn;

namespace {

Mode parse_mode(const std::string& s) {
    if (s == "a") return Mode::A;
    if (s == "b") return Mode::B;
    throw DomainError("mode must be 'a' or 'b'");
}

QuasiKind parse_kind(const std::string& s) {
    if (s == "W") return QuasiKind::W;
    if (s == "Q") return QuasiKind::Q;
    throw DomainError("kind must be 'W' or 'Q'");
}

GridAxis parse_axis(const std::tuple<double, double, int>& t) {
    return {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Displaced squeezed number states and their superpositions";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
    py::register_exception<DegenerateState>(m, "DegenerateState", base.ptr());
    py::register_exception<UndefinedStatistic>(m, "UndefinedStatistic", base.ptr());
    py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", base.ptr());
    py::register_exception<InsufficientCutoff>(m, "InsufficientCutoff", base.ptr());
    py::register_exception<ProtocolViolation>(m, "ProtocolViolation", base.ptr());
    py::register_exception<ImprobableOutcome>(m, "ImprobableOutcome", base.ptr());

    py::class_<StateParams>(m, "StateParams")
        .def(py::init([](double r, double alpha1, double alpha2, double eps_mag, double phi, int n, int mm) {
                 StateParams p{r, alpha1, alpha2, eps_mag, phi, n, mm};
                 p.validate();
                 return p;
             }),
             py::arg("r") = 0.0, py::arg("alpha1") = 0.0, py::arg("alpha2") = 0.0, py::arg("eps_mag") = 0.0,
             py::arg("phi") = 0.0, py::arg("n") = 0, py::arg("m") = 0)
        .def_readwrite("r", &StateParams::r)
        .def_readwrite("alpha1", &StateParams::alpha1)
        .def_readwrite("alpha2", &StateParams::alpha2)
        .def_readwrite("eps_mag", &StateParams::eps_mag)
        .def_readwrite("phi", &StateParams::phi)
        .def_readwrite("n", &StateParams::n)
        .def_readwrite("m", &StateParams::m)
        .def_property_readonly("eps", &StateParams::eps)
        .def("swapped", &StateParams::swapped)
        .def("validate", &StateParams::validate)
        .def("to_record", [](const StateParams& p) { return to_record(p); })
        .def_static("from_record", [](const std::string& s) { return parse_record(s); })
        .def("classify", [](const StateParams& p) { return std::string(to_string(classify(p))); })
        .def(py::self == py::self)
        .def("__repr__", [](const StateParams& p) { return "StateParams(" + to_record(p) + ")"; });

    py::class_<DerivedQuantities>(m, "DerivedQuantities")
        .def_readonly("Sr", &DerivedQuantities::Sr)
        .def_readonly("Cr", &DerivedQuantities::Cr)
        .def_readonly("t1", &DerivedQuantities::t1)
        .def_readonly("t2", &DerivedQuantities::t2)
        .def_readonly("log_mu", &DerivedQuantities::log_mu)
        .def_readonly("lambda_sq", &DerivedQuantities::lambda_sq);
    m.def("derive", &derive);

    m.def("fock_coefficient", &fock_coefficient, py::arg("p"), py::arg("n1"), py::arg("n2"));
    m.def("joint_pnd", &joint_pnd, py::arg("p"), py::arg("m1"), py::arg("m2"));
    m.def("marginal_pnd", [](const StateParams& p, int k, int cutoff) {
        MarginalProbability mp = marginal_pnd(p, k, cutoff);
        return py::make_tuple(mp.value, mp.tail_bound);
    }, py::arg("p"), py::arg("m1"), py::arg("cutoff"));
    m.def("fock_amplitudes", [](const StateParams& p, double tol) {
        FockTable t = certified_fock_table(p, tol);
        int c = t.cutoff();
        py::array_t<std::complex<double>> out({c, c});
        auto v = out.mutable_unchecked<2>();
        for (int i = 0; i < c; ++i)
            for (int j = 0; j < c; ++j) v(i, j) = t.amplitude(i, j);
        return out;
    }, py::arg("p"), py::arg("tol") = 1e-10);

    m.def("mean_photon", [](const StateParams& p, const std::string& mode) { return mean_photon(p, parse_mode(mode)); },
          py::arg("p"), py::arg("mode") = "a");
    m.def("second_moment", [](const StateParams& p, const std::string& mode) { return second_moment(p, parse_mode(mode)); },
          py::arg("p"), py::arg("mode") = "a");
    m.def("cross_moment", &cross_moment);
    m.def("g2", [](const StateParams& p, const std::string& mode) { return g2(p, parse_mode(mode)); }, py::arg("p"),
          py::arg("mode") = "a");
    m.def("g2_r0", &g2_r0);
    m.def("cs_factor", &cs_factor);

    py::class_<SqueezeFactors>(m, "SqueezeFactors")
        .def_readonly("F", &SqueezeFactors::F)
        .def_readonly("S", &SqueezeFactors::S)
        .def_readonly("F1", &SqueezeFactors::F1)
        .def_readonly("F2", &SqueezeFactors::F2)
        .def_readonly("Fc", &SqueezeFactors::Fc)
        .def_readonly("S1", &SqueezeFactors::S1)
        .def_readonly("S2", &SqueezeFactors::S2)
        .def_readonly("Sc", &SqueezeFactors::Sc)
        .def_readonly("nu", &SqueezeFactors::nu);
    m.def("squeeze_factors", [](const StateParams& p, double nu) { return squeeze_factors(p, {nu}); }, py::arg("p"),
          py::arg("nu") = 0.0);
    m.def("squeezing_loss_r", [](const StateParams& p, double lo, double hi, int nu_points) {
        return squeezing_loss_r(p, nu_grid(0.0, M_PI / 2, nu_points), lo, hi);
    }, py::arg("p"), py::arg("lo") = 0.0, py::arg("hi") = 1.0, py::arg("nu_points") = 181);

    m.def("char_fn", &char_fn, py::arg("p"), py::arg("beta"));
    m.def("wigner", [](const StateParams& p, double x, double y) { return wigner_closed(p, {x, y}); });
    m.def("qfunc", [](const StateParams& p, double x, double y) { return qfunc_closed(p, {x, y}); });
    m.def("quasi_numeric", [](const StateParams& p, double x, double y, const std::string& kind, double tol) {
        return quasi_numeric(p, {x, y}, parse_kind(kind), tol);
    }, py::arg("p"), py::arg("x"), py::arg("y"), py::arg("kind") = "W", py::arg("tol") = 1e-9);
    m.def("purity_closed", &purity_closed);
    m.def("purity_numeric", &purity_numeric, py::arg("p"), py::arg("tol") = 1e-9);
    m.def("grid", [](const StateParams& p, const std::string& kind, std::tuple<double, double, int> x,
                     std::tuple<double, double, int> y, bool numeric) {
        PhaseSpaceGrid g;
        {
            py::gil_scoped_release release;
            g = fill_grid(p, parse_kind(kind), parse_axis(x), parse_axis(y),
                          numeric ? GridMethod::Numeric : GridMethod::Closed);
        }
        py::array_t<double> out({g.y.count, g.x.count});
        std::copy(g.values.begin(), g.values.end(), out.mutable_data());
        return out;
    }, py::arg("p"), py::arg("kind"), py::arg("x"), py::arg("y"), py::arg("numeric") = false);

    m.def("run_protocol", [](const StateParams& target, double coupling_scale) {
        ProtocolOptions opt;
        opt.coupling_scale = coupling_scale;
        ProtocolResult res = run_protocol(target, opt);
        py::dict d;
        d["fidelity"] = res.fidelity;
        d["probability_ground"] = res.probability_ground;
        d["probability_excited"] = res.probability_excited;
        d["schedule"] = res.schedule.serialize();
        return d;
    }, py::arg("target"), py::arg("coupling_scale") = 1.0);
}
