#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hptoda/curve.hpp"
#include "hptoda/error.hpp"
#include "hptoda/genus1.hpp"
#include "hptoda/lattice.hpp"
#include "hptoda/laurent_matrix.hpp"
#include "hptoda/reduction.hpp"
#include "hptoda/spectral.hpp"
#include "hptoda/state_io.hpp"
#include "hptoda/theta.hpp"

namespace py = pybind11;
using namespace hptoda;

namespace {

// Rationals cross the boundary as fractions.Fraction; inputs may be int,
// Fraction or a string such as "3/4". Floats are refused to keep exactness.
py::object to_fraction(const Rat& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(r.str());
}

Rat from_py(const py::handle& h) {
  if (py::isinstance<py::float_>(h))
    throw Error(ErrorKind::ParseError, "floats are not accepted; pass int, Fraction or a string");
  return Rat::parse(py::str(h).cast<std::string>());
}

std::vector<Rat> rat_list(const py::iterable& xs) {
  std::vector<Rat> out;
  for (const auto& x : xs) out.push_back(from_py(x));
  return out;
}

py::list fraction_list(const std::vector<Rat>& xs) {
  py::list out;
  for (const Rat& r : xs) out.append(to_fraction(r));
  return out;
}

py::dict curve_dict(const BivarLaurent& F) {
  py::dict d;
  for (const auto& [key, c] : F.terms()) d[py::make_tuple(key.first, key.second)] = to_fraction(c);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and numerical routines for the hungry periodic discrete Toda lattice";
  py::register_exception<Error>(m, "HptodaError", PyExc_ValueError);

  py::class_<TodaState>(m, "State")
      .def(py::init([](const py::iterable& I, const py::iterable& V, long t) {
             std::vector<std::vector<Rat>> layers;
             for (const auto& layer : I) layers.push_back(rat_list(py::reinterpret_borrow<py::iterable>(layer)));
             TodaState s = make_state(std::move(layers), rat_list(V), t);
             if (auto bad = validate(s)) throw Error(ErrorKind::ValidationError, bad->reason);
             return s;
           }),
           py::arg("I"), py::arg("V"), py::arg("t") = 0,
           "State from M layers of N I-values and N V-values.")
      .def_property_readonly("N", [](const TodaState& s) { return s.sites; })
      .def_property_readonly("M", [](const TodaState& s) { return s.depth; })
      .def_property_readonly("t", [](const TodaState& s) { return s.time; })
      .def_property_readonly("I", [](const TodaState& s) {
        py::list out;
        for (const auto& layer : s.i_layers) out.append(fraction_list(layer));
        return out;
      })
      .def_property_readonly("V", [](const TodaState& s) { return fraction_list(s.v); })
      .def("__eq__", [](const TodaState& a, const TodaState& b) { return a == b; })
      .def("__repr__", [](const TodaState& s) { return "State(" + serialize_state(s) + ")"; });

  m.def("parse_state", &parse_state_text, py::arg("text"), "Parse a JSON state document.");
  m.def("serialize_state", &serialize_state, py::arg("state"), "Canonical JSON form.");
  m.def("step", [](const TodaState& s) { return step(s); }, py::arg("state"), "One exact time step.");
  m.def("evolve", &evolve, py::arg("state"), py::arg("steps"), "Exact trajectory of steps + 1 states.");
  m.def("charpoly", [](const TodaState& s) { return curve_dict(spectral_data(s).F); }, py::arg("state"),
        "Coefficients of det(X - xE) keyed by (x degree, y degree).");
  m.def(
      "spectral_data",
      [](const TodaState& s) {
        const auto d = spectral_data(s);
        py::dict out;
        out["F"] = curve_dict(d.F);
        out["F_str"] = d.F.str();
        out["genus"] = d.genus;
        out["gcd"] = d.gcd_m;
        out["A_points_y"] = fraction_list(d.a_points_y);
        out["B_point_y"] = to_fraction(d.b_point_y);
        out["E"] = to_fraction(d.q_constant);
        return out;
      },
      py::arg("state"));
  m.def(
      "boundary_limits",
      [](const TodaState& s, const std::string& radii, double tol) {
        const auto lim = boundary_limits(s, RadiusSchedule::parse(radii), 0.3, tol);
        py::dict out;
        out["psi_ratio"] = lim.psi_ratio;
        out["phi_ratio"] = lim.phi_ratio;
        out["slopes_P"] = lim.at_P.slopes;
        out["slopes_Q"] = lim.at_Q.slopes;
        return out;
      },
      py::arg("state"), py::arg("radii") = "1e2:1e8:12", py::arg("tol") = 1e-5);
  m.def(
      "periods",
      [](const TodaState& s) {
        const auto p = periods(hyperelliptic_model(s));
        py::dict out;
        out["A"] = p.a_period;
        out["B"] = p.b_period;
        out["omega"] = p.omega;
        out["doubling_delta"] = p.doubling_delta;
        return out;
      },
      py::arg("state"), "Periods of dx/w for an N = 2, M = 1 state.");
  m.def("riemann_theta", py::overload_cast<std::complex<double>, std::complex<double>, int>(&riemann_theta),
        py::arg("z"), py::arg("omega"), py::arg("extra_radius") = 0);
  m.def(
      "linearization_check",
      [](const TodaState& s) {
        const auto r = linearization_check(s);
        py::dict out;
        out["space_residual"] = r.space_residual;
        out["time_residual"] = r.time_residual;
        out["time_residual_b"] = r.time_residual_b;
        return out;
      },
      py::arg("state"));
  m.def(
      "reconstruct",
      [](const TodaState& s, int steps) {
        const auto r = reconstruct_and_verify(s, steps);
        py::dict out;
        out["d"] = r.d;
        out["d_prime"] = r.d_prime;
        out["d_spread"] = r.d_spread;
        out["d_prime_spread"] = r.d_prime_spread;
        out["max_rel_err"] = r.max_rel_err;
        out["max_prod_i_err"] = r.max_prod_i_err;
        out["max_prod_v_err"] = r.max_prod_v_err;
        py::list rows;
        for (const auto& row : r.rows)
          rows.append(py::make_tuple(row.n, row.t, std::string(1, row.var), to_fraction(row.exact),
                                     row.reconstructed, row.rel_err));
        out["rows"] = rows;
        return out;
      },
      py::arg("state"), py::arg("steps") = 8, "Theta-function reconstruction of an N = 2, M = 1 trajectory.");
  m.def(
      "zeta_sweep",
      [](const TodaState& base, const py::iterable& zetas, int blocks) {
        const auto r = zeta_sweep(base, rat_list(zetas), blocks);
        py::list rows;
        for (const auto& row : r.rows)
          rows.append(py::make_tuple(to_fraction(row.zeta), row.max_abs[0], row.max_abs[1], row.max_abs[2],
                                     row.subsequence_deviation, row.max_abs[3]));
        py::dict out;
        out["rows"] = rows;
        out["slope"] = r.slope;
        out["monotone"] = r.monotone;
        return out;
      },
      py::arg("base"), py::arg("zetas"), py::arg("blocks") = 3);
  m.def(
      "lifted_charpoly_identity",
      [](const TodaState& base, const py::iterable& zetas) {
        return lifted_charpoly_identity(base, rat_list(zetas)).identity;
      },
      py::arg("base"), py::arg("zetas"));
}
