// Python bindings. Instances cross the boundary as text in the CLI file
// formats; rationals come back as fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lascap/errors.hpp"
#include "lascap/exactlin.hpp"
#include "lascap/io.hpp"
#include "lascap/pipeline.hpp"

namespace py = pybind11;
using namespace lascap;

namespace {

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(q));
}

py::list fractions(const RatVector& v) {
  py::list out;
  for (const auto& q : v) out.append(fraction(q));
  return out;
}

// Accepts int, str ("3/4") or anything whose str() is a rational, such as Fraction.
Rational rational_arg(const py::handle& h) {
  std::string text = py::str(h);
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw py::value_error(e.what());
  }
}

RatMatrix matrix_arg(const py::sequence& rows) {
  std::vector<RatVector> out;
  for (const auto& row : rows) {
    RatVector r;
    for (const auto& x : py::reinterpret_borrow<py::sequence>(row)) r.push_back(rational_arg(x));
    out.push_back(std::move(r));
  }
  if (out.empty()) return RatMatrix(0, 0);
  for (const auto& r : out)
    if (r.size() != out[0].size()) throw py::value_error("matrix rows differ in length");
  return RatMatrix::from_rows(out);
}

template <class T, class W>
std::string render(const T& value, W writer) {
  std::ostringstream out;
  writer(out, value);
  return out.str();
}

RunConfig make_config(py::object delta, py::object radius, bool fold, std::size_t max_coordinates,
                      std::optional<std::uint64_t> max_iterations, const std::string& strategy) {
  RunConfig cfg;
  if (!delta.is_none()) cfg.delta = rational_arg(delta);
  if (!radius.is_none()) cfg.radius = rational_arg(radius);
  cfg.fold = fold;
  cfg.max_coordinates = max_coordinates;
  cfg.max_iterations = max_iterations;
  if (strategy == "eigen")
    cfg.strategy = SeparationStrategy::kEigen;
  else if (strategy != "pivot")
    throw py::value_error("strategy must be 'pivot' or 'eigen'");
  cfg.validate();
  return cfg;
}

py::dict level_dict(const LevelResult& r) {
  py::dict d;
  d["t"] = r.t;
  d["coordinates"] = r.coordinates;
  d["status"] = to_string(r.status);
  d["exact"] = r.exact;
  d["value"] = r.status == LevelStatus::kSolved ? fraction(r.value) : py::none().cast<py::object>();
  d["rounded"] = r.rounded ? py::int_(py::str(r.rounded->get_str())) : py::none().cast<py::object>();
  d["delta"] = fraction(r.delta);
  d["iterations"] = r.iterations;
  d["budget"] = r.budget;
  d["message"] = r.message;
  return d;
}

}  // namespace

PYBIND11_MODULE(_lascap, m) {
  m.doc() = "Exact Lasserre hierarchy toolkit for valued CSPs";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<TooLarge>(m, "TooLarge", PyExc_RuntimeError);
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);

  m.def(
      "brute_force_opt",
      [](const std::string& vcsp) {
        return py::int_(py::str(brute_force_opt(parse_string(vcsp, parse_vcsp)).value.get_str()));
      },
      py::arg("vcsp"), "Exhaustive optimum of a .vcsp instance.");
  m.def(
      "blp_value", [](const std::string& vcsp) { return fraction(blp_value(parse_string(vcsp, parse_vcsp))); },
      py::arg("vcsp"), "Exact basic LP relaxation value.");
  m.def(
      "encode", [](const std::string& vcsp) { return render(to_ilp(parse_string(vcsp, parse_vcsp)), write_lp); },
      py::arg("vcsp"), "0-1 LP (.lp text) of a .vcsp instance.");
  m.def(
      "lift",
      [](const std::string& lp, std::size_t level, std::size_t max_coordinates) {
        return render(lift(parse_string(lp, parse_lp), level, max_coordinates).sdp, write_sdp);
      },
      py::arg("lp"), py::arg("level"), py::arg("max_coordinates") = kDefaultMaxCoordinates,
      "Level-t Lasserre lift of a .lp as .sdp text.");

  m.def(
      "solve_level",
      [](const std::string& lp, std::size_t t, py::object delta, py::object radius, bool fold,
         std::size_t max_coordinates, std::optional<std::uint64_t> max_iterations, const std::string& strategy) {
        RunConfig cfg = make_config(delta, radius, fold, max_coordinates, max_iterations, strategy);
        ZeroOneLP parsed = parse_string(lp, parse_lp);
        LevelResult r;
        {
          py::gil_scoped_release release;
          r = solve_level(parsed, t, cfg);
        }
        return level_dict(r);
      },
      py::arg("lp"), py::arg("t"), py::arg("delta") = py::none(), py::arg("radius") = py::none(),
      py::arg("fold") = false, py::arg("max_coordinates") = 64, py::arg("max_iterations") = py::none(),
      py::arg("strategy") = "pivot", "Lift a .lp to level t and solve it with the ellipsoid method.");

  m.def(
      "min_capture_level",
      [](const std::string& vcsp, std::size_t t_min, std::size_t t_max, std::size_t max_coordinates) {
        RunConfig cfg;
        cfg.t_min = t_min;
        cfg.t_max = t_max;
        cfg.max_coordinates = max_coordinates;
        VcspInstance inst = parse_string(vcsp, parse_vcsp);
        CaptureReport rep;
        {
          py::gil_scoped_release release;
          rep = min_capture_level(inst, cfg);
        }
        py::dict d;
        d["opt"] = py::int_(py::str(rep.opt.get_str()));
        d["blp"] = fraction(rep.blp);
        py::list levels;
        for (const auto& l : rep.levels) levels.append(level_dict(l));
        d["levels"] = levels;
        d["capture_level"] = rep.capture_level ? py::cast(*rep.capture_level) : py::none().cast<py::object>();
        d["determined"] = rep.determined;
        return d;
      },
      py::arg("vcsp"), py::arg("t_min") = 0, py::arg("t_max") = 3, py::arg("max_coordinates") = 64);

  m.def(
      "threelin_to_threesat",
      [](const std::string& lin) { return render(threelin_to_threesat(parse_string(lin, parse_3lin)), write_cnf); },
      py::arg("system"), "3LIN (.3lin text) to 3SAT (DIMACS text).");
  m.def(
      "threesat_to_maxcut",
      [](const std::string& cnf) {
        GadgetResult g = threesat_to_maxcut(parse_string(cnf, parse_cnf));
        return py::make_tuple(render(g.graph, write_graph), py::int_(py::str(g.threshold.get_str())));
      },
      py::arg("cnf"), "3SAT to weighted MAXCUT; returns (.graph text, threshold).");
  m.def(
      "satisfiable", [](const std::string& cnf) { return brute_sat(parse_string(cnf, parse_cnf)); }, py::arg("cnf"));

  m.def(
      "psd_certificate",
      [](const py::sequence& rows) {
        PsdCertificate c = psd_certificate(matrix_arg(rows));
        return py::make_tuple(c.psd, fractions(c.witness));
      },
      py::arg("matrix"), "(is_psd, witness v with v^T M v < 0 when not PSD).");
  m.def(
      "min_eigenvalue",
      [](const py::sequence& rows, py::object precision) {
        return fraction(min_eigenvalue_approx(matrix_arg(rows), rational_arg(precision)));
      },
      py::arg("matrix"), py::arg("precision"));
}
