// Python bindings. Rationals cross the boundary as "p/q" strings and
// instances as JSON text; the kernelsmith package wraps both.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kernelsmith/cli.hpp"
#include "kernelsmith/equivalence.hpp"
#include "kernelsmith/errors.hpp"
#include "kernelsmith/instance_io.hpp"
#include "kernelsmith/oracle.hpp"
#include "kernelsmith/problems.hpp"
#include "kernelsmith/weight_reduction.hpp"

namespace py = pybind11;
using namespace kernelsmith;

namespace {

RatVec parse_vec(const std::vector<std::string>& xs) {
  RatVec out;
  for (const auto& x : xs) out.push_back(parse_rational(x));
  return out;
}

std::vector<std::string> show_vec(const IntVec& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

Domain parse_domain(const std::string& s) {
  if (s == "Z") return Domain::Integer;
  if (s == "Q") return Domain::Rational;
  throw InputError("domain must be \"Z\" or \"Q\", got \"" + s + "\"");
}

std::string report_json(const ReductionReport& r) { return report_to_json(r).dump(); }

py::tuple kernelize_json(const std::string& text, const std::optional<std::string>& threshold,
                         std::uint64_t cap) {
  InstanceDocument doc = parse_instance(text);
  if (threshold) doc.threshold = parse_rational(*threshold);
  const KernelResult res = kernelize(doc.instance, doc.threshold, ReduceOptions{cap});
  InstanceDocument out{res.reduced, std::nullopt};
  if (res.threshold) out.threshold = Rational(*res.threshold);
  return py::make_tuple(serialize_instance(out), report_json(res.report));
}

py::dict verify_json(const std::string& original, const std::string& reduced) {
  const InstanceDocument a = parse_instance(original);
  const InstanceDocument b = parse_instance(reduced);
  if (a.threshold.has_value() != b.threshold.has_value()) {
    throw InputError("either both documents carry a threshold or neither does");
  }
  std::optional<ThresholdPair> pair;
  if (a.threshold) pair = ThresholdPair{*a.threshold, *b.threshold};
  const VerifyReport rep = verify_kernel(a.instance, b.instance, pair);
  py::dict out;
  out["passed"] = rep.passed;
  out["diff"] = rep.diff;
  out["witness"] = rep.witness ? py::cast(*rep.witness) : py::none();
  out["enumerated"] = rep.enumerated;
  return out;
}

py::dict brute_force_json(const std::string& text) {
  const InstanceDocument doc = parse_instance(text);
  const OptimaReport rep = brute_force(doc.instance);
  py::dict out;
  out["value"] = rep.value ? py::cast(to_string(*rep.value)) : py::none();
  out["optima"] = rep.optima;
  out["enumerated"] = rep.enumerated;
  return out;
}

py::tuple run(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"kernelsmith"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact weight reduction and kernelization";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  m.def(
      "reduce",
      [](const std::vector<std::string>& w, const std::string& n) {
        const Reduction r = reduce(parse_vec(w), parse_bigint(n));
        return py::make_tuple(show_vec(r.w), report_json(r.report));
      },
      py::arg("w"), py::arg("n"));
  m.def(
      "reduce_with_threshold",
      [](const std::vector<std::string>& w, const std::string& k, const std::string& n) {
        const ThresholdReduction r = reduce_with_threshold(parse_vec(w), parse_rational(k),
                                                           parse_bigint(n));
        return py::make_tuple(show_vec(r.w), to_string(r.k), report_json(r.report));
      },
      py::arg("w"), py::arg("k"), py::arg("n"));
  m.def(
      "reduce_rational",
      [](const std::vector<std::string>& w, const std::string& r) {
        const Reduction red = reduce_rational(parse_vec(w), parse_bigint(r));
        return py::make_tuple(show_vec(red.w), report_json(red.report));
      },
      py::arg("w"), py::arg("r"));
  m.def(
      "same_class",
      [](const std::vector<std::string>& w, const std::vector<std::string>& w2,
         const std::string& r, const std::string& dom) {
        const RatVec a = parse_vec(w);
        return same_class(a, parse_vec(w2), ClassSpec{parse_bigint(r), parse_domain(dom), a.size()});
      },
      py::arg("w"), py::arg("w2"), py::arg("r"), py::arg("domain"));
  m.def("kernelize", &kernelize_json, py::arg("instance"), py::arg("threshold") = py::none(),
        py::arg("cap") = ReduceOptions{}.exhaustive_cap);
  m.def("verify", &verify_json, py::arg("original"), py::arg("reduced"));
  m.def("brute_force", &brute_force_json, py::arg("instance"));
  m.def(
      "normalize",
      [](const std::string& text) { return serialize_instance(parse_instance(text)); },
      py::arg("instance"));
  m.def("run_cli", &run, py::arg("args"));
}
