// Python bindings. Exact values cross the boundary as strings ("n" or
// "n/d"); the Python package turns them into int / Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "taut2/cli.hpp"
#include "taut2/cohomology.hpp"
#include "taut2/modforms.hpp"
#include "taut2/pointcount.hpp"
#include "taut2/symchar.hpp"

namespace py = pybind11;
using namespace taut2;

namespace {

pointcount::HistogramStore& shared_store() {
  static pointcount::HistogramStore store;
  return store;
}

template <class F>
auto translate(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const IntegrityError& e) {
    throw std::runtime_error(std::string("integrity failure: ") + e.what());
  } catch (const DomainError& e) {
    throw py::value_error(e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact point counts, local-system traces and Sp4 invariant theory";
  m.attr("__version__") = cli::kVersion;

  m.def("total_mass", [](const std::string& family, std::int64_t q, unsigned jobs) {
    return translate([&] {
      pointcount::EnumerateOptions o;
      o.jobs = jobs;
      return to_string(pointcount::enumerate(pointcount::parse_family(family), q, o).total_mass());
    });
  }, py::arg("family"), py::arg("q"), py::arg("jobs") = 1);

  m.def("histogram", [](const std::string& family, std::int64_t q) {
    return translate([&] {
      std::vector<std::tuple<std::int64_t, std::int64_t, std::string>> rows;
      for (const auto& [cls, mass] : pointcount::enumerate(pointcount::parse_family(family), q).entries()) {
        rows.emplace_back(cls.a1, cls.a2.value_or(0), to_string(mass));
      }
      return rows;
    });
  }, py::arg("family"), py::arg("q"));

  m.def("trace_ec", [](const std::string& space, int l, int mm, std::int64_t q) {
    return translate([&] {
      return to_string(cohomology::trace_ec(cohomology::parse_space(space), {l, mm}, q, shared_store()));
    });
  }, py::arg("space"), py::arg("l"), py::arg("m"), py::arg("q"));

  m.def("hecke_trace", [](int k, std::int64_t p, int r) {
    return translate([&] { return to_string(modforms::hecke_trace(k, p, r)); });
  }, py::arg("k"), py::arg("p"), py::arg("r") = 1);

  m.def("weyl_dim", [](int l, int mm) { return translate([&] { return symchar::weyl_dim({l, mm}); }); });

  m.def("multiplicity_in_tensor_power", [](int l, int mm, int n) {
    return translate([&] { return symchar::multiplicity_in_tensor_power({l, mm}, n); });
  });

  m.def("invariant_poincare", [](int n) { return translate([&] { return symchar::invariant_poincare(n); }); });

  m.def("determine_N", [](const std::string& assume) {
    return translate([&] {
      const auto r = cohomology::determine_N(cohomology::NConfig::parse(assume));
      return std::make_pair(r.N, r.degree);
    });
  }, py::arg("assume") = "");

  m.def("inner_verdict", [](int l, int mm) {
    return translate([&] {
      const auto r = cohomology::inner_vanishing_report({l, mm});
      return std::make_pair(cohomology::to_string(r.verdict), cohomology::to_string(r.route));
    });
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
