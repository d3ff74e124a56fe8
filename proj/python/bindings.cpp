#include "hgm/census.hpp"
#include "hgm/cli.hpp"
#include "hgm/error.hpp"
#include "hgm/family.hpp"
#include "hgm/hodge.hpp"
#include "hgm/lseries.hpp"
#include "hgm/monodromy.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace hgm;

namespace {

py::object to_py(const Int &x) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

py::list to_py(const std::vector<Int> &v) {
  py::list l;
  for (auto &x : v) l.append(to_py(x));
  return l;
}

Rat rat(const py::object &t) { return parse_rational(py::str(t)); }

py::dict local_dict(const LocalData &ld) {
  py::dict d;
  d["p"] = ld.p;
  d["kind"] = prime_kind_name(ld.kind);
  d["c_p"] = ld.c_p ? py::object(py::int_(*ld.c_p)) : py::object(py::none());
  d["exactness"] = exactness_name(ld.exactness);
  d["degree"] = ld.factor.degree;
  d["provenance"] = provenance_name(ld.factor.provenance);
  d["coeffs"] = ld.factor.known() ? py::object(to_py(ld.factor.poly)) : py::object(py::none());
  d["note"] = ld.note;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "hypergeometric motive toolkit";
  py::register_exception<Error>(m, "HgmError", PyExc_ValueError);

  py::class_<FamilyParameter>(m, "Family")
      .def(py::init(&parse_family), py::arg("text"))
      .def_property_readonly("gamma", [](const FamilyParameter &f) { return f.gamma; })
      .def_property_readonly("alpha_side", [](const FamilyParameter &f) { return f.cyc.alpha_side; })
      .def_property_readonly("beta_side", [](const FamilyParameter &f) { return f.cyc.beta_side; })
      .def_readonly("n", &FamilyParameter::n)
      .def_readonly("kappa", &FamilyParameter::kappa)
      .def_readonly("vol", &FamilyParameter::vol)
      .def_readonly("m", &FamilyParameter::m)
      .def_readonly("q_at_zero", &FamilyParameter::q_at_zero)
      .def("key", &FamilyParameter::key)
      .def("cyclotomic", &FamilyParameter::cyclotomic_string)
      .def("__repr__", [](const FamilyParameter &f) { return "Family('" + f.key() + "')"; });

  m.def("hodge_vector", [](const FamilyParameter &f, bool at_one) {
    HodgeData h = at_one ? hodge_vector_at_one(f) : hodge_vector(f);
    py::dict d;
    d["h"] = h.h;
    d["w"] = h.w;
    d["phi0"] = h.phi0;
    return d;
  }, py::arg("family"), py::arg("at_one") = false);

  m.def("classify", [](const FamilyParameter &f) { return std::string(classification_name(classify(f))); });
  m.def("drop_rank", [](const FamilyParameter &f, const std::string &cusp, i64 k) {
    if (cusp != "zero" && cusp != "infinity") throw Error(ErrorKind::InvalidArgument, "cusp must be zero or infinity");
    return drop_rank(f, cusp == "zero" ? Cusp::Zero : Cusp::Infinity, k);
  });

  m.def("trace", [](const FamilyParameter &f, const py::object &t, u64 p, int e) {
    Rat tr = rat(t);
    Int v;
    {
      py::gil_scoped_release nogil;
      v = trace(f, tr, p, e);
    }
    return to_py(v);
  }, py::arg("family"), py::arg("t"), py::arg("p"), py::arg("e") = 1);

  m.def("frobenius_poly", [](const FamilyParameter &f, const py::object &t, u64 p) {
    return to_py(frobenius_poly(f, rat(t), p).poly);
  });

  m.def("local_data", [](const FamilyParameter &f, const py::object &t, u64 p) {
    return local_dict(local_data(f, rat(t), p, FixtureTable::builtin()));
  });

  m.def("conductor", [](const FamilyParameter &f, const py::object &t, int threads) {
    auto r = conductor(f, rat(t), FixtureTable::builtin(), {nullptr, threads});
    py::dict d;
    d["value"] = to_py(r.value);
    d["exact"] = r.exact;
    d["uses_fixtures"] = r.uses_fixtures;
    py::list locals;
    for (auto &ld : r.locals) locals.append(local_dict(ld));
    d["locals"] = locals;
    return d;
  }, py::arg("family"), py::arg("t"), py::arg("threads") = 1);

  m.def("dirichlet_coefficients", [](const FamilyParameter &f, const py::object &t, u64 n) {
    return to_py(dirichlet_coefficients(f, rat(t), n, FixtureTable::builtin()));
  });

  m.def("export_json", [](const FamilyParameter &f, const py::object &t, u64 n, std::optional<int> sigma) {
    return export_json(f, rat(t), n, FixtureTable::builtin(), sigma);
  }, py::arg("family"), py::arg("t"), py::arg("n") = 100, py::arg("sigma") = py::none());

  m.def("mum_counts", [](int n) { return to_py(mum_counts(n)); });
  m.def("census_total", [](int n, bool mod_negation) {
    return to_py(census_total_dp(n, mod_negation ? CountMode::ModNegation : CountMode::Raw));
  }, py::arg("n"), py::arg("mod_negation") = true);

  m.def("run_cli", [](const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
