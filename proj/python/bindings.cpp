#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diffcoh/verify.hpp"

namespace py = pybind11;
using namespace diffcoh;

namespace {

std::mt19937_64 seeded(std::uint64_t seed) { return std::mt19937_64(seed); }

// pybind11 holders cannot point to const objects.
struct PairHandle {
  PairPtr ptr;
};

struct CoeffHandle {
  CoeffPtr ptr;
};

py::dict equivalence(const Triple& a, const Triple& b) {
  const EquivalenceResult r = equivalent(a, b);
  py::dict out;
  out["equivalent"] = r.equivalent;
  if (r.witness) out["witness"] = witness_to_json(*r.witness).dump();
  if (r.certificate) out["certificate"] = certificate_to_json(*r.certificate, a.base(), a.coeffs()).dump();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differential cohomology triples on finite simplicial sets";

  py::register_exception<TripleError>(m, "TripleError", PyExc_ValueError);
  py::register_exception<verify::JobError>(m, "JobError", PyExc_ValueError);
  py::register_exception<SimplicialError>(m, "SimplicialError", PyExc_ValueError);

  py::class_<PairHandle>(m, "Pair")
      .def_property_readonly("dimension", [](const PairHandle& P) { return P.ptr->ambient()->dimension(); })
      .def_property_readonly("is_absolute", [](const PairHandle& P) { return P.ptr->is_absolute(); })
      .def_property_readonly("name", [](const PairHandle& P) { return P.ptr->ambient()->name(); })
      .def("presentation", [](const PairHandle& P) { return to_pair_presentation(*P.ptr).dump(); })
      .def("__eq__", [](const PairHandle& a, const PairHandle& b) { return a.ptr == b.ptr; })
      .def("__repr__", [](const PairHandle& P) { return "<Pair " + P.ptr->ambient()->name() + ">"; });

  py::class_<CoeffHandle>(m, "Coefficients")
      .def_property_readonly("name", [](const CoeffHandle& L) { return L.ptr->name(); })
      .def_property_readonly("rank", [](const CoeffHandle& L) { return L.ptr->rank(); })
      .def("degree", [](const CoeffHandle& L, int b) { return L.ptr->degree(b); })
      .def("basis_name", [](const CoeffHandle& L, int b) { return L.ptr->basis_name(b); })
      .def("to_json", [](const CoeffHandle& L) { return L.ptr->to_json().dump(); })
      .def("__eq__", [](const CoeffHandle& a, const CoeffHandle& b) { return a.ptr == b.ptr; })
      .def("__repr__", [](const CoeffHandle& L) { return "<Coefficients " + L.ptr->name() + ">"; });

  py::class_<Triple>(m, "Triple")
      .def_property_readonly("degree", &Triple::degree)
      .def_property_readonly("pair", [](const Triple& t) { return PairHandle{t.base()}; })
      .def_property_readonly("coefficients", [](const Triple& t) { return CoeffHandle{t.coeffs()}; })
      .def("to_json", [](const Triple& t) { return triple_to_json(t).dump(); })
      .def("violation", &triple_violation)
      .def("__add__", [](const Triple& a, const Triple& b) { return add(a, b); })
      .def("__neg__", [](const Triple& a) { return neg(a); })
      .def("__sub__", [](const Triple& a, const Triple& b) { return sub(a, b); })
      .def("__mul__", [](const Triple& a, const Triple& b) { return product_full(a, b); })
      .def("__rmul__", [](const Triple& a, long k) { return scale(k, a); })
      .def("__repr__", [](const Triple& t) {
        return "<Triple degree " + std::to_string(t.degree()) + " on " + t.base()->ambient()->name() + ">";
      });

  m.def("pair", [](const std::string& name) { return PairHandle{builtins::pair_by_name(name)}; }, py::arg("name"));
  m.def("pair_from_presentation",
        [](const std::string& text) { return PairHandle{from_pair_presentation(Json::parse(text))}; });
  m.def("coefficients",
        [](const std::string& text) { return CoeffHandle{GradedCoefficients::from_json(Json::parse(text))}; });
  m.def("integers", [] { return CoeffHandle{GradedCoefficients::integers()}; });

  m.def(
      "zero_triple", [](const PairHandle& P, const CoeffHandle& L, int n) { return zero_triple(P.ptr, L.ptr, n); },
      py::arg("pair"), py::arg("coefficients"), py::arg("degree"));
  m.def(
      "unit_triple", [](const PairHandle& P, const CoeffHandle& L) { return unit_triple(P.ptr, L.ptr); },
      py::arg("pair"), py::arg("coefficients"));
  m.def(
      "random_triple",
      [](const PairHandle& P, const CoeffHandle& L, int n, std::uint64_t seed) {
        auto rng = seeded(seed);
        return random_triple(P.ptr, L.ptr, n, rng);
      },
      py::arg("pair"), py::arg("coefficients"), py::arg("degree"), py::arg("seed"));
  m.def(
      "random_equivalent",
      [](const Triple& t, std::uint64_t seed) {
        auto rng = seeded(seed);
        return random_equivalent(t, rng);
      },
      py::arg("triple"), py::arg("seed"));
  m.def("triple_from_json", [](const std::string& text) { return triple_from_json(Json::parse(text)); });
  m.def("product", &product_full);
  m.def("equivalent", &equivalence);
  m.def("curvature", [](const Triple& t) { return form_to_json(t.omega).dump(); });
  m.def("characteristic_class", [](const Triple& t) { return cochain_to_json(t.c).dump(); });
  m.def("a_map", [](const std::string& form, const PairHandle& P, const CoeffHandle& L, int degree) {
    return a_map(form_from_json(Json::parse(form), P.ptr, L.ptr, degree - 1));
  });

  m.def(
      "circle_product", [](const PairHandle& P) { return PairHandle{circle_bundle(P.ptr).abs}; }, py::arg("pair"),
      "The pair S¹×(M, N) on which absolute integration is defined.");
  m.def(
      "integrate", [](const Triple& t, const PairHandle& base) { return integrate_abs(t, circle_bundle(base.ptr)); },
      py::arg("triple"), py::arg("base"));
  m.def(
      "pullback_to_circle_product",
      [](const Triple& t) {
        const CircleBundle& cb = circle_bundle(t.base());
        return pullback(cb.pr2, t, cb.abs);
      },
      py::arg("triple"));
  m.def(
      "circle_class", [](const CoeffHandle& L) { return circle_class(L.ptr); }, py::arg("coefficients"));

  m.def(
      "cohomology",
      [](const PairHandle& P, int n, int coeff_degree) { return cohomology(P.ptr, coeff_degree, n).to_string(); },
      py::arg("pair"), py::arg("n"), py::arg("coeff_degree") = 0);
  m.def(
      "compute",
      [](const std::string& complex, int n, const CoeffHandle& L, const std::string& what) {
        Json report = verify::compute(verify::resolve_complex(Json(complex)).pair, L.ptr, n, what);
        report["complex"] = complex;
        return report.dump();
      },
      py::arg("complex"), py::arg("n"), py::arg("coefficients"), py::arg("what") = "cohomology");
  m.def(
      "run_job",
      [](const std::string& text, const std::string& dir) {
        const verify::JobSpec job = verify::parse_job(Json::parse(text), dir);
        std::vector<verify::Certificate> certs;
        {
          py::gil_scoped_release release;
          certs = verify::run(job);
        }
        return verify::certificates_to_json(certs).dump();
      },
      py::arg("job"), py::arg("directory") = "");
}
