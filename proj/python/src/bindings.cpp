#include "paunity/complete.hpp"
#include "paunity/overlap.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace paunity;

namespace {

py::array_t<cplx> coefficient_array(const FockVector& v) {
  return py::array_t<cplx>(static_cast<py::ssize_t>(v.size()), v.coeffs().data());
}

py::array_t<std::size_t> photon_numbers(const FockVector& v) {
  py::array_t<std::size_t> out(static_cast<py::ssize_t>(v.size()));
  auto w = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < v.size(); ++i) w(static_cast<py::ssize_t>(i)) = v.photon_number(i);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Photon-added squeezed and circle states: overlaps, measures and completeness checks.";
  m.attr("__version__") = PAUNITY_VERSION;

  py::class_<SqueezeParam>(m, "SqueezeParam")
      .def(py::init<cplx>(), py::arg("zeta"))
      .def(py::init([](double zeta) { return SqueezeParam(zeta); }), py::arg("zeta"))
      .def_static("from_squeeze", &SqueezeParam::from_squeeze, py::arg("r"), py::arg("phi"))
      .def_property_readonly("zeta", &SqueezeParam::zeta)
      .def_property_readonly("modulus", &SqueezeParam::modulus)
      .def_property_readonly("phase", &SqueezeParam::phase)
      .def_property_readonly("y", &SqueezeParam::y)
      .def("__repr__", [](const SqueezeParam& p) { return "SqueezeParam(" + py::repr(py::cast(p.zeta())).cast<std::string>() + ")"; });
  py::implicitly_convertible<double, SqueezeParam>();
  py::implicitly_convertible<cplx, SqueezeParam>();

  py::class_<CircleParam>(m, "CircleParam")
      .def(py::init<cplx, unsigned, unsigned>(), py::arg("z"), py::arg("lam"), py::arg("mu"))
      .def_property_readonly("z", &CircleParam::z)
      .def_property_readonly("lam", &CircleParam::lambda)
      .def_property_readonly("mu", &CircleParam::mu)
      .def_property_readonly("t", &CircleParam::t)
      .def_property_readonly("y", &CircleParam::y);

  py::class_<Truncation>(m, "Truncation")
      .def(py::init([](double eps, std::size_t max_terms) { return Truncation{eps, max_terms}; }),
           py::arg("eps") = 1e-14, py::arg("max_terms") = 2'000'000)
      .def_readwrite("eps", &Truncation::eps)
      .def_readwrite("max_terms", &Truncation::max_terms);

  py::class_<FockVector>(m, "FockVector")
      .def_property_readonly("offset", &FockVector::offset)
      .def_property_readonly("stride", &FockVector::stride)
      .def_property_readonly("tail_bound", &FockVector::tail_bound)
      .def_property_readonly("coeffs", &coefficient_array)
      .def_property_readonly("photon_numbers", &photon_numbers)
      .def("amplitude", &FockVector::amplitude, py::arg("n"))
      .def("squared_norm", &FockVector::squared_norm)
      .def("__len__", &FockVector::size);

  const Truncation default_trunc{};
  m.def("pasvs", &pasvs, py::arg("zeta"), py::arg("m"), py::arg("trunc") = default_trunc);
  m.def("pasops", &pasops, py::arg("zeta"), py::arg("m"), py::arg("trunc") = default_trunc);
  m.def("sns", &sns, py::arg("zeta"), py::arg("m"), py::arg("trunc") = default_trunc);
  m.def("csc", &csc, py::arg("param"), py::arg("trunc") = default_trunc);
  m.def("pacsc", &pacsc, py::arg("param"), py::arg("m"), py::arg("trunc") = default_trunc);
  m.def("apply_raising", &apply_raising);
  m.def("apply_lowering", &apply_lowering);
  m.def("inner", &inner, py::arg("u"), py::arg("v"));

  py::enum_<OverlapForm>(m, "OverlapForm")
      .value("HYPERGEOMETRIC", OverlapForm::Hypergeometric)
      .value("TERMINATING", OverlapForm::Terminating)
      .value("LEGENDRE", OverlapForm::Legendre)
      .value("SERIES", OverlapForm::Series);
  py::enum_<PasopsOverlapForm>(m, "PasopsOverlapForm")
      .value("LEGENDRE", PasopsOverlapForm::Legendre)
      .value("BRIDGE", PasopsOverlapForm::Bridge)
      .value("SERIES", PasopsOverlapForm::Series);
  py::enum_<CircleNormForm>(m, "CircleNormForm")
      .value("HYPERGEOMETRIC", CircleNormForm::Hypergeometric)
      .value("HYPERBOLIC", CircleNormForm::Hyperbolic);
  py::enum_<PacscNormForm>(m, "PacscNormForm")
      .value("HYPERGEOMETRIC", PacscNormForm::Hypergeometric)
      .value("LAGUERRE", PacscNormForm::Laguerre);

  m.def("sv_overlap", &sv_overlap, py::arg("xi"), py::arg("zeta"));
  m.def("pasvs_norm", &pasvs_norm, py::arg("zeta"), py::arg("m"));
  m.def("pasops_norm", &pasops_norm, py::arg("zeta"), py::arg("m"));
  m.def("pasvs_overlap", &pasvs_overlap, py::arg("xi"), py::arg("n"), py::arg("zeta"), py::arg("m"),
        py::arg("form") = OverlapForm::Hypergeometric);
  m.def("pasops_overlap", &pasops_overlap, py::arg("xi"), py::arg("n"), py::arg("zeta"), py::arg("m"),
        py::arg("form") = PasopsOverlapForm::Legendre);
  m.def("csc_norm", &csc_norm, py::arg("param"), py::arg("form") = CircleNormForm::Hypergeometric);
  m.def("pacsc_norm", &pacsc_norm, py::arg("param"), py::arg("m"), py::arg("form") = PacscNormForm::Hypergeometric);

  py::enum_<Family>(m, "Family")
      .value("PASVS", Family::Pasvs)
      .value("PASOPS", Family::Pasops)
      .value("PACSC", Family::Pacsc);
  py::enum_<WeightForm>(m, "WeightForm")
      .value("CLOSED", WeightForm::Closed)
      .value("HYPERGEOMETRIC", WeightForm::Hypergeometric)
      .value("INTEGRAL", WeightForm::Integral);
  py::class_<WeightFunction>(m, "WeightFunction")
      .def(py::init([](Family family, unsigned m, unsigned mu, unsigned lam) {
             WeightFunction w{family, m, mu, lam};
             validate(w);
             return w;
           }),
           py::arg("family"), py::arg("m"), py::arg("mu") = 0, py::arg("lam") = 1)
      .def_readonly("family", &WeightFunction::family)
      .def_readonly("m", &WeightFunction::m)
      .def_readonly("mu", &WeightFunction::mu)
      .def_readonly("lam", &WeightFunction::lambda);

  m.def("weight_h", &weight_h, py::arg("m"), py::arg("y"), py::arg("form") = WeightForm::Closed);
  m.def("weight_h1m", py::overload_cast<unsigned, double>(&weight_h1m), py::arg("m"), py::arg("y"));
  m.def("weight_hmum", &weight_hmum, py::arg("lam"), py::arg("mu"), py::arg("m"), py::arg("y"));
  m.def("moment_reference", &moment_reference, py::arg("weight"), py::arg("k"));
  m.def(
      "moment_check",
      [](const WeightFunction& w, unsigned k_max) {
        py::list out;
        for (const auto& r : moment_check(w, k_max)) {
          out.append(py::dict(py::arg("k") = r.k, py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs,
                              py::arg("rel_err") = r.rel_err, py::arg("converged") = r.converged));
        }
        return out;
      },
      py::arg("weight"), py::arg("k_max"));
  m.def(
      "unity_resolution_matrix",
      [](const WeightFunction& w, std::size_t dim) { return unity_resolution_matrix(w, dim).matrix.entries; },
      py::arg("weight"), py::arg("dim"));

  py::enum_<DiscreteBasis>(m, "DiscreteBasis")
      .value("FOCK", DiscreteBasis::Fock)
      .value("SNS", DiscreteBasis::Sns);
  m.def("pasvs_sns_matrix", &pasvs_sns_matrix, py::arg("zeta"), py::arg("dim"));
  m.def("sns_pasvs_matrix", &sns_pasvs_matrix, py::arg("zeta"), py::arg("dim"));
  m.def(
      "discrete_completeness_matrix",
      [](const SqueezeParam& z, unsigned cutoff, std::size_t dim, DiscreteBasis basis) {
        return discrete_completeness_matrix(z, cutoff, dim, basis).entries;
      },
      py::arg("zeta"), py::arg("m_cutoff"), py::arg("dim"), py::arg("basis") = DiscreteBasis::Fock);
  m.def(
      "carleman_sequence",
      [](unsigned mm, const std::vector<unsigned>& ks) {
        std::vector<double> ratios;
        for (const auto& p : carleman_sequence(mm, ks)) ratios.push_back(p.ratio);
        return ratios;
      },
      py::arg("m"), py::arg("k_list"));
}
