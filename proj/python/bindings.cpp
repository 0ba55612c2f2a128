#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abelframe/modrep.hpp"
#include "abelframe/potential_opt.hpp"

namespace py = pybind11;
using namespace abelframe;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

std::vector<Complex> to_vector(const CArray& a) {
  if (a.ndim() != 1) throw InputError("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

CArray to_array(std::span<const Complex> v) {
  CArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

CArray to_array(const Eigen::MatrixXcd& m) {
  CArray out({m.rows(), m.cols()});
  auto r = out.mutable_unchecked<2>();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  }
  return out;
}

GroupElement element(const GroupSpec& g, std::vector<std::int64_t> coords) {
  GroupElement x(std::move(coords));
  g.check_element(x);
  return x;
}

std::vector<std::int64_t> coords(const GroupElement& x) { return x.coords; }

Subgroup make_subgroup(const GroupSpec& g, const std::vector<std::vector<std::int64_t>>& gens) {
  std::vector<GroupElement> elems;
  for (const auto& c : gens) elems.push_back(element(g, c));
  return Subgroup::closure(g, elems);
}

FilterBank make_bank(const Subgroup& H, const CArray& filters) {
  if (filters.ndim() != 2) throw InputError("filters must be a 2-D array (n, |G|)");
  const auto n = static_cast<std::size_t>(filters.shape(0));
  const auto len = static_cast<std::size_t>(filters.shape(1));
  std::vector<Signal> f;
  for (std::size_t m = 0; m < n; ++m) {
    const Complex* row = filters.data() + m * len;
    f.emplace_back(H.ambient(), std::vector<Complex>(row, row + len));
  }
  return FilterBank(H, std::move(f));
}

CArray bank_filters(const FilterBank& fb) {
  const auto len = fb.group().order();
  CArray out({static_cast<py::ssize_t>(fb.size()), static_cast<py::ssize_t>(len)});
  for (std::size_t m = 0; m < fb.size(); ++m) {
    std::copy(fb.filter(m).values().begin(), fb.filter(m).values().end(), out.mutable_data() + m * len);
  }
  return out;
}

py::dict partition_dict(const PartitionReport& r) {
  py::dict d;
  d["m0"] = r.m0;
  d["orthogonality_defect"] = r.orthogonality_defect;
  d["cross_orthogonality_defect"] = r.cross_orthogonality_defect;
  d["tightness_defect"] = r.tightness_defect;
  d["tight_rank"] = r.tight_rank;
  d["expected_rank"] = r.expected_rank;
  d["block_norm_defect"] = r.block_norm_defect;
  d["block_tightness_defect"] = r.block_tightness_defect;
  d["eigenvector_defect"] = r.eigenvector_defect;
  d["max_defect"] = r.max_defect();
  return d;
}

py::dict underdetermined_dict(const UnderdeterminedReport& r) {
  py::dict d;
  d["orthogonality_defect"] = r.orthogonality_defect;
  d["eigenvector_defect"] = r.eigenvector_defect;
  d["max_defect"] = r.max_defect();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Harmonic analysis and frame potential design on finite abelian groups";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<GroupSpec>(m, "Group")
      .def(py::init<std::vector<std::int64_t>>(), py::arg("moduli"))
      .def_property_readonly("moduli",
                             [](const GroupSpec& g) { return std::vector<std::int64_t>(g.moduli().begin(), g.moduli().end()); })
      .def_property_readonly("order", &GroupSpec::order)
      .def_property_readonly("exponent", &GroupSpec::exponent)
      .def("element_index", [](const GroupSpec& g, std::vector<std::int64_t> x) { return g.element_index(element(g, std::move(x))); })
      .def("element_at", [](const GroupSpec& g, std::size_t i) { return coords(g.element_at(i)); })
      .def("add", [](const GroupSpec& g, std::vector<std::int64_t> x, std::vector<std::int64_t> y) {
        return coords(g.add(element(g, std::move(x)), element(g, std::move(y))));
      })
      .def("negate", [](const GroupSpec& g, std::vector<std::int64_t> x) { return coords(g.negate(element(g, std::move(x)))); })
      .def("character", [](const GroupSpec& g, std::vector<std::int64_t> a, std::vector<std::int64_t> x) {
        return char_eval(g, element(g, std::move(a)), element(g, std::move(x)));
      })
      .def("__len__", &GroupSpec::order)
      .def("__eq__", &GroupSpec::operator==)
      .def("__repr__", [](const GroupSpec& g) {
        std::string s = "Group([";
        for (std::size_t j = 0; j < g.rank(); ++j) s += (j ? ", " : "") + std::to_string(g.moduli()[j]);
        return s + "])";
      });

  py::class_<Subgroup>(m, "Subgroup")
      .def(py::init(&make_subgroup), py::arg("group"), py::arg("generators"))
      .def_static("trivial", &Subgroup::trivial)
      .def_static("full", &Subgroup::full)
      .def_property_readonly("group", &Subgroup::ambient)
      .def_property_readonly("order", &Subgroup::order)
      .def_property_readonly("index", &Subgroup::index)
      .def_property_readonly("elements", [](const Subgroup& h) {
        std::vector<std::vector<std::int64_t>> out;
        for (const auto& x : h.elements()) out.push_back(x.coords);
        return out;
      })
      .def_property_readonly("element_indices", [](const Subgroup& h) {
        return std::vector<std::size_t>(h.element_indices().begin(), h.element_indices().end());
      })
      .def("contains", [](const Subgroup& h, std::vector<std::int64_t> x) {
        return h.contains(element(h.ambient(), std::move(x)));
      })
      .def("fibers", [](const Subgroup& h) { return fiber_partition(h).fibers; },
           "Character labels (canonical indices) of each fiber, in fiber order.");

  m.def("dft", [](const GroupSpec& g, const CArray& f) { return to_array(dft(Signal(g, to_vector(f))).values()); });
  m.def("idft", [](const GroupSpec& g, const CArray& F) { return to_array(idft(Spectrum(g, to_vector(F))).values()); });
  m.def("convolve", [](const GroupSpec& g, const CArray& a, const CArray& b) {
    return to_array(convolve(Signal(g, to_vector(a)), Signal(g, to_vector(b))).values());
  });
  m.def("involution", [](const GroupSpec& g, const CArray& f) { return to_array(involution(Signal(g, to_vector(f))).values()); });
  m.def("translate", [](const GroupSpec& g, const CArray& f, std::vector<std::int64_t> x) {
    return to_array(translate(Signal(g, to_vector(f)), element(g, std::move(x))).values());
  });
  m.def("downsample", [](const Subgroup& h, const CArray& f) {
    return to_array(downsample(Signal(h.ambient(), to_vector(f)), h));
  });
  m.def("upsample", [](const Subgroup& h, const CArray& y) { return to_array(upsample(to_vector(y), h).values()); });
  m.def("subgroup_dft", [](const Subgroup& h, const CArray& y) { return to_array(subgroup_dft(to_vector(y), h)); });

  py::class_<FilterBank>(m, "FilterBank")
      .def(py::init(&make_bank), py::arg("subgroup"), py::arg("filters"))
      .def_property_readonly("subgroup", &FilterBank::subgroup)
      .def_property_readonly("group", &FilterBank::group)
      .def_property_readonly("filters", &bank_filters)
      .def_property_readonly("norms", &FilterBank::norms)
      .def("__len__", &FilterBank::size)
      .def("analyze", [](const FilterBank& fb, const CArray& f) {
        std::vector<CArray> out;
        for (const auto& y : analyze(fb, Signal(fb.group(), to_vector(f)))) out.push_back(to_array(y));
        return out;
      })
      .def("synthesize", [](const FilterBank& fb, const std::vector<CArray>& y) {
        std::vector<SubgroupSignal> coeffs;
        for (const auto& a : y) coeffs.push_back(to_vector(a));
        return to_array(synthesize(fb, coeffs).values());
      })
      .def("frame_operator", [](const FilterBank& fb, const CArray& f) {
        return to_array(frame_operator_apply(fb, Signal(fb.group(), to_vector(f))).values());
      })
      .def("frame_bounds", [](const FilterBank& fb) {
        const auto b = frame_bounds(fb);
        return std::make_pair(b.lower, b.upper);
      })
      .def("frame_potential", &frame_potential_fb, "Sum of the block potentials.")
      .def("frame_potential_system", [](const FilterBank& fb) { return frame_potential(expand_system(fb)); },
           "Double sum over the expanded system.")
      .def("is_tight", [](const FilterBank& fb, double eps) {
        const auto v = is_tight(fb, eps);
        return std::make_pair(v.tight, v.bound);
      }, py::arg("eps") = 1e-8)
      .def("blocks", [](const FilterBank& fb) {
        std::vector<CArray> out;
        for (const auto& B : build_modrep(fb).blocks) out.push_back(to_array(B));
        return out;
      })
      .def("gradient", [](const FilterBank& fb) {
        std::vector<CArray> out;
        for (const auto& g : fp_gradient(fb)) out.push_back(to_array(g.values()));
        return out;
      });

  m.def("standard_basis_bank", &standard_basis_bank);

  m.def("frame_potential", [](const std::vector<CArray>& xs) {
    if (xs.empty()) return 0.0;
    const GroupSpec g({static_cast<std::int64_t>(xs[0].size())});
    std::vector<Signal> sys;
    for (const auto& x : xs) sys.emplace_back(g, to_vector(x));
    return frame_potential(sys);
  }, "Frame potential of an arbitrary list of equal-length vectors.");

  m.def("compute_m0", [](const std::vector<double>& norms, std::size_t N) { return compute_m0(norms, N); },
        py::arg("norms"), py::arg("N"));
  m.def("fundamental_frame_inequality",
        [](const std::vector<double>& norms, std::size_t d) { return fundamental_frame_inequality(norms, d); });
  m.def("fp_floor", [](const std::vector<double>& norms, std::size_t subgroup_order, std::size_t N, std::size_t m0) {
    return fp_floor(norms, subgroup_order, N, m0);
  }, py::arg("norms"), py::arg("subgroup_order"), py::arg("N"), py::arg("m0"));

  m.def("verify_theorem", [](const FilterBank& fb, std::size_t m0, double tol) {
    const auto r = verify_theorem(fb, m0, tol);
    auto d = partition_dict(r);
    d["passed"] = r.passed(tol);
    return d;
  }, py::arg("bank"), py::arg("m0"), py::arg("tol") = 1e-5);
  m.def("verify_underdetermined", [](const FilterBank& fb, double tol) {
    const auto r = verify_underdetermined(fb, tol);
    auto d = underdetermined_dict(r);
    d["passed"] = r.passed(tol);
    return d;
  }, py::arg("bank"), py::arg("tol") = 1e-6);

  m.def("minimize_fp",
        [](const Subgroup& H, std::vector<double> norms, std::uint64_t seed, std::size_t max_iters, double grad_tol,
           double tight_eps, double tol) {
          DesignProblem p{.subgroup = H, .norms = std::move(norms)};
          p.seed = seed;
          p.max_iters = max_iters;
          p.grad_tol = grad_tol;
          p.tight_eps = tight_eps;
          p.verify_tol = tol;
          std::optional<DesignReport> result;
          {
            py::gil_scoped_release release;
            result.emplace(minimize_fp(p));
          }
          const DesignReport& r = *result;
          py::dict d;
          d["bank"] = r.filters;
          d["filters"] = bank_filters(r.filters);
          d["fp_trajectory"] = r.fp_trajectory;
          d["fp"] = r.fp;
          d["fp_floor"] = r.fp_floor;
          d["grad_norm"] = r.grad_norm;
          d["bounds"] = std::make_pair(r.bounds.lower, r.bounds.upper);
          d["regime"] = to_string(r.split.regime);
          d["m0"] = r.split.m0;
          d["partition_check"] = r.partition ? partition_dict(*r.partition) : underdetermined_dict(*r.underdetermined);
          d["tight"] = r.tight;
          d["converged"] = r.converged;
          d["verified"] = r.verified(tol);
          d["iterations"] = r.iterations;
          d["restarts"] = r.restarts;
          return d;
        },
        py::arg("subgroup"), py::arg("norms"), py::arg("seed") = 0, py::arg("max_iters") = 50000,
        py::arg("grad_tol") = 1e-8, py::arg("tight_eps") = 1e-8, py::arg("tol") = 1e-5);
}
