#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "inrect/corpus.hpp"
#include "inrect/io.hpp"
#include "inrect/knot.hpp"
#include "inrect/solver.hpp"

namespace py = pybind11;
using namespace inrect;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Inscribed rectangles of aspect ratio tan(pi k / 2n) in smooth "
            "Jordan curves, via self-intersections of a Moebius strip map";

  py::register_exception<Error>(m, "InrectError");

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("grid_size", &ValidationReport::grid_size)
      .def_readonly("delta_sep", &ValidationReport::delta_sep)
      .def_readonly("min_speed", &ValidationReport::min_speed)
      .def_readonly("min_separation", &ValidationReport::min_separation)
      .def_readonly("diameter", &ValidationReport::diameter)
      .def_readonly("orientation_reversed",
                    &ValidationReport::orientation_reversed);

  py::class_<CurveModel>(m, "CurveModel")
      .def_static("from_coeffs", &CurveModel::from_coeffs, py::arg("coeffs"),
                  py::arg("j_min"), py::arg("grid_size") = 256,
                  py::arg("delta_sep") = 0.1)
      .def("eval", &CurveModel::eval, py::arg("theta"), py::arg("order") = 0)
      .def("coeffs", &CurveModel::coeffs)
      .def("j_min", &CurveModel::j_min)
      .def("diameter", &CurveModel::diameter)
      .def("digest", &CurveModel::digest)
      .def("report", &CurveModel::report);

  m.def("fit_from_samples", &fit_from_samples, py::arg("samples"),
        py::arg("degree"), py::arg("grid_size") = 256,
        py::arg("delta_sep") = 0.1);
  m.def("validate_jordan", &validate_jordan, py::arg("model"),
        py::arg("grid_size") = 256, py::arg("delta_sep") = 0.1);
  m.def("curve_from_json", &curve_from_json, py::arg("text"),
        py::arg("degree") = 0);
  m.def("load_curve_file", &load_curve_file, py::arg("path"),
        py::arg("degree") = 0);

  py::class_<MobiusPoint>(m, "MobiusPoint")
      .def_readonly("x", &MobiusPoint::x)
      .def_readonly("y", &MobiusPoint::y)
      .def("gap", &MobiusPoint::gap)
      .def("__repr__", [](const MobiusPoint& p) {
        return "MobiusPoint(x=" + std::to_string(p.x) +
               ", y=" + std::to_string(p.y) + ")";
      });

  m.def("canonicalize", &inrect::canonicalize, py::arg("x"), py::arg("y"));
  m.def("mobius_distance", &mobius_distance);

  py::class_<MuValue>(m, "MuValue")
      .def_readonly("mid", &MuValue::mid)
      .def_readonly("pow", &MuValue::pow);

  m.def("mu_map", &mu_map, py::arg("model"), py::arg("n"), py::arg("p"));
  m.def("mu_jacobian", &mu_jacobian, py::arg("model"), py::arg("n"),
        py::arg("p"));

  py::class_<ImmersionAudit>(m, "ImmersionAudit")
      .def_readonly("grid_size", &ImmersionAudit::grid_size)
      .def_readonly("delta_diag", &ImmersionAudit::delta_diag)
      .def_readonly("min_sigma2", &ImmersionAudit::min_sigma2)
      .def_readonly("argmin", &ImmersionAudit::argmin)
      .def_readonly("diagonal_sigma2", &ImmersionAudit::diagonal_sigma2)
      .def_readonly("near_degenerate", &ImmersionAudit::near_degenerate);

  m.def("immersion_audit", &immersion_audit, py::arg("model"), py::arg("n"),
        py::arg("grid_size"), py::arg("delta_diag") = 0.2);

  py::class_<AspectFamily>(m, "AspectFamily")
      .def_readonly("n", &AspectFamily::n)
      .def_readonly("k", &AspectFamily::k)
      .def_readonly("ratio", &AspectFamily::ratio);

  m.def("family_ratios", &family_ratios, py::arg("n"));
  m.def("canonical_ratio", &canonical_ratio, py::arg("r"));

  py::class_<Rectangle>(m, "Rectangle")
      .def_readonly("params", &Rectangle::params)
      .def_readonly("vertices", &Rectangle::vertices)
      .def_readonly("family", &Rectangle::family)
      .def_readonly("ratio_measured", &Rectangle::ratio_measured)
      .def_readonly("residual", &Rectangle::residual);

  m.def("rect_from_pairs", &rect_from_pairs, py::arg("model"), py::arg("p"),
        py::arg("q"), py::arg("n"), py::arg("min_separation") = 1e-6);
  m.def("dedup", &dedup, py::arg("rects"), py::arg("tol_param"));

  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("grid", &SearchConfig::grid)
      .def_readwrite("tol_residual", &SearchConfig::tol_residual)
      .def_readwrite("max_iter", &SearchConfig::max_iter)
      .def_readwrite("damping", &SearchConfig::damping)
      .def_readwrite("separation", &SearchConfig::separation)
      .def_readwrite("seed", &SearchConfig::seed);

  py::class_<SystemResidual>(m, "SystemResidual")
      .def_readonly("f", &SystemResidual::f)
      .def("norm", &SystemResidual::norm);

  m.def("residual", &residual, py::arg("model"), py::arg("family"),
        py::arg("params"));
  m.def("system_jacobian", &system_jacobian, py::arg("model"),
        py::arg("family"), py::arg("params"));

  py::enum_<RefineStatus>(m, "RefineStatus")
      .value("Converged", RefineStatus::Converged)
      .value("NoConvergence", RefineStatus::NoConvergence)
      .value("SingularJacobian", RefineStatus::SingularJacobian);

  py::class_<RefineResult>(m, "RefineResult")
      .def_readonly("params", &RefineResult::params)
      .def_readonly("residual_norm", &RefineResult::residual_norm)
      .def_readonly("iterations", &RefineResult::iterations)
      .def_readonly("status", &RefineResult::status)
      .def_readonly("rank_deficient", &RefineResult::rank_deficient);

  m.def("newton_refine", &newton_refine, py::arg("model"), py::arg("family"),
        py::arg("start"), py::arg("config") = SearchConfig{});
  m.def("find_rectangles", &find_rectangles, py::arg("model"), py::arg("n"),
        py::arg("config") = SearchConfig{});

  py::class_<FindResult>(m, "FindResult")
      .def_readonly("rectangles", &FindResult::rectangles)
      .def_readonly("warnings", &FindResult::warnings);

  m.def("find_rectangles_full", &find_rectangles_full, py::arg("model"),
        py::arg("n"), py::arg("config") = SearchConfig{});

  py::class_<BoundaryLoop>(m, "BoundaryLoop")
      .def_readonly("points", &BoundaryLoop::points)
      .def_readonly("epsilon", &BoundaryLoop::epsilon)
      .def_readonly("base_point", &BoundaryLoop::base_point);

  m.def("kn_point", &kn_point, py::arg("n"), py::arg("g"));
  m.def("kn_loop", &kn_loop, py::arg("n"), py::arg("samples"));
  m.def("boundary_loop", &boundary_loop, py::arg("model"), py::arg("n"),
        py::arg("epsilon"), py::arg("samples"));
  m.def("probe_max_epsilon", &probe_max_epsilon, py::arg("model"),
        py::arg("n"), py::arg("samples") = 256);
  m.def("winding_invariants", &winding_invariants, py::arg("loop"));

  py::class_<TorusKnotId>(m, "TorusKnotId")
      .def_readonly("p", &TorusKnotId::p)
      .def_readonly("q", &TorusKnotId::q)
      .def_readonly("braid_strands", &TorusKnotId::braid_strands)
      .def_readonly("braid_word", &TorusKnotId::braid_word);

  m.def("torus_braid_word", &torus_braid_word, py::arg("n"));
  m.def("batson_bound", &batson_bound, py::arg("n"));

  py::class_<CorpusSpec>(m, "CorpusSpec")
      .def(py::init<>())
      .def_readwrite("count", &CorpusSpec::count)
      .def_readwrite("seed", &CorpusSpec::seed)
      .def_readwrite("degree", &CorpusSpec::degree)
      .def_readwrite("decay", &CorpusSpec::decay)
      .def_readwrite("scale", &CorpusSpec::scale)
      .def_readwrite("max_retries", &CorpusSpec::max_retries);

  m.def("generate_corpus", &generate_corpus, py::arg("spec"));
}
