#pragma once

#include <cstdint>
#include <string>

#include "inrect/rectangle.hpp"

namespace inrect {

struct SearchConfig {
  int grid = 48;                // per-axis seed density
  double tol_residual = 1e-10;  // normalized max-norm target
  int max_iter = 50;
  double damping = 1.0;         // initial Newton step scale, halved on backtrack
  double separation = 0.15;     // min Moebius distance between the two pairs
  std::uint64_t seed = 0;       // deterministic grid offset scramble
};

/// The four defining equations for a family-k rectangle at parameters
/// (x, w, y, z): midpoint difference (re, im), diagonal length difference,
/// and diagonal angle minus pi*k/n wrapped to (-pi/2, pi/2] modulo pi.
/// Length components are normalized by the curve diameter.
struct SystemResidual {
  std::array<double, 4> f{};

  double norm() const;  // max norm
};

SystemResidual residual(const CurveModel& model, const AspectFamily& family,
                        const std::array<double, 4>& params);

/// Analytic 4x4 Jacobian of the system, assembled from gamma'.
Eigen::Matrix4d system_jacobian(const CurveModel& model,
                                const AspectFamily& family,
                                const std::array<double, 4>& params);

enum class RefineStatus {
  Converged,
  NoConvergence,
  SingularJacobian,
};

struct RefineResult {
  std::array<double, 4> params{};
  double residual_norm = 0.0;
  int iterations = 0;
  RefineStatus status = RefineStatus::NoConvergence;
  bool rank_deficient = false;  // condition number above 1e12 at the solution
};

/// Damped Newton on the 4x4 system. Steps come from an SVD solve, so a
/// rank-deficient Jacobian (a continuum of solutions) still yields the
/// minimum-norm correction. Never returns non-finite parameters.
RefineResult newton_refine(const CurveModel& model, const AspectFamily& family,
                           const std::array<double, 4>& start,
                           const SearchConfig& config = {});

struct FindResult {
  std::vector<Rectangle> rectangles;
  std::vector<std::string> warnings;
};

/// Multi-start search: per family, seed a lattice of canonical pair-of-pairs,
/// keep locally minimal residuals, refine each by Newton, and dedup.
/// Sorted by (k, residual). An empty result is a solver shortfall for a
/// valid smooth curve, reported via warnings rather than an error.
FindResult find_rectangles_full(const CurveModel& model, int n,
                                const SearchConfig& config = {});

std::vector<Rectangle> find_rectangles(const CurveModel& model, int n,
                                       const SearchConfig& config = {});

}  // namespace inrect
