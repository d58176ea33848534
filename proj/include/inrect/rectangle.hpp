#pragma once

#include <array>
#include <vector>

#include "inrect/mobius.hpp"

namespace inrect {

/// One of the n-1 target aspect ratios tan(pi*k/(2n)), k = 1..n-1.
/// Families k and n-k have reciprocal ratios.
struct AspectFamily {
  int n = 0;
  int k = 0;
  double ratio = 0.0;
};

std::vector<AspectFamily> family_ratios(int n);

/// Reciprocal convention: ratios are reported >= 1.
double canonical_ratio(double r);

/// Inscribed rectangle: params (x, w, y, z) are curve parameters of the
/// vertices in traversal order, so (x, y) and (w, z) are the diagonals.
struct Rectangle {
  std::array<double, 4> params{};
  std::array<Complex, 4> vertices{};
  AspectFamily family;
  double ratio_measured = 0.0;
  double residual = 0.0;  // max of midpoint and diagonal-length mismatch / diameter
};

/// Interleaves two chords {p.x, p.y} and {q.x, q.y} sharing a midpoint into
/// a rectangle. The measured ratio is tan(theta/2) for theta in (0, pi) the
/// angle between directed diagonals; the family is the nearest multiple of
/// pi/n, rejected beyond 0.1 rad.
Rectangle rect_from_pairs(const CurveModel& model, const MobiusPoint& p,
                          const MobiusPoint& q, int n,
                          double min_separation = 1e-6);

/// Collapses parameter 4-tuples equal within tol_param under the dihedral
/// relabelings of the vertex cycle, keeping the lowest-residual
/// representative per cluster. Output sorted by (k, x).
std::vector<Rectangle> dedup(const std::vector<Rectangle>& rects,
                             double tol_param);

/// Distance between parameter tuples minimized over the 8 dihedral
/// relabelings; max circle distance per component.
double rect_param_distance(const std::array<double, 4>& a,
                           const std::array<double, 4>& b);

}  // namespace inrect
