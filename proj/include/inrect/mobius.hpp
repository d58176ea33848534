#pragma once

#include <Eigen/Dense>

#include "inrect/curve.hpp"

namespace inrect {

/// Unordered pair {x, y} of circle parameters: a point of the Moebius
/// strip Sym_2(S^1). The canonical representative keeps x in [0, 2*pi)
/// and y = x + gap with gap in [0, pi], so y may exceed 2*pi; the diagonal
/// gap == 0 is the boundary circle of the strip.
struct MobiusPoint {
  double x = 0.0;
  double y = 0.0;

  double gap() const { return y - x; }
};

MobiusPoint canonicalize(double x, double y);

/// Distance on Sym_2(S^1): best matching of the two entries under the
/// swap action, max circle distance per entry.
double mobius_distance(const MobiusPoint& a, const MobiusPoint& b);

/// Value of the strip map: mid = (gamma(x)+gamma(y))/2 and
/// pow = (gamma(y)-gamma(x))^{2n}. The even exponent makes pow independent
/// of the order of the pair.
struct MuValue {
  Complex mid;
  Complex pow;
};

/// z^e by squaring; exact integer exponent, no transcendental calls.
Complex ipow(Complex z, unsigned exponent);

MuValue mu_map(const CurveModel& model, int n, const MobiusPoint& p);

/// Partials of (Re mid, Im mid, Re pow, Im pow) with respect to (x, y),
/// assembled from gamma' and the chain rule on the 2n-th power.
Eigen::Matrix<double, 4, 2> mu_jacobian(const CurveModel& model, int n,
                                        const MobiusPoint& p);

struct ImmersionAudit {
  int grid_size = 0;
  double delta_diag = 0.0;
  double min_sigma2 = 0.0;          // over gap >= max(delta_diag, one cell)
  MobiusPoint argmin;
  double diagonal_sigma2 = 0.0;     // at gap == 0, reported separately
  bool near_degenerate = false;     // min_sigma2 below 1e-6 * diameter
};

/// Samples the second singular value of the differential over a grid of
/// off-diagonal points. The diagonal is scanned separately: the pow rows
/// vanish there to order 2n, so its sigma_2 would mask the interior.
ImmersionAudit immersion_audit(const CurveModel& model, int n, int grid_size,
                               double delta_diag = 0.2);

}  // namespace inrect
