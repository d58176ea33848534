#include "inrect/mobius.hpp"

#include <cmath>
#include <numbers>

namespace inrect {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  double w = std::fmod(t, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

double circle_distance(double a, double b) {
  double d = std::fmod(std::fabs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

void check_n(int n) {
  if (n < 2) throw Error(ErrorCode::BadN, "n must be >= 2");
}

}  // namespace

MobiusPoint canonicalize(double x, double y) {
  double a = wrap_angle(x);
  double b = wrap_angle(y);
  double forward = wrap_angle(b - a);  // ccw gap from a to b
  if (forward < kPi || (forward == kPi && a <= b)) {
    return MobiusPoint{a, a + forward};
  }
  return MobiusPoint{b, b + (kTwoPi - forward)};
}

double mobius_distance(const MobiusPoint& a, const MobiusPoint& b) {
  double straight = std::max(circle_distance(a.x, b.x),
                             circle_distance(a.y, b.y));
  double crossed = std::max(circle_distance(a.x, b.y),
                            circle_distance(a.y, b.x));
  return std::min(straight, crossed);
}

Complex ipow(Complex z, unsigned exponent) {
  Complex result{1.0, 0.0};
  while (exponent != 0) {
    if (exponent & 1u) result *= z;
    z *= z;
    exponent >>= 1;
  }
  return result;
}

MuValue mu_map(const CurveModel& model, int n, const MobiusPoint& p) {
  check_n(n);
  Complex gx = model.eval(p.x);
  Complex gy = model.eval(p.y);
  return MuValue{0.5 * (gx + gy), ipow(gy - gx, 2 * static_cast<unsigned>(n))};
}

Eigen::Matrix<double, 4, 2> mu_jacobian(const CurveModel& model, int n,
                                        const MobiusPoint& p) {
  check_n(n);
  const Complex gx = model.eval(p.x);
  const Complex gy = model.eval(p.y);
  const Complex dx = model.eval(p.x, 1);
  const Complex dy = model.eval(p.y, 1);
  const unsigned e = 2 * static_cast<unsigned>(n);

  // d/dx (w^e) = e w^{e-1} * (-gamma'(x)),  w = gamma(y) - gamma(x).
  const Complex w = gy - gx;
  const Complex lead = static_cast<double>(e) * ipow(w, e - 1);

  const Complex mid_x = 0.5 * dx;
  const Complex mid_y = 0.5 * dy;
  const Complex pow_x = -lead * dx;
  const Complex pow_y = lead * dy;

  Eigen::Matrix<double, 4, 2> jac;
  jac << mid_x.real(), mid_y.real(),
         mid_x.imag(), mid_y.imag(),
         pow_x.real(), pow_y.real(),
         pow_x.imag(), pow_y.imag();
  return jac;
}

ImmersionAudit immersion_audit(const CurveModel& model, int n, int grid_size,
                               double delta_diag) {
  check_n(n);
  if (grid_size < 2) throw std::invalid_argument("audit grid too small");

  ImmersionAudit audit;
  audit.grid_size = grid_size;
  audit.delta_diag = delta_diag;
  audit.min_sigma2 = std::numeric_limits<double>::infinity();

  auto sigma2 = [&](const MobiusPoint& p) {
    Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(mu_jacobian(model, n, p));
    return svd.singularValues()(1);
  };

  // Interior scan: gaps from max(delta_diag, one cell) up to pi.
  const double gap_lo = std::max(delta_diag, kPi / grid_size);
  for (int i = 0; i < grid_size; ++i) {
    double x = kTwoPi * i / grid_size;
    for (int j = 0; j < grid_size; ++j) {
      double gap = gap_lo + (kPi - gap_lo) * j / (grid_size - 1);
      MobiusPoint p{x, x + gap};
      double s2 = sigma2(p);
      if (s2 < audit.min_sigma2) {
        audit.min_sigma2 = s2;
        audit.argmin = p;
      }
    }
  }

  audit.diagonal_sigma2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_size; ++i) {
    double x = kTwoPi * i / grid_size;
    audit.diagonal_sigma2 =
        std::min(audit.diagonal_sigma2, sigma2(MobiusPoint{x, x}));
  }

  audit.near_degenerate = audit.min_sigma2 < 1e-6 * model.diameter();
  return audit;
}

}  // namespace inrect
