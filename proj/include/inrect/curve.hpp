#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "inrect/error.hpp"

namespace inrect {

using Complex = std::complex<double>;

/// Result of the embeddedness checks run on a curve model.
///
/// A model passes when the velocity never drops below a small fraction of
/// the curve diameter and no two parameters at circle distance >= delta_sep
/// come closer than the chord threshold.
struct ValidationReport {
  int grid_size = 0;
  double delta_sep = 0.0;
  double min_speed = 0.0;       // min |gamma'| over the grid
  double min_separation = 0.0;  // min chord over well-separated pairs
  double diameter = 0.0;        // max chord over the grid
  bool orientation_reversed = false;  // input was clockwise, stored reversed
};

/// Smooth closed plane curve gamma(theta) = sum_j c_j e^{i j theta}.
///
/// The truncated Fourier representation is intrinsically 2*pi-periodic and
/// C-infinity, with closed-form derivatives of every order. Models are
/// immutable once constructed and validated, so concurrent reads are safe.
class CurveModel {
 public:
  /// Builds a model from coefficients c_j, j = j_min .. j_min+len-1, after
  /// checking it is an embedded curve with nonvanishing velocity.
  /// Clockwise input is reversed so stored curves run counterclockwise.
  static CurveModel from_coeffs(std::vector<Complex> coeffs, int j_min,
                                int grid_size = 256, double delta_sep = 0.1);

  /// gamma and its derivatives: order 0 is the point, 1 the velocity,
  /// 2 the acceleration.
  Complex eval(double theta, int order = 0) const;

  /// gamma and gamma' in one coefficient pass (solver hot path).
  std::pair<Complex, Complex> eval_with_derivative(double theta) const;

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_min_ + static_cast<int>(coeffs_.size()) - 1; }
  double diameter() const { return report_.diameter; }
  const ValidationReport& report() const { return report_; }

  /// Hex digest of the coefficient list, stable across runs.
  std::string digest() const;

 private:
  CurveModel() = default;

  std::vector<Complex> coeffs_;
  int j_min_ = 0;
  ValidationReport report_;
};

/// Least-squares trigonometric fit of degree J through uniformly spaced
/// samples; with exactly 2J+1 samples this is the interpolant.
/// Requires at least 16 samples (first point not repeated at the end)
/// and at least 2J+1 of them.
CurveModel fit_from_samples(const std::vector<Complex>& samples, int degree,
                            int grid_size = 256, double delta_sep = 0.1);

/// Runs the embeddedness checks on an already-built coefficient set.
/// Throws DegenerateInput, DegenerateVelocity or SelfIntersecting on failure.
ValidationReport validate_jordan(const CurveModel& model, int grid_size = 256,
                                 double delta_sep = 0.1);

}  // namespace inrect
