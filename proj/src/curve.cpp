#include "inrect/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace inrect {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative thresholds from the validation policy: both scale with the
// curve diameter so validation is invariant under rescaling.
constexpr double kSpeedFraction = 1e-6;
constexpr double kChordFraction = 1e-6;

double circle_distance(double a, double b) {
  double d = std::fmod(std::fabs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

Complex eval_coeffs(const std::vector<Complex>& coeffs, int j_min,
                    double theta, int order) {
  const Complex rot = std::polar(1.0, theta);
  Complex phase = std::polar(1.0, j_min * theta);
  Complex acc{0.0, 0.0};
  int j = j_min;
  for (const Complex& c : coeffs) {
    Complex term = c;
    for (int k = 0; k < order; ++k) term *= Complex(0.0, j);
    acc += term * phase;
    phase *= rot;
    ++j;
  }
  return acc;
}

// Signed area enclosed by the curve: pi * sum_j j |c_j|^2. Positive means
// counterclockwise.
double signed_area(const std::vector<Complex>& coeffs, int j_min) {
  double s = 0.0;
  int j = j_min;
  for (const Complex& c : coeffs) {
    s += j * std::norm(c);
    ++j;
  }
  return std::numbers::pi * s;
}

ValidationReport run_checks(const std::vector<Complex>& coeffs, int j_min,
                            int grid_size, double delta_sep) {
  if (grid_size < 64) {
    throw std::invalid_argument("validation grid must have >= 64 points");
  }
  ValidationReport rep;
  rep.grid_size = grid_size;
  rep.delta_sep = delta_sep;

  std::vector<Complex> pts(grid_size);
  std::vector<double> angles(grid_size);
  rep.min_speed = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_size; ++i) {
    double theta = kTwoPi * i / grid_size;
    angles[i] = theta;
    pts[i] = eval_coeffs(coeffs, j_min, theta, 0);
    rep.min_speed =
        std::min(rep.min_speed, std::abs(eval_coeffs(coeffs, j_min, theta, 1)));
  }

  rep.diameter = 0.0;
  rep.min_separation = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_size; ++i) {
    for (int j = i + 1; j < grid_size; ++j) {
      double chord = std::abs(pts[i] - pts[j]);
      rep.diameter = std::max(rep.diameter, chord);
      if (circle_distance(angles[i], angles[j]) >= delta_sep) {
        rep.min_separation = std::min(rep.min_separation, chord);
      }
    }
  }

  if (!(rep.diameter > 0.0)) {
    throw Error(ErrorCode::DegenerateInput, "curve has zero diameter");
  }
  if (rep.min_speed <= kSpeedFraction * rep.diameter) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "min |gamma'| = %.3g over %d grid points",
                  rep.min_speed, grid_size);
    throw Error(ErrorCode::DegenerateVelocity, buf);
  }
  if (rep.min_separation <= kChordFraction * rep.diameter) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "min chord %.3g at circle distance >= %.3g", rep.min_separation,
                  delta_sep);
    throw Error(ErrorCode::SelfIntersecting, buf);
  }
  return rep;
}

}  // namespace

CurveModel CurveModel::from_coeffs(std::vector<Complex> coeffs, int j_min,
                                   int grid_size, double delta_sep) {
  if (coeffs.empty()) {
    throw Error(ErrorCode::DegenerateInput, "empty coefficient list");
  }
  CurveModel m;
  m.coeffs_ = std::move(coeffs);
  m.j_min_ = j_min;

  bool reversed = false;
  if (signed_area(m.coeffs_, m.j_min_) < 0.0) {
    // gamma(-theta) has coefficient c_{-j} at frequency j; reversing the
    // index range flips orientation without moving the image.
    std::reverse(m.coeffs_.begin(), m.coeffs_.end());
    m.j_min_ = -(m.j_min_ + static_cast<int>(m.coeffs_.size()) - 1);
    reversed = true;
  }

  m.report_ = run_checks(m.coeffs_, m.j_min_, grid_size, delta_sep);
  m.report_.orientation_reversed = reversed;
  return m;
}

Complex CurveModel::eval(double theta, int order) const {
  if (order < 0) throw std::invalid_argument("derivative order < 0");
  return eval_coeffs(coeffs_, j_min_, theta, order);
}

std::pair<Complex, Complex> CurveModel::eval_with_derivative(
    double theta) const {
  const Complex rot = std::polar(1.0, theta);
  Complex phase = std::polar(1.0, j_min_ * theta);
  Complex value{0.0, 0.0}, deriv{0.0, 0.0};
  int j = j_min_;
  for (const Complex& c : coeffs_) {
    const Complex term = c * phase;
    value += term;
    deriv += Complex(0.0, j) * term;
    phase *= rot;
    ++j;
  }
  return {value, deriv};
}

std::string CurveModel::digest() const {
  // FNV-1a over a canonical text rendering of the coefficients.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const char* s) {
    for (; *s; ++s) {
      h ^= static_cast<unsigned char>(*s);
      h *= 1099511628211ull;
    }
  };
  char buf[96];
  std::snprintf(buf, sizeof(buf), "jmin=%d;", j_min_);
  mix(buf);
  for (const Complex& c : coeffs_) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g;", c.real(), c.imag());
    mix(buf);
  }
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

CurveModel fit_from_samples(const std::vector<Complex>& samples, int degree,
                            int grid_size, double delta_sep) {
  if (degree < 1) throw Error(ErrorCode::BadDegree, "degree must be >= 1");
  const int m = static_cast<int>(samples.size());
  if (m >= 2 && std::abs(samples.front() - samples.back()) == 0.0) {
    throw Error(ErrorCode::RepeatedEndpoint,
                "first sample repeated at the end; drop the closing point");
  }
  if (m < 16 || m < 2 * degree + 1) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d samples; need max(16, 2J+1) = %d", m,
                  std::max(16, 2 * degree + 1));
    throw Error(ErrorCode::TooFewSamples, buf);
  }

  // Discrete Fourier coefficients; on a uniform grid this is the
  // least-squares fit, and the interpolant when m == 2J+1.
  std::vector<Complex> coeffs(2 * degree + 1);
  for (int j = -degree; j <= degree; ++j) {
    Complex acc{0.0, 0.0};
    const Complex step = std::polar(1.0, -kTwoPi * j / m);
    Complex phase{1.0, 0.0};
    for (int t = 0; t < m; ++t) {
      acc += samples[t] * phase;
      phase *= step;
    }
    coeffs[j + degree] = acc / static_cast<double>(m);
  }
  return CurveModel::from_coeffs(std::move(coeffs), -degree, grid_size,
                                 delta_sep);
}

ValidationReport validate_jordan(const CurveModel& model, int grid_size,
                                 double delta_sep) {
  ValidationReport rep =
      run_checks(model.coeffs(), model.j_min(), grid_size, delta_sep);
  rep.orientation_reversed = model.report().orientation_reversed;
  return rep;
}

}  // namespace inrect
