#include "inrect/knot.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "inrect/mobius.hpp"

namespace inrect {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_n(int n) {
  if (n < 2) throw Error(ErrorCode::BadN, "n must be >= 2");
}

double chord_length(const CurveModel& model, double x, double s) {
  return std::abs(model.eval(x + s) - model.eval(x));
}

// First s > 0 with |gamma(x+s) - gamma(x)| == epsilon, scanning up to pi.
// Returns a negative value when the chord never reaches epsilon.
double first_crossing(const CurveModel& model, double x, double epsilon) {
  const int kScan = 512;
  double prev_s = 0.0;
  for (int i = 1; i <= kScan; ++i) {
    double s = std::numbers::pi * i / kScan;
    if (chord_length(model, x, s) - epsilon >= 0.0) {
      // Bisection on the bracket [prev_s, s].
      double lo = prev_s, hi = s;
      for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi);
        (chord_length(model, x, mid) - epsilon >= 0.0 ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev_s = s;
  }
  return -1.0;
}

// Continuation step: Newton on s from the previous offset, falling back to
// local bracketing. Fails (negative) if the solution jumps branches.
double continue_crossing(const CurveModel& model, double x, double epsilon,
                         double s_prev) {
  double s = s_prev;
  for (int it = 0; it < 60; ++it) {
    Complex u = model.eval(x + s) - model.eval(x);
    double h = std::abs(u) - epsilon;
    if (std::fabs(h) < 1e-13 * std::max(1.0, epsilon)) {
      return (s > 0.0 && s <= std::numbers::pi) ? s : -1.0;
    }
    double dh = (std::conj(u) * model.eval(x + s, 1)).real() / std::abs(u);
    if (std::fabs(dh) < 1e-14) break;
    double next = s - h / dh;
    if (!(next > 0.0) || next > std::numbers::pi ||
        std::fabs(next - s_prev) > 0.5) {
      break;
    }
    s = next;
  }
  return -1.0;
}

}  // namespace

std::pair<Complex, Complex> kn_point(int n, Complex g) {
  check_n(n);
  if (std::fabs(std::abs(g) - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotUnitModulus, "knot parameter must lie on S^1");
  }
  return {g, ipow(g, 2 * static_cast<unsigned>(n))};
}

BoundaryLoop kn_loop(int n, int samples) {
  check_n(n);
  if (samples < 8) throw std::invalid_argument("need at least 8 samples");
  BoundaryLoop loop;
  loop.epsilon = 1.0;
  loop.base_point = {0.0, 0.0};
  loop.points.reserve(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    Complex g = std::polar(1.0, kTwoPi * i / samples);
    loop.points.push_back(kn_point(n, g));
  }
  return loop;
}

BoundaryLoop boundary_loop(const CurveModel& model, int n, double epsilon,
                           int samples) {
  check_n(n);
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (samples < 16) throw std::invalid_argument("need at least 16 samples");

  const double s0 = first_crossing(model, 0.0, epsilon);
  if (s0 < 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "no chord of length %.6g from parameter 0; curve diameter %.6g",
                  epsilon, model.diameter());
    throw Error(ErrorCode::EpsilonTooLarge, buf);
  }

  BoundaryLoop loop;
  loop.epsilon = epsilon;
  loop.points.reserve(samples + 1);

  Complex centroid{0.0, 0.0};
  double s = s0;
  for (int i = 0; i < samples; ++i) {
    const double x = kTwoPi * i / samples;
    if (i > 0) {
      double next = continue_crossing(model, x, epsilon, s);
      if (next < 0.0) {
        throw Error(ErrorCode::EpsilonTooLarge,
                    "level set is not a single graph over the base parameter");
      }
      s = next;
    }
    const Complex a = model.eval(x);
    const Complex b = model.eval(x + s);
    const Complex dir = ipow((b - a) / epsilon, 2 * static_cast<unsigned>(n));
    loop.points.emplace_back(0.5 * (a + b), dir / std::abs(dir));
    centroid += a;
  }

  // Closing the trace must return to the starting offset.
  double s_close = continue_crossing(model, kTwoPi, epsilon, s);
  if (s_close < 0.0 || std::fabs(s_close - s0) > 1e-6) {
    throw Error(ErrorCode::EpsilonTooLarge, "level-set trace fails to close");
  }
  loop.points.push_back(loop.points.front());
  loop.base_point = centroid / static_cast<double>(samples);
  return loop;
}

double probe_max_epsilon(const CurveModel& model, int n, int samples) {
  auto traces = [&](double eps) {
    try {
      boundary_loop(model, n, eps, samples);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  double lo = 0.0, hi = 2.0 * model.diameter();
  // Seed the bracket with a known-good small value.
  double seed = 0.01 * model.diameter();
  if (!traces(seed)) return 0.0;
  lo = seed;
  for (int it = 0; it < 40 && hi - lo > 1e-3 * model.diameter(); ++it) {
    double mid = 0.5 * (lo + hi);
    (traces(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::pair<int, int> winding_invariants(const BoundaryLoop& loop) {
  if (loop.points.size() < 4) {
    throw std::invalid_argument("loop too short");
  }
  if (std::abs(loop.points.front().first - loop.points.back().first) > 1e-9 ||
      std::abs(loop.points.front().second - loop.points.back().second) > 1e-9) {
    throw Error(ErrorCode::OpenLoop, "loop is not closed");
  }

  auto winding = [&](auto&& project, const Complex& center) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < loop.points.size(); ++i) {
      const Complex a = project(loop.points[i]) - center;
      const Complex b = project(loop.points[i + 1]) - center;
      if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12) {
        throw Error(ErrorCode::BasePointOnLoop,
                    "winding center lies on the loop");
      }
      total += std::arg(b / a);
    }
    const double turns = total / kTwoPi;
    const double nearest = std::round(turns);
    if (std::fabs(turns - nearest) > 1e-6) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "angle sum %.12g turns is not an integer", turns);
      throw Error(ErrorCode::NonIntegerWinding, buf);
    }
    return static_cast<int>(nearest);
  };

  for (const auto& pt : loop.points) {
    if (std::abs(pt.first - loop.base_point) < 1e-9) {
      throw Error(ErrorCode::BasePointOnLoop,
                  "base point within 1e-9 of the loop");
    }
  }

  int w1 = winding([](const auto& pt) { return pt.first; }, loop.base_point);
  int w2 = winding([](const auto& pt) { return pt.second; }, Complex{0, 0});
  return {w1, w2};
}

TorusKnotId torus_braid_word(int n) {
  check_n(n);
  TorusKnotId id;
  id.p = 2 * n;
  id.q = 2 * n - 1;
  id.braid_strands = id.p;
  id.braid_word.reserve((id.p - 1) * id.q);
  for (int rep = 0; rep < id.q; ++rep) {
    for (int s = 1; s < id.p; ++s) id.braid_word.push_back(s);
  }
  return id;
}

int batson_bound(int n) {
  check_n(n);
  return n - 1;
}

}  // namespace inrect
