#include "inrect/rectangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace inrect {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFamilyReject = 0.1;  // rad, nearest-multiple rejection

double circle_distance(double a, double b) {
  double d = std::fmod(std::fabs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

std::vector<AspectFamily> family_ratios(int n) {
  if (n < 2) throw Error(ErrorCode::BadN, "n must be >= 2");
  std::vector<AspectFamily> out;
  out.reserve(n - 1);
  for (int k = 1; k < n; ++k) {
    out.push_back({n, k, std::tan(kPi * k / (2.0 * n))});
  }
  return out;
}

double canonical_ratio(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::NonpositiveRatio, "aspect ratio must be positive");
  }
  return std::max(r, 1.0 / r);
}

Rectangle rect_from_pairs(const CurveModel& model, const MobiusPoint& p,
                          const MobiusPoint& q, int n,
                          double min_separation) {
  if (n < 2) throw Error(ErrorCode::BadN, "n must be >= 2");
  if (mobius_distance(p, q) < min_separation) {
    throw Error(ErrorCode::SamePair, "pairs coincide on the Moebius strip");
  }

  const double diam = model.diameter();
  const Complex gx = model.eval(p.x);
  const Complex gy = model.eval(p.y);
  Complex gw = model.eval(q.x);
  Complex gz = model.eval(q.y);

  const Complex u = gy - gx;
  Complex v = gz - gw;
  if (std::abs(u) < 1e-8 * diam || std::abs(v) < 1e-8 * diam) {
    throw Error(ErrorCode::DegenerateDiagonal, "diagonal shorter than tolerance");
  }

  double w_param = q.x, z_param = q.y;
  double theta = std::arg(v / u);
  if (theta <= 0.0) {
    // Orient the second diagonal so the angle lands in (0, pi).
    std::swap(gw, gz);
    std::swap(w_param, z_param);
    v = -v;
    theta += kPi;
  }

  // Nearest multiple of pi/n decides the family.
  int k = static_cast<int>(std::lround(theta * n / kPi));
  k = std::clamp(k, 1, n - 1);
  double mismatch = std::fabs(theta - kPi * k / n);
  if (mismatch > kFamilyReject) {
    throw Error(ErrorCode::FamilyMismatch,
                "diagonal angle not near a multiple of pi/n");
  }

  Rectangle rect;
  rect.params = {p.x, w_param, p.y, z_param};
  rect.vertices = {gx, gw, gy, gz};
  rect.family = {n, k, std::tan(kPi * k / (2.0 * n))};
  rect.ratio_measured = std::tan(0.5 * theta);
  double mid_gap = std::abs(0.5 * (gx + gy) - 0.5 * (gw + gz));
  double len_gap = std::fabs(std::abs(u) - std::abs(v));
  rect.residual = std::max(mid_gap, len_gap) / diam;
  return rect;
}

double rect_param_distance(const std::array<double, 4>& a,
                           const std::array<double, 4>& b) {
  // Dihedral group of the 4-cycle: rotations and reversal.
  double best = std::numeric_limits<double>::infinity();
  for (int rev = 0; rev < 2; ++rev) {
    for (int rot = 0; rot < 4; ++rot) {
      double worst = 0.0;
      for (int i = 0; i < 4; ++i) {
        int idx = rev ? (rot + 4 - i) % 4 : (rot + i) % 4;
        worst = std::max(worst, circle_distance(a[i], b[idx]));
      }
      best = std::min(best, worst);
    }
  }
  return best;
}

std::vector<Rectangle> dedup(const std::vector<Rectangle>& rects,
                             double tol_param) {
  const int m = static_cast<int>(rects.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };

  // Single-linkage: chains of near-identical tuples collapse together,
  // which also merges samplings of a continuum of solutions.
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (rects[i].family.n != rects[j].family.n ||
          rects[i].family.k != rects[j].family.k) {
        continue;
      }
      if (rect_param_distance(rects[i].params, rects[j].params) <= tol_param) {
        parent[find(i)] = find(j);
      }
    }
  }

  std::vector<int> best(m, -1);
  for (int i = 0; i < m; ++i) {
    int root = find(i);
    int& b = best[root];
    if (b < 0 || rects[i].residual < rects[b].residual ||
        (rects[i].residual == rects[b].residual &&
         rects[i].params < rects[b].params)) {
      b = i;
    }
  }

  std::vector<Rectangle> out;
  for (int i = 0; i < m; ++i) {
    if (best[i] >= 0) out.push_back(rects[best[i]]);
  }
  std::sort(out.begin(), out.end(), [](const Rectangle& a, const Rectangle& b) {
    if (a.family.k != b.family.k) return a.family.k < b.family.k;
    if (a.params[0] != b.params[0]) return a.params[0] < b.params[0];
    return a.params < b.params;
  });
  return out;
}

}  // namespace inrect
