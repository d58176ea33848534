#include "inrect/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>

namespace inrect {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinDamping = 0x1p-10;
constexpr double kCondLimit = 1e12;
constexpr double kChordFloor = 1e-8;  // fraction of diameter
constexpr int kMaxSeeds = 4000;       // refinement budget per family

// Circle distance for inputs in [0, 3*pi), i.e. |a - b| < 4*pi.
inline double cdist_bounded(double a, double b) {
  double d = std::fabs(a - b);
  if (d >= kTwoPi) d -= kTwoPi;
  return std::min(d, kTwoPi - d);
}

double wrap_mod_pi(double delta) {
  // Into (-pi/2, pi/2], the directed-line metric.
  double w = std::fmod(delta + 0.5 * kPi, kPi);
  if (w <= 0.0) w += kPi;
  return w - 0.5 * kPi;
}

struct Chords {
  Complex u, v;        // gamma(y)-gamma(x), gamma(z)-gamma(w)
  Complex mid_diff;    // midpoint mismatch
};

std::optional<Chords> chords_at(const CurveModel& model,
                                const std::array<double, 4>& params) {
  const Complex gx = model.eval(params[0]);
  const Complex gw = model.eval(params[1]);
  const Complex gy = model.eval(params[2]);
  const Complex gz = model.eval(params[3]);
  Chords c;
  c.u = gy - gx;
  c.v = gz - gw;
  c.mid_diff = 0.5 * (gx + gy) - 0.5 * (gw + gz);
  const double floor = kChordFloor * model.diameter();
  if (std::abs(c.u) < floor || std::abs(c.v) < floor) return std::nullopt;
  return c;
}

std::optional<SystemResidual> residual_opt(const CurveModel& model,
                                           const AspectFamily& family,
                                           const std::array<double, 4>& params) {
  auto c = chords_at(model, params);
  if (!c) return std::nullopt;
  const double diam = model.diameter();
  SystemResidual r;
  r.f[0] = c->mid_diff.real() / diam;
  r.f[1] = c->mid_diff.imag() / diam;
  r.f[2] = (std::abs(c->u) - std::abs(c->v)) / diam;
  r.f[3] = wrap_mod_pi(std::arg(c->v / c->u) - kPi * family.k / family.n);
  return r;
}

}  // namespace

double SystemResidual::norm() const {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::fabs(x));
  return m;
}

SystemResidual residual(const CurveModel& model, const AspectFamily& family,
                        const std::array<double, 4>& params) {
  auto r = residual_opt(model, family, params);
  if (!r) {
    throw Error(ErrorCode::DegenerateDiagonal,
                "chord below tolerance, diagonal angle undefined");
  }
  return *r;
}

Eigen::Matrix4d system_jacobian(const CurveModel& model,
                                const AspectFamily& family,
                                const std::array<double, 4>& params) {
  (void)family;  // the angle offset is constant in the parameters
  auto copt = chords_at(model, params);
  if (!copt) {
    throw Error(ErrorCode::DegenerateDiagonal,
                "chord below tolerance, diagonal angle undefined");
  }
  const Chords& c = *copt;
  const double diam = model.diameter();
  const Complex dx = model.eval(params[0], 1);
  const Complex dw = model.eval(params[1], 1);
  const Complex dy = model.eval(params[2], 1);
  const Complex dz = model.eval(params[3], 1);

  const double nu = std::abs(c.u), nv = std::abs(c.v);
  const Complex cu = std::conj(c.u), cv = std::conj(c.v);

  Eigen::Matrix4d jac;
  // Rows 0,1: midpoint difference over diameter.
  const Complex m_x = 0.5 * dx / diam, m_w = -0.5 * dw / diam;
  const Complex m_y = 0.5 * dy / diam, m_z = -0.5 * dz / diam;
  jac(0, 0) = m_x.real(); jac(0, 1) = m_w.real();
  jac(0, 2) = m_y.real(); jac(0, 3) = m_z.real();
  jac(1, 0) = m_x.imag(); jac(1, 1) = m_w.imag();
  jac(1, 2) = m_y.imag(); jac(1, 3) = m_z.imag();
  // Row 2: (|u| - |v|) / diam; d|u| = Re(conj(u) du) / |u|.
  jac(2, 0) = -(cu * dx).real() / nu / diam;
  jac(2, 1) = (cv * dw).real() / nv / diam;
  jac(2, 2) = (cu * dy).real() / nu / diam;
  jac(2, 3) = -(cv * dz).real() / nv / diam;
  // Row 3: arg(v) - arg(u); d arg(u) = Im(conj(u) du) / |u|^2.
  jac(3, 0) = (cu * dx).imag() / (nu * nu);
  jac(3, 1) = -(cv * dw).imag() / (nv * nv);
  jac(3, 2) = -(cu * dy).imag() / (nu * nu);
  jac(3, 3) = (cv * dz).imag() / (nv * nv);
  return jac;
}

namespace {

// Residual and Jacobian in one pass, sharing the gamma evaluations.
bool eval_system(const CurveModel& model, const AspectFamily& family,
                 const std::array<double, 4>& params, SystemResidual& f,
                 Eigen::Matrix4d& jac) {
  const auto [gx, dx] = model.eval_with_derivative(params[0]);
  const auto [gw, dw] = model.eval_with_derivative(params[1]);
  const auto [gy, dy] = model.eval_with_derivative(params[2]);
  const auto [gz, dz] = model.eval_with_derivative(params[3]);
  const Complex u = gy - gx, v = gz - gw;
  const double diam = model.diameter();
  const double nu = std::abs(u), nv = std::abs(v);
  if (nu < kChordFloor * diam || nv < kChordFloor * diam) return false;

  const Complex mid_diff = 0.5 * (gx + gy) - 0.5 * (gw + gz);
  f.f[0] = mid_diff.real() / diam;
  f.f[1] = mid_diff.imag() / diam;
  f.f[2] = (nu - nv) / diam;
  f.f[3] = wrap_mod_pi(std::arg(v / u) - kPi * family.k / family.n);

  const Complex cu = std::conj(u), cv = std::conj(v);
  const Complex m_x = 0.5 * dx / diam, m_w = -0.5 * dw / diam;
  const Complex m_y = 0.5 * dy / diam, m_z = -0.5 * dz / diam;
  jac(0, 0) = m_x.real(); jac(0, 1) = m_w.real();
  jac(0, 2) = m_y.real(); jac(0, 3) = m_z.real();
  jac(1, 0) = m_x.imag(); jac(1, 1) = m_w.imag();
  jac(1, 2) = m_y.imag(); jac(1, 3) = m_z.imag();
  jac(2, 0) = -(cu * dx).real() / nu / diam;
  jac(2, 1) = (cv * dw).real() / nv / diam;
  jac(2, 2) = (cu * dy).real() / nu / diam;
  jac(2, 3) = -(cv * dz).real() / nv / diam;
  jac(3, 0) = (cu * dx).imag() / (nu * nu);
  jac(3, 1) = -(cv * dw).imag() / (nv * nv);
  jac(3, 2) = -(cu * dy).imag() / (nu * nu);
  jac(3, 3) = (cv * dz).imag() / (nv * nv);
  return true;
}

double jacobian_condition(const Eigen::Matrix4d& jac) {
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(jac);
  const auto& s = svd.singularValues();
  return s(3) > 0.0 ? s(0) / s(3) : std::numeric_limits<double>::infinity();
}

}  // namespace

RefineResult newton_refine(const CurveModel& model, const AspectFamily& family,
                           const std::array<double, 4>& start,
                           const SearchConfig& config) {
  RefineResult res;
  res.params = start;
  SystemResidual f = residual(model, family, start);
  res.residual_norm = f.norm();

  Eigen::Matrix4d jac;
  for (int iter = 0; iter < config.max_iter; ++iter) {
    if (res.residual_norm <= config.tol_residual) break;
    if (!eval_system(model, family, res.params, f, jac)) {
      res.status = RefineStatus::NoConvergence;
      return res;
    }

    // Levenberg step, mu = |f|^2: quadratic near regular roots and onto
    // solution continua alike, where plain Newton degrades to linear.
    // Solved as a stacked least-squares problem to avoid normal equations.
    const Eigen::Vector4d fv(f.f[0], f.f[1], f.f[2], f.f[3]);
    const double mu = fv.squaredNorm();
    Eigen::Matrix<double, 8, 4> stacked;
    stacked.topRows<4>() = jac;
    stacked.bottomRows<4>() =
        std::sqrt(mu) * Eigen::Matrix4d::Identity();
    Eigen::Matrix<double, 8, 1> rhs = Eigen::Matrix<double, 8, 1>::Zero();
    rhs.head<4>() = -fv;
    Eigen::Vector4d step = stacked.householderQr().solve(rhs);

    // Backtracking: halve the step until the residual norm decreases.
    bool accepted = false;
    for (double lambda = config.damping; lambda >= kMinDamping; lambda *= 0.5) {
      std::array<double, 4> cand;
      bool finite = true;
      for (int i = 0; i < 4; ++i) {
        cand[i] = res.params[i] + lambda * step(i);
        finite = finite && std::isfinite(cand[i]);
      }
      if (!finite) continue;
      auto fc = residual_opt(model, family, cand);
      if (!fc) continue;
      if (fc->norm() < res.residual_norm) {
        res.params = cand;
        f = *fc;
        res.residual_norm = fc->norm();
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.status = jacobian_condition(jac) > kCondLimit
                       ? RefineStatus::SingularJacobian
                       : RefineStatus::NoConvergence;
      return res;
    }
    res.iterations = iter + 1;
  }

  if (res.residual_norm <= config.tol_residual) {
    res.status = RefineStatus::Converged;
    res.rank_deficient =
        eval_system(model, family, res.params, f, jac) &&
        jacobian_condition(jac) > kCondLimit;
  } else {
    res.status = RefineStatus::NoConvergence;
  }
  return res;
}

namespace {

// Seed lattice over canonical Moebius points aligned with a shared circle
// grid: x_i = 2*pi*(i + offset)/g and gap_j = 2*pi*j/g, so every chord
// endpoint reuses the same gamma table.
struct SeedLattice {
  int g = 0;
  int gaps = 0;  // gap indices 1..gaps, gap = 2*pi*j/g <= pi
  double offset = 0.0;
  std::vector<Complex> gamma;           // gamma at x_i
  std::vector<Complex> mid;             // per point (i, j)
  std::vector<double> chord, chord_arg; // |u|, arg(u) per point
  std::vector<unsigned char> usable;    // chord above the degeneracy floor

  int points() const { return g * gaps; }
  int point_index(int i, int j) const { return i * gaps + (j - 1); }
  double x_of(int i) const { return kTwoPi * (i + offset) / g; }
  double gap_of(int j) const { return kTwoPi * j / g; }
};

SeedLattice build_lattice(const CurveModel& model, const SearchConfig& config) {
  SeedLattice lat;
  lat.g = config.grid;
  lat.gaps = config.grid / 2;
  // Golden-ratio scramble of the grid phase; breaks exact ties on
  // symmetric curves while keeping runs with equal seeds identical.
  lat.offset = std::fmod(0.382 + 0.6180339887498949 *
                                      static_cast<double>(config.seed % 4096),
                         1.0);
  lat.gamma.resize(lat.g);
  for (int i = 0; i < lat.g; ++i) lat.gamma[i] = model.eval(lat.x_of(i));

  const double floor = kChordFloor * model.diameter();
  const int P = lat.points();
  lat.mid.resize(P);
  lat.chord.resize(P);
  lat.chord_arg.resize(P);
  lat.usable.assign(P, 0);
  for (int i = 0; i < lat.g; ++i) {
    for (int j = 1; j <= lat.gaps; ++j) {
      const Complex a = lat.gamma[i];
      const Complex b = lat.gamma[(i + j) % lat.g];
      const Complex u = b - a;
      const int idx = lat.point_index(i, j);
      lat.mid[idx] = 0.5 * (a + b);
      lat.chord[idx] = std::abs(u);
      lat.chord_arg[idx] = std::arg(u);
      lat.usable[idx] = std::abs(u) >= floor ? 1 : 0;
    }
  }
  return lat;
}

}  // namespace

FindResult find_rectangles_full(const CurveModel& model, int n,
                                const SearchConfig& config) {
  if (config.grid < 8 || config.grid > 128 || !(config.tol_residual > 0.0) ||
      !(config.separation > 0.0) || config.max_iter < 1 ||
      !(config.damping > 0.0 && config.damping <= 1.0)) {
    throw std::invalid_argument("invalid search configuration");
  }

  FindResult out;
  const double diam = model.diameter();
  const SeedLattice lat = build_lattice(model, config);
  const int P = lat.points();
  const float inf = std::numeric_limits<float>::infinity();
  std::vector<float> lattice_residual(static_cast<size_t>(P) * P);
  std::vector<double> pos_x(P), pos_y(P);
  for (int p = 0; p < P; ++p) {
    pos_x[p] = lat.x_of(p / lat.gaps);
    pos_y[p] = pos_x[p] + lat.gap_of(p % lat.gaps + 1);
  }

  for (const AspectFamily& family : family_ratios(n)) {
    const double target = kPi * family.k / family.n;

    // Residual over ordered pairs of lattice points. Pairs closer than the
    // separation (either matching) are excluded: they are the trivial
    // coincident-pair solutions.
    for (int p = 0; p < P; ++p) {
      float* row = lattice_residual.data() + static_cast<size_t>(p) * P;
      if (!lat.usable[p]) {
        std::fill(row, row + P, inf);
        continue;
      }
      const double px = pos_x[p], py = pos_y[p];
      for (int q = 0; q < P; ++q) {
        if (!lat.usable[q]) {
          row[q] = inf;
          continue;
        }
        const double straight = std::max(cdist_bounded(px, pos_x[q]),
                                         cdist_bounded(py, pos_y[q]));
        const double crossed = std::max(cdist_bounded(px, pos_y[q]),
                                        cdist_bounded(py, pos_x[q]));
        if (std::min(straight, crossed) < config.separation) {
          row[q] = inf;
          continue;
        }
        const Complex dm = lat.mid[p] - lat.mid[q];
        const double f0 = dm.real() / diam;
        const double f1 = dm.imag() / diam;
        const double f2 = (lat.chord[p] - lat.chord[q]) / diam;
        const double f3 =
            wrap_mod_pi(lat.chord_arg[q] - lat.chord_arg[p] - target);
        row[q] = static_cast<float>(std::max(
            std::max(std::fabs(f0), std::fabs(f1)),
            std::max(std::fabs(f2), std::fabs(f3))));
      }
    }

    // Keep lattice sites that are local minima along all eight axis
    // directions (x axes wrap, gap axes clamp).
    std::vector<int> seeds;
    auto value = [&](int p, int q) {
      return lattice_residual[static_cast<size_t>(p) * P + q];
    };
    for (int p = 0; p < P; ++p) {
      const int pi_ = p / lat.gaps, pj = p % lat.gaps + 1;
      for (int q = 0; q < P; ++q) {
        const float here = value(p, q);
        if (!(here < inf)) continue;
        const int qi = q / lat.gaps, qj = q % lat.gaps + 1;
        bool is_min = true;
        bool strictly_below = false;
        auto visit = [&](int pp, int qq) {
          const float nb = value(pp, qq);
          if (nb < here) is_min = false;
          if (here < nb) strictly_below = true;
        };
        for (int d = -1; d <= 1 && is_min; d += 2) {
          visit(lat.point_index((pi_ + lat.g + d) % lat.g, pj), q);
          if (pj + d >= 1 && pj + d <= lat.gaps)
            visit(lat.point_index(pi_, pj + d), q);
          visit(p, lat.point_index((qi + lat.g + d) % lat.g, qj));
          if (qj + d >= 1 && qj + d <= lat.gaps)
            visit(p, lat.point_index(qi, qj + d));
        }
        if (is_min && strictly_below) seeds.push_back(p * P + q);
      }
    }
    std::sort(seeds.begin(), seeds.end(), [&](int a, int b) {
      const float ra = lattice_residual[a], rb = lattice_residual[b];
      if (ra != rb) return ra < rb;
      return a < b;
    });
    if (static_cast<int>(seeds.size()) > kMaxSeeds) seeds.resize(kMaxSeeds);

    std::vector<Rectangle> found;
    bool rank_deficiency_seen = false;
    for (int s : seeds) {
      const int p = s / P, q = s % P;
      const int pi_ = p / lat.gaps, pj = p % lat.gaps + 1;
      const int qi = q / lat.gaps, qj = q % lat.gaps + 1;
      std::array<double, 4> start = {
          lat.x_of(pi_), lat.x_of(qi),
          lat.x_of(pi_) + lat.gap_of(pj), lat.x_of(qi) + lat.gap_of(qj)};

      RefineResult ref;
      try {
        ref = newton_refine(model, family, start, config);
      } catch (const Error&) {
        continue;  // degenerate start
      }
      if (ref.status != RefineStatus::Converged ||
          ref.residual_norm > config.tol_residual) {
        continue;
      }
      try {
        Rectangle rect = rect_from_pairs(
            model, canonicalize(ref.params[0], ref.params[2]),
            canonicalize(ref.params[1], ref.params[3]), n);
        if (rect.family.k != family.k) continue;
        found.push_back(rect);
        rank_deficiency_seen = rank_deficiency_seen || ref.rank_deficient;
      } catch (const Error&) {
        continue;  // spurious root: coincident pairs or mismatched family
      }
    }

    std::vector<Rectangle> unique = dedup(found, 0.05);
    if (unique.empty()) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "family k=%d: no rectangles found",
                    family.k);
      out.warnings.push_back(buf);
    }
    if (rank_deficiency_seen) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "family k=%d: rank-deficient solutions (continuum)",
                    family.k);
      out.warnings.push_back(buf);
    }
    out.rectangles.insert(out.rectangles.end(), unique.begin(), unique.end());
  }

  std::sort(out.rectangles.begin(), out.rectangles.end(),
            [](const Rectangle& a, const Rectangle& b) {
              if (a.family.k != b.family.k) return a.family.k < b.family.k;
              if (a.residual != b.residual) return a.residual < b.residual;
              return a.params < b.params;
            });
  return out;
}

std::vector<Rectangle> find_rectangles(const CurveModel& model, int n,
                                       const SearchConfig& config) {
  return find_rectangles_full(model, n, config).rectangles;
}

}  // namespace inrect
