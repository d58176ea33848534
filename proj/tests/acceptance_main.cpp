// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// Each criterion pins its tolerances in code; oracles are independent of
// the solver path (closed forms, finite differences, lattice scans with
// derivative-free refinement).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "inrect/corpus.hpp"
#include "inrect/io.hpp"
#include "inrect/knot.hpp"
#include "inrect/solver.hpp"

using namespace inrect;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

// Deterministic splitmix64 for test draws.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1p-53; }
  double angle() { return kTwoPi * uniform(); }
};

CurveModel ellipse_2_1() {
  return CurveModel::from_coeffs({{0.5, 0.0}, {0.0, 0.0}, {1.5, 0.0}}, -1);
}

std::vector<CurveModel> acceptance_corpus() {
  CorpusSpec spec;  // count 20, seed 42, degree 4, decay 0.6, scale 0.15
  return generate_corpus(spec);
}

double wrap_half_pi(double d) {
  double w = std::fmod(d + kPi / 2, kPi);
  if (w <= 0.0) w += kPi;
  return w - kPi / 2;
}

// ---- criterion 1: ellipse witness ------------------------------------

bool criterion_ellipse_witness(std::string& detail) {
  Timer timer;
  CurveModel ell = ellipse_2_1();
  auto rects = find_rectangles(ell, 3);

  // Closed-form oracle: axis-aligned vertices (±2 cos t, ± sin t),
  // (b/a) tan t = sqrt(3) so tan t = 2 sqrt(3).
  const double t = std::atan(2.0 * std::sqrt(3.0));
  const std::array<double, 4> oracle{kPi - t, t, kTwoPi - t, kPi + t};
  const double root3 = std::sqrt(3.0);

  bool matched = false;
  for (const Rectangle& r : rects) {
    if (std::fabs(canonical_ratio(r.ratio_measured) - root3) > 1e-8) continue;
    if (r.residual > 1e-10) continue;
    if (rect_param_distance(r.params, oracle) <= 1e-6) matched = true;
  }
  double secs = timer.seconds();
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%zu rectangles, witness %s, %.2f s (budget 5 s)",
                rects.size(), matched ? "matched" : "missing", secs);
  detail = buf;
  return matched && secs < 5.0;
}

// ---- criterion 2: random-curve sweep ---------------------------------

bool criterion_sweep(std::string& detail) {
  Timer timer;
  auto corpus = acceptance_corpus();
  int cells = 0, nonempty = 0;
  double worst_best = 0.0;
  for (const CurveModel& m : corpus) {
    for (int n = 2; n <= 5; ++n) {
      ++cells;
      auto rects = find_rectangles(m, n);
      double best = 1e300;
      for (const Rectangle& r : rects) best = std::min(best, r.residual);
      if (!rects.empty() && best <= 1e-8) {
        ++nonempty;
        worst_best = std::max(worst_best, best);
      }
    }
  }
  double secs = timer.seconds();
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d/%d cells filled, worst best-residual %.2e, %.1f s "
                "(budget 600 s)",
                nonempty, cells, worst_best, secs);
  detail = buf;
  return nonempty == cells && secs < 600.0;
}

// ---- criterion 3: family-ratio table ---------------------------------

bool criterion_ratios(std::string& detail) {
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    auto families = family_ratios(n);
    if (static_cast<int>(families.size()) != n - 1) {
      detail = "wrong family count";
      return false;
    }
    for (const AspectFamily& f : families) {
      const long double ref =
          std::tan(static_cast<long double>(kPi) * f.k / (2.0L * n));
      worst = std::max(worst,
                       std::fabs(f.ratio - static_cast<double>(ref)));
      const AspectFamily& mirror = families[n - 1 - f.k];
      worst = std::max(worst, std::fabs(f.ratio * mirror.ratio - 1.0));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max deviation %.2e (tol 1e-15)", worst);
  detail = buf;
  return worst <= 1e-15;
}

// ---- criterion 4: winding invariants ---------------------------------

bool criterion_windings(std::string& detail) {
  auto corpus = acceptance_corpus();
  int loops = 0;
  try {
    for (const CurveModel& m : corpus) {
      for (int n = 2; n <= 5; ++n) {
        BoundaryLoop loop =
            boundary_loop(m, n, 0.05 * m.diameter(), 512);
        auto [w1, w2] = winding_invariants(loop);
        ++loops;
        if (w1 != 1 || w2 != 2 * n) {
          char buf[96];
          std::snprintf(buf, sizeof(buf),
                        "curve loop %d gave (%d,%d), want (1,%d)", loops, w1,
                        w2, 2 * n);
          detail = buf;
          return false;
        }
      }
    }
    for (int n = 2; n <= 6; ++n) {
      auto [w1, w2] = winding_invariants(kn_loop(n, 512));
      ++loops;
      if (w1 != 1 || w2 != 2 * n) {
        detail = "kn loop winding mismatch";
        return false;
      }
    }
  } catch (const Error& e) {
    detail = std::string("raised ") + e.what();
    return false;
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%d loops, all windings (1,2n) exact",
                loops);
  detail = buf;
  return true;
}

// ---- criterion 5: Jacobian fidelity ----------------------------------

bool criterion_jacobians(std::string& detail) {
  auto corpus = acceptance_corpus();
  Rng rng(2024);
  double worst_mu = 0.0, worst_sys = 0.0;
  const double h = 1e-5, hs = 1e-6;
  for (const CurveModel& m : corpus) {
    int done = 0;
    while (done < 100) {
      int n = 2 + static_cast<int>(rng.next() % 4);
      MobiusPoint p{rng.angle(), rng.angle()};
      auto jac = mu_jacobian(m, n, p);
      Eigen::Matrix<double, 4, 2> fd;
      for (int axis = 0; axis < 2; ++axis) {
        MobiusPoint hi = p, lo = p;
        (axis == 0 ? hi.x : hi.y) += h;
        (axis == 0 ? lo.x : lo.y) -= h;
        MuValue a = mu_map(m, n, hi), b = mu_map(m, n, lo);
        fd(0, axis) = (a.mid.real() - b.mid.real()) / (2 * h);
        fd(1, axis) = (a.mid.imag() - b.mid.imag()) / (2 * h);
        fd(2, axis) = (a.pow.real() - b.pow.real()) / (2 * h);
        fd(3, axis) = (a.pow.imag() - b.pow.imag()) / (2 * h);
      }
      worst_mu = std::max(worst_mu, (jac - fd).cwiseAbs().maxCoeff() /
                                        (1.0 + jac.cwiseAbs().maxCoeff()));

      int k = 1 + static_cast<int>(rng.next() % (n - 1));
      AspectFamily fam = family_ratios(n)[k - 1];
      std::array<double, 4> params{rng.angle(), rng.angle(), rng.angle(),
                                   rng.angle()};
      try {
        SystemResidual f0 = residual(m, fam, params);
        if (std::fabs(f0.f[3]) > 1.2) continue;
        Eigen::Matrix4d sys = system_jacobian(m, fam, params);
        Eigen::Matrix4d sysfd;
        for (int col = 0; col < 4; ++col) {
          auto hi = params, lo = params;
          hi[col] += hs;
          lo[col] -= hs;
          SystemResidual fh = residual(m, fam, hi);
          SystemResidual fl = residual(m, fam, lo);
          for (int row = 0; row < 4; ++row) {
            double diff = fh.f[row] - fl.f[row];
            if (row == 3) diff = wrap_half_pi(diff);
            sysfd(row, col) = diff / (2 * hs);
          }
        }
        worst_sys = std::max(worst_sys,
                             (sys - sysfd).cwiseAbs().maxCoeff() /
                                 (1.0 + sys.cwiseAbs().maxCoeff()));
      } catch (const Error&) {
        continue;
      }
      ++done;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "max rel deviation: mu %.2e, system %.2e (tol 1e-6)",
                worst_mu, worst_sys);
  detail = buf;
  return worst_mu <= 1e-6 && worst_sys <= 1e-6;
}

// ---- criterion 6: brute-force oracle equivalence ---------------------

// Independent residual: plain evaluation, no shared tables or Jacobians.
double oracle_residual(const CurveModel& m, int n, int k,
                       const std::array<double, 4>& params) {
  const Complex gx = m.eval(params[0]);
  const Complex gw = m.eval(params[1]);
  const Complex gy = m.eval(params[2]);
  const Complex gz = m.eval(params[3]);
  const Complex u = gy - gx, v = gz - gw;
  const double diam = m.diameter();
  if (std::abs(u) < 1e-8 * diam || std::abs(v) < 1e-8 * diam) return 1e300;
  const double f0 = (0.5 * (gx + gy) - 0.5 * (gw + gz)).real() / diam;
  const double f1 = (0.5 * (gx + gy) - 0.5 * (gw + gz)).imag() / diam;
  const double f2 = (std::abs(u) - std::abs(v)) / diam;
  const double f3 = wrap_half_pi(std::arg(v) - std::arg(u) - kPi * k / n);
  return std::max(std::max(std::fabs(f0), std::fabs(f1)),
                  std::max(std::fabs(f2), std::fabs(f3)));
}

// Derivative-free compass refinement from a lattice seed. Seeds stuck at a
// positive plateau are abandoned once the step is far below the residual:
// near a root the residual scales linearly with the step.
double compass_refine(const CurveModel& m, int n, int k,
                      std::array<double, 4>& params, double step0) {
  double best = oracle_residual(m, n, k, params);
  for (double step = step0; step > 1e-10;) {
    if (step < 1e-4 && best > 1e-2) break;
    bool improved = false;
    for (int axis = 0; axis < 4; ++axis) {
      for (double dir : {+1.0, -1.0}) {
        std::array<double, 4> cand = params;
        cand[axis] += dir * step;
        double r = oracle_residual(m, n, k, cand);
        if (r < best) {
          best = r;
          params = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

bool criterion_oracle_equivalence(std::string& detail) {
  CorpusSpec spec;
  spec.count = 10;
  spec.seed = 101;
  spec.degree = 4;
  auto curves = generate_corpus(spec);

  const int g = 96;          // points per angle
  const int gaps = g / 2;    // chord gaps up to pi
  const int P = g * gaps;
  const double cell = kTwoPi / g;
  const double oracle_tol = 1e-8;

  int oracle_roots = 0, missed = 0;
  std::vector<float> grid(static_cast<size_t>(P) * P);

  for (const CurveModel& m : curves) {
    const double diam = m.diameter();
    std::vector<Complex> gamma(g), mid(P);
    std::vector<double> chord(P), carg(P);
    for (int i = 0; i < g; ++i) gamma[i] = m.eval(cell * i);
    for (int i = 0; i < g; ++i) {
      for (int j = 1; j <= gaps; ++j) {
        const int idx = i * gaps + (j - 1);
        const Complex u = gamma[(i + j) % g] - gamma[i];
        mid[idx] = 0.5 * (gamma[(i + j) % g] + gamma[i]);
        chord[idx] = std::abs(u);
        carg[idx] = std::arg(u);
      }
    }

    auto find_result = find_rectangles(m, 3);

    for (int k = 1; k <= 2; ++k) {
      const double target = kPi * k / 3.0;
      for (int p = 0; p < P; ++p) {
        float* row = grid.data() + static_cast<size_t>(p) * P;
        const bool p_ok = chord[p] >= 1e-8 * diam;
        for (int q = 0; q < P; ++q) {
          if (!p_ok || chord[q] < 1e-8 * diam) {
            row[q] = 1e30f;
            continue;
          }
          const Complex dm = mid[p] - mid[q];
          const double f0 = dm.real() / diam, f1 = dm.imag() / diam;
          const double f2 = (chord[p] - chord[q]) / diam;
          const double f3 = wrap_half_pi(carg[q] - carg[p] - target);
          row[q] = static_cast<float>(
              std::max(std::max(std::fabs(f0), std::fabs(f1)),
                       std::max(std::fabs(f2), std::fabs(f3))));
        }
      }

      // Lattice local minima, sorted by residual, then compass refinement.
      std::vector<std::pair<float, int>> minima;
      for (int p = 0; p < P; ++p) {
        const int pi_ = p / gaps, pj = p % gaps + 1;
        for (int q = 0; q < P; ++q) {
          const float here = grid[static_cast<size_t>(p) * P + q];
          if (here >= 1e29f) continue;
          const int qi = q / gaps, qj = q % gaps + 1;
          auto val = [&](int pp, int qq) {
            return grid[static_cast<size_t>(pp) * P + qq];
          };
          bool is_min = true;
          for (int d = -1; d <= 1 && is_min; d += 2) {
            if (val((pi_ + g + d) % g * gaps + (pj - 1), q) < here)
              is_min = false;
            if (pj + d >= 1 && pj + d <= gaps &&
                val(pi_ * gaps + (pj + d - 1), q) < here)
              is_min = false;
            if (val(p, (qi + g + d) % g * gaps + (qj - 1)) < here)
              is_min = false;
            if (qj + d >= 1 && qj + d <= gaps &&
                val(p, qi * gaps + (qj + d - 1)) < here)
              is_min = false;
          }
          if (is_min) minima.emplace_back(here, p * P + q);
        }
      }
      std::sort(minima.begin(), minima.end());
      if (minima.size() > 40000) minima.resize(40000);

      std::vector<std::array<double, 4>> roots;
      for (const auto& [res0, site] : minima) {
        const int p = site / P, q = site % P;
        const int pi_ = p / gaps, pj = p % gaps + 1;
        const int qi = q / gaps, qj = q % gaps + 1;
        std::array<double, 4> params{cell * pi_, cell * qi,
                                     cell * (pi_ + pj), cell * (qi + qj)};
        double r = compass_refine(m, 3, k, params, cell);
        if (r < oracle_tol) roots.push_back(params);
      }

      // Single-linkage clusters; a cluster counts as found when any of
      // its members sits within 0.05 of a find output of the family.
      std::vector<bool> taken(roots.size(), false);
      for (size_t i = 0; i < roots.size(); ++i) {
        if (taken[i]) continue;
        std::vector<size_t> members{i};
        taken[i] = true;
        for (size_t cursor = 0; cursor < members.size(); ++cursor) {
          for (size_t j = 0; j < roots.size(); ++j) {
            if (!taken[j] && rect_param_distance(roots[members[cursor]],
                                                 roots[j]) <= 0.05) {
              taken[j] = true;
              members.push_back(j);
            }
          }
        }
        ++oracle_roots;
        bool matched = false;
        for (size_t member : members) {
          for (const Rectangle& r : find_result) {
            if (r.family.k != k) continue;
            if (rect_param_distance(r.params, roots[member]) <= 0.05) {
              matched = true;
              break;
            }
          }
          if (matched) break;
        }
        if (!matched) ++missed;
      }
    }
  }

  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d oracle rectangles, %d missed by find",
                oracle_roots, missed);
  detail = buf;
  return oracle_roots > 0 && missed == 0;
}

// ---- criterion 7: constants ------------------------------------------

bool criterion_constants(std::string& detail) {
  for (int n = 2; n <= 10; ++n) {
    if (batson_bound(n) != n - 1) {
      detail = "batson_bound mismatch";
      return false;
    }
    TorusKnotId id = torus_braid_word(n);
    if (static_cast<int>(id.braid_word.size()) != (2 * n - 1) * (2 * n - 1) ||
        id.braid_strands != 2 * n) {
      detail = "braid word shape mismatch";
      return false;
    }
  }
  detail = "bounds n-1 and braid lengths (2n-1)^2 for n in 2..10";
  return true;
}

// ---- criterion 8: determinism ----------------------------------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool criterion_determinism(std::string& detail) {
  const char* cli = std::getenv("INRECT_CLI");
  if (!cli) {
    detail = "INRECT_CLI not set";
    return false;
  }
  fs::path dir = fs::temp_directory_path() / "inrect_acceptance";
  fs::create_directories(dir);
  fs::path a = dir / "det_a.json", b = dir / "det_b.json";
  std::string base = std::string(cli) +
                     " verify-corpus --count 5 --seed 42 --n-min 2 --n-max 3"
                     " --out ";
  if (std::system((base + a.string() + " > /dev/null").c_str()) != 0 ||
      std::system((base + b.string() + " > /dev/null").c_str()) != 0) {
    detail = "verify-corpus run failed";
    return false;
  }
  std::string ca = slurp(a), cb = slurp(b);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%zu-byte reports %s", ca.size(),
                ca == cb ? "identical" : "differ");
  detail = buf;
  return !ca.empty() && ca == cb;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*run)(std::string&);
  };
  const Criterion criteria[] = {
      {"ellipse witness: canonical ratio sqrt(3) at n=3", criterion_ellipse_witness},
      {"random-curve sweep: all (curve, n) cells filled", criterion_sweep},
      {"family-ratio table (n in 2..8)", criterion_ratios},
      {"winding invariants (1, 2n)", criterion_windings},
      {"jacobian fidelity vs finite differences", criterion_jacobians},
      {"brute-force oracle equivalence (n=3)", criterion_oracle_equivalence},
      {"constants: batson bound and braid words", criterion_constants},
      {"determinism: byte-identical reports", criterion_determinism},
  };

  int failures = 0;
  int id = 0;
  for (const Criterion& c : criteria) {
    ++id;
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  %d. %s -- %s\n", ok ? "PASS" : "FAIL", id, c.name,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
