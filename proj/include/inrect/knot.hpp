#pragma once

#include <utility>
#include <vector>

#include "inrect/curve.hpp"

namespace inrect {

/// Closed polyline in C x S^1 approximating the strip boundary near the
/// diagonal: pairs at chord length epsilon, mapped through the strip map
/// with the second component normalized to unit modulus. The first and
/// last samples coincide.
struct BoundaryLoop {
  std::vector<std::pair<Complex, Complex>> points;
  double epsilon = 0.0;
  Complex base_point{0.0, 0.0};  // interior reference for the first winding
};

/// The reference knot g -> (g, g^{2n}) on the boundary torus.
std::pair<Complex, Complex> kn_point(int n, Complex g);

/// Convenience sampler of the reference knot as a BoundaryLoop
/// (base point at the origin).
BoundaryLoop kn_loop(int n, int samples);

/// Traces the level set |gamma(y) - gamma(x)| == epsilon as a graph over x
/// by continuation, then maps through the strip map. The chord-length level
/// set equals the |pow| level set but avoids the 2n-th power's flatness.
BoundaryLoop boundary_loop(const CurveModel& model, int n, double epsilon,
                           int samples);

/// Largest epsilon for which the level-set trace still closes up; found by
/// bisection. Used to suggest a working value after EpsilonTooLarge.
double probe_max_epsilon(const CurveModel& model, int n, int samples = 256);

/// Winding of the first component about the base point and of the second
/// about the origin. Angle sums must land within 1e-6 of a full-turn
/// multiple or NonIntegerWinding is raised; results are exact integers.
std::pair<int, int> winding_invariants(const BoundaryLoop& loop);

/// Torus knot T(p, q) with p = 2n, q = 2n-1, as the closure of the standard
/// positive braid (sigma_1 ... sigma_{p-1})^q on p strands.
struct TorusKnotId {
  int p = 0;
  int q = 0;
  int braid_strands = 0;
  std::vector<int> braid_word;  // signed generator indices
};

TorusKnotId torus_braid_word(int n);

/// Lower bound n-1 for the nonorientable 4-genus of T(2n, 2n-1), exposed as
/// a cited constant; no invariant computation is performed.
int batson_bound(int n);

}  // namespace inrect
