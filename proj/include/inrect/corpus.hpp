#pragma once

#include <cstdint>
#include <vector>

#include "inrect/curve.hpp"

namespace inrect {

/// Random smooth curves: unit circle plus a Fourier perturbation with
/// |c_j| <= scale * decay^|j|, resampled until validation passes.
struct CorpusSpec {
  int count = 20;
  std::uint64_t seed = 42;
  int degree = 4;
  double decay = 0.6;
  double scale = 0.15;
  int max_retries = 200;  // per curve, over the whole stream
};

/// Deterministic for a given spec: the generator consumes one fixed
/// stream, so curve i never depends on how later curves are used.
std::vector<CurveModel> generate_corpus(const CorpusSpec& spec);

}  // namespace inrect
