#include "inrect/corpus.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace inrect {

namespace {

// mt19937_64 output is pinned by the standard; mapping the raw bits
// ourselves keeps the stream identical across library implementations.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

}  // namespace

std::vector<CurveModel> generate_corpus(const CorpusSpec& spec) {
  if (spec.count < 0 || spec.degree < 1) {
    throw std::invalid_argument("corpus spec: count >= 0 and degree >= 1");
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<CurveModel> out;
  out.reserve(spec.count);

  for (int idx = 0; idx < spec.count; ++idx) {
    bool made = false;
    for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
      std::vector<Complex> coeffs(2 * spec.degree + 1);
      for (int j = -spec.degree; j <= spec.degree; ++j) {
        const double bound = spec.scale * std::pow(spec.decay, std::abs(j));
        const double mag = bound * uniform01(rng);
        const double phase = 2.0 * std::numbers::pi * uniform01(rng);
        coeffs[j + spec.degree] = std::polar(mag, phase);
      }
      coeffs[1 + spec.degree] += 1.0;  // the unit circle carrier
      try {
        out.push_back(CurveModel::from_coeffs(std::move(coeffs), -spec.degree));
        made = true;
        break;
      } catch (const Error&) {
        continue;
      }
    }
    if (!made) {
      throw Error(ErrorCode::DegenerateInput,
                  "corpus generation exhausted retries");
    }
  }
  return out;
}

}  // namespace inrect
