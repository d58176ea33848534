#pragma once

#include <string>
#include <vector>

#include "inrect/corpus.hpp"
#include "inrect/knot.hpp"
#include "inrect/solver.hpp"

namespace inrect {

/// Curve file: {"type":"fourier","coeffs":[[re,im],...],"j_min":-J} with
/// coefficient order j = j_min .. j_min+len-1, or
/// {"type":"samples","points":[[x,y],...]} fitted at `degree`.
CurveModel load_curve_file(const std::string& path, int degree = 0);

CurveModel curve_from_json(const std::string& text, int degree = 0);

/// All report renderers emit deterministic JSON: fixed key order and
/// floats at 17 significant digits.
struct RunReport {
  std::string curve_digest;
  int n = 0;
  SearchConfig config;
  std::vector<AspectFamily> families;
  std::vector<Rectangle> rectangles;
  std::vector<std::string> warnings;
  double wall_time_ms = 0.0;
};

std::string render_find_report(const RunReport& report);

struct CorpusCell {
  int curve = 0;
  int n = 0;
  std::string digest;
  std::vector<int> families_found;
  double min_residual = 0.0;  // meaningful only when rect_count > 0
  int rect_count = 0;
};

std::string render_corpus_report(const CorpusSpec& spec, int n_min, int n_max,
                                 const std::vector<CorpusCell>& cells);

struct KnotReport {
  std::string curve_digest;
  int n = 0;
  double epsilon = 0.0;
  BoundaryLoop loop;
  int w1 = 0;
  int w2 = 0;
  TorusKnotId knot;
  int bound = 0;
};

std::string render_knot_report(const KnotReport& report);

/// One closed path for the curve plus one polygon per rectangle,
/// colored by family index.
std::string render_svg(const CurveModel& model,
                       const std::vector<Rectangle>& rects);

/// Space-separated signed generator indices, one line.
std::string braid_line(const TorusKnotId& id);

void write_file(const std::string& path, const std::string& content);

}  // namespace inrect
