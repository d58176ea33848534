#include "inrect/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace inrect {

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void append_int(std::string& out, long long v) {
  out += std::to_string(v);
}

void append_string(std::string& out, const std::string& s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void append_complex(std::string& out, const Complex& z) {
  out += '[';
  append_double(out, z.real());
  out += ',';
  append_double(out, z.imag());
  out += ']';
}

void append_rectangle(std::string& out, const Rectangle& r) {
  out += "{\"params\":[";
  for (int i = 0; i < 4; ++i) {
    if (i) out += ',';
    append_double(out, r.params[i]);
  }
  out += "],\"vertices\":[";
  for (int i = 0; i < 4; ++i) {
    if (i) out += ',';
    append_complex(out, r.vertices[i]);
  }
  out += "],\"k\":";
  append_int(out, r.family.k);
  out += ",\"ratio_measured\":";
  append_double(out, r.ratio_measured);
  out += ",\"canonical_ratio\":";
  append_double(out, canonical_ratio(r.ratio_measured));
  out += ",\"residual\":";
  append_double(out, r.residual);
  out += '}';
}

void append_config(std::string& out, const SearchConfig& c) {
  out += "{\"grid\":";
  append_int(out, c.grid);
  out += ",\"tol_residual\":";
  append_double(out, c.tol_residual);
  out += ",\"max_iter\":";
  append_int(out, c.max_iter);
  out += ",\"damping\":";
  append_double(out, c.damping);
  out += ",\"separation\":";
  append_double(out, c.separation);
  out += ",\"seed\":";
  append_int(out, static_cast<long long>(c.seed));
  out += '}';
}

}  // namespace

CurveModel curve_from_json(const std::string& text, int degree) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    const std::string type = doc.at("type").get<std::string>();
    if (type == "fourier") {
      std::vector<Complex> coeffs;
      for (const auto& pair : doc.at("coeffs")) {
        coeffs.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
      }
      const int j_min = doc.at("j_min").get<int>();
      return CurveModel::from_coeffs(std::move(coeffs), j_min);
    }
    if (type == "samples") {
      std::vector<Complex> samples;
      for (const auto& pt : doc.at("points")) {
        samples.emplace_back(pt.at(0).get<double>(), pt.at(1).get<double>());
      }
      if (degree <= 0) {
        degree = std::min<int>(12, (static_cast<int>(samples.size()) - 1) / 2);
      }
      return fit_from_samples(samples, degree);
    }
    throw Error(ErrorCode::ParseError, "curve type must be fourier or samples");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

CurveModel load_curve_file(const std::string& path, int degree) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return curve_from_json(buf.str(), degree);
}

std::string render_find_report(const RunReport& report) {
  std::string out = "{\"curve_digest\":";
  append_string(out, report.curve_digest);
  out += ",\"n\":";
  append_int(out, report.n);
  out += ",\"config\":";
  append_config(out, report.config);
  out += ",\"families\":[";
  bool first_family = true;
  for (const AspectFamily& family : report.families) {
    if (!first_family) out += ',';
    first_family = false;
    out += "{\"k\":";
    append_int(out, family.k);
    out += ",\"ratio\":";
    append_double(out, family.ratio);
    out += ",\"rectangles\":[";
    bool first_rect = true;
    for (const Rectangle& r : report.rectangles) {
      if (r.family.k != family.k) continue;
      if (!first_rect) out += ',';
      first_rect = false;
      append_rectangle(out, r);
    }
    out += "]}";
  }
  out += "],\"warnings\":[";
  for (size_t i = 0; i < report.warnings.size(); ++i) {
    if (i) out += ',';
    append_string(out, report.warnings[i]);
  }
  out += "],\"wall_time_ms\":";
  append_double(out, report.wall_time_ms);
  out += "}\n";
  return out;
}

std::string render_corpus_report(const CorpusSpec& spec, int n_min, int n_max,
                                 const std::vector<CorpusCell>& cells) {
  std::string out = "{\"spec\":{\"count\":";
  append_int(out, spec.count);
  out += ",\"seed\":";
  append_int(out, static_cast<long long>(spec.seed));
  out += ",\"degree\":";
  append_int(out, spec.degree);
  out += ",\"decay\":";
  append_double(out, spec.decay);
  out += ",\"scale\":";
  append_double(out, spec.scale);
  out += "},\"n_min\":";
  append_int(out, n_min);
  out += ",\"n_max\":";
  append_int(out, n_max);
  out += ",\"cells\":[";
  bool all_nonempty = true;
  for (size_t i = 0; i < cells.size(); ++i) {
    const CorpusCell& c = cells[i];
    if (i) out += ',';
    out += "{\"curve\":";
    append_int(out, c.curve);
    out += ",\"n\":";
    append_int(out, c.n);
    out += ",\"digest\":";
    append_string(out, c.digest);
    out += ",\"families_found\":[";
    for (size_t j = 0; j < c.families_found.size(); ++j) {
      if (j) out += ',';
      append_int(out, c.families_found[j]);
    }
    out += "],\"rect_count\":";
    append_int(out, c.rect_count);
    out += ",\"min_residual\":";
    if (c.rect_count > 0) {
      append_double(out, c.min_residual);
    } else {
      out += "null";
      all_nonempty = false;
    }
    out += '}';
  }
  out += "],\"all_nonempty\":";
  out += all_nonempty ? "true" : "false";
  out += "}\n";
  return out;
}

std::string render_knot_report(const KnotReport& report) {
  std::string out = "{\"curve_digest\":";
  append_string(out, report.curve_digest);
  out += ",\"n\":";
  append_int(out, report.n);
  out += ",\"epsilon\":";
  append_double(out, report.epsilon);
  out += ",\"samples\":";
  append_int(out, static_cast<long long>(report.loop.points.empty()
                                             ? 0
                                             : report.loop.points.size() - 1));
  out += ",\"base_point\":";
  append_complex(out, report.loop.base_point);
  out += ",\"windings\":[";
  append_int(out, report.w1);
  out += ',';
  append_int(out, report.w2);
  out += "],\"torus_knot\":{\"p\":";
  append_int(out, report.knot.p);
  out += ",\"q\":";
  append_int(out, report.knot.q);
  out += ",\"strands\":";
  append_int(out, report.knot.braid_strands);
  out += ",\"braid_word\":[";
  for (size_t i = 0; i < report.knot.braid_word.size(); ++i) {
    if (i) out += ',';
    append_int(out, report.knot.braid_word[i]);
  }
  out += "]},\"batson_bound\":";
  append_int(out, report.bound);
  out += ",\"loop\":[";
  for (size_t i = 0; i < report.loop.points.size(); ++i) {
    if (i) out += ',';
    out += '[';
    append_complex(out, report.loop.points[i].first);
    out += ',';
    append_complex(out, report.loop.points[i].second);
    out += ']';
  }
  out += "]}\n";
  return out;
}

std::string render_svg(const CurveModel& model,
                       const std::vector<Rectangle>& rects) {
  static const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c",
                                   "#ff7f0e", "#9467bd", "#8c564b"};
  const int kCurveSamples = 512;
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  std::vector<Complex> pts(kCurveSamples);
  for (int i = 0; i < kCurveSamples; ++i) {
    pts[i] = model.eval(2.0 * std::numbers::pi * i / kCurveSamples);
    lo_x = std::min(lo_x, pts[i].real());
    hi_x = std::max(hi_x, pts[i].real());
    lo_y = std::min(lo_y, pts[i].imag());
    hi_y = std::max(hi_y, pts[i].imag());
  }
  const double margin = 0.1 * std::max(hi_x - lo_x, hi_y - lo_y);
  char buf[256];
  std::string out;
  // The y axis is flipped so the plane's orientation reads correctly.
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" "
                "viewBox=\"%.6g %.6g %.6g %.6g\">\n",
                lo_x - margin, -hi_y - margin, (hi_x - lo_x) + 2 * margin,
                (hi_y - lo_y) + 2 * margin);
  out += buf;
  out += "<path fill=\"none\" stroke=\"#333333\" stroke-width=\"0.01\" d=\"";
  for (int i = 0; i < kCurveSamples; ++i) {
    std::snprintf(buf, sizeof(buf), "%c%.6g %.6g", i == 0 ? 'M' : 'L',
                  pts[i].real(), -pts[i].imag());
    out += buf;
  }
  out += "Z\"/>\n";
  for (const Rectangle& r : rects) {
    const char* color = kPalette[(r.family.k - 1) % 6];
    out += "<polygon fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"0.01\" points=\"";
    for (int i = 0; i < 4; ++i) {
      std::snprintf(buf, sizeof(buf), "%s%.6g,%.6g", i ? " " : "",
                    r.vertices[i].real(), -r.vertices[i].imag());
      out += buf;
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string braid_line(const TorusKnotId& id) {
  std::string out;
  for (size_t i = 0; i < id.braid_word.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(id.braid_word[i]);
  }
  out += '\n';
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << content;
}

}  // namespace inrect
