#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "inrect/io.hpp"

namespace {

using namespace inrect;

int run_find(const std::string& curve_path, int n, int k_filter, int degree,
             SearchConfig config, const std::string& out_path,
             const std::string& svg_path) {
  if (k_filter != 0 && (k_filter < 1 || k_filter >= n)) {
    std::fprintf(stderr, "error: --k must lie in 1..n-1\n");
    return 1;
  }
  CurveModel model = load_curve_file(curve_path, degree);

  const auto t0 = std::chrono::steady_clock::now();
  FindResult result = find_rectangles_full(model, n, config);
  const auto t1 = std::chrono::steady_clock::now();

  RunReport report;
  report.curve_digest = model.digest();
  report.n = n;
  report.config = config;
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  for (const AspectFamily& family : family_ratios(n)) {
    if (k_filter > 0 && family.k != k_filter) continue;
    report.families.push_back(family);
  }
  for (const Rectangle& rect : result.rectangles) {
    if (k_filter > 0 && rect.family.k != k_filter) continue;
    report.rectangles.push_back(rect);
  }
  for (const std::string& w : result.warnings) {
    if (k_filter > 0 && w.find("k=" + std::to_string(k_filter)) ==
                            std::string::npos) {
      continue;
    }
    report.warnings.push_back(w);
  }
  if (report.rectangles.empty()) {
    report.warnings.push_back(
        "no rectangle found in any family; a smooth Jordan curve always has "
        "one, so treat this as a search shortfall (try a denser --grid)");
  }

  if (!out_path.empty()) write_file(out_path, render_find_report(report));
  if (!svg_path.empty()) {
    write_file(svg_path, render_svg(model, report.rectangles));
  }

  for (const AspectFamily& family : report.families) {
    int count = 0;
    double best = -1.0;
    for (const Rectangle& r : report.rectangles) {
      if (r.family.k != family.k) continue;
      ++count;
      best = best < 0 ? r.residual : std::min(best, r.residual);
    }
    std::printf("k=%d ratio=%.12g rectangles=%d", family.k, family.ratio,
                count);
    if (count > 0) std::printf(" min_residual=%.3g", best);
    std::printf("\n");
  }
  for (const std::string& w : report.warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  return report.rectangles.empty() ? 2 : 0;
}

int run_verify_corpus(CorpusSpec spec, int n_min, int n_max,
                      SearchConfig config, const std::string& out_path) {
  std::vector<CurveModel> corpus = generate_corpus(spec);
  std::vector<CorpusCell> cells;
  bool all_nonempty = true;

  std::printf("%5s %3s %-12s %6s %s\n", "curve", "n", "families", "rects",
              "min_residual");
  for (int idx = 0; idx < static_cast<int>(corpus.size()); ++idx) {
    for (int n = n_min; n <= n_max; ++n) {
      std::vector<Rectangle> rects = find_rectangles(corpus[idx], n, config);
      CorpusCell cell;
      cell.curve = idx;
      cell.n = n;
      cell.digest = corpus[idx].digest();
      cell.rect_count = static_cast<int>(rects.size());
      std::string families = "{";
      for (const Rectangle& r : rects) {
        if (std::find(cell.families_found.begin(), cell.families_found.end(),
                      r.family.k) == cell.families_found.end()) {
          cell.families_found.push_back(r.family.k);
          if (families.size() > 1) families += ',';
          families += std::to_string(r.family.k);
        }
      }
      families += '}';
      if (!rects.empty()) {
        cell.min_residual = rects.front().residual;
        for (const Rectangle& r : rects) {
          cell.min_residual = std::min(cell.min_residual, r.residual);
        }
      }
      all_nonempty = all_nonempty && cell.rect_count > 0;
      if (cell.rect_count > 0) {
        std::printf("%5d %3d %-12s %6d %.3e\n", idx, n, families.c_str(),
                    cell.rect_count, cell.min_residual);
      } else {
        std::printf("%5d %3d %-12s %6d %s\n", idx, n, families.c_str(), 0,
                    "EMPTY");
      }
      cells.push_back(std::move(cell));
    }
  }

  if (!out_path.empty()) {
    write_file(out_path, render_corpus_report(spec, n_min, n_max, cells));
  }
  std::printf("%s\n", all_nonempty ? "all cells nonempty"
                                   : "EMPTY CELLS PRESENT");
  return all_nonempty ? 0 : 2;
}

int run_knot(const std::string& curve_path, int n, double epsilon, int samples,
             int degree, const std::string& out_path,
             std::string braid_path) {
  CurveModel model = load_curve_file(curve_path, degree);

  BoundaryLoop loop;
  try {
    loop = boundary_loop(model, n, epsilon, samples);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EpsilonTooLarge) {
      double max_ok = probe_max_epsilon(model, n, samples);
      std::fprintf(stderr, "%s\nsuggested epsilon: %.6g\n", e.what(),
                   0.5 * max_ok);
      return 1;
    }
    throw;
  }

  KnotReport report;
  report.curve_digest = model.digest();
  report.n = n;
  report.epsilon = epsilon;
  report.loop = loop;
  std::tie(report.w1, report.w2) = winding_invariants(loop);
  report.knot = torus_braid_word(n);
  report.bound = batson_bound(n);

  if (!out_path.empty()) {
    write_file(out_path, render_knot_report(report));
    if (braid_path.empty()) braid_path = out_path + ".braid";
  }
  if (!braid_path.empty()) write_file(braid_path, braid_line(report.knot));

  std::printf("windings=(%d,%d) torus_knot=T(%d,%d) strands=%d "
              "braid_length=%zu batson_bound=%d\n",
              report.w1, report.w2, report.knot.p, report.knot.q,
              report.knot.braid_strands, report.knot.braid_word.size(),
              report.bound);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inscribed rectangles of aspect ratio tan(pi k / 2n) in "
               "smooth Jordan curves"};
  app.require_subcommand(1);

  std::string curve_path, out_path, svg_path, braid_path;
  int n = 3, k_filter = 0, degree = 0, samples = 512;
  double epsilon = 0.0;
  SearchConfig config;
  CorpusSpec spec;
  int n_min = 2, n_max = 5;

  CLI::App* find = app.add_subcommand("find", "search one curve for rectangles");
  find->add_option("--curve", curve_path, "curve JSON file")->required();
  find->add_option("--n", n, "family parameter n >= 2")->required();
  find->add_option("--k", k_filter, "restrict the report to one family");
  find->add_option("--grid", config.grid, "seed density per axis");
  find->add_option("--tol", config.tol_residual, "residual tolerance");
  find->add_option("--max-iter", config.max_iter, "Newton iteration cap");
  find->add_option("--separation", config.separation,
                   "min Moebius distance between the pairs");
  find->add_option("--seed", config.seed, "grid scramble seed");
  find->add_option("--degree", degree, "fit degree for sample curves");
  find->add_option("--out", out_path, "write the JSON report here");
  find->add_option("--svg", svg_path, "write a plot of curve + rectangles");

  CLI::App* verify =
      app.add_subcommand("verify-corpus", "random-curve sweep over n");
  verify->add_option("--count", spec.count, "number of curves")->required();
  verify->add_option("--seed", spec.seed, "corpus RNG seed")->required();
  verify->add_option("--n-min", n_min, "smallest n")->required();
  verify->add_option("--n-max", n_max, "largest n")->required();
  verify->add_option("--scale", spec.scale, "perturbation scale");
  verify->add_option("--decay", spec.decay, "coefficient decay rate");
  verify->add_option("--degree", spec.degree, "perturbation degree");
  verify->add_option("--grid", config.grid, "seed density per axis");
  verify->add_option("--tol", config.tol_residual, "residual tolerance");
  verify->add_option("--out", out_path, "write the JSON summary here");

  CLI::App* knot = app.add_subcommand("knot", "boundary loop and knot data");
  knot->add_option("--curve", curve_path, "curve JSON file")->required();
  knot->add_option("--n", n, "family parameter n >= 2")->required();
  knot->add_option("--epsilon", epsilon, "chord length of the level set")
      ->required();
  knot->add_option("--samples", samples, "trace resolution");
  knot->add_option("--degree", degree, "fit degree for sample curves");
  knot->add_option("--out", out_path, "write the JSON report here");
  knot->add_option("--braid", braid_path, "write the braid word here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (find->parsed()) {
      return run_find(curve_path, n, k_filter, degree, config, out_path,
                      svg_path);
    }
    if (verify->parsed()) {
      return run_verify_corpus(spec, n_min, n_max, config, out_path);
    }
    if (knot->parsed()) {
      return run_knot(curve_path, n, epsilon, samples, degree, out_path,
                      braid_path);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
