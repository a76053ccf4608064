// Command line front end: loads JSON documents describing maps, curves and
// domains, runs the library computations, and writes JSON reports (CSV for
// grids). Exit codes: 0 success / verified pass, 1 verified fail (conformality
// failure, obstruction, not entire, not admissible), 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "grushin/json_io.hpp"
#include "json.hpp"

namespace {

using namespace grushin;

GrushinPoint parse_point_arg(const std::string& s, const char* flag) {
  const size_t comma = s.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == s.size())
    throw InvalidArgumentError(std::string(flag) +
                               ": expected \"x,y\", got \"" + s + "\"");
  size_t used = 0;
  double x, y;
  try {
    x = std::stod(s.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("");
    const std::string rest = s.substr(comma + 1);
    y = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw InvalidArgumentError(std::string(flag) +
                               ": expected \"x,y\", got \"" + s + "\"");
  }
  return {x, y};
}

// --out is relative to $GRUSHIN_OUT_DIR when that is set; empty --out means
// stdout.
void write_report(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::path p = out;
  if (const char* dir = std::getenv("GRUSHIN_OUT_DIR");
      dir && *dir && p.is_relative())
    p = std::filesystem::path(dir) / p;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw InvalidArgumentError("cannot open output file: " + p.string());
  f << text;
  f.flush();
  if (!f.good())
    throw InvalidArgumentError("failed writing output file: " + p.string());
}

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

int run_eval(const std::string& map_file,
             const std::vector<std::string>& point_args, bool with_jet,
             const std::string& out) {
  const GrushinMap map = load_map(map_file);
  nlohmann::json results = nlohmann::json::array();
  for (const std::string& arg : point_args) {
    const GrushinPoint p = parse_point_arg(arg, "--point");
    const GrushinPoint img = map.evaluate(p);
    nlohmann::json r;
    r["source"] = {finite_or_null(p.x), finite_or_null(p.y)};
    r["image"] = {finite_or_null(img.x), finite_or_null(img.y)};
    if (with_jet) {
      const HorizontalJet jet = map.has_analytic_jets()
                                    ? map.analytic_jet(p)
                                    : finite_diff_jet(map, p);
      nlohmann::json jj;
      jj["g1_x"] = finite_or_null(jet.g1_x);
      jj["g1_y"] = finite_or_null(jet.g1_y);
      jj["g2_x"] = finite_or_null(jet.g2_x);
      jj["g2_y"] = finite_or_null(jet.g2_y);
      const WirtingerPair wp = wirtinger(map.alpha(), jet, p);
      jj["wbar_abs"] = finite_or_null(std::abs(wp.wbar));
      jj["w_abs"] = finite_or_null(std::abs(wp.w));
      try {
        jj["det_dalpha"] =
            finite_or_null(d_alpha_matrix(map.alpha(), jet, p).det());
      } catch (const SingularPointError&) {
        jj["det_dalpha"] = nullptr;
      }
      r["jet"] = jj;
    }
    results.push_back(r);
  }
  nlohmann::json doc;
  doc["type"] = "eval_result";
  doc["results"] = results;
  write_report(doc.dump(2) + "\n", out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Conformal maps, lengths and domain topology on the Grushin plane"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string map_file, curve_file, domain_file, domain_b_file, out;
  std::vector<std::string> points;
  double alpha_v = 1.0;
  int resolution = 100, levels = 3, samples = 8193, knots = 33,
      iterations = 2000;
  unsigned long long seed = 1;
  std::string from_arg, to_arg;
  bool with_jet = false, no_side_swap = false;

  auto* eval = app.add_subcommand("eval", "Evaluate a map at points");
  eval->add_option("--map", map_file, "Map document")->required();
  eval->add_option("--point", points, "Point \"x,y\" (repeatable)")
      ->required();
  eval->add_flag("--jet", with_jet, "Include the first-order jet");
  eval->add_option("--out", out, "Output file (default stdout)");
  eval->callback([&] {
    action = [&] { return run_eval(map_file, points, with_jet, out); };
  });

  auto* verify = app.add_subcommand("verify", "Verify map conformality");
  verify->add_option("--map", map_file, "Map document")->required();
  verify->add_option("--domain", domain_file, "Domain document")->required();
  verify->add_option("--resolution", resolution, "Grid resolution per axis");
  verify->add_option("--out", out, "Output file (default stdout)");
  verify->callback([&] {
    action = [&] {
      VerifyOptions opts;
      opts.resolution = resolution;
      const ConformalityReport rep =
          verify_conformal(load_map(map_file), load_domain(domain_file), opts);
      write_report(to_json(rep), out);
      return rep.pass ? 0 : 1;
    };
  });

  auto* length = app.add_subcommand("length", "Curve length in the metric");
  length->add_option("--alpha", alpha_v, "Grushin exponent")->required();
  length->add_option("--curve", curve_file, "Curve document")->required();
  length->add_option("--out", out, "Output file (default stdout)");
  length->callback([&] {
    action = [&] {
      const LengthResult res =
          grushin_length(Alpha(alpha_v), load_curve(curve_file));
      write_report(to_json(res), out);
      return 0;
    };
  });

  auto* adm = app.add_subcommand("admissible", "Curve admissibility check");
  adm->add_option("--alpha", alpha_v, "Grushin exponent")->required();
  adm->add_option("--curve", curve_file, "Curve document")->required();
  adm->add_option("--levels", levels, "Refinement levels");
  adm->add_option("--out", out, "Output file (default stdout)");
  adm->callback([&] {
    action = [&] {
      const AdmissibilityReport rep =
          admissibility_check(Alpha(alpha_v), load_curve(curve_file), levels);
      write_report(to_json(rep), out);
      return rep.verdict == AdmissibilityReport::Verdict::admissible ? 0 : 1;
    };
  });

  auto* push = app.add_subcommand("push-curve", "Image polyline under a map");
  push->add_option("--map", map_file, "Map document")->required();
  push->add_option("--curve", curve_file, "Curve document")->required();
  push->add_option("--samples", samples, "Sample count");
  push->add_option("--out", out, "Output file (default stdout)");
  push->callback([&] {
    action = [&] {
      const ParamCurve img =
          pushforward(load_map(map_file), load_curve(curve_file), samples);
      write_report(curve_to_json(img), out);
      return 0;
    };
  });

  auto* distort = app.add_subcommand("distort", "Length distortion of a map");
  distort->add_option("--map", map_file, "Map document")->required();
  distort->add_option("--curve", curve_file, "Curve document")->required();
  distort->add_option("--samples", samples, "Pushforward sample count");
  distort->add_option("--out", out, "Output file (default stdout)");
  distort->callback([&] {
    action = [&] {
      DistortionOptions opts;
      opts.push_samples = samples;
      const DistortionResult res =
          length_distortion(load_map(map_file), load_curve(curve_file), opts);
      write_report(to_json(res), out);
      return 0;
    };
  });

  auto* dist = app.add_subcommand(
      "distance", "Carnot-Caratheodory distance upper bound");
  dist->add_option("--alpha", alpha_v, "Grushin exponent")->required();
  dist->add_option("--from", from_arg, "Start point \"x,y\"")->required();
  dist->add_option("--to", to_arg, "End point \"x,y\"")->required();
  dist->add_option("--knots", knots, "Polyline knot budget");
  dist->add_option("--iterations", iterations, "Descent sweep budget");
  dist->add_option("--seed", seed, "RNG seed");
  dist->add_option("--out", out, "Output file (default stdout)");
  dist->callback([&] {
    action = [&] {
      const DistanceResult res = cc_distance_upper(
          Alpha(alpha_v), parse_point_arg(from_arg, "--from"),
          parse_point_arg(to_arg, "--to"), knots, iterations, seed);
      write_report(to_json(res), out);
      return 0;
    };
  });

  auto* classify =
      app.add_subcommand("classify-entire", "Entire-family classification");
  classify->add_option("--map", map_file, "Map document")->required();
  classify->add_option("--out", out, "Output file (default stdout)");
  classify->callback([&] {
    action = [&] {
      const auto params = classify_entire(load_map(map_file));
      write_report(classification_to_json(params), out);
      return params ? 0 : 1;
    };
  });

  auto* axis = app.add_subcommand("axis-components",
                                  "Axis/side decomposition of a domain");
  axis->add_option("--domain", domain_file, "Domain document")->required();
  axis->add_option("--out", out, "Output file (default stdout)");
  axis->callback([&] {
    action = [&] {
      write_report(to_json(incidence_graph(load_domain(domain_file))), out);
      return 0;
    };
  });

  auto* obstruct = app.add_subcommand(
      "obstruct", "Topological obstruction between two domains");
  obstruct->add_option("--domain-a", domain_file, "First domain")->required();
  obstruct->add_option("--domain-b", domain_b_file, "Second domain")
      ->required();
  obstruct->add_flag("--no-side-swap", no_side_swap,
                     "Forbid the global left/right swap");
  obstruct->add_option("--out", out, "Output file (default stdout)");
  obstruct->callback([&] {
    action = [&] {
      const ObstructionResult res =
          obstruction_check(load_domain(domain_file),
                            load_domain(domain_b_file), !no_side_swap);
      write_report(to_json(res), out);
      if (res.obstructed) std::cerr << res.certificate << "\n";
      return res.obstructed ? 1 : 0;
    };
  });

  auto* grid = app.add_subcommand("grid", "CSV grid of map diagnostics");
  grid->add_option("--map", map_file, "Map document")->required();
  grid->add_option("--domain", domain_file, "Domain document")->required();
  grid->add_option("--resolution", resolution, "Grid resolution per axis");
  grid->add_option("--out", out, "Output file (default stdout)");
  grid->callback([&] {
    action = [&] {
      std::ostringstream csv;
      emit_grid_csv(load_map(map_file), load_domain(domain_file), resolution,
                    csv);
      write_report(csv.str(), out);
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action();
  } catch (const grushin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
