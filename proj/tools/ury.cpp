// Command-line front end: builds U0 incrementally, embeds effective spaces,
// prints domain representations and selection distributions, runs the
// convergence harness, enumerates dense sets of typed functionals, and runs
// the invariant suites.
//
// Exit codes: 0 success, 1 failed verification / suite violation, 2 usage or
// input error. All randomness flows from the single --seed generator, so a
// rerun with the same arguments produces byte-identical reports.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ury/domain_rep.hpp"
#include "ury/embedding.hpp"
#include "ury/funcspace.hpp"
#include "ury/json_io.hpp"
#include "ury/suites.hpp"

using namespace ury;

namespace {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  Json j;
  in >> j;
  return j;
}

void emit(const Json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot write '" + out + "'");
  os << text;
}

// Space spec documents:
//   {"kind": "real-line" | "unit-interval"}
//   {"kind": "maxnorm-rd", "dim": d}
//   {"kind": "rational-points", "points": ["0", "1/4", ...]}
//   {"kind": "finite", "metric": {"points": [...], "dist": [[...]]}}
EffSpacePtr space_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "real-line" || kind == "unit-interval") return builtin_space(kind);
  if (kind == "maxnorm-rd") return builtin_space(kind, j.value("dim", 1));
  if (kind == "rational-points") {
    std::vector<Rat> pts;
    for (const auto& p : j.at("points")) pts.push_back(rat_from_json(p));
    return builtin_rational_points(pts);
  }
  if (kind == "finite") return builtin_finite(fin_metric_from_json(j.at("metric")));
  throw std::invalid_argument("unknown space kind '" + kind + "'");
}

// Point documents: {"value": "p/q"} for spaces with scalar values,
// {"index": i} for a dense-set point of any space.
SpacePoint point_from_json(const EffSpacePtr& sp, const Json& j) {
  if (j.contains("value")) return point_from_stream(sp, fc_const(rat_from_json(j.at("value"))));
  if (j.contains("index")) return dense_point(*sp, j.at("index").get<int>());
  throw std::invalid_argument("point document needs 'value' or 'index'");
}

EffSpacePtr base_space_from_name(const std::string& name) {
  Json j;
  j["kind"] = name;
  return space_from_json(j);
}

int cmd_build_urysohn(int steps, int height, const std::string& out) {
  UrysohnBuilder b;
  int done = b.run_bookkeeping(steps, height);
  Json j = builder_to_json(b);
  j["steps_requested"] = steps;
  j["steps_done"] = done;
  j["validation"] = validation_to_json(validate_metric(b.space()));
  emit(j, out);
  return j["validation"]["ok"].get<bool>() && done == steps ? 0 : 1;
}

int cmd_embed(const std::string& space_path, int count, int precision, const std::string& report) {
  EffSpacePtr sp = space_from_json(load_json(space_path));
  if (sp->dense_size) count = std::min(count, *sp->dense_size);
  UrysohnBuilder b;
  EmbeddingIntoU e(sp, b, count, precision);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) pairs.push_back({i, j});
  IsometryReport rep = e.verify(pairs, precision);
  Json j = isometry_to_json(rep);
  j["space"] = sp->name;
  j["count"] = count;
  emit(j, report);
  return rep.ok() ? 0 : 1;
}

int cmd_represent(const std::string& space_path, const std::string& point_path, int stage,
                  const std::string& out) {
  EffSpacePtr sp = space_from_json(load_json(space_path));
  SpacePoint pt = point_from_json(sp, load_json(point_path));
  auto chain = least_ideal_chain(*sp, pt, stage);
  Json stages = Json::array();
  for (const auto& k : chain) stages.push_back(cluster_to_json(k));
  Json j;
  j["space"] = sp->name;
  j["stage"] = stage;
  j["chain"] = stages;
  // Round trip through point extraction as a self-check.
  SpacePoint back = delta_extract(*sp, chain);
  j["extracted_index_at_stage"] = back.at(stage);
  emit(j, out);
  return 0;
}

int cmd_select(const std::string& space_path, const std::string& point_path, int level,
               const std::string& out) {
  EffSpacePtr sp = space_from_json(load_json(space_path));
  SpacePoint pt = point_from_json(sp, load_json(point_path));
  SelectionLevel lvl = metric_selection_level(sp, level);
  Dist d = lvl.mu(pt);
  d.check();
  std::vector<std::string> labels;
  for (int c : lvl.carrier) labels.push_back(sp->label(c));
  Json j;
  j["space"] = sp->name;
  j["level"] = level;
  j["delta"] = rat_to_json(lvl.delta);
  j["eval_precision"] = lvl.eval_precision;
  j["dist"] = dist_to_json(d, labels);
  emit(j, out);
  return 0;
}

int cmd_harness(int trials, std::uint64_t seed, int levels, const std::string& value,
                const std::string& out) {
  auto sp = builtin_space("real-line");
  Rat x = parse_rat(value);
  SpacePoint target = point_from_stream(sp, fc_const(x));
  auto moving = [sp, x](int n) { return point_from_stream(sp, fc_const(x + pow2_neg(n))); };
  HarnessReport rep = convergence_harness(sp, levels, target, moving, trials, seed);
  Json j = harness_to_json(rep);
  j["target"] = rat_str(x);
  j["levels"] = levels;
  j["trials"] = trials;
  j["seed"] = seed;
  // Envelope alone, followed far beyond the sampled depth via scalar values.
  auto env = envelope_schedule(sp, 64, fc_const(x),
                               [x](int n) { return fc_const(x + pow2_neg(n)); });
  Json envelopes = Json::array();
  for (const auto& row : env)
    envelopes.push_back({{"n", row.n}, {"envelope", rat_to_json(row.envelope)}});
  j["envelope_schedule"] = envelopes;
  emit(j, out);
  return rep.all_inside ? 0 : 1;
}

int cmd_density(const std::string& type_str, const std::vector<std::string>& base_args, int level,
                int count, const std::string& grid_path, const std::string& out) {
  TypeExprPtr ty = parse_type(type_str);
  BaseAssignment bases;
  for (const std::string& a : base_args) {
    auto eq = a.find('=');
    if (eq == std::string::npos || a.size() < 3 || a[0] != 'V')
      throw std::invalid_argument("--base expects V<digits>=<space-kind>, got '" + a + "'");
    int var = std::stoi(a.substr(1, eq - 1));
    bases.spaces[var] = base_space_from_name(a.substr(eq + 1));
  }
  Json j;
  j["type"] = ty->str();
  j["level"] = level;

  LevelPtr lvl = interpret_type(ty, bases, level);
  Json carrier = Json::array();
  int limit = count > 0 ? std::min(count, lvl->size()) : lvl->size();
  for (int a = 0; a < limit; ++a) carrier.push_back(lvl->label(a));
  j["carrier"] = carrier;

  if (!grid_path.empty()) {
    // Grid: list of point coordinate vectors; each enumerated element of an
    // arrow type is applied to every grid point.
    Json grid = load_json(grid_path);
    Json evals = Json::array();
    for (int a = 0; a < limit; ++a) {
      FnPointPtr f = lvl->nu(a);
      Json row;
      row["element"] = lvl->label(a);
      Json vals = Json::array();
      for (const auto& g : grid) {
        std::vector<Rat> coords;
        if (g.is_array())
          for (const auto& c : g) coords.push_back(rat_from_json(c));
        else
          coords.push_back(rat_from_json(g));
        FnPointPtr x = fn_vec(coords);
        FnPointPtr y = std::holds_alternative<FnPoint::Fn>(f->v) ? ury::apply(f, x) : f;
        vals.push_back(y->describe());
      }
      row["values"] = vals;
      evals.push_back(row);
    }
    j["evaluations"] = evals;
  }
  emit(j, out);
  return 0;
}

int cmd_check(const std::string& suite, const SuiteConfig& cfg, const std::string& out) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    std::cerr << "unknown suite '" << suite << "'; known:";
    for (const auto& n : names) std::cerr << " " << n;
    std::cerr << "\n";
    return 2;
  }
  CheckReport rep = run_suite(suite, cfg);
  emit(check_report_to_json(rep), out);
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Urysohn-space workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  int precision = 16;
  app.add_option("--seed", seed, "random seed (all sampling derives from it)");
  app.add_option("--precision", precision, "default precision exponent")->check(CLI::PositiveNumber);

  std::string out;
  int steps = 100, height = 4, count = 0, level = 0, stage = 8, trials = 50, levels = 10;
  std::string space_path, point_path, type_str, grid_path, suite, value = "1/3";
  std::vector<std::string> base_args;
  bool inject_fault = false;

  auto* build = app.add_subcommand("build-urysohn", "run the bookkeeping construction of U0");
  build->add_option("--steps", steps, "admissible requests to realize")->required();
  build->add_option("--height", height, "target height cap (0 = unbounded)");
  build->add_option("--out", out, "output path (default stdout)");

  auto* embed = app.add_subcommand("embed", "isometrically embed an effective space into U");
  embed->add_option("--space", space_path, "space spec JSON")->required();
  embed->add_option("--count", count, "number of dense points to embed")->required();
  embed->add_option("--report", out, "report path (default stdout)");

  auto* represent = app.add_subcommand("represent", "least-ideal chain of a point");
  represent->add_option("--space", space_path, "space spec JSON")->required();
  represent->add_option("--point", point_path, "point JSON")->required();
  represent->add_option("--stage", stage, "chain depth");
  represent->add_option("--out", out, "output path (default stdout)");

  auto* select = app.add_subcommand("select", "selection distribution mu_n(x)");
  select->add_option("--space", space_path, "space spec JSON")->required();
  select->add_option("--point", point_path, "point JSON")->required();
  select->add_option("--level", level, "selection level n")->required();
  select->add_option("--out", out, "output path (default stdout)");

  auto* harness = app.add_subcommand("harness", "convergence-mod-measures report");
  harness->add_option("--trials", trials, "samples per level");
  harness->add_option("--levels", levels, "deepest level");
  harness->add_option("--target", value, "rational limit point");
  harness->add_option("--out", out, "output path (default stdout)");

  auto* density = app.add_subcommand("density", "dense enumeration of a typed hierarchy level");
  density->add_option("--type", type_str, "type expression, e.g. (V1->V1)")->required();
  density->add_option("--base", base_args, "assignment V<i>=<space-kind>, repeatable");
  density->add_option("--level", level, "level n");
  density->add_option("--count", count, "cap on enumerated elements (0 = whole carrier)");
  density->add_option("--eval-grid", grid_path, "JSON list of grid points to evaluate on");
  density->add_option("--out", out, "output path (default stdout)");

  auto* check = app.add_subcommand("check", "run an invariant suite");
  check->add_option("suite", suite, "suite name")->required();
  check->add_option("--steps", steps, "bookkeeping steps");
  check->add_option("--height", height, "bookkeeping height cap");
  check->add_option("--trials", trials, "random cases per property");
  check->add_flag("--inject-fault", inject_fault, "add a known-bad assertion (demo of exit 1)");
  check->add_option("--out", out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build_urysohn(steps, height, out);
    if (embed->parsed()) return cmd_embed(space_path, count, precision, out);
    if (represent->parsed()) return cmd_represent(space_path, point_path, stage, out);
    if (select->parsed()) return cmd_select(space_path, point_path, level, out);
    if (harness->parsed()) return cmd_harness(trials, seed, levels, value, out);
    if (density->parsed()) return cmd_density(type_str, base_args, level, count, grid_path, out);
    if (check->parsed()) {
      SuiteConfig cfg;
      cfg.seed = seed;
      cfg.steps = steps;
      cfg.height = height;
      cfg.trials = trials;
      cfg.precision = precision;
      cfg.inject_fault = inject_fault;
      return cmd_check(suite, cfg, out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
