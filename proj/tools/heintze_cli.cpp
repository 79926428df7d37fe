// Command-line front end. Every command prints JSON (canonical form) or CSV
// to stdout or --out; exit status is 0 on success, 1 when a check fails or a
// witness is found, 2 for invalid input.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heintze/boundary_action.hpp"
#include "heintze/boundary_metric.hpp"
#include "heintze/errors.hpp"
#include "heintze/length_functional.hpp"
#include "heintze/map_verifiers.hpp"
#include "heintze/serialization.hpp"
#include "heintze/space_metric.hpp"
#include "heintze/suite.hpp"

using namespace heintze;

namespace {

struct Globals {
  std::string spec_path;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  double tol = 1e-9;
};

struct Output {
  Json json = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
  std::optional<SuiteReport> suite;  // rendered by emit()
  int status = 0;
};

Json read_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return Json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw SpecError("cannot open " + arg);
  return Json::parse(in);
}

JordanSpec load_spec(const Globals& g) {
  if (g.spec_path.empty()) throw SpecError("--spec is required");
  return parse_jordan_spec(read_json_arg(g.spec_path));
}

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : canonical_dump(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

std::string render(const Output& o, const std::string& format) {
  if (format == "json") return canonical_dump(o.json) + "\n";
  std::string out;
  if (o.columns.empty()) {
    out = "key,value\n";
    for (const auto& [k, v] : o.json.items()) out += csv_cell(k) + ',' + csv_cell(v) + '\n';
    return out;
  }
  for (std::size_t i = 0; i < o.columns.size(); ++i) out += (i ? "," : "") + o.columns[i];
  out += '\n';
  for (const auto& row : o.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += '\n';
  }
  return out;
}

Json witness_json(const std::optional<WitnessLevel>& w) {
  if (!w) return nullptr;
  return {{"alpha", w->alpha}, {"ell", w->ell}, {"j", w->j}};
}

Json classification_json(const Classification& c) {
  Json evidence = Json::array();
  for (const auto& e : c.evidence) evidence.push_back({{"k", e.k}, {"upper", e.upper}, {"lower", e.lower}});
  return {{"kind", to_string(c.kind)},
          {"value", c.value},
          {"upper_rate", c.upper_rate},
          {"lower_rate", c.lower_rate},
          {"evidence", evidence}};
}

std::vector<double> parse_list(const std::string& text) {
  const Vector v = parse_vector_text(text);
  return {v.data(), v.data() + v.size()};
}

Json audit_json(const TriangleAuditReport& a) {
  return {{"max_ratio", a.max_ratio},
          {"worst_trial", a.worst_trial},
          {"trials", a.trials},
          {"worst_triple",
           {to_json(a.worst_triple[0]), to_json(a.worst_triple[1]), to_json(a.worst_triple[2])}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary metrics of Heintze groups: distances, audits and map verifiers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--spec", g.spec_path, "Jordan spec JSON file (or inline JSON)");
  app.add_option("--seed", g.seed, "Root seed");
  app.add_option("--out", g.out, "Output path; 'csv' or 'json' selects the format instead");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", g.tol, "Tolerance");

  std::function<Output()> action;

  // dm
  auto* dm_cmd = app.add_subcommand("dm", "Boundary quasimetric D_M");
  dm_cmd->require_subcommand(1);
  std::string p_text, q_text;
  auto* dm_eval = dm_cmd->add_subcommand("eval", "D_M(p, q) with t0 and witness level");
  dm_eval->add_option("--p", p_text)->required();
  dm_eval->add_option("--q", q_text)->required();
  dm_eval->callback([&] {
    action = [&] {
      const OrderedBasis basis = build_basis(load_spec(g));
      const auto r = dM(basis, parse_vector_text(p_text), parse_vector_text(q_text));
      Output o;
      o.json = {{"value", r.value}, {"t0", r.t0}, {"witness", witness_json(r.witness)}};
      return o;
    };
  });

  double t_min = -5.0, t_max = 5.0;
  int steps = 41;
  auto* dm_table = dm_cmd->add_subcommand("table", "Level metric |e^{-tA}(p-q)| on a grid of heights");
  dm_table->add_option("--p", p_text)->required();
  dm_table->add_option("--q", q_text)->required();
  dm_table->add_option("--t-min", t_min);
  dm_table->add_option("--t-max", t_max);
  dm_table->add_option("--steps", steps)->check(CLI::Range(2, 100000));
  dm_table->callback([&] {
    action = [&] {
      const OrderedBasis basis = build_basis(load_spec(g));
      const Vector p = parse_vector_text(p_text), q = parse_vector_text(q_text);
      Output o;
      o.columns = {"t", "level_metric"};
      Json rows = Json::array();
      for (int i = 0; i < steps; ++i) {
        const double t = t_min + (t_max - t_min) * i / (steps - 1);
        const double d = level_metric(basis, t, p, q);
        o.rows.push_back({t, d});
        rows.push_back({{"t", t}, {"level_metric", d}});
      }
      const auto r = dM(basis, p, q);
      o.json = {{"t0", r.t0}, {"value", r.value}, {"rows", rows}};
      return o;
    };
  });

  std::uint64_t trials = 1000;
  double radius = 10.0;
  auto* dm_audit = dm_cmd->add_subcommand("audit-triangle", "Sampled quasi-triangle constant of D_M");
  dm_audit->add_option("--trials", trials);
  dm_audit->add_option("--radius", radius);
  dm_audit->callback([&] {
    action = [&] {
      const OrderedBasis basis = build_basis(load_spec(g));
      Output o;
      o.json = audit_json(quasi_triangle_audit(basis, Sampler{radius, g.seed}, trials));
      return o;
    };
  });

  // triangle
  auto* tri_cmd = app.add_subcommand("triangle", "Length functional");
  tri_cmd->require_subcommand(1);
  std::string level_text, schedule_text;
  auto* tri_classify = tri_cmd->add_subcommand("classify", "Zero / Finite / Infinite verdict");
  tri_classify->add_option("--p", p_text)->required();
  tri_classify->add_option("--q", q_text)->required();
  tri_classify->add_option("--level", level_text, "alpha,ell")->required();
  tri_classify->add_option("--schedule", schedule_text, "k1,k2,...");
  tri_classify->callback([&] {
    action = [&] {
      const OrderedBasis basis = build_basis(load_spec(g));
      const auto schedule = schedule_text.empty() ? default_schedule() : parse_list(schedule_text);
      const auto c = classify_triangle(basis, parse_vector_text(p_text), parse_vector_text(q_text),
                                       parse_level_text(level_text), schedule);
      Output o;
      o.json = classification_json(c);
      o.columns = {"k", "upper", "lower"};
      for (const auto& e : c.evidence) o.rows.push_back({e.k, e.upper, e.lower});
      return o;
    };
  });

  // map
  auto* map_cmd = app.add_subcommand("map", "Boundary self-map verifiers");
  map_cmd->require_subcommand(1);
  std::string map_text, source_text, target_text, grid_text, pair_text, radii_text = "1,10,100,1000";
  int map_trials = 100;
  int iterations = 5;

  auto* bilip = map_cmd->add_subcommand("check-bilip", "Sampled lower bound on the bilipschitz constant");
  bilip->add_option("--map", map_text)->required();
  bilip->add_option("--trials", map_trials);
  bilip->callback([&] {
    action = [&] {
      const OrderedBasis basis = build_basis(load_spec(g));
      const auto est = bilip_constant_estimate(basis, parse_map(basis, read_json_arg(map_text)),
                                               Sampler{radius, g.seed}, map_trials, g.tol);
      Output o;
      o.json = {{"raw_constant", est.raw_constant}, {"qsim_constant", est.qsim_constant},
                {"sim_factor", est.sim_factor},     {"is_similarity", est.is_similarity},
                {"min_ratio", est.min_ratio},       {"max_ratio", est.max_ratio},
                {"pairs", est.pairs_used}};
      if (est.witness) o.json["witness"] = {{"p", to_json(est.witness->p)}, {"q", to_json(est.witness->q)}};
      return o;
    };
  });

  auto* foliation = map_cmd->add_subcommand("check-foliation", "Search for a pair that leaves its leaf");
  foliation->add_option("--map", map_text)->required();
  foliation->add_option("--trials", map_trials);
  foliation->add_option("--level", level_text, "alpha,ell (all levels when omitted)");
  foliation->callback([&] {
    action = [&] {
      const OrderedBasis basis = build_basis(load_spec(g));
      const MapDescriptor map = parse_map(basis, read_json_arg(map_text));
      std::vector<Level> levels;
      if (!level_text.empty()) levels.push_back(parse_level_text(level_text));
      else
        for (const auto& r : basis.ranges()) levels.push_back(r.level);
      Output o;
      o.columns = {"level", "result", "p", "q", "image_level"};
      Json results = Json::array();
      for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto w = foliation_check(basis, map, levels[i], Sampler{radius, derive_seed(g.seed, i)},
                                       map_trials, g.tol);
        Json entry = {{"level", to_json(levels[i])}, {"result", w ? "Witness" : "Pass"}};
        if (w) {
          entry["p"] = to_json(w->p);
          entry["q"] = to_json(w->q);
          entry["image_level"] = to_json(w->image_level);
          o.status = 1;
          o.rows.push_back({entry["level"], "Witness", entry["p"], entry["q"], entry["image_level"]});
        } else {
          o.rows.push_back({entry["level"], "Pass", "", "", ""});
        }
        results.push_back(entry);
      }
      o.json = {{"results", results}};
      return o;
    };
  });

  int per_w = 64;
  auto* xi = map_cmd->add_subcommand("xi-curve", "Modulus of a lower level under source-level perturbations");
  xi->add_option("--map", map_text)->required();
  xi->add_option("--source", source_text, "alpha,ell")->required();
  xi->add_option("--target", target_text, "alpha,ell")->required();
  xi->add_option("--grid", grid_text, "w1,w2,...")->required();
  xi->add_option("--trials", per_w, "Samples per grid point");
  xi->callback([&] {
    action = [&] {
      const OrderedBasis basis = build_basis(load_spec(g));
      const auto curve = xi_modulus_curve(basis, parse_map(basis, read_json_arg(map_text)),
                                          parse_level_text(source_text), parse_level_text(target_text),
                                          parse_list(grid_text), Sampler{radius, g.seed}, per_w);
      Output o;
      o.columns = {"w", "displacement", "envelope"};
      Json samples = Json::array();
      for (const auto& s : curve.samples) {
        o.rows.push_back({s.w, s.displacement, s.envelope});
        samples.push_back({{"w", s.w}, {"displacement", s.displacement}, {"envelope", s.envelope}});
      }
      o.json = {{"source", to_json(curve.source)}, {"target", to_json(curve.target)}, {"samples", samples}};
      return o;
    };
  });

  auto* blowup = map_cmd->add_subcommand("rotation-blowup", "Displacement of two leaf rotations on large vectors");
  blowup->add_option("--pair", pair_text,
                     "JSON with level, rotation_y, rotation_y_prime, translation_y, translation_y_prime, y, y_prime")
      ->required();
  blowup->add_option("--radii", radii_text);
  blowup->callback([&] {
    action = [&] {
      const OrderedBasis basis = build_basis(load_spec(g));
      const Json j = read_json_arg(pair_text);
      RotationPair pair;
      pair.level = parse_level(j.at("level"));
      pair.rotation_y = parse_matrix(j.at("rotation_y"));
      pair.rotation_y_prime = parse_matrix(j.at("rotation_y_prime"));
      const int w = basis.range_of(pair.level).width;
      const int above = basis.n() - basis.range_of(pair.level).offset - w;
      pair.translation_y = j.contains("translation_y") ? parse_vector(j.at("translation_y")) : Vector::Zero(w);
      pair.translation_y_prime =
          j.contains("translation_y_prime") ? parse_vector(j.at("translation_y_prime")) : Vector::Zero(w);
      pair.y = j.contains("y") ? parse_vector(j.at("y")) : Vector::Zero(above);
      pair.y_prime = j.contains("y_prime") ? parse_vector(j.at("y_prime")) : Vector::Zero(above);
      const auto report = rotation_blowup_experiment(basis, pair, parse_list(radii_text));
      Output o;
      o.columns = {"radius", "displacement", "preimage_distance", "ratio"};
      Json rows = Json::array();
      for (const auto& r : report.rows) {
        o.rows.push_back({r.radius, r.displacement, r.preimage_distance, r.ratio});
        rows.push_back({{"radius", r.radius},
                        {"displacement", r.displacement},
                        {"preimage_distance", r.preimage_distance},
                        {"ratio", r.ratio}});
      }
      o.json = {{"verdict", to_string(report.verdict)},
                {"top_singular_value", report.top_singular_value},
                {"rows", rows}};
      return o;
    };
  });

  auto* cocycle = map_cmd->add_subcommand("cocycle", "Cocycle identity residual of a unipotent shear");
  cocycle->add_option("--map", map_text, "unipotent_shear descriptor")->required();
  cocycle->add_option("--p", p_text)->required();
  cocycle->add_option("--n", iterations)->check(CLI::Range(1, 1 << 20));
  cocycle->callback([&] {
    action = [&] {
      const OrderedBasis basis = build_basis(load_spec(g));
      const MapDescriptor map = parse_map(basis, read_json_arg(map_text));
      const auto* shear = std::get_if<UnipotentShear>(&map);
      if (!shear) throw SpecError("map cocycle needs a unipotent_shear descriptor");
      const double residual = cocycle_iterate_check(basis, *shear, parse_vector_text(p_text), iterations);
      Output o;
      o.json = {{"n", iterations}, {"residual", residual}};
      return o;
    };
  });

  // action
  auto* action_cmd = app.add_subcommand("action", "Boundary maps induced by height-respecting maps");
  action_cmd->require_subcommand(1);
  double shift = 0.0, fuzz = 0.0;
  auto* constants = action_cmd->add_subcommand("constants", "Similarity factor and fuzz of the boundary map");
  constants->add_option("--map", map_text)->required();
  constants->add_option("--shift", shift);
  constants->add_option("--fuzz", fuzz);
  constants->add_option("--trials", map_trials);
  constants->callback([&] {
    action = [&] {
      const OrderedBasis basis = build_basis(load_spec(g));
      const HeightRespectingMap hm{parse_map(basis, read_json_arg(map_text)), shift, fuzz};
      Output o;
      try {
        const auto c = induced_boundary_constants(basis, hm, Sampler{radius, g.seed}, map_trials, g.tol);
        o.json = {{"factor", c.factor},       {"fuzz", c.fuzz},         {"min_ratio", c.min_ratio},
                  {"max_ratio", c.max_ratio}, {"pairs", c.pairs_used}, {"status", "pass"}};
      } catch (const ContractViolation& e) {
        o.json = {{"status", "fail"}, {"violation", e.what()}};
        o.status = 1;
      }
      return o;
    };
  });

  // suite
  auto* suite_cmd = app.add_subcommand("suite", "Batch checks");
  suite_cmd->require_subcommand(1);
  std::string config_path;
  bool timing = false;
  auto* run = suite_cmd->add_subcommand("run", "Run the registered checks");
  run->add_option("--config", config_path, "Experiment config JSON file (or inline JSON)");
  run->add_flag("--timing", timing, "Record wall-clock seconds per check");
  run->callback([&] {
    action = [&] {
      Json j = config_path.empty() ? Json::object() : read_json_arg(config_path);
      if (!g.spec_path.empty()) j["spec"] = read_json_arg(g.spec_path);
      if (app.count("--seed")) j["seed"] = g.seed;
      if (app.count("--tol")) j["tol"] = g.tol;
      if (timing) j["timing"] = true;
      const ExperimentConfig config = parse_config(j);
      const SuiteReport report = run_suite(config);
      Output o;
      o.status = report.exit_code();
      o.suite = report;
      return o;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (g.out == "csv" || g.out == "json") {
    g.format = g.out;
    g.out.clear();
  }

  try {
    const Output o = action();
    std::string text;
    if (o.suite) {
      text = emit(*o.suite, g.format == "csv" ? OutputFormat::Csv : OutputFormat::Json);
    } else {
      text = render(o, g.format);
    }
    if (g.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(g.out, std::ios::binary);
      if (!f) throw SpecError("cannot write " + g.out);
      f << text;
    }
    return o.status;
  } catch (const SpecError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
  } catch (const IndexError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
