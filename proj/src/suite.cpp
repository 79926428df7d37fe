#include "heintze/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

#include "heintze/boundary_metric.hpp"
#include "heintze/errors.hpp"
#include "heintze/length_functional.hpp"
#include "heintze/map_verifiers.hpp"
#include "heintze/maps.hpp"
#include "heintze/sampling.hpp"
#include "heintze/space_metric.hpp"

namespace heintze {

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

CheckStatus parse_status(const std::string& text) {
  if (text == "pass") return CheckStatus::Pass;
  if (text == "fail") return CheckStatus::Fail;
  if (text == "inconclusive") return CheckStatus::Inconclusive;
  throw SpecError("unknown check status: " + text);
}

bool SuiteReport::failed() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

int SuiteReport::exit_code() const { return failed() ? 1 : 0; }

const std::vector<std::string>& builtin_checks() {
  static const std::vector<std::string> names = {
      "oracle_equivalence", "scalar_law",         "similarity_law",     "trichotomy_suite",
      "foliation_fuzz",     "cocycle_residuals",  "euclid_cygan_ratio", "quasi_triangle_audit"};
  return names;
}

namespace {

Json pair_json(const BoundaryPoint& p, const BoundaryPoint& q) {
  return {{"p", to_json(p)}, {"q", to_json(q)}};
}

CheckStatus pass_if(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

struct Context {
  const ExperimentConfig& config;
  const OrderedBasis& basis;
  std::uint64_t seed;

  Sampler sampler(std::uint64_t stream = 0) const {
    return Sampler{config.radius, stream == 0 ? seed : derive_seed(seed, stream)};
  }
  std::vector<double> schedule() const {
    return config.schedule.empty() ? default_schedule() : config.schedule;
  }
};

// First crossing of the level metric located by a dense scan (step 1e-4 over
// the three units below the solver's answer) and bisection, compared with the
// solver's t0. The scan evaluates the block exponential directly.
double scanned_crossing(const OrderedBasis& basis, const BoundaryPoint& p, const BoundaryPoint& q,
                        double hint) {
  const double step = 1e-4;
  double lo = hint - 3.0;
  const auto above = [&](double t) { return level_metric(basis, t, p, q) > 1.0; };
  if (!above(lo)) return lo;
  double hi = lo;
  for (int i = 1;; ++i) {
    hi = hint - 3.0 + i * step;
    if (!above(hi)) break;
    lo = hi;
    if (hi > hint + 1.0) return std::numeric_limits<double>::infinity();
  }
  while (hi - lo > 1e-13 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? lo : hi) = mid;
  }
  return hi;
}

CheckResult oracle_equivalence(const Context& ctx) {
  CheckResult r;
  const Sampler s = ctx.sampler();
  double worst = 0.0;
  Json witness;
  for (int i = 0; i < ctx.config.trials.oracle; ++i) {
    Rng rng = s.trial_rng(static_cast<std::uint64_t>(i));
    const BoundaryPoint p = uniform_point(rng, ctx.basis.n(), s.radius);
    const BoundaryPoint q = uniform_point(rng, ctx.basis.n(), s.radius);
    const double t0 = dM(ctx.basis, p, q).t0;
    const double diff = std::max(std::abs(t0 - scanned_crossing(ctx.basis, p, q, t0)),
                                 std::abs(t0 - dM_coordinate(ctx.basis, p, q).t0));
    if (diff > worst) {
      worst = diff;
      witness = pair_json(p, q);
    }
  }
  r.value = worst;
  r.status = pass_if(worst <= 1e-6);
  r.measurements = {{"max_t0_difference", worst}, {"trials", ctx.config.trials.oracle}};
  if (r.status == CheckStatus::Fail) r.witness = canonical_dump(witness);
  return r;
}

CheckResult scalar_law(const Context& ctx) {
  CheckResult r;
  const Sampler s = ctx.sampler();
  double worst = 0.0;
  Json witness;
  for (int i = 0; i < ctx.config.trials.scalar; ++i) {
    Rng rng = s.trial_rng(static_cast<std::uint64_t>(i));
    const double alpha = rng.uniform(0.5, 3.0);
    const OrderedBasis basis = build_basis(JordanSpec::make({{alpha, {1}}}));
    BoundaryPoint p(1), q(1);
    p(0) = rng.uniform(-s.radius, s.radius);
    q(0) = rng.uniform(-s.radius, s.radius);
    if (p == q) continue;
    const double expected = std::pow(std::abs(p(0) - q(0)), 1.0 / alpha);
    const double err = std::abs(dM(basis, p, q).value / expected - 1.0);
    if (err > worst) {
      worst = err;
      witness = {{"alpha", alpha}, {"p", p(0)}, {"q", q(0)}};
    }
  }
  r.value = worst;
  r.status = pass_if(worst <= 1e-9);
  r.measurements = {{"max_relative_error", worst}, {"trials", ctx.config.trials.scalar}};
  if (r.status == CheckStatus::Fail) r.witness = canonical_dump(witness);
  return r;
}

CheckResult similarity_law(const Context& ctx) {
  CheckResult r;
  const Sampler s = ctx.sampler();
  const int n = ctx.basis.n();
  double worst = 0.0, worst_group = 0.0;
  Json witness;
  for (int i = 0; i < ctx.config.trials.similarity; ++i) {
    Rng rng = s.trial_rng(static_cast<std::uint64_t>(i));
    const double t = rng.uniform(0.1, 10.0);
    const BoundaryPoint p = uniform_point(rng, n, s.radius);
    const BoundaryPoint q = uniform_point(rng, n, s.radius);
    const double base = dM(ctx.basis, p, q).value;
    const double scaled =
        dM(ctx.basis, standard_dilation(ctx.basis, t, p), standard_dilation(ctx.basis, t, q)).value;
    const double err = std::abs(scaled / (t * base) - 1.0);
    if (err > worst) {
      worst = err;
      witness = pair_json(p, q);
      witness["s"] = t;
    }
    const double a = rng.uniform(0.1, 10.0);
    const double b = rng.uniform(0.1, 10.0);
    const Vector inner = standard_dilation(ctx.basis, b, p);
    const Vector composed = standard_dilation(ctx.basis, a, inner);
    const Vector direct = standard_dilation(ctx.basis, a * b, p);
    const double scale =
        std::max(1.0, exp_tA(ctx.basis, std::log(a)).cwiseAbs().rowwise().sum().maxCoeff() *
                          inner.cwiseAbs().maxCoeff());
    worst_group = std::max(worst_group, (composed - direct).cwiseAbs().maxCoeff() / scale);
  }
  r.value = worst;
  r.status = pass_if(worst <= 1e-9 && worst_group <= 1e-12);
  r.measurements = {{"max_relative_error", worst},
                    {"max_group_law_error", worst_group},
                    {"trials", ctx.config.trials.similarity}};
  if (r.status == CheckStatus::Fail) r.witness = canonical_dump(witness);
  return r;
}

// Pairs differing on a single level S, classified at every level L.
CheckResult trichotomy_suite(const Context& ctx) {
  CheckResult r;
  const Sampler s = ctx.sampler();
  const auto& ranges = ctx.basis.ranges();
  int total = 0, correct = 0;
  double worst_value_error = 0.0;
  Json witness;
  std::uint64_t trial = 0;
  for (const auto& source : ranges) {
    for (const auto& target : ranges) {
      const auto order = compare_levels(ctx.basis, source.level, target.level);
      const TriangleKind expected = order == 0   ? TriangleKind::Finite
                                    : order < 0  ? TriangleKind::Infinite
                                                 : TriangleKind::Zero;
      for (int i = 0; i < ctx.config.trials.trichotomy; ++i) {
        Rng rng = s.trial_rng(trial++);
        const BoundaryPoint p = uniform_point(rng, ctx.basis.n(), s.radius);
        BoundaryPoint q = p;
        for (int c = 0; c < source.width; ++c)
          q(source.offset + c) += rng.uniform(0.1, 1.0) * s.radius * (rng.unit() < 0.5 ? -1 : 1);
        const auto cls = classify_triangle(ctx.basis, p, q, target.level, ctx.schedule());
        bool ok = cls.kind == expected;
        if (ok && expected == TriangleKind::Finite) {
          const double truth = (q - p).segment(source.offset, source.width).cwiseAbs().maxCoeff();
          const double err = std::abs(cls.value - truth) / truth;
          worst_value_error = std::max(worst_value_error, err);
          ok = err <= 0.05;
        }
        ++total;
        if (ok) {
          ++correct;
        } else if (witness.is_null()) {
          witness = pair_json(p, q);
          witness["level"] = to_json(target.level);
          witness["expected"] = to_string(expected);
          witness["got"] = to_string(cls.kind);
        }
      }
    }
  }
  r.value = total ? static_cast<double>(correct) / total : 1.0;
  r.status = pass_if(correct == total);
  r.measurements = {{"cases", total}, {"correct", correct}, {"max_finite_value_error", worst_value_error}};
  if (!witness.is_null()) r.witness = canonical_dump(witness);
  return r;
}

CheckResult foliation_fuzz(const Context& ctx) {
  CheckResult r;
  int witnesses = 0;
  Json witness;
  for (int m = 0; m < ctx.config.trials.foliation_maps; ++m) {
    Rng rng(derive_seed(ctx.seed, static_cast<std::uint64_t>(m)));
    const TriangularMap map = random_triangular_map(ctx.basis, rng);
    for (const auto& range : ctx.basis.ranges()) {
      const Sampler s{ctx.config.radius, rng.next()};
      const auto w = foliation_check(ctx.basis, map, range.level, s, 3, ctx.config.tol);
      if (w) {
        ++witnesses;
        if (witness.is_null()) {
          witness = pair_json(w->p, w->q);
          witness["map"] = m;
          witness["level"] = to_json(range.level);
        }
      }
    }
  }
  r.value = witnesses;
  r.status = pass_if(witnesses == 0);
  r.measurements = {{"maps", ctx.config.trials.foliation_maps}, {"witnesses", witnesses}};
  if (!witness.is_null()) r.witness = canonical_dump(witness);
  return r;
}

CheckResult cocycle_residuals(const Context& ctx) {
  CheckResult r;
  double worst = 0.0;
  Json witness;
  for (int m = 0; m < ctx.config.trials.cocycle; ++m) {
    Rng rng(derive_seed(ctx.seed, static_cast<std::uint64_t>(m)));
    const UnipotentShear shear = random_polynomial_shear(ctx.basis, rng);
    const BoundaryPoint p = uniform_point(rng, ctx.basis.n(), 1.0);
    const int n = rng.integer(1, 32);
    const double res = cocycle_iterate_check(ctx.basis, shear, p, n);
    if (res > worst) {
      worst = res;
      witness = {{"shear", m}, {"p", to_json(p)}, {"n", n}};
    }
  }
  r.value = worst;
  r.status = pass_if(worst <= 1e-12);
  r.measurements = {{"max_residual", worst}, {"shears", ctx.config.trials.cocycle}};
  if (r.status == CheckStatus::Fail) r.witness = canonical_dump(witness);
  return r;
}

CheckResult euclid_cygan_ratio(const Context& ctx) {
  CheckResult r;
  const Sampler s = ctx.sampler();
  const double expected = std::exp(0.5);
  double worst = 0.0;
  Json witness;
  for (int i = 0; i < ctx.config.trials.euclid; ++i) {
    Rng rng = s.trial_rng(static_cast<std::uint64_t>(i));
    const BoundaryPoint p = uniform_point(rng, ctx.basis.n(), s.radius);
    const BoundaryPoint q = uniform_point(rng, ctx.basis.n(), s.radius);
    const auto d = dM(ctx.basis, p, q);
    const double ratio = euclid_cygan(ctx.basis, p, q, d.t0 - 10.0) / d.value;
    const double err = std::abs(ratio / expected - 1.0);
    if (err > worst) {
      worst = err;
      witness = pair_json(p, q);
    }
  }
  r.value = worst;
  r.status = pass_if(worst <= 1e-6);
  r.measurements = {{"max_relative_error", worst}, {"trials", ctx.config.trials.euclid}};
  if (r.status == CheckStatus::Fail) r.witness = canonical_dump(witness);
  return r;
}

Json audit_json(const TriangleAuditReport& a) {
  return {{"max_ratio", a.max_ratio},
          {"worst_trial", a.worst_trial},
          {"trials", a.trials},
          {"worst_triple",
           {to_json(a.worst_triple[0]), to_json(a.worst_triple[1]), to_json(a.worst_triple[2])}}};
}

// The configured spec is reported; the reference specs carry the assertions:
// ultrametric-free triangle inequality for scalar alpha = 1 and diagonal
// alpha >= 1, and a constant of at least 2 for scalar alpha = 1/2.
CheckResult quasi_triangle_audit_check(const Context& ctx) {
  CheckResult r;
  const auto trials = ctx.config.trials.audit;
  const auto configured = quasi_triangle_audit(ctx.basis, ctx.sampler(1), trials);
  const auto scalar_one =
      quasi_triangle_audit(build_basis(JordanSpec::make({{1.0, {1}}})), ctx.sampler(2), trials);
  const auto diagonal = quasi_triangle_audit(
      build_basis(JordanSpec::make({{1.0, {1}}, {1.5, {1}}, {2.0, {1, 1}}})), ctx.sampler(3), trials);
  const auto scalar_half =
      quasi_triangle_audit(build_basis(JordanSpec::make({{0.5, {1}}})), ctx.sampler(4), trials);
  const bool ok = std::isfinite(configured.max_ratio) && scalar_one.max_ratio <= 1.0 + 1e-9 &&
                  diagonal.max_ratio <= 1.0 + 1e-9 && scalar_half.max_ratio >= 2.0;
  r.value = configured.max_ratio;
  r.status = pass_if(ok);
  r.measurements = {{"configured", audit_json(configured)},
                    {"scalar_alpha_1", audit_json(scalar_one)},
                    {"diagonal_alpha_ge_1", audit_json(diagonal)},
                    {"scalar_alpha_half", audit_json(scalar_half)}};
  return r;
}

std::vector<Level> injected_levels(const OrderedBasis& basis, const InjectedMap& m) {
  if (m.level) return {*m.level};
  std::vector<Level> out;
  for (const auto& range : basis.ranges()) out.push_back(range.level);
  return out;
}

CheckResult injected_check(const Context& ctx, const InjectedMap& m, const std::string& kind) {
  CheckResult r;
  r.name = "map:" + m.name + ":" + kind;
  const MapDescriptor map = parse_map(ctx.basis, m.descriptor);
  const int trials = ctx.config.trials.injected;
  if (kind == "bilip") {
    const auto est = bilip_constant_estimate(ctx.basis, map, ctx.sampler(), trials, ctx.config.tol);
    r.status = CheckStatus::Pass;
    r.value = est.raw_constant;
    r.measurements = {{"raw_constant", est.raw_constant},
                      {"qsim_constant", est.qsim_constant},
                      {"sim_factor", est.sim_factor},
                      {"is_similarity", est.is_similarity},
                      {"pairs", est.pairs_used}};
    return r;
  }
  r.status = CheckStatus::Pass;
  int found = 0;
  std::uint64_t stream = 1;
  for (const auto& level : injected_levels(ctx.basis, m)) {
    const Sampler s = ctx.sampler(stream++);
    Json witness;
    if (kind == "foliation") {
      if (const auto w = foliation_check(ctx.basis, map, level, s, trials, ctx.config.tol)) {
        witness = pair_json(w->p, w->q);
        witness["image_level"] = to_json(w->image_level);
      }
    } else {
      if (const auto w = nonbilip_witness_via_triangle(ctx.basis, map, level, s, trials, ctx.schedule())) {
        witness = pair_json(w->p, w->q);
        witness["evidence_ratio"] = w->evidence_ratio;
      }
    }
    if (!witness.is_null()) {
      ++found;
      witness["level"] = to_json(level);
      if (r.witness.empty()) r.witness = canonical_dump(witness);
      r.status = CheckStatus::Fail;
    }
  }
  r.value = found;
  r.measurements = {{"levels_with_witness", found}};
  return r;
}

using CheckFn = std::function<CheckResult(const Context&)>;

const std::vector<CheckFn>& registry() {
  static const std::vector<CheckFn> fns = {oracle_equivalence, scalar_law,         similarity_law,
                                           trichotomy_suite,   foliation_fuzz,     cocycle_residuals,
                                           euclid_cygan_ratio, quasi_triangle_audit_check};
  return fns;
}

template <class F>
CheckResult timed(bool timing, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r = f();
  if (timing)
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

const std::vector<std::string> injected_kinds = {"foliation", "nonbilip", "bilip"};

}  // namespace

void validate(const ExperimentConfig& config) {
  const OrderedBasis basis = build_basis(config.spec);
  const auto require_level = [&](const Level& level) {
    if (!basis.find_level(level)) throw SpecError("config: level " + to_string(level) + " is not in the spec");
  };
  for (const auto& level : config.levels) require_level(level);
  for (const auto& name : config.checks)
    if (std::find(builtin_checks().begin(), builtin_checks().end(), name) == builtin_checks().end())
      throw SpecError("config: unknown check \"" + name + "\"");
  for (const auto& m : config.maps) {
    if (m.level) require_level(*m.level);
    for (const auto& kind : m.checks)
      if (std::find(injected_kinds.begin(), injected_kinds.end(), kind) == injected_kinds.end())
        throw SpecError("config: unknown map check \"" + kind + "\"");
    try {
      (void)parse_map(basis, m.descriptor);
    } catch (const DomainError& e) {
      throw SpecError(std::string("config: map ") + m.name + ": " + e.what());
    }
  }
  if (!(config.radius > 0.0)) throw SpecError("config: radius must be positive");
  if (!(config.tol > 0.0)) throw SpecError("config: tol must be positive");
  if (!config.schedule.empty()) {
    try {
      (void)effective_schedule(basis, config.schedule);
      for (std::size_t i = 0; i < config.schedule.size(); ++i)
        if (!(config.schedule[i] >= 3.0) || (i && !(config.schedule[i] > config.schedule[i - 1])))
          throw SpecError("config: schedule must be increasing with entries >= 3");
    } catch (const DomainError& e) {
      throw SpecError(e.what());
    }
  }
  const auto& t = config.trials;
  if (t.oracle < 1 || t.scalar < 1 || t.similarity < 1 || t.trichotomy < 1 || t.foliation_maps < 1 ||
      t.cocycle < 1 || t.euclid < 1 || t.audit < 1 || t.injected < 1)
    throw SpecError("config: trial counts must be >= 1");
}

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw SpecError("config must be a JSON object");
  static const std::vector<std::string> keys = {"spec",   "seed",   "radius", "schedule", "tol",
                                                "checks", "maps",   "levels", "trials",   "timing"};
  for (const auto& [key, value] : j.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw SpecError("config: unknown key \"" + key + "\"");
  ExperimentConfig c;
  try {
    if (j.contains("spec")) c.spec = parse_jordan_spec(j.at("spec"));
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    c.radius = j.value("radius", c.radius);
    c.tol = j.value("tol", c.tol);
    c.timing = j.value("timing", false);
    if (j.contains("schedule")) c.schedule = j.at("schedule").get<std::vector<double>>();
    if (j.contains("checks")) c.checks = j.at("checks").get<std::vector<std::string>>();
    if (j.contains("levels"))
      for (const auto& l : j.at("levels")) c.levels.push_back(parse_level(l));
    if (j.contains("maps")) {
      for (const auto& m : j.at("maps")) {
        InjectedMap im;
        im.name = m.at("name").get<std::string>();
        im.descriptor = m.at("map");
        im.checks = m.value("checks", std::vector<std::string>{"foliation"});
        if (m.contains("level")) im.level = parse_level(m.at("level"));
        c.maps.push_back(std::move(im));
      }
    }
    if (j.contains("trials")) {
      const auto& t = j.at("trials");
      c.trials.oracle = t.value("oracle", c.trials.oracle);
      c.trials.scalar = t.value("scalar", c.trials.scalar);
      c.trials.similarity = t.value("similarity", c.trials.similarity);
      c.trials.trichotomy = t.value("trichotomy", c.trials.trichotomy);
      c.trials.foliation_maps = t.value("foliation_maps", c.trials.foliation_maps);
      c.trials.cocycle = t.value("cocycle", c.trials.cocycle);
      c.trials.euclid = t.value("euclid", c.trials.euclid);
      c.trials.audit = t.value("audit", c.trials.audit);
      c.trials.injected = t.value("injected", c.trials.injected);
    }
  } catch (const Json::exception& e) {
    throw SpecError(std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

SuiteReport run_suite(const ExperimentConfig& config) {
  validate(config);
  const OrderedBasis basis = build_basis(config.spec);
  SuiteReport report;
  report.seed = config.seed;
  const auto& names = builtin_checks();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!config.checks.empty() &&
        std::find(config.checks.begin(), config.checks.end(), names[i]) == config.checks.end())
      continue;
    const Context ctx{config, basis, derive_seed(config.seed, i)};
    CheckResult r = timed(config.timing, [&] { return registry()[i](ctx); });
    r.name = names[i];
    report.checks.push_back(std::move(r));
  }
  for (std::size_t m = 0; m < config.maps.size(); ++m) {
    const Context ctx{config, basis, derive_seed(config.seed, 1000 + m)};
    for (const auto& kind : config.maps[m].checks)
      report.checks.push_back(
          timed(config.timing, [&] { return injected_check(ctx, config.maps[m], kind); }));
  }
  return report;
}

Json to_json(const SuiteReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"status", to_string(c.status)},
                      {"value", c.value},
                      {"witness", c.witness},
                      {"seconds", c.seconds},
                      {"measurements", c.measurements}});
  return {{"seed", report.seed}, {"exit_code", report.exit_code()}, {"checks", checks}};
}

namespace {

double read_double(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw SpecError("report: bad number " + s);
  }
  return j.get<double>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

std::string format_double(double v, const char* fmt) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

SuiteReport parse_report(const Json& j) {
  SuiteReport report;
  try {
    report.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("checks")) {
      CheckResult r;
      r.name = c.at("name").get<std::string>();
      r.status = parse_status(c.at("status").get<std::string>());
      r.value = read_double(c.at("value"));
      r.witness = c.at("witness").get<std::string>();
      r.seconds = read_double(c.at("seconds"));
      r.measurements = c.at("measurements");
      report.checks.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw SpecError(std::string("report: ") + e.what());
  }
  return report;
}

std::string emit(const SuiteReport& report, OutputFormat format) {
  if (format == OutputFormat::Json) return canonical_dump(to_json(report)) + "\n";
  std::string out = "check,status,value,witness,seconds\n";
  for (const auto& c : report.checks) {
    out += csv_field(c.name) + ',' + to_string(c.status) + ',' + format_double(c.value, "%.12e") + ',' +
           csv_field(c.witness) + ',' + format_double(c.seconds, "%.6f") + '\n';
  }
  return out;
}

}  // namespace heintze
