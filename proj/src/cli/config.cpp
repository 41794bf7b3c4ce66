#include "lpsched/cli/config.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <cmath>
#include <functional>
#include <fstream>
#include <sstream>

namespace lpsched::cli {

void ExperimentConfig::require(const std::string& section) const {
  if (!sections.count(section)) throw ConfigError(fmt::format("{}: missing required field '{}'", source, section));
}

namespace {

struct Context {
  std::string source;
  std::set<std::string> overridden;
};

std::string where(const Context& ctx, const YAML::Node& node, const std::string& path) {
  if (ctx.overridden.count(path)) return fmt::format("--set {}", path);
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return ctx.source;
  return fmt::format("{}:{}:{}", ctx.source, mark.line + 1, mark.column + 1);
}

[[noreturn]] void fail(const Context& ctx, const YAML::Node& node, const std::string& path, const std::string& msg) {
  throw ConfigError(fmt::format("{}: {}", where(ctx, node, path), msg));
}

std::string join_path(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

// A mapping node with a closed key set.
class Section {
 public:
  Section(const Context& ctx, YAML::Node node, std::string path) : ctx_(ctx), node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsMap()) fail(ctx_, node_, path_, fmt::format("'{}' must be a mapping", path_));
  }

  void allow(std::initializer_list<const char*> keys) const {
    if (!node_) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      bool ok = false;
      for (const char* k : keys) ok = ok || key == k;
      if (!ok) {
        const std::string where_in = path_.empty() ? "the top level" : fmt::format("'{}'", path_);
        fail(ctx_, kv.first, join_path(path_, key), fmt::format("unknown key '{}' in {}", key, where_in));
      }
    }
  }

  bool present() const { return static_cast<bool>(node_); }
  bool has(const char* key) const { return node_ && node_[key]; }
  YAML::Node node(const char* key) const { return node_ ? node_[key] : YAML::Node(); }
  std::string path(const char* key) const { return join_path(path_, key); }
  const Context& ctx() const { return ctx_; }
  const YAML::Node& self() const { return node_; }
  const std::string& self_path() const { return path_; }

  [[noreturn]] void missing(const char* key) const {
    fail(ctx_, node_, path(key), fmt::format("missing required field '{}'", path(key)));
  }
  [[noreturn]] void bad(const char* key, const std::string& msg) const { fail(ctx_, node(key), path(key), msg); }

  double number(const char* key) const {
    if (!has(key)) missing(key);
    return to_number(node(key), path(key));
  }
  double number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  long long integer(const char* key) const {
    if (!has(key)) missing(key);
    const YAML::Node n = node(key);
    if (n.IsScalar()) {
      try {
        return n.as<long long>();
      } catch (const YAML::Exception&) {
      }
      // accept integral values written like 1e6
      try {
        const double v = n.as<double>();
        if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9e15) return static_cast<long long>(v);
      } catch (const YAML::Exception&) {
      }
    }
    fail(ctx_, n, path(key), fmt::format("'{}' must be an integer", path(key)));
  }
  long long integer(const char* key, long long fallback) const { return has(key) ? integer(key) : fallback; }

  std::string text(const char* key) const {
    if (!has(key)) missing(key);
    const YAML::Node n = node(key);
    if (!n.IsScalar()) fail(ctx_, n, path(key), fmt::format("'{}' must be a string", path(key)));
    return n.as<std::string>();
  }
  std::string text(const char* key, const std::string& fallback) const { return has(key) ? text(key) : fallback; }

  bool flag(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const YAML::Node n = node(key);
    try {
      if (n.IsScalar()) return n.as<bool>();
    } catch (const YAML::Exception&) {
    }
    fail(ctx_, n, path(key), fmt::format("'{}' must be true or false", path(key)));
  }

  std::vector<double> numbers(const char* key) const {
    std::vector<double> out;
    if (!has(key)) return out;
    const YAML::Node n = node(key);
    if (n.IsScalar()) return {to_number(n, path(key))};
    if (!n.IsSequence()) fail(ctx_, n, path(key), fmt::format("'{}' must be a list of numbers", path(key)));
    for (const auto& item : n) out.push_back(to_number(item, path(key)));
    return out;
  }

  Section sub(const char* key) const { return Section(ctx_, node(key), path(key)); }

 private:
  double to_number(const YAML::Node& n, const std::string& p) const {
    if (n.IsScalar()) {
      const std::string s = n.Scalar();
      if (s == "inf" || s == "+inf") return kInf;
      try {
        return n.as<double>();
      } catch (const YAML::Exception&) {
      }
    }
    fail(ctx_, n, p, fmt::format("'{}' must be a number", p));
  }

  const Context& ctx_;
  YAML::Node node_;
  std::string path_;
};

template <typename Fn>
void check(bool ok, const Section& s, const char* key, Fn&& message) {
  if (!ok) s.bad(key, message());
}

ArrivalSpec parse_arrival(const Section& s) {
  const std::string kind = s.text("kind", "poisson");
  if (kind == "burst") {
    s.allow({"kind", "n", "at"});
    const long long n = s.integer("n");
    check(n > 0, s, "n", [] { return "'arrival.n' must be positive"; });
    const double at = s.number("at", 0.0);
    check(at >= 0.0, s, "at", [] { return "'arrival.at' must be >= 0"; });
    return ArrivalSpec::burst(static_cast<std::uint64_t>(n), at);
  }
  if (kind != "poisson") s.bad("kind", fmt::format("unknown arrival kind '{}' (poisson, burst)", kind));
  s.allow({"kind", "rate", "count", "horizon"});
  const double rate = s.number("rate");
  check(rate > 0.0 && std::isfinite(rate), s, "rate", [] { return "'arrival.rate' must be positive"; });
  if (s.has("count") == s.has("horizon"))
    fail(s.ctx(), s.self(), s.self_path(), "poisson arrivals need exactly one of 'arrival.count' or 'arrival.horizon'");
  if (s.has("count")) {
    const long long count = s.integer("count");
    check(count > 0, s, "count", [] { return "'arrival.count' must be positive"; });
    return ArrivalSpec::poisson_count(rate, static_cast<std::uint64_t>(count));
  }
  const double horizon = s.number("horizon");
  check(horizon > 0.0 && std::isfinite(horizon), s, "horizon", [] { return "'arrival.horizon' must be positive"; });
  return ArrivalSpec::poisson_horizon(rate, horizon);
}

ServiceDist parse_service(const Section& s) {
  const std::string kind = s.text("kind");
  if (kind == "exponential") {
    s.allow({"kind", "mean"});
    const double mean = s.number("mean");
    check(mean > 0.0 && std::isfinite(mean), s, "mean", [] { return "'service.mean' must be finite and > 0"; });
    return ServiceDist::exponential(mean);
  }
  if (kind == "deterministic") {
    s.allow({"kind", "value"});
    const double value = s.number("value");
    check(value > 0.0 && std::isfinite(value), s, "value", [] { return "'service.value' must be finite and > 0"; });
    return ServiceDist::deterministic(value);
  }
  if (kind == "bounded_pareto") {
    s.allow({"kind", "shape", "lo", "hi"});
    const double shape = s.number("shape"), lo = s.number("lo"), hi = s.number("hi");
    check(shape > 0.0, s, "shape", [] { return "'service.shape' must be > 0"; });
    check(lo > 0.0, s, "lo", [] { return "'service.lo' must be > 0"; });
    check(hi > lo && std::isfinite(hi), s, "hi", [] { return "'service.hi' must be finite and exceed 'service.lo'"; });
    return ServiceDist::bounded_pareto(shape, lo, hi);
  }
  s.bad("kind", fmt::format("unknown service kind '{}' (exponential, deterministic, bounded_pareto)", kind));
}

PredictorModel::Kind parse_predictor_kind(const Section& s, const char* key, const std::string& name) {
  if (name == "perfect") return PredictorModel::Kind::perfect;
  if (name == "exponential_noise") return PredictorModel::Kind::exponential_noise;
  if (name == "binned_synthetic") return PredictorModel::Kind::binned_synthetic;
  if (name == "markov_trajectory") return PredictorModel::Kind::markov_trajectory;
  s.bad(key, fmt::format("unknown predictor '{}' (perfect, exponential_noise, binned_synthetic, markov_trajectory)",
                         name));
}

PredictorModel parse_predictor(const Section& s) {
  const auto kind = parse_predictor_kind(s, "kind", s.text("kind", "perfect"));
  PredictorModel m;
  m.kind = kind;
  if (kind == PredictorModel::Kind::markov_trajectory) {
    s.allow({"kind", "step_noise", "persistence"});
    m.step_noise = s.number("step_noise");
    check(m.step_noise >= 0.0 && std::isfinite(m.step_noise), s, "step_noise",
          [] { return "'predictor.step_noise' must be >= 0"; });
    m.persistence = s.number("persistence", m.persistence);
    check(std::abs(m.persistence) < 1.0, s, "persistence", [] { return "'predictor.persistence' must lie in (-1, 1)"; });
  } else {
    s.allow({"kind"});
  }
  return m;
}

RankPolicy parse_policy(const Section& s) {
  s.allow({"kind", "C", "source", "readout"});
  RankPolicy p;
  try {
    p.kind = parse_policy_kind(s.text("kind", "sprpt"));
  } catch (const std::invalid_argument&) {
    s.bad("kind", fmt::format("unknown policy '{}' (fcfs, spjf, sprpt, sprpt_lp)", s.text("kind")));
  }
  if (p.kind == RankPolicy::Kind::sprpt_lp) {
    p.C = s.number("C");
    check(p.C >= 0.0 && p.C <= 1.0, s, "C", [] { return "'policy.C' must lie in [0, 1]"; });
  } else if (s.has("C")) {
    s.bad("C", "'policy.C' only applies to policy sprpt_lp");
  }
  try {
    p.source = parse_prediction_source(s.text("source", "static"));
  } catch (const std::invalid_argument&) {
    s.bad("source", fmt::format("unknown prediction source '{}' (static, trajectory, belief)", s.text("source")));
  }
  const std::string readout = s.text("readout", "argmax_midpoint");
  if (readout == "argmax_midpoint") {
    p.readout = RankPolicy::Readout::argmax_midpoint;
  } else if (readout == "expectation") {
    p.readout = RankPolicy::Readout::expectation;
  } else {
    s.bad("readout", fmt::format("unknown readout '{}' (argmax_midpoint, expectation)", readout));
  }
  return p;
}

Bins parse_bins(const Section& s) {
  if (!s.present()) return Bins::standard();
  s.allow({"lower", "upper", "count", "boundaries"});
  try {
    if (s.has("boundaries")) {
      if (s.has("lower") || s.has("upper") || s.has("count"))
        s.bad("boundaries", "'bins.boundaries' excludes lower/upper/count");
      return Bins(s.numbers("boundaries"));
    }
    const long long k = s.integer("count", 10);
    check(k >= 1, s, "count", [] { return "'bins.count' must be >= 1"; });
    return Bins::uniform(s.number("lower", 0.0), s.number("upper", 512.0), static_cast<std::size_t>(k));
  } catch (const std::invalid_argument& e) {
    fail(s.ctx(), s.self(), s.self_path(), e.what());
  }
}

ObservationModel parse_observation(const Section& s) {
  s.allow({"concentration", "mislabel_rate"});
  ObservationModel m;
  m.concentration = s.number("concentration", m.concentration);
  check(m.concentration > 0.0, s, "concentration", [] { return "'observation.concentration' must be > 0"; });
  m.mislabel_rate = s.number("mislabel_rate", m.mislabel_rate);
  check(m.mislabel_rate >= 0.0 && m.mislabel_rate < 1.0, s, "mislabel_rate",
        [] { return "'observation.mislabel_rate' must lie in [0, 1)"; });
  return m;
}

RecycledTerm parse_term(const Section& s, const char* key) {
  const std::string name = s.text(key, "own_threshold");
  if (name == "own_threshold") return RecycledTerm::own_threshold;
  if (name == "verbatim") return RecycledTerm::verbatim;
  s.bad(key, fmt::format("unknown recycled term '{}' (own_threshold, verbatim)", name));
}

void check_rates(const Section& s, const char* key, const std::vector<double>& v) {
  for (double r : v) check(r > 0.0 && std::isfinite(r), s, key, [&] { return fmt::format("'{}' entries must be > 0", s.path(key)); });
}

void check_Cs(const Section& s, const char* key, const std::vector<double>& v) {
  for (double c : v)
    check(c >= 0.0 && c <= 1.0, s, key, [&] { return fmt::format("'{}' entries must lie in [0, 1]", s.path(key)); });
}

QuadratureSpec parse_quadrature(const Section& s) {
  s.allow({"scheme", "nodes", "rel_tol", "abs_tol", "tail", "upper", "max_depth"});
  QuadratureSpec q;
  const std::string scheme = s.text("scheme", "adaptive_simpson");
  if (scheme == "adaptive_simpson") {
    q.scheme = QuadratureSpec::Scheme::adaptive_simpson;
  } else if (scheme == "gauss_legendre") {
    q.scheme = QuadratureSpec::Scheme::gauss_legendre;
  } else {
    s.bad("scheme", fmt::format("unknown scheme '{}' (adaptive_simpson, gauss_legendre)", scheme));
  }
  q.nodes = static_cast<int>(s.integer("nodes", q.nodes));
  check(q.nodes >= 2 && q.nodes <= 64, s, "nodes", [] { return "'quadrature.nodes' must lie in [2, 64]"; });
  q.rel_tol = s.number("rel_tol", q.rel_tol);
  check(q.rel_tol > 0.0, s, "rel_tol", [] { return "'quadrature.rel_tol' must be > 0"; });
  q.abs_tol = s.number("abs_tol", q.abs_tol);
  check(q.abs_tol > 0.0, s, "abs_tol", [] { return "'quadrature.abs_tol' must be > 0"; });
  q.tail = s.number("tail", q.tail);
  check(q.tail > 0.0 && q.tail < 1.0, s, "tail", [] { return "'quadrature.tail' must lie in (0, 1)"; });
  if (s.has("upper")) {
    q.upper = s.number("upper");
    check(*q.upper > 0.0 && std::isfinite(*q.upper), s, "upper", [] { return "'quadrature.upper' must be finite and > 0"; });
  }
  q.max_depth = static_cast<int>(s.integer("max_depth", q.max_depth));
  check(q.max_depth >= 1, s, "max_depth", [] { return "'quadrature.max_depth' must be >= 1"; });
  return q;
}

void apply_override(YAML::Node& root, const std::string& item, Context& ctx) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(fmt::format("--set expects key=value, got '{}'", item));
  const std::string path = item.substr(0, eq);
  const std::string value = item.substr(eq + 1);
  std::vector<std::string> parts;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '.');) {
    if (part.empty()) throw ConfigError(fmt::format("--set: malformed key '{}'", path));
    parts.push_back(part);
  }
  YAML::Node parsed;
  try {
    parsed = YAML::Load(value);
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("--set {}: {}", path, e.msg));
  }
  YAML::Node cur = root;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (cur[parts[i]] && !cur[parts[i]].IsMap())
      throw ConfigError(fmt::format("--set {}: '{}' is not a mapping", path, parts[i]));
    YAML::Node next = cur[parts[i]];
    if (!next) {
      cur[parts[i]] = YAML::Node(YAML::NodeType::Map);
      next = cur[parts[i]];
    }
    cur.reset(next);
  }
  cur[parts.back()] = parsed;
  ctx.overridden.insert(path);
}

ExperimentConfig interpret(YAML::Node root, Context& ctx) {
  ExperimentConfig cfg;
  cfg.source = ctx.source;
  if (!root || root.IsNull()) throw ConfigError(fmt::format("{}: empty configuration", ctx.source));
  const Section top(ctx, root, "");
  top.allow({"schema_version", "mode", "seed", "replications", "warmup_fraction", "threads", "arrival", "service",
             "predictor", "policy", "bins", "observation", "batch", "sweep", "quadrature", "validate", "refine",
             "analyze", "output"});
  for (const auto& kv : root) cfg.sections.insert(kv.first.as<std::string>());

  const long long version = top.integer("schema_version");
  if (version != kSchemaVersion)
    top.bad("schema_version", fmt::format("unsupported schema_version {} (expected {})", version, kSchemaVersion));

  SimConfig& sim = cfg.sim;
  const std::string mode = top.text("mode", "continuous");
  if (mode == "continuous") {
    sim.mode = SimMode::continuous;
  } else if (mode == "batch") {
    sim.mode = SimMode::batch;
  } else {
    top.bad("mode", fmt::format("unknown mode '{}' (continuous, batch)", mode));
  }
  const long long seed = top.integer("seed", 1);
  check(seed >= 0, top, "seed", [] { return "'seed' must be >= 0"; });
  sim.seed = static_cast<std::uint64_t>(seed);
  sim.replications = static_cast<int>(top.integer("replications", 1));
  check(sim.replications >= 1, top, "replications", [] { return "'replications' must be >= 1"; });
  sim.warmup_fraction = top.number("warmup_fraction", 0.2);
  check(sim.warmup_fraction >= 0.0 && sim.warmup_fraction < 1.0, top, "warmup_fraction",
        [] { return "'warmup_fraction' must lie in [0, 1)"; });
  const long long threads = top.integer("threads", 0);
  check(threads >= 0, top, "threads", [] { return "'threads' must be >= 0"; });
  cfg.threads = static_cast<unsigned>(threads);

  if (top.has("arrival")) sim.arrival = parse_arrival(top.sub("arrival"));
  if (top.has("service")) sim.service = parse_service(top.sub("service"));

  cfg.bins = parse_bins(top.sub("bins"));
  if (top.has("observation")) sim.observation = parse_observation(top.sub("observation"));
  if (top.has("predictor")) sim.predictor = parse_predictor(top.sub("predictor"));
  sim.predictor.bins = cfg.bins;
  sim.predictor.observation = sim.observation;
  if (top.has("policy")) sim.policy = parse_policy(top.sub("policy"));
  sim.policy.bins = cfg.bins;

  if (sim.policy.source == RankPolicy::Source::trajectory &&
      sim.predictor.kind != PredictorModel::Kind::markov_trajectory)
    top.sub("policy").bad("source", "prediction source 'trajectory' needs predictor markov_trajectory");
  if (sim.policy.source == RankPolicy::Source::belief && sim.predictor.kind != PredictorModel::Kind::binned_synthetic)
    top.sub("policy").bad("source", "prediction source 'belief' needs predictor binned_synthetic");

  if (top.has("batch")) {
    const Section b = top.sub("batch");
    b.allow({"memory_budget", "preemption", "recompute_rate"});
    sim.memory_budget = b.number("memory_budget", kInf);
    check(sim.memory_budget > 0.0, b, "memory_budget", [] { return "'batch.memory_budget' must be > 0"; });
    const std::string pre = b.text("preemption", "hold");
    if (pre == "hold") {
      sim.preemption = PreemptionCost::hold;
    } else if (pre == "discard") {
      sim.preemption = PreemptionCost::discard;
    } else {
      b.bad("preemption", fmt::format("unknown preemption mode '{}' (hold, discard)", pre));
    }
    sim.recompute_rate = b.number("recompute_rate", sim.recompute_rate);
    check(sim.recompute_rate > 0.0 && std::isfinite(sim.recompute_rate), b, "recompute_rate",
          [] { return "'batch.recompute_rate' must be finite and > 0"; });
  }

  if (top.has("sweep")) {
    const Section s = top.sub("sweep");
    s.allow({"rates", "C"});
    cfg.sweep.rates = s.numbers("rates");
    check_rates(s, "rates", cfg.sweep.rates);
    cfg.sweep.Cs = s.numbers("C");
    check_Cs(s, "C", cfg.sweep.Cs);
  }

  if (top.has("quadrature")) cfg.quadrature = parse_quadrature(top.sub("quadrature"));

  if (top.has("validate")) {
    const Section s = top.sub("validate");
    s.allow({"tolerance", "rates", "C", "analytic_predictor", "recycled_term"});
    cfg.validate.tolerance = s.number("tolerance", cfg.validate.tolerance);
    check(cfg.validate.tolerance > 0.0, s, "tolerance", [] { return "'validate.tolerance' must be > 0"; });
    cfg.validate.rates = s.numbers("rates");
    check_rates(s, "rates", cfg.validate.rates);
    cfg.validate.Cs = s.numbers("C");
    check_Cs(s, "C", cfg.validate.Cs);
    if (s.has("analytic_predictor")) {
      PredictorModel m;
      m.kind = parse_predictor_kind(s, "analytic_predictor", s.text("analytic_predictor"));
      cfg.validate.analytic_predictor = m;
    }
    cfg.validate.recycled_term = parse_term(s, "recycled_term");
  }

  if (top.has("refine")) {
    const Section s = top.sub("refine");
    s.allow({"trajectories", "size_mean", "size_min", "size_max"});
    cfg.refine.trajectories = static_cast<int>(s.integer("trajectories", cfg.refine.trajectories));
    check(cfg.refine.trajectories >= 1, s, "trajectories", [] { return "'refine.trajectories' must be >= 1"; });
    cfg.refine.size_mean = s.number("size_mean", cfg.refine.size_mean);
    check(cfg.refine.size_mean > 0.0 && std::isfinite(cfg.refine.size_mean), s, "size_mean",
          [] { return "'refine.size_mean' must be > 0"; });
    cfg.refine.size_min = static_cast<int>(s.integer("size_min", cfg.refine.size_min));
    check(cfg.refine.size_min >= 1, s, "size_min", [] { return "'refine.size_min' must be >= 1"; });
    cfg.refine.size_max = static_cast<int>(s.integer("size_max", cfg.refine.size_max));
    check(cfg.refine.size_max >= cfg.refine.size_min, s, "size_max",
          [] { return "'refine.size_max' must be >= 'refine.size_min'"; });
  }

  if (top.has("analyze")) {
    const Section s = top.sub("analyze");
    s.allow({"rates", "C", "x_grid", "recycled_term"});
    cfg.analyze.rates = s.numbers("rates");
    check_rates(s, "rates", cfg.analyze.rates);
    cfg.analyze.Cs = s.numbers("C");
    check_Cs(s, "C", cfg.analyze.Cs);
    cfg.analyze.x_grid = s.numbers("x_grid");
    for (double x : cfg.analyze.x_grid)
      check(x > 0.0 && std::isfinite(x), s, "x_grid", [] { return "'analyze.x_grid' entries must be > 0"; });
    cfg.analyze.recycled_term = parse_term(s, "recycled_term");
  }

  if (top.has("output")) {
    const Section s = top.sub("output");
    s.allow({"dir", "per_job", "memory_trace"});
    if (s.has("dir")) cfg.output.dir = s.text("dir");
    cfg.output.per_job = s.flag("per_job", true);
    sim.record_memory_trace = s.flag("memory_trace", false);
  }

  try {
    sim.validate();
    cfg.quadrature.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", ctx.source, e.what()));
  }
  return cfg;
}

ExperimentConfig load(const std::function<YAML::Node()>& parse, const std::string& source,
                      const std::vector<std::string>& overrides) {
  Context ctx;
  ctx.source = source;
  YAML::Node root;
  try {
    root = parse();
  } catch (const YAML::BadFile&) {
    throw ConfigError(fmt::format("{}: cannot read configuration file", source));
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("{}:{}:{}: {}", source, e.mark.line + 1, e.mark.column + 1, e.msg));
  }
  if (!root.IsMap() && !overrides.empty() && root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (root && !root.IsNull() && !root.IsMap()) throw ConfigError(fmt::format("{}: top level must be a mapping", source));
  for (const std::string& item : overrides) apply_override(root, item, ctx);
  return interpret(root, ctx);
}

}  // namespace

ExperimentConfig load_config_file(const std::string& path, const std::vector<std::string>& overrides) {
  return load([&] { return YAML::LoadFile(path); }, path, overrides);
}

ExperimentConfig load_config_string(const std::string& text, const std::string& source,
                                    const std::vector<std::string>& overrides) {
  return load([&] { return YAML::Load(text); }, source, overrides);
}

}  // namespace lpsched::cli
