#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qcap/capacity.hpp"
#include "qcap/json_io.hpp"
#include "qcap/repeater.hpp"
#include "qcap/zero_error.hpp"

namespace qcap::cli {

namespace {

using nlohmann::json;
namespace io = qcap::json;

// Invalid user input (exit 2) that is not a library error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string cell(const std::optional<double>& v) { return v ? num(*v) : ""; }

std::vector<double> parse_sweep(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw UsageError("bad number");
    } catch (const std::exception&) {
      throw UsageError("--sweep expects start:end:step, got '" + spec + "'");
    }
  }
  if (parts.size() != 3) throw UsageError("--sweep expects start:end:step, got '" + spec + "'");
  const double start = parts[0], end = parts[1], step = parts[2];
  if (!(step > 0.0) || !(start <= end)) throw UsageError("--sweep needs start <= end and step > 0");
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double v = start + static_cast<double>(k) * step;
    if (v > end + 1e-9 * step) break;
    grid.push_back(std::min(v, end));
    if (grid.size() > 100000) throw UsageError("--sweep grid too large");
  }
  return grid;
}

// Meters, or kilometers with a "km" suffix.
double parse_length(const std::string& text) {
  std::string body = text;
  double scale = 1.0;
  if (body.size() > 2 && body.substr(body.size() - 2) == "km") {
    body.resize(body.size() - 2);
    scale = 1000.0;
  } else if (body.size() > 1 && body.back() == 'm') {
    body.pop_back();
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(body, &used);
    if (used != body.size() || !(v > 0.0)) throw UsageError("bad length");
    return v * scale;
  } catch (const std::exception&) {
    throw UsageError("invalid length '" + text + "'");
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

struct Output {
  std::string format = "csv";
  std::string path;

  void emit(const std::string& text, std::ostream& out) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + path + "'");
    file << text;
  }
};

void add_output_options(CLI::App* sub, Output& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.path, "Write output to a file instead of stdout");
}

struct ChannelOptions {
  std::string kind;
  double p = 0.0;
  double gamma = 0.0;
  double q = 0.0;
  int dim = 2;
  std::string channel_file;
  CLI::Option* p_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;

  void add(CLI::App* sub) {
    auto* kind_opt = sub->add_option("--kind", kind, "Channel family");
    p_opt = sub->add_option("--p", p, "Primary channel parameter");
    gamma_opt = sub->add_option("--gamma", gamma, "Amplitude damping rate (p = 1 - gamma)");
    auto* q_opt = sub->add_option("--q", q, "Secondary parameter (phase erasure)");
    auto* dim_opt = sub->add_option("--dim", dim, "Input dimension for identity and erasure families");
    sub->add_option("--channel-file", channel_file, "Channel JSON (Kraus form or kind/p)")
        ->excludes(kind_opt)
        ->excludes(p_opt)
        ->excludes(gamma_opt)
        ->excludes(q_opt)
        ->excludes(dim_opt);
  }

  bool from_file() const { return !channel_file.empty(); }
  bool uses_gamma() const { return gamma_opt->count() > 0; }

  ChannelKind kind_at(std::optional<double> param) const {
    const auto type = parse_channel_type(kind);
    if (kind.empty()) throw UsageError("--kind or --channel-file is required");
    if (!type || *type == ChannelType::custom) throw UsageError("unknown channel kind '" + kind + "'");
    if (uses_gamma() && *type != ChannelType::amplitude_damping) {
      throw UsageError("--gamma applies to amplitude_damping only");
    }
    if (uses_gamma() && p_opt->count() > 0) throw UsageError("give either --p or --gamma");
    ChannelKind k;
    k.type = *type;
    k.q = q;
    k.dim = dim;
    const double value = param.value_or(uses_gamma() ? gamma : p);
    k.p = uses_gamma() ? 1.0 - value : value;
    return k;
  }

  double base_param() const { return uses_gamma() ? gamma : p; }

  QuantumChannel load_file() const { return io::channel_from_json(load_json_file(channel_file)); }
};

struct SolverOptions {
  std::uint64_t seed = 0;
  int restarts = 32;
  int max_inputs = 4;
  double tolerance = 1e-6;

  void add(CLI::App* sub) {
    sub->add_option("--seed", seed, "Optimizer seed");
    sub->add_option("--restarts", restarts, "Random restarts per solver");
    sub->add_option("--max-inputs", max_inputs, "Pure states per ensemble");
    sub->add_option("--tolerance", tolerance, "Target accuracy in bits");
  }

  OptimizerConfig config() const {
    OptimizerConfig c;
    c.seed = seed;
    c.restarts = restarts;
    c.max_inputs = max_inputs;
    c.tolerance = tolerance;
    c.validate();
    return c;
  }
};

// ---------------------------------------------------------------------------
// channel-inspect

std::string inspect(const QuantumChannel& ch, const Output& o) {
  const CptpDiagnostics diag = is_cptp(ch);
  std::optional<std::string> degradable, eb;
  std::optional<bool> unital;
  if (ch.has_kraus()) {
    unital = is_unital(ch);
    if (diag.cptp) {
      degradable = std::string(to_string(is_degradable(ch).verdict));
      try {
        eb = is_entanglement_breaking(ch) ? "true" : "false";
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Unsupported) throw;
      }
    }
  }
  if (o.format == "json") {
    json j = {{"label", ch.label()},
              {"dim_in", ch.dim_in()},
              {"dim_out", ch.dim_out()},
              {"kraus_count", ch.kraus().size()},
              {"cptp", diag.cptp},
              {"completeness_error", std::isfinite(diag.completeness_error) ? json(diag.completeness_error) : json(nullptr)},
              {"choi_min_eigenvalue", diag.choi_min_eigenvalue},
              {"reason", diag.reason}};
    j["unital"] = unital ? json(*unital) : json(nullptr);
    j["degradable"] = degradable ? json(*degradable) : json(nullptr);
    j["entanglement_breaking"] = eb ? json(*eb) : json(nullptr);
    if (ch.dim_in() == 2 && ch.dim_out() == 2) {
      const AffineMap a = affine_representation(ch);
      json rows = json::array();
      for (int r = 0; r < 3; ++r) rows.push_back({a.A(r, 0), a.A(r, 1), a.A(r, 2)});
      j["affine"] = {{"A", rows}, {"b", {a.b.x(), a.b.y(), a.b.z()}}};
    }
    if (ch.has_kraus()) j["channel"] = io::to_json(ch);
    return j.dump(2) + "\n";
  }
  std::ostringstream s;
  s << "label,dim_in,dim_out,kraus_count,cptp,unital,degradable,entanglement_breaking\n";
  s << ch.label() << ',' << ch.dim_in() << ',' << ch.dim_out() << ',' << ch.kraus().size() << ','
    << (diag.cptp ? "true" : "false") << ',' << (unital ? (*unital ? "true" : "false") : "") << ','
    << degradable.value_or("") << ',' << eb.value_or("") << '\n';
  return s.str();
}

// ---------------------------------------------------------------------------
// capacity

const std::vector<std::string> kMeasures = {"hsw", "hsw-geo", "qcap", "ea", "private", "minent", "analytic", "all"};

CapacityReport measure_one(const QuantumChannel& ch, const std::optional<ChannelKind>& kind, const std::string& m,
                           const OptimizerConfig& cfg) {
  if (m == "hsw") return hsw_numeric(ch, cfg);
  if (m == "hsw-geo") return hsw_geometric(ch, cfg);
  if (m == "qcap") return quantum_capacity_single_use(ch, cfg);
  if (m == "ea") return entanglement_assisted(ch, cfg);
  if (m == "private") return private_information(ch, cfg);
  if (m == "minent") {
    const MinOutputEntropy s = min_output_entropy(ch, cfg);
    CapacityReport r;
    r.channel_label = ch.label();
    r.S_min = s.value.value;
    r.optimizer = s.stats;
    return r;
  }
  if (m == "analytic") {
    if (!kind) throw UsageError("--measure analytic needs --kind");
    return analytic_capacity(*kind);
  }
  // all: every solver that accepts this channel
  CapacityReport r = hsw_numeric(ch, cfg);
  const bool qubit = ch.dim_in() == 2 && ch.dim_out() == 2;
  if (qubit) r.merge(hsw_geometric(ch, cfg));
  r.merge(quantum_capacity_single_use(ch, cfg));
  if (ch.dim_in() <= 4 && ch.dim_out() <= 16) {
    r.merge(entanglement_assisted(ch, cfg));
    r.merge(private_information(ch, cfg));
  }
  r.merge(measure_one(ch, kind, "minent", cfg));
  return r;
}

int run_capacity(const ChannelOptions& co, const std::string& sweep, const std::string& measure,
                 const SolverOptions& so, const Output& o, std::ostream& out) {
  const OptimizerConfig cfg = so.config();
  std::vector<std::string> measures;
  {
    std::stringstream ss(measure);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (std::find(kMeasures.begin(), kMeasures.end(), item) == kMeasures.end()) {
        throw UsageError("unknown measure '" + item + "'");
      }
      measures.push_back(item);
    }
    if (measures.empty()) throw UsageError("--measure is empty");
  }

  struct Row {
    std::string kind;
    std::optional<double> param;
    CapacityReport report;
  };
  std::vector<Row> rows;
  auto run_channel = [&](const QuantumChannel& ch, const std::optional<ChannelKind>& kind, std::string label,
                         std::optional<double> param) {
    CapacityReport merged;
    for (const auto& m : measures) merged.merge(measure_one(ch, kind, m, cfg));
    if (merged.channel_label.empty()) merged.channel_label = ch.label();
    rows.push_back({std::move(label), param, std::move(merged)});
  };

  if (co.from_file()) {
    if (!sweep.empty()) throw UsageError("--sweep cannot be combined with --channel-file");
    const QuantumChannel ch = co.load_file();
    run_channel(ch, std::nullopt, ch.label(), std::nullopt);
  } else {
    const std::vector<double> grid = sweep.empty() ? std::vector<double>{co.base_param()} : parse_sweep(sweep);
    for (double v : grid) {
      const ChannelKind kind = co.kind_at(v);
      const bool analytic_only = measures.size() == 1 && measures.front() == "analytic";
      if (analytic_only) {
        CapacityReport r = analytic_capacity(kind);
        rows.push_back({co.kind, v, std::move(r)});
      } else {
        run_channel(make_channel(kind), kind, co.kind, v);
      }
    }
  }

  std::ostringstream s;
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"kind", r.kind}, {"param", r.param ? json(*r.param) : json(nullptr)}, {"report", io::to_json(r.report)}});
    }
    s << arr.dump(2) << '\n';
  } else {
    s << "kind,param,chi,C_hsw,Q1,C_E,P1,r_star,S_min\n";
    for (const auto& r : rows) {
      const auto& c = r.report;
      s << r.kind << ',' << cell(r.param) << ',' << cell(c.chi) << ',' << cell(c.C_hsw) << ',' << cell(c.Q1) << ','
        << cell(c.C_E) << ',' << cell(c.P1) << ',' << cell(c.r_star) << ',' << cell(c.S_min) << '\n';
    }
  }
  o.emit(s.str(), out);
  return 0;
}

// ---------------------------------------------------------------------------
// zero-error

int run_zero_error(const ChannelOptions& co, const std::string& graph, int uses, const SolverOptions& so,
                   const Output& o, std::ostream& out) {
  if (uses < 1) throw UsageError("--uses must be at least 1");
  std::optional<ConfusabilityGraph> g;
  std::optional<double> hsw;
  if (!graph.empty()) {
    g = graph == "pentagon" ? pentagon_graph() : io::graph_from_json(load_json_file(graph));
  } else if (co.from_file() || !co.kind.empty()) {
    const QuantumChannel ch = co.from_file() ? co.load_file() : make_channel(co.kind_at(std::nullopt));
    if (ch.dim_in() != 2) throw UsageError("channel-derived graphs use qubit Pauli eigenstates; qubit input required");
    std::vector<std::string> labels;
    std::vector<DensityMatrix> states;
    for (auto& [label, rho] : pauli_eigenstates()) {
      labels.push_back(label);
      states.push_back(rho);
    }
    g = confusability_graph(ch, states, labels);
    hsw = hsw_numeric(ch, so.config()).C_hsw;
  } else {
    throw UsageError("give --graph or a channel (--kind / --channel-file)");
  }

  std::vector<ZeroErrorReport> reports;
  for (int n = 1; n <= uses; ++n) {
    ZeroErrorReport r = zero_error_lower_bound(*g, n);
    r.hsw_upper = hsw;
    reports.push_back(std::move(r));
  }
  std::ostringstream s;
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(io::to_json(r));
    s << json{{"graph", io::to_json(*g)}, {"reports", arr}}.dump(2) << '\n';
  } else {
    s << "n,K,rate,hsw_upper\n";
    for (const auto& r : reports) s << r.block_length << ',' << r.K << ',' << num(r.rate) << ',' << cell(r.hsw_upper) << '\n';
  }
  o.emit(s.str(), out);
  return 0;
}

// ---------------------------------------------------------------------------
// repeater

struct RepeaterOptions {
  int segments = 1;
  std::string l0 = "20km";
  double p0 = 1.0;
  double eta = 0.0;
  double f0 = 0.9;
  CLI::Option* p0_opt = nullptr;
  CLI::Option* eta_opt = nullptr;

  void add(CLI::App* sub) {
    sub->add_option("--segments", segments, "Number of elementary links (power of two)");
    sub->add_option("--l0", l0, "Segment length, meters or with a km suffix");
    p0_opt = sub->add_option("--p0", p0, "Per-attempt link success probability");
    eta_opt = sub->add_option("--eta", eta, "Photon loss fraction; sets P0 from F0 when --p0 is absent");
    sub->add_option("--f0", f0, "Raw pair fidelity");
  }

  RepeaterConfig config(std::optional<double> p0_override = std::nullopt) const {
    RepeaterConfig c;
    c.segments = segments;
    c.total_length = parse_length(l0) * segments;
    c.F0 = f0;
    c.eta = eta_opt->count() ? eta : 0.0;
    if (p0_override) {
      c.P0 = *p0_override;
    } else if (p0_opt->count() == 0 && eta_opt->count() > 0) {
      c.P0 = link_success_probability(f0, eta);
    } else {
      c.P0 = p0;
    }
    c.validate();
    return c;
  }
};

int run_repeater_rate(const RepeaterOptions& ro, const std::string& sweep, int trials, std::uint64_t seed,
                      const Output& o, std::ostream& out) {
  if (trials < 0) throw UsageError("--trials must be non-negative");
  std::vector<RepeaterConfig> configs;
  if (sweep.empty()) {
    configs.push_back(ro.config());
  } else {
    for (double p0 : parse_sweep(sweep)) configs.push_back(ro.config(p0));
  }
  std::ostringstream s;
  json arr = json::array();
  if (o.format == "csv") s << "F0,P0,n,T0,Z_n,R_n,R_approx" << (trials > 0 ? ",Z_mc" : "") << '\n';
  for (const auto& c : configs) {
    const RateReport r = generation_rate(c);
    std::optional<double> mc;
    if (trials > 0) mc = monte_carlo_rounds(r.levels, c.P0, trials, seed);
    if (o.format == "json") {
      json j = io::to_json(r);
      j["config"] = io::to_json(c);
      if (mc) j["Z_mc"] = *mc;
      arr.push_back(std::move(j));
    } else {
      s << num(c.F0) << ',' << num(c.P0) << ',' << r.levels << ',' << num(r.T0) << ',' << num(r.Z_n) << ','
        << num(r.R_n) << ',' << num(r.R_n_approx);
      if (mc) s << ',' << num(*mc);
      s << '\n';
    }
  }
  if (o.format == "json") s << arr.dump(2) << '\n';
  o.emit(s.str(), out);
  return 0;
}

struct SimOptions {
  std::string policy = "symmetric";
  double target = 0.99;
  int trials = 1;
  std::uint64_t seed = 0;
  bool forced = false;
  int max_level = 0;
  int max_rounds = 100000;
  int bands = 8;
  std::string trace_path;
};

int run_repeater_sim(const RepeaterOptions& ro, const SimOptions& so, const Output& o, std::ostream& out) {
  const auto policy = parse_policy(so.policy);
  if (!policy) throw UsageError("unknown policy '" + so.policy + "'");
  if (so.trials < 1) throw UsageError("--trials must be at least 1");
  const RepeaterConfig cfg = ro.config();
  ScheduleOptions opts;
  opts.forced_success = so.forced;
  opts.max_rounds = so.max_rounds;
  opts.bands = so.bands;
  if (so.max_level > 0) opts.max_level = so.max_level;

  std::vector<ScheduleTrace> traces;
  for (int t = 0; t < so.trials; ++t) {
    traces.push_back(simulate_schedule(*policy, so.target, cfg, so.seed + static_cast<std::uint64_t>(t), opts));
  }
  if (!so.trace_path.empty()) {
    std::ofstream file(so.trace_path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + so.trace_path + "'");
    for (const auto& t : traces) io::write_trace_lines(file, t);
  }
  std::ostringstream s;
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& t : traces) arr.push_back(io::summary_to_json(t));
    s << arr.dump(2) << '\n';
  } else {
    s << "policy,seed,outcome,rounds,raw_pairs_consumed,final_fidelity\n";
    for (const auto& t : traces) {
      s << to_string(t.policy) << ',' << t.seed << ',' << to_string(t.outcome) << ',' << t.rounds << ','
        << t.raw_pairs_consumed << ',' << num(t.final_fidelity) << '\n';
    }
  }
  o.emit(s.str(), out);
  return 0;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooLarge:
    case ErrorCode::Unsupported:
    case ErrorCode::Divergent:
    case ErrorCode::InfiniteDivergence:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum channel capacities, zero-error codes and repeater rates", "qcap"};
  app.require_subcommand(1);

  Output o_inspect, o_cap, o_zero, o_rate, o_sim;
  ChannelOptions ch_inspect, ch_cap, ch_zero;
  SolverOptions s_cap, s_zero;
  RepeaterOptions r_rate, r_sim;
  std::string sweep, measure = "hsw", graph, rate_sweep;
  int uses = 1, rate_trials = 0;
  std::uint64_t rate_seed = 0;
  SimOptions sim;

  auto* inspect_cmd = app.add_subcommand("channel-inspect", "CPTP, unitality, degradability and Bloch map of a channel");
  ch_inspect.add(inspect_cmd);
  add_output_options(inspect_cmd, o_inspect);

  auto* cap_cmd = app.add_subcommand("capacity", "Single-letter capacities, optionally over a parameter sweep");
  ch_cap.add(cap_cmd);
  s_cap.add(cap_cmd);
  cap_cmd->add_option("--sweep", sweep, "Parameter grid start:end:step");
  cap_cmd->add_option("--measure", measure, "hsw, hsw-geo, qcap, ea, private, minent, analytic or all (comma list)");
  add_output_options(cap_cmd, o_cap);

  auto* zero_cmd = app.add_subcommand("zero-error", "Zero-error rates from confusability graphs");
  ch_zero.add(zero_cmd);
  s_zero.add(zero_cmd);
  zero_cmd->add_option("--graph", graph, "'pentagon' or a graph JSON file");
  zero_cmd->add_option("--uses", uses, "Largest block length");
  add_output_options(zero_cmd, o_zero);

  auto* rate_cmd = app.add_subcommand("repeater-rate", "Expected rounds and entanglement generation rate");
  r_rate.add(rate_cmd);
  rate_cmd->add_option("--sweep", rate_sweep, "P0 grid start:end:step");
  rate_cmd->add_option("--trials", rate_trials, "Monte Carlo trials for a sampled Z_n column");
  rate_cmd->add_option("--seed", rate_seed, "Monte Carlo seed");
  add_output_options(rate_cmd, o_rate);

  auto* sim_cmd = app.add_subcommand("repeater-sim", "Monte Carlo purification scheduling");
  r_sim.add(sim_cmd);
  sim_cmd->add_option("--policy", sim.policy, "symmetric, pumping, greedy or banded");
  sim_cmd->add_option("--target", sim.target, "Target fidelity");
  sim_cmd->add_option("--trials", sim.trials, "Independent runs (seeds seed, seed+1, ...)");
  sim_cmd->add_option("--seed", sim.seed, "Base seed");
  sim_cmd->add_flag("--forced", sim.forced, "Every generation and purification succeeds");
  sim_cmd->add_option("--max-level", sim.max_level, "Symmetric policy: stop at this purification level");
  sim_cmd->add_option("--max-rounds", sim.max_rounds, "Round cap");
  sim_cmd->add_option("--bands", sim.bands, "Banded policy: number of fidelity bands");
  sim_cmd->add_option("--trace", sim.trace_path, "Write events as JSON lines");
  add_output_options(sim_cmd, o_sim);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*inspect_cmd) {
      const QuantumChannel ch =
          ch_inspect.from_file() ? ch_inspect.load_file() : make_channel(ch_inspect.kind_at(std::nullopt));
      o_inspect.emit(inspect(ch, o_inspect), out);
      return 0;
    }
    if (*cap_cmd) return run_capacity(ch_cap, sweep, measure, s_cap, o_cap, out);
    if (*zero_cmd) return run_zero_error(ch_zero, graph, uses, s_zero, o_zero, out);
    if (*rate_cmd) return run_repeater_rate(r_rate, rate_sweep, rate_trials, rate_seed, o_rate, out);
    if (*sim_cmd) return run_repeater_sim(r_sim, sim, o_sim, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return 2;
}

}  // namespace qcap::cli
