#include "qcap/json_io.hpp"

#include <cmath>

namespace qcap::json {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

json optional_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return field<double>(j, key);
}

Vector vector_from_json(const json& j) {
  const auto re = field<std::vector<double>>(j, "re");
  const auto im = field_or<std::vector<double>>(j, "im", std::vector<double>(re.size(), 0.0));
  if (re.size() != im.size() || re.empty()) bad("'re' and 'im' must be non-empty and of equal length");
  Vector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
  return v;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ir = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j) {
  using Rows = std::vector<std::vector<double>>;
  const auto re = field<Rows>(j, "re");
  if (re.empty() || re.front().empty()) bad("matrix must be non-empty");
  Rows im = j.contains("im") ? field<Rows>(j, "im") : Rows(re.size(), std::vector<double>(re.front().size(), 0.0));
  const std::size_t cols = re.front().size();
  if (im.size() != re.size()) bad("'re' and 'im' row counts differ");
  Matrix m(static_cast<Eigen::Index>(re.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < re.size(); ++r) {
    if (re[r].size() != cols || im[r].size() != cols) bad("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(re[r][c], im[r][c]);
    }
  }
  return m;
}

json to_json(const DensityMatrix& rho) {
  json j = matrix_to_json(rho.matrix());
  j["dim"] = rho.dim();
  return j;
}

DensityMatrix density_from_json(const json& j) {
  Matrix m = matrix_from_json(j);
  if (j.contains("dim") && field<int>(j, "dim") != m.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "'dim' does not match the matrix size");
  }
  return DensityMatrix(std::move(m), Validation::strict);
}

json to_json(const PureState& psi) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < psi.dim(); ++i) {
    re.push_back(psi[i].real());
    im.push_back(psi[i].imag());
  }
  return {{"dim", psi.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

PureState pure_from_json(const json& j) {
  Vector v = vector_from_json(j);
  if (j.contains("dim") && field<int>(j, "dim") != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "'dim' does not match the amplitude count");
  }
  return PureState(std::move(v), Validation::strict);
}

json to_json(const QuantumChannel& channel) {
  json ops = json::array();
  for (const auto& k : channel.kraus()) ops.push_back(matrix_to_json(k));
  return {{"label", channel.label()}, {"dim_in", channel.dim_in()}, {"dim_out", channel.dim_out()}, {"kraus", ops}};
}

ChannelKind kind_from_json(const json& j) {
  const auto name = field<std::string>(j, "kind");
  const auto type = parse_channel_type(name);
  if (!type || *type == ChannelType::custom) throw Error(ErrorCode::InvalidParameter, "unknown channel kind '" + name + "'");
  ChannelKind kind;
  kind.type = *type;
  kind.p = field_or<double>(j, "p", 0.0);
  kind.q = field_or<double>(j, "q", 0.0);
  kind.dim = field_or<int>(j, "dim", 2);
  return kind;
}

QuantumChannel channel_from_json(const json& j) {
  if (!j.is_object()) bad("channel document must be an object");
  if (j.contains("kind")) return make_channel(kind_from_json(j));
  const int din = field<int>(j, "dim_in");
  const int dout = field<int>(j, "dim_out");
  if (!j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty()) bad("'kraus' must be a non-empty array");
  std::vector<Matrix> ops;
  for (const auto& k : j.at("kraus")) {
    Matrix m = matrix_from_json(k);
    if (m.rows() != dout || m.cols() != din) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operator shape must be dim_out x dim_in");
    }
    ops.push_back(std::move(m));
  }
  QuantumChannel ch(din, dout, std::move(ops), field_or<std::string>(j, "label", "custom"));
  const CptpDiagnostics diag = is_cptp(ch);
  if (!diag) throw Error(ErrorCode::InvalidChannel, "channel is not CPTP: " + diag.reason);
  return ch;
}

json to_json(const CapacityReport& r) {
  json j;
  j["channel_label"] = r.channel_label;
  j["chi"] = optional_number(r.chi);
  j["chi_ae"] = optional_number(r.chi_ae);
  j["C_hsw"] = optional_number(r.C_hsw);
  j["Q1"] = optional_number(r.Q1);
  j["Q1_raw"] = optional_number(r.Q1_raw);
  j["C_E"] = optional_number(r.C_E);
  j["P1"] = optional_number(r.P1);
  j["r_star"] = optional_number(r.r_star);
  j["S_min"] = optional_number(r.S_min);
  j["single_letter"] = r.single_letter;
  j["optimizer"] = {{"iterations", r.optimizer.iterations},
                    {"restarts", r.optimizer.restarts},
                    {"achieved_tolerance", r.optimizer.achieved_tolerance}};
  if (r.optimal_ensemble) {
    json members = json::array();
    for (std::size_t k = 0; k < r.optimal_ensemble->size(); ++k) {
      members.push_back({{"weight", r.optimal_ensemble->weights()[k]}, {"state", to_json(r.optimal_ensemble->states()[k])}});
    }
    j["optimal_ensemble"] = std::move(members);
  } else {
    j["optimal_ensemble"] = nullptr;
  }
  if (r.optimal_input) j["optimal_input"] = to_json(*r.optimal_input);
  if (r.certificate) {
    const auto& c = *r.certificate;
    json maxi = json::array();
    for (const auto& m : c.maximizers) maxi.push_back({m.x, m.y, m.z});
    j["certificate"] = {{"sigma_star", {c.sigma_star.x, c.sigma_star.y, c.sigma_star.z}},
                        {"maximizers", maxi},
                        {"weights", c.weights},
                        {"hull_distance", c.hull_distance},
                        {"chi_of_maximizers", c.chi_of_maximizers},
                        {"ok", c.ok}};
    if (c.centred) j["certificate"]["centred"] = *c.centred;
  }
  j["notes"] = r.notes;
  return j;
}

CapacityReport report_from_json(const json& j) {
  CapacityReport r;
  r.channel_label = field_or<std::string>(j, "channel_label", "");
  r.chi = read_optional(j, "chi");
  r.chi_ae = read_optional(j, "chi_ae");
  r.C_hsw = read_optional(j, "C_hsw");
  r.Q1 = read_optional(j, "Q1");
  r.Q1_raw = read_optional(j, "Q1_raw");
  r.C_E = read_optional(j, "C_E");
  r.P1 = read_optional(j, "P1");
  r.r_star = read_optional(j, "r_star");
  r.S_min = read_optional(j, "S_min");
  r.single_letter = field_or<bool>(j, "single_letter", true);
  if (j.contains("optimizer")) {
    const auto& o = j.at("optimizer");
    r.optimizer.iterations = field<int>(o, "iterations");
    r.optimizer.restarts = field<int>(o, "restarts");
    r.optimizer.achieved_tolerance = field<double>(o, "achieved_tolerance");
  }
  r.notes = field_or<std::vector<std::string>>(j, "notes", {});
  return r;
}

json to_json(const ConfusabilityGraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  return {{"labels", g.labels()}, {"edges", edges}};
}

ConfusabilityGraph graph_from_json(const json& j) {
  auto labels = field<std::vector<std::string>>(j, "labels");
  const auto edges = field_or<std::vector<std::vector<int>>>(j, "edges", {});
  ConfusabilityGraph g(std::move(labels));
  for (const auto& e : edges) {
    if (e.size() != 2) bad("edges must be [i, j] pairs");
    g.add_edge(e[0], e[1]);
  }
  return g;
}

json to_json(const ZeroErrorReport& r) {
  return {{"block_length", r.block_length},
          {"K", r.K},
          {"rate", r.rate},
          {"lower_bound", true},
          {"codewords", r.codewords},
          {"hsw_upper", optional_number(r.hsw_upper)}};
}

json to_json(const RepeaterConfig& cfg) {
  return {{"L", cfg.total_length}, {"segments", cfg.segments}, {"L0", cfg.segment_length()},
          {"P0", cfg.P0},          {"eta", cfg.eta},           {"F0", cfg.F0},
          {"c", cfg.c}};
}

RepeaterConfig repeater_config_from_json(const json& j) {
  RepeaterConfig cfg;
  cfg.segments = field_or<int>(j, "segments", 1);
  if (j.contains("L")) {
    cfg.total_length = field<double>(j, "L");
  } else if (j.contains("L0")) {
    cfg.total_length = field<double>(j, "L0") * cfg.segments;
  }
  cfg.P0 = field_or<double>(j, "P0", cfg.P0);
  cfg.eta = field_or<double>(j, "eta", cfg.eta);
  cfg.F0 = field_or<double>(j, "F0", cfg.F0);
  cfg.c = field_or<double>(j, "c", cfg.c);
  cfg.validate();
  return cfg;
}

json to_json(const RateReport& r) {
  return {{"n", r.levels}, {"T0", r.T0}, {"Z_n", r.Z_n}, {"R_n", r.R_n}, {"R_n_approx", r.R_n_approx}};
}

json to_json(const ScheduleEvent& e) {
  json j = {{"round", e.round}, {"action", to_string(e.action)}, {"inputs", e.inputs}, {"success", e.success}};
  j["output"] = optional_number(e.output);
  return j;
}

json summary_to_json(const ScheduleTrace& t) {
  return {{"policy", to_string(t.policy)},
          {"outcome", to_string(t.outcome)},
          {"rounds", t.rounds},
          {"raw_pairs_consumed", t.raw_pairs_consumed},
          {"final_fidelity", t.final_fidelity},
          {"events", t.events.size()},
          {"seed", t.seed}};
}

void write_trace_lines(std::ostream& out, const ScheduleTrace& t) {
  for (const auto& e : t.events) out << to_json(e).dump() << '\n';
}

}  // namespace qcap::json
