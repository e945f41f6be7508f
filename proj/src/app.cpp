#include "lee/app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

namespace lee::app {

using json = nlohmann::json;

ConfigError::ConfigError(std::string field, const std::string& reason)
    : Error(field + ": " + reason), field_(std::move(field)) {}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

OutputFormat output_format_from_string(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("output.format", "expected \"csv\" or \"json\"");
}

double SweepSpec::value(int index) const {
  if (index == steps - 1) return stop;
  return start + (stop - start) * static_cast<double>(index) / static_cast<double>(steps - 1);
}

namespace {

class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool has(const char* key) const {
    seen_.insert(key);
    return node_.contains(key);
  }

  double number(const char* key, std::optional<double> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(field(key), "required");
    }
    const json& v = node_.at(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field(key), "must be finite");
    return d;
  }

  int integer(const char* key, int fallback) const {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key), "expected an integer");
    return v.get<int>();
  }

  std::string string(const char* key, std::optional<std::string> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(field(key), "required");
    }
    const json& v = node_.at(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    return v.get<std::string>();
  }

  Section child(const char* key) const {
    seen_.insert(key);
    return Section(node_.at(key), field(key));
  }

  void reject_unknown() const {
    for (const auto& [key, _] : node_.items())
      if (!seen_.count(key)) throw ConfigError(field(key), "unknown key");
  }

 private:
  const json& node_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

ModelParams parse_model(const Section& s) {
  ModelParams m;
  m.m_N = s.number("m_N", 1.0);
  m.mu = s.number("mu", 1.0);
  if (!(m.mu > 0.0)) throw ConfigError(s.field("mu"), "must be positive");
  if (s.has("form_factor")) {
    const Section ff = s.child("form_factor");
    const std::string kind = ff.string("kind", "sharp");
    try {
      m.form_factor.kind = form_factor_kind_from_string(kind);
    } catch (const DomainError&) {
      throw ConfigError(ff.field("kind"), "expected sharp, exponential or dipole");
    }
    m.form_factor.cutoff = ff.number("lambda", 10.0);
    if (!(m.form_factor.cutoff > 0.0)) throw ConfigError(ff.field("lambda"), "must be positive");
    if (m.form_factor.kind == FormFactorKind::Sharp && m.form_factor.cutoff < m.mu)
      throw ConfigError(ff.field("lambda"), "sharp cutoff must be >= mu");
    ff.reject_unknown();
  }
  s.reject_unknown();
  return m;
}

QuadSpec parse_quad(const Section& s) {
  QuadSpec q;
  q.panels = s.integer("panels", q.panels);
  if (q.panels < 1) throw ConfigError(s.field("panels"), "must be >= 1");
  q.nodes_per_panel = s.integer("nodes_per_panel", q.nodes_per_panel);
  if (q.nodes_per_panel < 2) throw ConfigError(s.field("nodes_per_panel"), "must be >= 2");
  if (s.has("k_max")) {
    q.k_max = s.number("k_max");
    if (!(*q.k_max > 0.0)) throw ConfigError(s.field("k_max"), "must be positive");
  }
  q.abs_tol = s.number("abs_tol", q.abs_tol);
  if (!(q.abs_tol > 0.0)) throw ConfigError(s.field("abs_tol"), "must be positive");
  q.rel_tol = s.number("rel_tol", q.rel_tol);
  if (!(q.rel_tol > 0.0)) throw ConfigError(s.field("rel_tol"), "must be positive");
  q.max_panels = s.integer("max_panels", q.max_panels);
  if (q.max_panels < q.panels) throw ConfigError(s.field("max_panels"), "must be >= panels");
  s.reject_unknown();
  return q;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  const Section root(doc, "");
  RunConfig cfg;

  if (root.has("model")) cfg.model = parse_model(root.child("model"));
  if (root.has("quad")) cfg.quad = parse_quad(root.child("quad"));

  if (!root.has("input")) throw ConfigError("input", "required");
  const Section in = root.child("input");
  const std::string mode = in.string("mode");
  if (mode == "bare") {
    cfg.mode = InputMode::Bare;
    const double g0 = in.number("g0", 0.0);
    if (g0 < 0.0) throw ConfigError(in.field("g0"), "must be nonnegative");
    cfg.input = BareCoupling{in.number("m_V0"), g0};
  } else if (mode == "renormalized") {
    cfg.mode = InputMode::Renormalized;
    const double m_V = in.number("m_V");
    if (!(m_V - cfg.model.m_N < cfg.model.mu))
      throw ConfigError(in.field("m_V"), "must lie below the N+theta threshold m_N + mu");
    const double g = in.number("g", 0.0);
    if (g < 0.0) throw ConfigError(in.field("g"), "must be nonnegative");
    cfg.input = RenCoupling{m_V, g};
  } else {
    throw ConfigError(in.field("mode"), "expected \"bare\" or \"renormalized\"");
  }
  in.reject_unknown();

  if (root.has("sweep")) {
    const Section sw = root.child("sweep");
    SweepSpec spec;
    spec.parameter = sw.string("parameter");
    const char* expected = cfg.mode == InputMode::Bare ? "g0" : "g";
    if (spec.parameter != expected)
      throw ConfigError(sw.field("parameter"),
                        std::string("must be \"") + expected + "\" for " + mode + " input");
    spec.start = sw.number("start");
    spec.stop = sw.number("stop");
    if (spec.start < 0.0) throw ConfigError(sw.field("start"), "must be nonnegative");
    if (!(spec.start < spec.stop)) throw ConfigError(sw.field("stop"), "must exceed start");
    spec.steps = sw.integer("steps", 0);
    if (spec.steps < 2) throw ConfigError(sw.field("steps"), "must be >= 2");
    sw.reject_unknown();
    cfg.sweep = spec;
  }

  if (root.has("oracle")) {
    const Section o = root.child("oracle");
    OracleSpec spec;
    spec.n = o.integer("n", spec.n);
    if (spec.n < 1) throw ConfigError(o.field("n"), "must be >= 1");
    if (o.has("k_max")) {
      spec.k_max = o.number("k_max");
      if (!(*spec.k_max > 0.0)) throw ConfigError(o.field("k_max"), "must be positive");
    }
    const std::string scheme = o.string("scheme", "gauss_legendre");
    if (scheme == "gauss_legendre") spec.scheme = GridScheme::GaussLegendreK;
    else if (scheme == "uniform") spec.scheme = GridScheme::UniformK;
    else throw ConfigError(o.field("scheme"), "expected \"gauss_legendre\" or \"uniform\"");
    o.reject_unknown();
    cfg.oracle = spec;
  }

  if (root.has("output")) {
    const Section out = root.child("output");
    if (out.has("path")) cfg.output.path = out.string("path");
    cfg.output.format = output_format_from_string(out.string("format", "csv"));
    out.reject_unknown();
  }
  root.reject_unknown();
  return cfg;
}

RenormReport run_point(const RunConfig& config) {
  return full_report(config.model, config.input, config.quad);
}

Table run_sweep(const RunConfig& config) {
  if (!config.sweep) throw ConfigError("sweep", "required for a sweep run");
  const SweepSpec& sw = *config.sweep;
  Table table(static_cast<std::size_t>(sw.steps));
  for (int i = 0; i < sw.steps; ++i) {
    Row& row = table[static_cast<std::size_t>(i)];
    const double v = sw.value(i);
    row.sweep_value = v;
    CouplingInput input = config.input;
    if (auto* bare = std::get_if<BareCoupling>(&input)) bare->g0 = v;
    else std::get<RenCoupling>(input).g = v;
    try {
      row.report = full_report(config.model, input, config.quad);
    } catch (const Error& e) {
      row.error = e.what();
    }
  }
  return table;
}

namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const Row& row : table) {
    out += number(row.sweep_value);
    if (const auto& r = row.report) {
      for (const std::string& cell :
           {number(r->m_V), number(r->m_V0), number(r->delta_m), number(r->g0_sq), number(r->g_sq),
            number(r->x), number(r->z_standard), number(r->z_regularized),
            std::string(to_string(r->regime))})
        out += "," + cell;
    } else {
      out += ",,,,,,,,,";
    }
    out += "," + csv_escape(row.error) + "\n";
  }
  return out;
}

std::string to_json(const Table& table) {
  using ojson = nlohmann::ordered_json;
  ojson arr = ojson::array();
  for (const Row& row : table) {
    ojson obj = ojson::object();
    obj["sweep_value"] = optional_json(row.sweep_value);
    const auto& r = row.report;
    obj["m_V"] = r ? ojson(r->m_V) : ojson(nullptr);
    obj["m_V0"] = r ? optional_json(r->m_V0) : ojson(nullptr);
    obj["delta_m"] = r ? optional_json(r->delta_m) : ojson(nullptr);
    obj["g0_sq"] = r ? optional_json(r->g0_sq) : ojson(nullptr);
    obj["g_sq"] = r ? ojson(r->g_sq) : ojson(nullptr);
    obj["x"] = r ? ojson(r->x) : ojson(nullptr);
    obj["z_standard"] = r ? ojson(r->z_standard) : ojson(nullptr);
    obj["z_regularized"] = r ? ojson(r->z_regularized) : ojson(nullptr);
    obj["regime"] = r ? ojson(std::string(to_string(r->regime))) : ojson(nullptr);
    obj["error"] = row.error;
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

void emit(const Table& table, OutputFormat format, const std::string& path) {
  const std::string text = format == OutputFormat::Csv ? to_csv(table) : to_json(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

BareCoupling oracle_bare(const RunConfig& config) {
  if (const auto* bare = std::get_if<BareCoupling>(&config.input)) return *bare;
  return bare_from_renormalized(config.model, std::get<RenCoupling>(config.input), config.quad);
}

std::vector<int> oracle_n_list(int n) {
  std::vector<int> out;
  for (int div : {64, 16, 4, 1})
    if (n / div >= 4 && (out.empty() || n / div > out.back())) out.push_back(n / div);
  if (out.empty()) out.push_back(n);
  return out;
}

double oracle_k_max(const RunConfig& config) {
  if (config.oracle && config.oracle->k_max) return *config.oracle->k_max;
  return integration_limit(config.model, config.quad);
}

}  // namespace lee::app
