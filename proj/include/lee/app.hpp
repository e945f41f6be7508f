#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lee/core.hpp"
#include "lee/oracle.hpp"
#include "lee/quad.hpp"
#include "lee/renorm.hpp"

namespace lee::app {

/// Invalid configuration document. `field()` is the dotted path of the
/// offending key, e.g. "model.mu".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& reason);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

enum class InputMode { Bare, Renormalized };
enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat format);
OutputFormat output_format_from_string(std::string_view name);

struct SweepSpec {
  std::string parameter;  ///< "g0" in bare mode, "g" in renormalized mode
  double start = 0.0;
  double stop = 0.0;
  int steps = 2;

  double value(int index) const;
};

struct OracleSpec {
  int n = 1024;
  std::optional<double> k_max;  ///< default: sharp support, else quad k_max
  GridScheme scheme = GridScheme::GaussLegendreK;
};

struct OutputSpec {
  std::optional<std::string> path;
  OutputFormat format = OutputFormat::Csv;
};

struct RunConfig {
  ModelParams model;
  InputMode mode = InputMode::Bare;
  CouplingInput input = BareCoupling{};
  std::optional<SweepSpec> sweep;
  QuadSpec quad;
  std::optional<OracleSpec> oracle;
  OutputSpec output;
};

/// Parses and validates a JSON configuration document:
///
///   {
///     "model":  {"m_N": 1, "mu": 1, "form_factor": {"kind": "sharp", "lambda": 10}},
///     "input":  {"mode": "bare", "m_V0": 1.8, "g0": 1}
///            |  {"mode": "renormalized", "m_V": 1.5, "g": 2},
///     "sweep":  {"parameter": "g0", "start": 0, "stop": 2, "steps": 9},
///     "quad":   {"panels": 1, "nodes_per_panel": 20, "k_max": 400,
///                "abs_tol": 1e-10, "rel_tol": 1e-10, "max_panels": 16384},
///     "oracle": {"n": 1024, "k_max": 9.95, "scheme": "gauss_legendre" | "uniform"},
///     "output": {"path": "out.csv", "format": "csv" | "json"}
///   }
///
/// Only "input.mode" and the mode's mass are required; couplings default to 0.
RunConfig parse_config(std::string_view text);

/// One output row. `report` is empty when `error` is set.
struct Row {
  std::optional<double> sweep_value;
  std::optional<RenormReport> report;
  std::string error;
};

using Table = std::vector<Row>;

/// Single evaluation; delegates to full_report. Throws NoBoundState.
RenormReport run_point(const RunConfig& config);

/// One row per sweep value, in sweep order. Per-point failures are recorded
/// in the row's error field.
Table run_sweep(const RunConfig& config);

inline constexpr std::string_view kCsvHeader =
    "sweep_value,m_V,m_V0,delta_m,g0_sq,g_sq,x,z_standard,z_regularized,regime,error";

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

/// Writes the table to `path`. Throws IoError.
void emit(const Table& table, OutputFormat format, const std::string& path);

/// Bare coupling for the oracle: the input itself, or its bare image for a
/// Normal-regime renormalized input. Throws GhostRegime otherwise.
BareCoupling oracle_bare(const RunConfig& config);

/// Grid sizes used by --validate-oracle: n/64, n/16, n/4, n (those >= 4).
std::vector<int> oracle_n_list(int n);
double oracle_k_max(const RunConfig& config);

}  // namespace lee::app
