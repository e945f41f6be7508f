// lee-cli: evaluate the dressed V state of a Lee model from a JSON config.
//
// Exit codes: 0 ok, 2 config error, 3 no bound state, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lee/app.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNoBoundState = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lee::app::ConfigError("--config", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string summarize(const lee::RenormReport& r) {
  std::string s = "m_V=" + fmt(r.m_V);
  if (r.m_V0) s += " m_V0=" + fmt(*r.m_V0);
  s += " x=" + fmt(r.x) + " Z_V=" + fmt(r.z_standard) + " Z_V(reg)=" + fmt(r.z_regularized) +
       " regime=" + std::string(lee::to_string(r.regime));
  return s;
}

void validate_oracle(const lee::app::RunConfig& cfg) {
  lee::app::OracleSpec spec = cfg.oracle.value_or(lee::app::OracleSpec{});
  const lee::BareCoupling bare = lee::app::oracle_bare(cfg);
  const double k_max = lee::app::oracle_k_max(cfg);
  const auto n_list = lee::app::oracle_n_list(spec.n);
  const auto rows = lee::convergence_study(cfg.model, bare, n_list, k_max, spec.scheme, cfg.quad);
  std::printf("%8s  %22s  %22s  %12s  %12s\n", "n", "lambda", "apex_weight", "|dm_V|", "|dZ_V|");
  for (const auto& row : rows)
    std::printf("%8d  %22.15f  %22.15f  %12.3e  %12.3e\n", row.n, row.lambda, row.z,
                row.lambda_error, row.z_error);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Lee model V-sector: mass and wavefunction renormalization, ghost regime"};
  std::string config_path;
  std::string out_path;
  std::string format;
  bool oracle = false;
  cli.add_option("--config", config_path, "JSON configuration document")->required();
  cli.add_option("--out", out_path, "output file (overrides output.path)");
  cli.add_option("--format", format, "output format (overrides output.format)")
      ->check(CLI::IsMember({"csv", "json"}));
  cli.add_flag("--validate-oracle", oracle, "compare with the discretized Hamiltonian");
  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  using namespace lee::app;
  RunConfig cfg;
  try {
    cfg = parse_config(read_file(config_path));
    if (!out_path.empty()) cfg.output.path = out_path;
    if (!format.empty()) cfg.output.format = output_format_from_string(format);
    if (!cfg.output.path) throw ConfigError("output.path", "required (or pass --out)");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    Table table;
    std::string summary;
    if (cfg.sweep) {
      table = run_sweep(cfg);
      int errors = 0;
      std::string regimes;
      for (const auto& row : table) {
        if (!row.report) {
          ++errors;
          continue;
        }
        const std::string name(lee::to_string(row.report->regime));
        if (regimes.empty() || regimes.substr(regimes.rfind('>') + 1) != name)
          regimes += (regimes.empty() ? "" : "->") + name;
      }
      summary = "sweep " + cfg.sweep->parameter + ": " + std::to_string(table.size()) + " rows, " +
                std::to_string(errors) + " errors, regimes " + (regimes.empty() ? "-" : regimes);
    } else {
      const auto report = run_point(cfg);
      table.push_back({std::nullopt, report, {}});
      summary = "point: " + summarize(report);
    }
    emit(table, cfg.output.format, *cfg.output.path);
    std::cout << summary << " -> " << *cfg.output.path << "\n";
    if (oracle) validate_oracle(cfg);
  } catch (const lee::NoBoundState& e) {
    std::cerr << "no bound state: " << e.what() << "\n";
    return kExitNoBoundState;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const lee::GhostRegime& e) {
    std::cerr << "oracle skipped: " << e.what() << "\n";
  } catch (const lee::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
