// tqkd: command-line driver for the thermal-state QKD simulator.
//
//   tqkd simulate       Monte Carlo run, Shannon summary with bootstrap errors
//   tqkd sweep-eve      Shannon (simulated) and von Neumann rows over Eve's t^2
//   tqkd sweep-variance uncertainty-method and covariance-method MI over V
//   tqkd offset         Pearson r between two parties' streams vs. offset
//   tqkd rerun          repeat a run from its manifest
//
// Exit status: 0 success, 1 runtime error, 2 usage error.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "report.hpp"
#include "tqkd/tqkd.h"

namespace {

using nlohmann::json;
using tqkd::report::fmt9;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr std::uint64_t kBootstrapSalt = 0xB5AD4ECEDA1CE2A9ULL;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Params {
  double mean_photon = 200.0;
  double eve_t2 = 0.5;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 7;
  std::string measurement = "photon";
  std::string sweep;
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
  std::size_t resamples = 100;
  std::size_t max_offset = 10;
  std::string pair = "AB";
  bool self = false;

  json to_json() const {
    return {{"mean_photon", mean_photon}, {"eve_t2", eve_t2},       {"trials", trials},
            {"seed", seed},               {"measurement", measurement}, {"sweep", sweep},
            {"format", format},           {"threads", threads},     {"resamples", resamples},
            {"max_offset", max_offset},   {"pair", pair},           {"self", self}};
  }

  static Params from_json(const json& j) {
    Params p;
    p.mean_photon = j.at("mean_photon").get<double>();
    p.eve_t2 = j.at("eve_t2").get<double>();
    p.trials = j.at("trials").get<std::uint64_t>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.measurement = j.at("measurement").get<std::string>();
    p.sweep = j.at("sweep").get<std::string>();
    p.format = j.at("format").get<std::string>();
    p.threads = j.at("threads").get<unsigned>();
    p.resamples = j.at("resamples").get<std::size_t>();
    p.max_offset = j.at("max_offset").get<std::size_t>();
    p.pair = j.at("pair").get<std::string>();
    p.self = j.at("self").get<bool>();
    return p;
  }
};

struct Output {
  std::string body;
  std::vector<std::pair<std::string, std::string>> extras;  // (suffix, content)
};

void check(tqkd_status status) {
  if (status != TQKD_OK) {
    throw RuntimeError(std::string(tqkd_status_string(status)) + ": " + tqkd_last_error());
  }
}

struct EnsembleDeleter {
  void operator()(tqkd_ensemble* e) const { tqkd_ensemble_free(e); }
};
using Ensemble = std::unique_ptr<tqkd_ensemble, EnsembleDeleter>;

Ensemble run_ensemble(const Params& p, double eve_t2) {
  tqkd_run_params rp{};
  rp.mean_photon = p.mean_photon;
  rp.eve_t2 = eve_t2;
  rp.trials = p.trials;
  rp.seed = p.seed;
  rp.model = p.measurement == "heterodyne" ? TQKD_HETERODYNE : TQKD_PHOTON_COUNT;
  rp.threads = p.threads;
  tqkd_ensemble* raw = nullptr;
  check(tqkd_ensemble_run(&rp, &raw));
  return Ensemble(raw);
}

struct ShannonPoint {
  tqkd_info_summary summary;
  tqkd_info_errors errors;
};

ShannonPoint shannon_point(const Params& p, const tqkd_ensemble* ens) {
  ShannonPoint pt{};
  check(tqkd_ensemble_summary(ens, &pt.summary));
  check(tqkd_ensemble_bootstrap(ens, p.resamples, p.seed ^ kBootstrapSalt, p.threads, &pt.errors));
  return pt;
}

tqkd::report::Grid grid_or(const Params& p, const char* fallback) {
  try {
    return tqkd::report::Grid::parse(p.sweep.empty() ? fallback : p.sweep);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--sweep: ") + e.what());
  }
}

std::string trials_csv(const tqkd_ensemble* ens) {
  std::uint64_t n = 0;
  check(tqkd_ensemble_trials(ens, &n));
  struct Columns {
    const std::uint64_t* d1;
    const std::uint64_t* d2;
    const double* z;
    std::vector<std::uint8_t> bits;
  };
  std::vector<Columns> cols;
  for (tqkd_party party : {TQKD_ALICE, TQKD_BOB, TQKD_EVE}) {
    Columns c{};
    check(tqkd_ensemble_counts(ens, party, 1, &c.d1));
    check(tqkd_ensemble_counts(ens, party, 2, &c.d2));
    check(tqkd_ensemble_values(ens, party, &c.z));
    c.bits.resize(n);
    check(tqkd_ensemble_bits(ens, party, c.bits.data(), nullptr));
    cols.push_back(std::move(c));
  }
  std::string out = "trial,A1,A2,z_A,bit_A,B1,B2,z_B,bit_B,E1,E2,z_E,bit_E\n";
  for (std::uint64_t t = 0; t < n; ++t) {
    out += std::to_string(t);
    for (const auto& c : cols) {
      out += ',' + std::to_string(c.d1[t]) + ',' + std::to_string(c.d2[t]) + ',' + fmt9(c.z[t]) +
             ',' + std::to_string(c.bits[t]);
    }
    out += '\n';
  }
  return out;
}

Output cmd_simulate(const Params& p) {
  const Ensemble ens = run_ensemble(p, p.eve_t2);
  const ShannonPoint pt = shannon_point(p, ens.get());
  Output out;
  if (p.format == "json") {
    out.body = json{{"eve_t2", p.eve_t2},
                    {"summary", tqkd::report::to_json(pt.summary)},
                    {"errors", tqkd::report::to_json(pt.errors)}}
                   .dump(2) +
               "\n";
  } else {
    out.body = std::string(tqkd::report::kSweepHeader) + "\n" +
               tqkd::report::sweep_row(p.eve_t2, pt.summary, &pt.errors) + "\n";
  }
  if (!p.out.empty()) out.extras.emplace_back(".trials.csv", trials_csv(ens.get()));
  return out;
}

Output cmd_sweep_eve(const Params& p) {
  const auto grid = grid_or(p, "0:1:10");
  if (grid.start < 0.0 || grid.stop > 1.0) throw UsageError("--sweep: eve_t2 grid must lie in [0, 1]");

  std::string csv = std::string(tqkd::report::kSweepHeader) + "\n";
  json rows = json::array();
  for (double t2 : grid.points()) {
    const Ensemble ens = run_ensemble(p, t2);
    const ShannonPoint sh = shannon_point(p, ens.get());
    tqkd_info_summary vn{};
    check(tqkd_protocol_summary(p.mean_photon, t2, &vn));
    csv += tqkd::report::sweep_row(t2, sh.summary, &sh.errors) + "\n";
    csv += tqkd::report::sweep_row(t2, vn, nullptr) + "\n";
    rows.push_back({{"eve_t2", t2},
                    {"shannon",
                     {{"summary", tqkd::report::to_json(sh.summary)},
                      {"errors", tqkd::report::to_json(sh.errors)}}},
                    {"von_neumann", {{"summary", tqkd::report::to_json(vn)}}}});
  }
  return {p.format == "json" ? rows.dump(2) + "\n" : csv, {}};
}

Output cmd_sweep_variance(const Params& p) {
  const auto grid = grid_or(p, "1:1001:10");
  if (grid.start < 1.0) throw UsageError("--sweep: variance grid must start at V >= 1");

  const tqkd_noise_model noise = tqkd_noise_model_default();
  const double tau = std::sqrt(p.eve_t2);
  std::string csv = std::string(tqkd::report::kVarianceHeader) + "\n";
  json rows = json::array();
  for (double v : grid.points()) {
    const double mean_photon = (v - 1.0) / 2.0;
    tqkd_uncertainty_result unc{};
    check(tqkd_uncertainty_evaluate(&noise, tau, v, &unc));
    tqkd_info_summary cov{};
    check(tqkd_protocol_summary(mean_photon, p.eve_t2, &cov));
    csv += fmt9(v) + ',' + fmt9(mean_photon) + ',' + fmt9(unc.I_AB) + ',' + fmt9(unc.I_BE) + ',' +
           fmt9(cov.I_AB) + ',' + fmt9(cov.I_BE) + ',' + fmt9(cov.K_RR) + "\n";
    rows.push_back({{"V", v},
                    {"mean_photon", mean_photon},
                    {"uncertainty",
                     {{"delta_ab", unc.delta_ab},
                      {"delta_be", unc.delta_be},
                      {"chi_ab", unc.chi_ab},
                      {"chi_be", unc.chi_be},
                      {"I_AB", unc.I_AB},
                      {"I_BE", unc.I_BE}}},
                    {"covariance", tqkd::report::to_json(cov)}});
  }
  return {p.format == "json" ? rows.dump(2) + "\n" : csv, {}};
}

tqkd_party party_from(char c) {
  switch (c) {
    case 'A': return TQKD_ALICE;
    case 'B': return TQKD_BOB;
    case 'E': return TQKD_EVE;
    default: throw UsageError("--pair must be two of A, B, E");
  }
}

Output cmd_offset(const Params& p) {
  if (p.trials <= 2 * p.max_offset) throw UsageError("--trials must exceed 2 * --max-offset");
  if (p.pair.size() != 2) throw UsageError("--pair must be two of A, B, E");
  const tqkd_party first = party_from(p.pair[0]);
  const tqkd_party second = p.self ? first : party_from(p.pair[1]);

  const Ensemble ens = run_ensemble(p, p.eve_t2);
  const double* a = nullptr;
  const double* b = nullptr;
  check(tqkd_ensemble_values(ens.get(), first, &a));
  check(tqkd_ensemble_values(ens.get(), second, &b));
  std::vector<tqkd_offset_row> rows(2 * p.max_offset + 1);
  check(tqkd_offset_correlation(a, b, p.trials, p.max_offset, rows.data(), rows.size()));

  std::string csv = std::string(tqkd::report::kOffsetHeader) + "\n";
  json j = json::array();
  for (const auto& r : rows) {
    csv += std::to_string(r.offset) + ',' + fmt9(r.r) + ',' + std::to_string(r.degenerate) + "\n";
    j.push_back({{"offset", r.offset}, {"r", r.r}, {"degenerate", r.degenerate != 0}});
  }
  return {p.format == "json" ? j.dump(2) + "\n" : csv, {}};
}

Output dispatch(const std::string& command, const Params& p) {
  if (p.format != "csv" && p.format != "json") throw UsageError("--format must be csv or json");
  if (p.measurement != "photon" && p.measurement != "heterodyne") {
    throw UsageError("--measurement must be photon or heterodyne");
  }
  if (command == "simulate") return cmd_simulate(p);
  if (command == "sweep-eve") return cmd_sweep_eve(p);
  if (command == "sweep-variance") return cmd_sweep_variance(p);
  if (command == "offset") return cmd_offset(p);
  throw UsageError("unknown command '" + command + "'");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string output_base(const std::string& out) {
  const std::filesystem::path path(out);
  const auto ext = path.extension();
  if (ext == ".csv" || ext == ".json") return path.parent_path() / path.stem();
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw RuntimeError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw RuntimeError("failed writing '" + path + "'");
}

void emit(const std::string& command, const Params& p, const Output& out) {
  if (p.out.empty()) {
    std::cout << out.body;
    return;
  }
  const std::string base = output_base(p.out);
  write_file(base + (p.format == "json" ? ".json" : ".csv"), out.body);
  for (const auto& [suffix, content] : out.extras) write_file(base + suffix, content);
  const json manifest{{"command", command},
                      {"parameters", p.to_json()},
                      {"version", tqkd_version()},
                      {"timestamp", utc_timestamp()}};
  write_file(base + ".manifest.json", manifest.dump(2) + "\n");
}

void add_run_options(CLI::App* cmd, Params& p) {
  cmd->add_option("--mean-photon", p.mean_photon, "Mean photon number of the source")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--eve-t2", p.eve_t2, "Power transmittance of Eve's splitter")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--seed", p.seed, "64-bit RNG seed")->capture_default_str();
  cmd->add_option("--out", p.out, "Output path prefix (stdout if omitted)");
  cmd->add_option("--format", p.format, "Summary format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--threads", p.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_mc_options(CLI::App* cmd, Params& p) {
  cmd->add_option("--trials", p.trials, "Monte Carlo trials")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40))
      ->capture_default_str();
  cmd->add_option("--measurement", p.measurement, "Measurement model")
      ->check(CLI::IsMember({"photon", "heterodyne"}))
      ->capture_default_str();
  cmd->add_option("--resamples", p.resamples, "Bootstrap resamples")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal-state central-broadcast QKD simulator"};
  app.set_version_flag("--version", std::string(tqkd_version()));
  app.require_subcommand(1);

  Params p;
  std::string manifest_path;

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run with Shannon summary");
  add_run_options(simulate, p);
  add_mc_options(simulate, p);

  auto* sweep_eve = app.add_subcommand("sweep-eve", "Sweep Eve's power transmittance");
  add_run_options(sweep_eve, p);
  add_mc_options(sweep_eve, p);
  sweep_eve->add_option("--sweep", p.sweep, "eve_t2 grid start:stop:steps (default 0:1:10)");

  auto* sweep_var = app.add_subcommand("sweep-variance", "Sweep the source quadrature variance");
  add_run_options(sweep_var, p);
  sweep_var->add_option("--sweep", p.sweep, "V grid start:stop:steps (default 1:1001:10)");

  auto* offset = app.add_subcommand("offset", "Correlation between streams vs. offset");
  add_run_options(offset, p);
  add_mc_options(offset, p);
  offset->add_option("--max-offset", p.max_offset, "Largest offset")->capture_default_str();
  offset->add_option("--pair", p.pair, "Parties to correlate, e.g. AB")->capture_default_str();
  offset->add_flag("--self", p.self, "Correlate the first party with itself");

  auto* rerun = app.add_subcommand("rerun", "Repeat a run from its manifest");
  rerun->add_option("manifest", manifest_path, "Manifest JSON written by a previous run")
      ->required()
      ->check(CLI::ExistingFile);
  std::string rerun_out;
  rerun->add_option("--out", rerun_out, "Output path prefix (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    std::string command = app.get_subcommands().front()->get_name();
    if (command == "rerun") {
      std::ifstream f(manifest_path);
      json manifest;
      try {
        manifest = json::parse(f);
        command = manifest.at("command").get<std::string>();
        p = Params::from_json(manifest.at("parameters"));
      } catch (const json::exception& e) {
        throw UsageError(std::string("bad manifest: ") + e.what());
      }
      p.out = rerun_out;
    }
    emit(command, p, dispatch(command, p));
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
