// colorent: heralded two-colour single-photon entanglement calculator.
//
//   colorent point    --config run.cfg
//   colorent sweep    --config run.cfg --out results/ --threads 8
//   colorent optimize --config run.cfg
//   colorent spectrum --config run.cfg --format json

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "colorent/config.hpp"
#include "colorent/errors.hpp"
#include "colorent/output.hpp"
#include "colorent/sweep.hpp"

namespace fs = std::filesystem;
using namespace colorent;

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kCompute = 2, kIo = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string out;
  std::string format;
  unsigned threads = 1;
  bool si = false;
};

void emit(const Options& opt, const std::string& filename, const std::string& content) {
  if (opt.out.empty()) {
    std::cout << content;
    return;
  }
  std::error_code ec;
  fs::create_directories(opt.out, ec);
  if (ec) throw IoError(opt.out + ": cannot create output directory: " + ec.message());
  const fs::path path = fs::path(opt.out) / filename;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(path.string() + ": cannot open for writing");
  f << content;
  f.flush();
  if (!f) throw IoError(path.string() + ": write failed");
}

RunConfig load(const Options& opt) {
  RunConfig cfg = opt.config.empty() ? RunConfig::defaults() : load_config(opt.config);
  if (opt.si) cfg.si_units = true;
  return cfg;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int run_point(const Options& opt) {
  const RunConfig cfg = load(opt);
  const UnitPolicy units = unit_policy(cfg);
  const MeritRecord r = evaluate_point(cfg.point);
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "npt_pure,npt_lossy,gen_prob,t_as,t_as_prime,prob_c,prob_d,dark\n";
    const auto j = point_json(cfg.point, r, units)["merit"];
    csv << j["npt_pure"].dump() << ',' << j["npt_lossy"].dump() << ',' << j["gen_prob"].dump() << ','
        << j["t_as"].dump() << ',' << j["t_as_prime"].dump() << ',' << j["prob_c"].dump() << ','
        << j["prob_d"].dump() << ',' << (r.dark ? 1 : 0) << '\n';
    emit(opt, "point.csv", csv.str());
  } else {
    emit(opt, "point.json", dump(point_json(cfg.point, r, units)));
  }
  if (r.dark) std::cerr << "colorent: both heralded channels are dark at this point\n";
  return kOk;
}

int run_sweep(const Options& opt) {
  const RunConfig cfg = load(opt);
  const UnitPolicy units = unit_policy(cfg);
  const SweepSpec spec = cfg.sweep_spec();
  const MeritMap map = grid_sweep(spec, SweepOptions{opt.threads});
  const RegionMask region = extract_region(map, cfg.region);
  const auto summary = sweep_summary_json(map, region, units);
  if (opt.format == "json") {
    nlohmann::json j;
    j["grid"] = sweep_json(map, units);
    j["summary"] = summary;
    if (opt.out.empty()) {
      emit(opt, "", dump(j));
    } else {
      emit(opt, "sweep.json", dump(j["grid"]));
      emit(opt, "sweep_summary.json", dump(summary));
    }
  } else {
    std::ostringstream csv;
    write_sweep_csv(csv, map, spec.baseline, units);
    emit(opt, "sweep.csv", csv.str());
    if (!opt.out.empty()) emit(opt, "sweep_summary.json", dump(summary));
  }
  return kOk;
}

int run_optimize(const Options& opt) {
  const RunConfig cfg = load(opt);
  const OptimizeSpec spec = cfg.optimize_spec();
  const OptimizeResult result = optimize(spec, SweepOptions{opt.threads});
  emit(opt, "optimize.json", dump(optimize_json(spec, result, unit_policy(cfg))));
  if (!result.feasible) std::cerr << "colorent: no feasible point satisfies the constraints\n";
  return kOk;
}

int run_spectrum(const Options& opt) {
  const RunConfig cfg = load(opt);
  const UnitPolicy units = unit_policy(cfg);
  const auto rows = compute_spectrum(cfg.point, cfg.spectrum);
  if (opt.format == "json") {
    emit(opt, "spectrum.json", dump(spectrum_json(rows, units)));
  } else {
    std::ostringstream csv;
    write_spectrum_csv(csv, rows, cfg.point, units);
    emit(opt, "spectrum.csv", csv.str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded two-colour single-photon entanglement: figures of merit, sweeps, optimization"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory (default: standard output)");
    sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", opt.threads, "worker threads (speed only, never results)")
        ->check(CLI::Range(1u, 1024u));
    sub->add_flag("--si", opt.si, "report frequencies in rad/s instead of Gamma");
  };

  auto* point = app.add_subcommand("point", "figures of merit at one operating point (JSON)");
  auto* sweep = app.add_subcommand("sweep", "merit map over one or two axes (CSV + JSON summary)");
  auto* opt_cmd = app.add_subcommand("optimize", "constrained grid-refinement search (JSON)");
  auto* spectrum = app.add_subcommand("spectrum", "chi1 and transmission of both anti-Stokes modes (CSV)");
  for (auto* sub : {point, sweep, opt_cmd, spectrum}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (point->parsed()) return run_point(opt);
    if (sweep->parsed()) return run_sweep(opt);
    if (opt_cmd->parsed()) return run_optimize(opt);
    if (spectrum->parsed()) return run_spectrum(opt);
  } catch (const ConfigError& e) {
    std::cerr << "colorent: configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "colorent: I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "colorent: computation failed: " << e.what() << "\n";
    return kCompute;
  }
  return kOk;
}
