#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("colorent_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run(const std::string& args, const fs::path& stdout_file = {}) {
  std::string cmd = std::string("\"") + COLORENT_CLI + "\" " + args;
  cmd += stdout_file.empty() ? " > /dev/null" : " > \"" + stdout_file.string() + "\"";
  cmd += " 2> \"" + (scratch() / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("point reports the transparency operating point") {
  const auto cfg = write("point.cfg", "Omega_p = 6 Gamma\nOmega_c = 6 Gamma\n");
  const auto out = scratch() / "point.json";
  REQUIRE(run("point --config \"" + cfg.string() + "\"", out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["merit"]["npt_lossy"].get<double>() >= 0.99);
  CHECK(j["frequency_unit"] == "Gamma");
  CHECK(j["parameters"]["Omega_p"].get<double>() == 6.0);
}

TEST_CASE("sweep writes one row per grid cell") {
  const auto cfg = write("sweep.cfg",
                         "sweep.axis1 = Omega_p\nsweep.axis1.min = 4 Gamma\nsweep.axis1.max = 8 Gamma\n"
                         "sweep.axis1.points = 2\n"
                         "sweep.axis2 = Omega_c\nsweep.axis2.min = 4 Gamma\nsweep.axis2.max = 8 Gamma\n"
                         "sweep.axis2.points = 2\nregion.npt_lossy_min = 0.99\n");
  const auto dir = scratch() / "sweep_out";
  REQUIRE(run("sweep --config \"" + cfg.string() + "\" --out \"" + dir.string() + "\"") == 0);
  const auto csv = slurp(dir / "sweep.csv");
  CHECK(data_lines(csv).size() == 4);
  CHECK(csv.find("Omega_p,Omega_c,npt_pure,npt_lossy") != std::string::npos);
  const auto summary = nlohmann::json::parse(slurp(dir / "sweep_summary.json"));
  CHECK(summary["cells"] == 4);
  CHECK(summary.contains("region"));
}

TEST_CASE("spectrum without coupling shows one absorption line") {
  const auto cfg = write("spec.cfg", "Omega_c = 0 Gamma\nspectrum.points = 401\n");
  const auto out = scratch() / "spectrum.csv";
  REQUIRE(run("spectrum --config \"" + cfg.string() + "\"", out) == 0);
  const auto rows = data_lines(slurp(out));
  REQUIRE(rows.size() == 401);
  std::vector<double> im;
  for (const auto& r : rows) {
    std::istringstream s(r);
    std::string cell;
    for (int k = 0; k <= 3; ++k) std::getline(s, cell, ',');
    im.push_back(std::stod(cell));
  }
  int peaks = 0;
  for (std::size_t k = 1; k + 1 < im.size(); ++k)
    if (im[k] > im[k - 1] && im[k] >= im[k + 1]) ++peaks;
  CHECK(peaks == 1);
}

TEST_CASE("optimize json") {
  const auto cfg = write("opt.cfg",
                         "sweep.axis1 = Omega_c\nsweep.axis1.min = 4 Gamma\nsweep.axis1.max = 8 Gamma\n"
                         "sweep.axis1.points = 5\noptimize.budget = 3\n");
  const auto out = scratch() / "opt.json";
  REQUIRE(run("optimize --config \"" + cfg.string() + "\"", out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["feasible"] == true);
  CHECK(j["trace"].size() == 4);
}

TEST_CASE("exit codes") {
  const auto bad = write("bad.cfg", "Omega_x = 1 Gamma\n");
  CHECK(run("point --config \"" + bad.string() + "\"") == 1);
  CHECK(slurp(scratch() / "stderr.txt").find("bad.cfg:1") != std::string::npos);
  const auto no_axis = write("noaxis.cfg", "Omega_p = 1 Gamma\n");
  CHECK(run("sweep --config \"" + no_axis.string() + "\"") == 1);
  const auto ok = write("ok.cfg", "");
  const auto blocker = write("blocker", "x");
  CHECK(run("point --config \"" + ok.string() + "\" --out \"" + (blocker / "sub").string() + "\"") == 3);
  CHECK(run("point --format xml") != 0);
}

TEST_CASE("thread count does not change sweep output") {
  const auto cfg = write("det.cfg",
                         "sweep.axis1 = Omega_p\nsweep.axis1.min = 1 Gamma\nsweep.axis1.max = 8 Gamma\n"
                         "sweep.axis1.points = 6\n"
                         "sweep.axis2 = Delta_c\nsweep.axis2.min = -2 Gamma\nsweep.axis2.max = 2 Gamma\n"
                         "sweep.axis2.points = 5\n");
  const auto a = scratch() / "t1", b = scratch() / "t8";
  REQUIRE(run("sweep --threads 1 --config \"" + cfg.string() + "\" --out \"" + a.string() + "\"") == 0);
  REQUIRE(run("sweep --threads 8 --config \"" + cfg.string() + "\" --out \"" + b.string() + "\"") == 0);
  CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
}
