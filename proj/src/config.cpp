#include "colorent/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "colorent/constants.hpp"
#include "colorent/errors.hpp"
#include "colorent/format.hpp"

namespace colorent {

namespace {

using constants::two_pi;

enum class Quantity { Frequency, Length, Density, Area, Dimensionless, Integer, Word };

struct Entry {
  std::string value;
  int line = 0;
};

struct KeySpec {
  std::string_view key;
  Quantity quantity;
};

constexpr std::array kKnownKeys = {
    KeySpec{"frequency_convention", Quantity::Word},
    KeySpec{"Gamma", Quantity::Frequency},
    KeySpec{"gamma", Quantity::Frequency},
    KeySpec{"omega_21", Quantity::Frequency},
    KeySpec{"lambda_31", Quantity::Length},
    KeySpec{"density", Quantity::Density},
    KeySpec{"length", Quantity::Length},
    KeySpec{"cross_section", Quantity::Area},
    KeySpec{"pop_11", Quantity::Dimensionless},
    KeySpec{"pop_22", Quantity::Dimensionless},
    KeySpec{"polarization_factor", Quantity::Dimensionless},
    KeySpec{"Omega_p", Quantity::Frequency},
    KeySpec{"Omega_c", Quantity::Frequency},
    KeySpec{"Delta_p", Quantity::Frequency},
    KeySpec{"Delta_c", Quantity::Frequency},
    KeySpec{"herald", Quantity::Word},
    KeySpec{"herald_offset", Quantity::Frequency},
    KeySpec{"sweep.axis1", Quantity::Word},
    KeySpec{"sweep.axis1.min", Quantity::Word},
    KeySpec{"sweep.axis1.max", Quantity::Word},
    KeySpec{"sweep.axis1.points", Quantity::Integer},
    KeySpec{"sweep.axis1.scale", Quantity::Word},
    KeySpec{"sweep.axis2", Quantity::Word},
    KeySpec{"sweep.axis2.min", Quantity::Word},
    KeySpec{"sweep.axis2.max", Quantity::Word},
    KeySpec{"sweep.axis2.points", Quantity::Integer},
    KeySpec{"sweep.axis2.scale", Quantity::Word},
    KeySpec{"region.npt_lossy_min", Quantity::Dimensionless},
    KeySpec{"region.npt_pure_min", Quantity::Dimensionless},
    KeySpec{"region.t_as_min", Quantity::Dimensionless},
    KeySpec{"region.t_as_prime_min", Quantity::Dimensionless},
    KeySpec{"region.gen_prob_min", Quantity::Dimensionless},
    KeySpec{"region.gen_prob_max", Quantity::Dimensionless},
    KeySpec{"optimize.objective", Quantity::Word},
    KeySpec{"optimize.budget", Quantity::Integer},
    KeySpec{"spectrum.min", Quantity::Frequency},
    KeySpec{"spectrum.max", Quantity::Frequency},
    KeySpec{"spectrum.points", Quantity::Integer},
    KeySpec{"output.units", Quantity::Word},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view source) : source_(source) { scan(text); }

  RunConfig build() {
    RunConfig cfg = RunConfig::defaults();
    cyclic_ = word("frequency_convention", "cyclic", {"cyclic", "angular"}) == "cyclic";

    MediumParams& m = cfg.point.medium;
    m.gamma_e = quantity("Gamma", Quantity::Frequency, m.gamma_e);
    gamma_ = m.gamma_e;
    if (!(gamma_ > 0.0)) fail("Gamma", "invariant violated: gamma_e > 0");

    // Gamma-relative defaults follow a user-supplied Gamma.
    const double default_gamma = RunConfig::defaults().point.medium.gamma_e;
    const double rescale = gamma_ / default_gamma;
    cfg.point.drive.rabi_p *= rescale;
    cfg.point.drive.rabi_c *= rescale;
    cfg.point.drive.det_p *= rescale;
    cfg.point.drive.det_c *= rescale;
    cfg.spectrum.min *= rescale;
    cfg.spectrum.max *= rescale;

    m.gamma_g = quantity("gamma", Quantity::Frequency, m.gamma_g);
    m.omega_21 = quantity("omega_21", Quantity::Frequency, m.omega_21);
    m.lambda_31 = quantity("lambda_31", Quantity::Length, m.lambda_31);
    m.density = quantity("density", Quantity::Density, m.density);
    m.length = quantity("length", Quantity::Length, m.length);
    m.cross_section = quantity("cross_section", Quantity::Area, m.cross_section);
    m.polarization_factor =
        quantity("polarization_factor", Quantity::Dimensionless, m.polarization_factor);
    const bool has11 = entries_.count("pop_11") != 0;
    const bool has22 = entries_.count("pop_22") != 0;
    m.pop_11 = quantity("pop_11", Quantity::Dimensionless, m.pop_11);
    m.pop_22 = quantity("pop_22", Quantity::Dimensionless, has11 && !has22 ? 1.0 - m.pop_11 : m.pop_22);
    if (has22 && !has11) m.pop_11 = 1.0 - m.pop_22;
    try {
      m.validate();
    } catch (const ParameterError& e) {
      throw ConfigError(std::string(source_) + ": medium: " + e.what());
    }

    DriveSettings& d = cfg.point.drive;
    d.rabi_p = quantity("Omega_p", Quantity::Frequency, d.rabi_p);
    d.rabi_c = quantity("Omega_c", Quantity::Frequency, d.rabi_c);
    d.det_p = quantity("Delta_p", Quantity::Frequency, d.det_p);
    d.det_c = quantity("Delta_c", Quantity::Frequency, d.det_c);
    if (d.rabi_p < 0.0) fail("Omega_p", "invariant violated: rabi_p >= 0");
    if (d.rabi_c < 0.0) fail("Omega_c", "invariant violated: rabi_c >= 0");

    const std::string herald = word("herald", "resonant", {"resonant", "fixed"});
    cfg.point.herald.kind =
        herald == "fixed" ? HeraldPolicy::Kind::Fixed : HeraldPolicy::Kind::TwoPhotonResonant;
    cfg.point.herald.stokes_offset =
        quantity("herald_offset", Quantity::Frequency, cfg.point.herald.stokes_offset);

    cfg.axis1 = axis("sweep.axis1");
    cfg.axis2 = axis("sweep.axis2");
    if (cfg.axis2 && !cfg.axis1) fail("sweep.axis2", "sweep.axis2 requires sweep.axis1");

    auto threshold = [&](const char* key) -> std::optional<double> {
      if (!entries_.count(key)) return std::nullopt;
      return quantity(key, Quantity::Dimensionless, 0.0);
    };
    cfg.region.npt_lossy_min = threshold("region.npt_lossy_min");
    cfg.region.npt_pure_min = threshold("region.npt_pure_min");
    cfg.region.t_as_min = threshold("region.t_as_min");
    cfg.region.t_as_prime_min = threshold("region.t_as_prime_min");
    cfg.region.gen_prob_min = threshold("region.gen_prob_min");
    cfg.region.gen_prob_max = threshold("region.gen_prob_max");

    const std::string objective =
        word("optimize.objective", "npt_lossy", {"npt_lossy", "npt_pure", "gen_prob"});
    cfg.objective = *parse_objective(objective);
    cfg.budget = integer("optimize.budget", cfg.budget);
    if (cfg.budget < 1) fail("optimize.budget", "budget must be >= 1");

    cfg.spectrum.min = quantity("spectrum.min", Quantity::Frequency, cfg.spectrum.min);
    cfg.spectrum.max = quantity("spectrum.max", Quantity::Frequency, cfg.spectrum.max);
    cfg.spectrum.points = integer("spectrum.points", cfg.spectrum.points);
    if (cfg.spectrum.points < 2) fail("spectrum.points", "points must be >= 2");
    if (!(cfg.spectrum.min < cfg.spectrum.max)) fail("spectrum.max", "require spectrum.min < spectrum.max");

    cfg.si_units = word("output.units", "gamma", {"gamma", "si"}) == "si";

    try {
      cfg.validate();
    } catch (const ParameterError& e) {
      throw ConfigError(std::string(source_) + ": " + e.what());
    }
    return cfg;
  }

 private:
  void scan(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError(where(line_no) + ": expected 'key = value', got '" + std::string(line) + "'");
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      bool known = false;
      for (const auto& k : kKnownKeys) known = known || k.key == key;
      if (!known) throw ConfigError(where(line_no) + ": unknown key '" + key + "'");
      if (value.empty()) throw ConfigError(where(line_no) + ": key '" + key + "' has no value");
      if (entries_.count(key)) throw ConfigError(where(line_no) + ": duplicate key '" + key + "'");
      entries_[key] = Entry{value, line_no};
    }
  }

  std::string where(int line) const { return std::string(source_) + ":" + std::to_string(line); }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    const auto it = entries_.find(key);
    const std::string loc = it == entries_.end() ? std::string(source_) : where(it->second.line);
    throw ConfigError(loc + ": " + key + ": " + message);
  }

  static bool parse_number(std::string_view s, double& out) {
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, out);
    return res.ec == std::errc{} && res.ptr == end && std::isfinite(out);
  }

  double convert(const std::string& key, std::string_view text, Quantity q) const {
    text = trim(text);
    const auto space = text.find_first_of(" \t");
    const std::string_view num = text.substr(0, space);
    const std::string_view unit = space == std::string_view::npos ? std::string_view{} : trim(text.substr(space));
    double v = 0.0;
    if (!parse_number(num, v)) fail(key, "cannot parse number '" + std::string(num) + "'");
    switch (q) {
      case Quantity::Dimensionless:
        if (!unit.empty()) fail(key, "unsupported unit '" + std::string(unit) + "'");
        return v;
      case Quantity::Frequency: {
        if (unit.empty()) fail(key, "frequency needs a unit (Gamma, rad/s, Hz, kHz, MHz, GHz, *_2pi)");
        if (unit == "Gamma") return v * gamma_;
        if (unit == "rad/s") return v;
        struct Scale { std::string_view name; double factor; };
        constexpr std::array scales = {Scale{"Hz", 1.0}, Scale{"kHz", 1e3}, Scale{"MHz", 1e6},
                                       Scale{"GHz", 1e9}};
        for (const auto& s : scales) {
          if (unit == s.name) return v * s.factor * (cyclic_ ? two_pi : 1.0);
          if (unit.size() == s.name.size() + 4 && unit.substr(0, s.name.size()) == s.name &&
              unit.substr(s.name.size()) == "_2pi")
            return v * s.factor * two_pi;
        }
        fail(key, "unsupported unit '" + std::string(unit) + "'");
      }
      case Quantity::Length:
        if (unit == "m") return v;
        if (unit == "cm") return v * 1e-2;
        if (unit == "mm") return v * 1e-3;
        if (unit == "um") return v * 1e-6;
        if (unit == "nm") return v * 1e-9;
        fail(key, "unsupported unit '" + std::string(unit) + "'");
      case Quantity::Density:
        if (unit == "m^-3") return v;
        if (unit == "cm^-3") return v * 1e6;
        fail(key, "unsupported unit '" + std::string(unit) + "'");
      case Quantity::Area:
        if (unit == "m^2") return v;
        if (unit == "cm^2") return v * 1e-4;
        if (unit == "mm^2") return v * 1e-6;
        if (unit == "um^2") return v * 1e-12;
        fail(key, "unsupported unit '" + std::string(unit) + "'");
      default:
        fail(key, "internal: not a numeric quantity");
    }
  }

  double quantity(const std::string& key, Quantity q, double fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    return convert(key, it->second.value, q);
  }

  int integer(const std::string& key, int fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const std::string& s = it->second.value;
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) fail(key, "expected an integer, got '" + s + "'");
    return v;
  }

  std::string word(const std::string& key, std::string fallback,
                   std::initializer_list<std::string_view> allowed) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    for (auto a : allowed)
      if (a == it->second.value) return it->second.value;
    std::string list;
    for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    fail(key, "expected one of {" + list + "}, got '" + it->second.value + "'");
  }

  std::optional<AxisRange> axis(const std::string& prefix) const {
    const auto it = entries_.find(prefix);
    if (it == entries_.end()) {
      for (const char* sub : {".min", ".max", ".points", ".scale"})
        if (entries_.count(prefix + sub)) fail(prefix + sub, "set " + prefix + " to select the swept parameter");
      return std::nullopt;
    }
    const auto p = parse_sweep_parameter(it->second.value);
    if (!p) fail(prefix, "unknown sweep parameter '" + it->second.value +
                             "' (Omega_p, Omega_c, Delta_p, Delta_c, pop_11, herald_offset)");
    AxisRange a;
    a.parameter = *p;
    const Quantity q = is_frequency(*p) ? Quantity::Frequency : Quantity::Dimensionless;
    for (const char* sub : {".min", ".max"})
      if (!entries_.count(prefix + sub)) fail(prefix, std::string("missing ") + prefix + sub);
    a.min = convert(prefix + ".min", entries_.at(prefix + ".min").value, q);
    a.max = convert(prefix + ".max", entries_.at(prefix + ".max").value, q);
    a.points = integer(prefix + ".points", 51);
    const std::string scale = word(prefix + ".scale", default_scale(*p) == AxisScale::Log ? "log" : "linear",
                                   {"log", "linear"});
    a.scale = scale == "log" ? AxisScale::Log : AxisScale::Linear;
    try {
      a.validate();
    } catch (const ParameterError& e) {
      fail(prefix, e.what());
    }
    return a;
  }

  std::string_view source_;
  std::map<std::string, Entry> entries_;
  bool cyclic_ = true;
  double gamma_ = 0.0;
};

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig cfg;
  cfg.point.medium = MediumParams::rb85_d1();
  const double g = cfg.point.medium.gamma_e;
  cfg.point.drive = DriveSettings{6.0 * g, 6.0 * g, -g, g};
  cfg.point.herald = HeraldPolicy{};
  cfg.spectrum = SpectrumSettings{-20.0 * g, 20.0 * g, 801};
  return cfg;
}

SweepSpec RunConfig::sweep_spec() const {
  if (!axis1) throw ConfigError("sweep requires sweep.axis1 in the configuration");
  return SweepSpec{point, *axis1, axis2};
}

OptimizeSpec RunConfig::optimize_spec() const {
  if (!axis1) throw ConfigError("optimize requires sweep.axis1 (search bounds) in the configuration");
  OptimizeSpec spec;
  spec.baseline = point;
  spec.axis1 = *axis1;
  spec.axis2 = axis2;
  spec.objective = objective;
  spec.constraints = region;
  spec.budget = budget;
  return spec;
}

void RunConfig::validate() const {
  point.medium.validate();
  (void)point.drives();
  if (axis1) sweep_spec().validate();
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  return Parser(text, source).build();
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open configuration file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string serialize_config(const RunConfig& c) {
  std::string out;
  auto line = [&](std::string_view key, double v, std::string_view unit) {
    out += key;
    out += " = ";
    out += format_double(v);
    if (!unit.empty()) {
      out += ' ';
      out += unit;
    }
    out += '\n';
  };
  auto word = [&](std::string_view key, std::string_view v) {
    out += key;
    out += " = ";
    out += v;
    out += '\n';
  };
  const MediumParams& m = c.point.medium;
  out += "# medium\n";
  line("Gamma", m.gamma_e, "rad/s");
  line("gamma", m.gamma_g, "rad/s");
  line("omega_21", m.omega_21, "rad/s");
  line("lambda_31", m.lambda_31, "m");
  line("density", m.density, "m^-3");
  line("length", m.length, "m");
  line("cross_section", m.cross_section, "m^2");
  line("pop_11", m.pop_11, "");
  line("pop_22", m.pop_22, "");
  line("polarization_factor", m.polarization_factor, "");
  out += "# drives\n";
  line("Omega_p", c.point.drive.rabi_p, "rad/s");
  line("Omega_c", c.point.drive.rabi_c, "rad/s");
  line("Delta_p", c.point.drive.det_p, "rad/s");
  line("Delta_c", c.point.drive.det_c, "rad/s");
  word("herald", c.point.herald.kind == HeraldPolicy::Kind::Fixed ? "fixed" : "resonant");
  line("herald_offset", c.point.herald.stokes_offset, "rad/s");
  auto axis = [&](std::string_view prefix, const std::optional<AxisRange>& a) {
    if (!a) return;
    const std::string p(prefix);
    const std::string_view unit = is_frequency(a->parameter) ? "rad/s" : "";
    word(p, to_string(a->parameter));
    line(p + ".min", a->min, unit);
    line(p + ".max", a->max, unit);
    out += p + ".points = " + std::to_string(a->points) + "\n";
    word(p + ".scale", a->scale == AxisScale::Log ? "log" : "linear");
  };
  out += "# sweep\n";
  axis("sweep.axis1", c.axis1);
  axis("sweep.axis2", c.axis2);
  auto threshold = [&](std::string_view key, const std::optional<double>& v) {
    if (v) line(key, *v, "");
  };
  threshold("region.npt_lossy_min", c.region.npt_lossy_min);
  threshold("region.npt_pure_min", c.region.npt_pure_min);
  threshold("region.t_as_min", c.region.t_as_min);
  threshold("region.t_as_prime_min", c.region.t_as_prime_min);
  threshold("region.gen_prob_min", c.region.gen_prob_min);
  threshold("region.gen_prob_max", c.region.gen_prob_max);
  word("optimize.objective", to_string(c.objective));
  out += "optimize.budget = " + std::to_string(c.budget) + "\n";
  line("spectrum.min", c.spectrum.min, "rad/s");
  line("spectrum.max", c.spectrum.max, "rad/s");
  out += "spectrum.points = " + std::to_string(c.spectrum.points) + "\n";
  word("output.units", c.si_units ? "si" : "gamma");
  return out;
}

}  // namespace colorent
