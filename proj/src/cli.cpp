#include "gwqed/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gwqed/criticality.hpp"
#include "gwqed/dfree.hpp"
#include "gwqed/errors.hpp"
#include "gwqed/interactions.hpp"
#include "gwqed/slh.hpp"
#include "gwqed/spinchain.hpp"
#include "gwqed/waveguide.hpp"

namespace gwqed {

namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

const std::vector<std::string> kSubcommands = {"waveguide", "dfree",      "slh-check", "interactions",
                                               "dispersion", "gap",        "fidelity",  "phase-diagram"};

std::string fmt(const char* spec, double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string full(double v) { return fmt("%.17g", v); }
std::string short_num(double v) { return fmt("%.12g", v); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + short_num(xs[i]);
  return out;
}

// Real-valued options are captured as text so angles like "0.2pi" work.
struct RealOptions {
  std::map<std::string, std::string> text;
  std::map<std::string, CLI::Option*> opts;
};

const std::vector<std::string> kFlagKeys = {"center", "extended", "continuum", "convention-report"};

}  // namespace

double parse_real(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw UsageError("empty numeric value");
  const auto pi_pos = s.find("pi");
  std::size_t used = 0;
  try {
    if (pi_pos == std::string::npos) {
      const double v = std::stod(s, &used);
      if (used != s.size()) throw UsageError("malformed number '" + s + "'");
      return v;
    }
    std::string coef = s.substr(0, pi_pos);
    double c = 1.0;
    if (coef == "-") {
      c = -1.0;
    } else if (!coef.empty() && coef != "+") {
      if (coef.back() == '*') coef.pop_back();
      c = std::stod(coef, &used);
      if (used != coef.size()) throw UsageError("malformed angle '" + s + "'");
    }
    std::string rest = s.substr(pi_pos + 2);
    double denom = 1.0;
    if (!rest.empty()) {
      if (rest.front() != '/') throw UsageError("malformed angle '" + s + "'");
      rest = rest.substr(1);
      denom = std::stod(rest, &used);
      if (used != rest.size() || denom == 0.0) throw UsageError("malformed angle '" + s + "'");
    }
    return c * kPi / denom;
  } catch (const std::invalid_argument&) {
    throw UsageError("malformed number '" + s + "'");
  } catch (const std::out_of_range&) {
    throw UsageError("number out of range '" + s + "'");
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  auto opt = [](const auto& o) -> std::string {
    if (!o) return "";
    if constexpr (std::is_same_v<std::decay_t<decltype(*o)>, double>) {
      return full(*o);
    } else {
      return std::to_string(*o);
    }
  };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  return {
      {"subcommand", subcommand},
      {"gain", full(gain)},
      {"theta-right", full(theta_right)},
      {"theta-left", full(theta_left)},
      {"ds", full(ds)},
      {"jc", full(jc)},
      {"jp", full(jp)},
      {"delta", full(delta)},
      {"n", std::to_string(n)},
      {"length", full(length)},
      {"delta-h", full(delta_h)},
      {"spacing", full(spacing)},
      {"loss1", full(loss1)},
      {"loss2", full(loss2)},
      {"dk", full(dk)},
      {"scan", scan},
      {"min", opt(scan_min)},
      {"max", opt(scan_max)},
      {"steps", opt(steps)},
      {"jp-min", opt(jp_min)},
      {"jp-max", opt(jp_max)},
      {"jp-steps", opt(jp_steps)},
      {"method", method},
      {"sector", sector},
      {"center", flag(center)},
      {"extended", flag(extended)},
      {"continuum", flag(continuum)},
      {"convention-report", flag(convention_report)},
      {"threshold", full(threshold)},
      {"samples", std::to_string(samples)},
      {"output", output},
      {"format", format},
      {"seed", std::to_string(seed)},
  };
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || trim(t.substr(0, eq)).empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

namespace {

struct Parser {
  CLI::App app{"Decoherence-free giant-atom interactions on a parametric waveguide", "gwqed"};
  RunConfig cfg;
  RealOptions reals;
  std::string config_path;
  std::vector<std::string> scan_gain;
  std::optional<double> theta_minus_sugar;
  std::map<std::string, CLI::App*> subs;

  Parser() {
    app.set_version_flag("--version", kVersion);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.fallthrough();
    app.require_subcommand(0, 1);

    auto real = [&](const std::string& key, const std::string& help) {
      reals.opts[key] = app.add_option("--" + key, reals.text[key], help);
    };
    real("gain", "parametric gain G (default 0.8)");
    real("theta-right", "pump phase of the right-moving squeezer");
    real("theta-left", "pump phase of the left-moving squeezer");
    real("theta-minus", "pump phase difference; sets theta-right = -theta-left = value/2");
    real("ds", "atom spacing d_s (default 0.2pi)");
    real("jc", "exchange strength Jc (default 1)");
    real("jp", "pairing strength Jp (default 0.5)");
    real("delta", "uniform detuning (default 2)");
    real("length", "waveguide length L (default: geometry extent)");
    real("delta-h", "fidelity step (default 0.01)");
    real("spacing", "coupling-point spacing for dfree (default pi)");
    real("loss1", "loss rate of mode 1");
    real("loss2", "loss rate of mode 2");
    real("dk", "phase mismatch");
    real("min", "scan lower bound");
    real("max", "scan upper bound");
    real("jp-min", "phase-diagram Jp lower bound");
    real("jp-max", "phase-diagram Jp upper bound");
    real("threshold", "gap threshold for gapped regions (default 1e-3)");

    app.add_option("--n", cfg.n, "chain length (default 16)");
    app.add_option("--steps", cfg.steps, "scan points");
    app.add_option("--jp-steps", cfg.jp_steps, "phase-diagram Jp points");
    app.add_option("--samples", cfg.samples, "random geometries for slh-check");
    app.add_option("--seed", cfg.seed, "seed for random sampling");
    app.add_option("--scan", cfg.scan, "scan parameter");
    app.add_option("--method", cfg.method, "waveguide solver: auto, analytic or rk4");
    app.add_option("--sector", cfg.sector, "parity sector: even, odd or lowest");
    app.add_option("--output,-o", cfg.output, "output file (default stdout)");
    app.add_option("--format", cfg.format, "csv or json");
    app.add_option("--config", config_path, "flat key=value file; flags override it");
    app.add_option("--scan-gain", scan_gain, "dfree gain scan: G_MIN G_MAX STEPS")->expected(3);
    app.add_flag("--center", cfg.center, "place the pair midpoint at z = 0");
    app.add_flag("--extended", cfg.extended, "allow non-braided separations");
    app.add_flag("--continuum", cfg.continuum, "use a dense momentum grid");
    app.add_flag("--convention-report", cfg.convention_report,
                 "add alternative dispersion columns");

    const std::map<std::string, std::string> descriptions = {
        {"waveguide", "coupled-wave propagation along z"},
        {"dfree", "decoherence-free coupling ratios and residuals"},
        {"slh-check", "cascaded SLH network versus the closed-form Hamiltonian"},
        {"interactions", "exchange and pairing strengths and scans"},
        {"dispersion", "quasi-particle dispersion"},
        {"gap", "energy gap scans"},
        {"fidelity", "ground-state fidelity susceptibility scans"},
        {"phase-diagram", "gap map and phase labels over (delta, jp)"},
    };
    for (const auto& name : kSubcommands) subs[name] = app.add_subcommand(name, descriptions.at(name));
  }

  bool is_known_key(const std::string& key) {
    if (key == "subcommand") return true;
    try {
      app.get_option("--" + key);
      return true;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  }

  bool is_flag(const std::string& key) {
    return std::find(kFlagKeys.begin(), kFlagKeys.end(), key) != kFlagKeys.end();
  }

  std::vector<std::string> config_tokens(const std::string& path, std::string& subcommand) {
    std::vector<std::string> tokens;
    for (const auto& [key, value] : read_config_file(path)) {
      if (!is_known_key(key) || key == "config") {
        throw ConfigError(path + ": unknown key '" + key + "'");
      }
      if (value.empty()) continue;
      if (key == "subcommand") {
        subcommand = value;
        continue;
      }
      if (is_flag(key)) {
        if (value == "true" || value == "1" || value == "yes" || value == "on") {
          tokens.push_back("--" + key);
        } else if (!(value == "false" || value == "0" || value == "no" || value == "off")) {
          throw ConfigError(path + ": flag '" + key + "' needs true or false");
        }
        continue;
      }
      tokens.push_back("--" + key);
      if (key == "scan-gain") {
        std::istringstream ss(value);
        std::string part;
        while (ss >> part) tokens.push_back(part);
      } else {
        tokens.push_back(value);
      }
    }
    return tokens;
  }

  void convert_reals() {
    auto set = [&](const std::string& key, double& target) {
      if (reals.opts[key]->count() > 0) target = parse_real(reals.text[key]);
    };
    auto set_opt = [&](const std::string& key, std::optional<double>& target) {
      if (reals.opts[key]->count() > 0) target = parse_real(reals.text[key]);
    };
    set("gain", cfg.gain);
    set("theta-right", cfg.theta_right);
    set("theta-left", cfg.theta_left);
    set("ds", cfg.ds);
    set("jc", cfg.jc);
    set("jp", cfg.jp);
    set("delta", cfg.delta);
    set("length", cfg.length);
    set("delta-h", cfg.delta_h);
    set("spacing", cfg.spacing);
    set("loss1", cfg.loss1);
    set("loss2", cfg.loss2);
    set("dk", cfg.dk);
    set("threshold", cfg.threshold);
    set_opt("min", cfg.scan_min);
    set_opt("max", cfg.scan_max);
    set_opt("jp-min", cfg.jp_min);
    set_opt("jp-max", cfg.jp_max);
    if (reals.opts["theta-minus"]->count() > 0) {
      if (reals.opts["theta-right"]->count() > 0 || reals.opts["theta-left"]->count() > 0) {
        throw UsageError("--theta-minus cannot be combined with --theta-right/--theta-left");
      }
      const double tm = parse_real(reals.text["theta-minus"]);
      cfg.theta_right = 0.5 * tm;
      cfg.theta_left = -0.5 * tm;
    }
    if (!scan_gain.empty()) {
      cfg.scan = "gain";
      cfg.scan_min = parse_real(scan_gain[0]);
      cfg.scan_max = parse_real(scan_gain[1]);
      try {
        std::size_t used = 0;
        cfg.steps = std::stoi(scan_gain[2], &used);
        if (used != scan_gain[2].size()) throw std::invalid_argument("steps");
      } catch (const std::exception&) {
        throw UsageError("--scan-gain STEPS must be an integer");
      }
    }
  }
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

void validate(const RunConfig& c) {
  const auto& s = c.subcommand;
  if (!c.format.empty() && c.format != "csv" && c.format != "json") {
    throw UsageError("--format must be csv or json");
  }
  if (c.method != "auto" && c.method != "analytic" && c.method != "rk4") {
    throw UsageError("--method must be auto, analytic or rk4");
  }
  if (c.sector != "even" && c.sector != "odd" && c.sector != "lowest") {
    throw UsageError("--sector must be even, odd or lowest");
  }
  const std::map<std::string, std::vector<std::string>> scans = {
      {"waveguide", {"", "z"}},          {"dfree", {"", "gain"}},
      {"slh-check", {""}},                {"interactions", {"", "gain", "theta", "ds"}},
      {"dispersion", {"", "k"}},          {"gap", {"", "delta", "jp"}},
      {"fidelity", {"", "delta", "jp"}},  {"phase-diagram", {""}},
  };
  const auto& allowed = scans.at(s);
  if (std::find(allowed.begin(), allowed.end(), c.scan) == allowed.end()) {
    throw UsageError("subcommand " + s + " does not support --scan " + c.scan);
  }
  if (c.steps) require(*c.steps >= 2, "--steps must be at least 2");
  if (c.jp_steps) require(*c.jp_steps >= 2, "--jp-steps must be at least 2");
  if (c.scan_min && c.scan_max) require(*c.scan_min < *c.scan_max, "scan needs min < max");
  if (c.jp_min && c.jp_max) require(*c.jp_min < *c.jp_max, "Jp range needs min < max");
  require(c.gain >= 0.0, "gain must be non-negative");
  require(c.length >= 0.0, "length must be positive (or 0 for automatic)");
  require(c.delta_h > 0.0, "delta-h must be positive");
  require(c.spacing > 0.0, "spacing must be positive");
  require(c.loss1 >= 0.0 && c.loss2 >= 0.0, "loss rates must be non-negative");
  require(c.threshold > 0.0, "threshold must be positive");
  require(c.samples >= 0, "samples must be non-negative");
  const bool pair_cmd = s == "slh-check" || s == "interactions";
  if (pair_cmd && c.scan != "ds") {
    if (c.extended) {
      require(c.ds > 0.0, "d_s must be positive");
    } else {
      require(c.ds > 0.0 && c.ds < kPi, "braided mode needs 0 < d_s < pi, got " + full(c.ds));
    }
  }
  if (s == "interactions" && c.scan == "ds" && !c.extended) {
    require(c.scan_min.value_or(0.01) > 0.0 && c.scan_max.value_or(kPi - 0.01) < kPi,
            "braided d_s scan must stay inside (0, pi)");
  }
  const bool chain_cmd = s == "dispersion" || s == "gap" || s == "fidelity";
  if (chain_cmd) require(c.n >= 2 && c.n % 2 == 0, "--n must be an even integer >= 2");
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  Parser p;
  // Locate --config before parsing so its values can be placed first.
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  std::vector<std::string> tokens{args.empty() ? std::string("gwqed") : args[0]};
  std::string file_subcommand;
  if (!path.empty()) {
    const auto extra = p.config_tokens(path, file_subcommand);
    tokens.insert(tokens.end(), extra.begin(), extra.end());
  }
  bool has_subcommand = false;
  for (std::size_t i = 1; i < args.size(); ++i) {
    tokens.push_back(args[i]);
    if (p.subs.count(args[i])) has_subcommand = true;
  }
  if (!has_subcommand && !file_subcommand.empty()) {
    if (!p.subs.count(file_subcommand)) {
      throw ConfigError(path + ": unknown subcommand '" + file_subcommand + "'");
    }
    tokens.push_back(file_subcommand);
  }

  std::vector<char*> argv;
  for (auto& t : tokens) argv.push_back(t.data());
  p.app.parse(static_cast<int>(argv.size()), argv.data());

  for (const auto& [name, sub] : p.subs) {
    if (sub->parsed()) p.cfg.subcommand = name;
  }
  if (p.cfg.subcommand.empty()) {
    throw UsageError("a subcommand is required: waveguide, dfree, slh-check, interactions, "
                     "dispersion, gap, fidelity or phase-diagram");
  }
  p.convert_reals();
  validate(p.cfg);
  return p.cfg;
}

void write_csv(const ScanResult& result, std::ostream& out) {
  for (const auto& [k, v] : result.metadata) out << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < result.header.size(); ++i) out << (i ? "," : "") << result.header[i];
  out << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << short_num(row[i]);
    out << '\n';
  }
}

namespace {

double range_min(const RunConfig& c, double fallback) { return c.scan_min.value_or(fallback); }
double range_max(const RunConfig& c, double fallback) { return c.scan_max.value_or(fallback); }
int range_steps(const RunConfig& c, int fallback) { return c.steps.value_or(fallback); }

WaveguideConfig waveguide_config(const RunConfig& c, double length) {
  WaveguideConfig w;
  w.gain = c.gain;
  w.theta_right = c.theta_right;
  w.theta_left = c.theta_left;
  w.length = length;
  w.loss1 = c.loss1;
  w.loss2 = c.loss2;
  w.dk = c.dk;
  return w;
}

Parity sector_parity(const RunConfig& c) {
  if (c.sector == "lowest") throw UsageError("this subcommand needs --sector even or odd");
  return c.sector == "odd" ? Parity::Odd : Parity::Even;
}

SectorChoice sector_choice(const RunConfig& c) {
  if (c.sector == "odd") return SectorChoice::Odd;
  if (c.sector == "lowest") return SectorChoice::Lowest;
  return SectorChoice::Even;
}

struct Output {
  ScanResult table;
  json doc;  // used for single-result subcommands
  bool single = false;
};

void add_metadata(const RunConfig& c, ScanResult& r) {
  std::vector<std::pair<std::string, std::string>> meta{{"version", kVersion}};
  for (auto& kv : c.echo()) meta.push_back(kv);
  meta.insert(meta.end(), r.metadata.begin(), r.metadata.end());
  r.metadata = std::move(meta);
}

Output run_waveguide(const RunConfig& c) {
  const double length = c.length > 0.0 ? c.length : 3.0 * kPi;
  const auto w = waveguide_config(c, length);
  w.validate();
  const bool lossless = c.loss1 == 0.0 && c.loss2 == 0.0;
  const bool analytic = c.method == "analytic" || (c.method == "auto" && lossless);
  const auto zs = linspace(range_min(c, 0.0), range_max(c, length), range_steps(c, 101));
  Output o;
  o.table.header = {"z", "re_a1", "im_a1", "re_a2c", "im_a2c"};
  o.table.metadata.push_back({"result.solver", analytic ? "analytic" : "rk4"});
  const ModeAmplitudes init{1.0, 0.0, zs.front()};
  ModeAmplitudes cur = init;
  for (double z : zs) {
    cur = analytic ? propagate_analytic(w, init, z) : integrate_coupled_wave(w, cur, z);
    o.table.add_row({z, cur.a1.real(), cur.a1.imag(), cur.a2_conj.real(), cur.a2_conj.imag()});
  }
  return o;
}

Output run_dfree(const RunConfig& c) {
  Output o;
  if (c.scan == "gain") {
    o.table.header = {"gain", "middle_ratio", "residual_cosh_abs", "residual_sinh_abs"};
    for (double g : linspace(range_min(c, 0.0), range_max(c, 2.0), range_steps(c, 21))) {
      const auto p = df_ratios_m3(g, c.spacing);
      o.table.add_row({g, p.ratios[1], std::abs(p.residual_cosh), std::abs(p.residual_sinh)});
    }
    return o;
  }
  const auto p = df_ratios_m3(c.gain, c.spacing);
  o.single = true;
  o.doc["gain"] = p.gain;
  o.doc["spacing"] = p.spacing;
  o.doc["ratios"] = p.ratios;
  o.doc["residual_cosh_abs"] = std::abs(p.residual_cosh);
  o.doc["residual_sinh_abs"] = std::abs(p.residual_sinh);
  if (c.gain > 0.0) {
    o.doc["two_point_min_residual"] = m2_min_residual(0.0, c.spacing, c.gain);
  }
  return o;
}

struct SlhComparison {
  double l_r_norm, l_l_norm, max_dev, jc, jp;
  bool hermitian;
};

SlhComparison compare_slh(double ds, double gain, double theta_right, double theta_left,
                          double detuning_a, double detuning_b, double length, bool extended) {
  auto [a, b] = extended ? build_df_pair(ds, gain) : build_braided_pair(ds, gain);
  a.detuning = detuning_a;
  b.detuning = detuning_b;
  const std::vector<GiantAtom> atoms{a, b};
  WaveguideConfig w;
  w.gain = gain;
  w.theta_right = theta_right;
  w.theta_left = theta_left;
  w.length = length > 0.0 ? length : geometry_extent(atoms);
  const auto order = extended ? CascadeOrder::Sorted : CascadeOrder::Braided;
  const auto right = cascade_right(atoms, w, order);
  const auto left = cascade_left(atoms, w, order);
  const auto net = concatenate(right, left);
  const auto h = gauge_transform(net.hamiltonian, pump_gauge_phases(w.theta_plus(), 2));
  const auto pair = make_effective_pair(a, b, w);
  const auto closed = effective_hamiltonian(pair);
  return {spectral_norm(right.jumps.at(0)),
          spectral_norm(left.jumps.at(0)),
          (h - closed).max_abs(),
          pair.jc,
          pair.jp,
          is_hermitian(net.hamiltonian, 1e-10)};
}

Output run_slh_check(const RunConfig& c) {
  Output o;
  o.single = true;
  const auto r = compare_slh(c.ds, c.gain, c.theta_right, c.theta_left, c.delta, c.delta,
                             c.length, c.extended);
  o.doc["l_r_norm"] = r.l_r_norm;
  o.doc["l_l_norm"] = r.l_l_norm;
  o.doc["max_h_deviation"] = r.max_dev;
  o.doc["jc"] = r.jc;
  o.doc["jp"] = r.jp;
  o.doc["hamiltonian_hermitian"] = r.hermitian;
  if (c.samples > 0) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_dev = 0.0, worst_l = 0.0;
    for (int i = 0; i < c.samples; ++i) {
      const double ds = 0.02 * kPi + 0.96 * kPi * u(rng);
      const double g = 1.5 * u(rng);
      const double tr = 2.0 * kPi * u(rng), tl = 2.0 * kPi * u(rng);
      const double da = 4.0 * u(rng) - 2.0, db = 4.0 * u(rng) - 2.0;
      const auto s = compare_slh(ds, g, tr, tl, da, db, 0.0, false);
      worst_dev = std::max(worst_dev, s.max_dev);
      worst_l = std::max({worst_l, s.l_r_norm, s.l_l_norm});
    }
    o.doc["random_samples"] = c.samples;
    o.doc["random_max_h_deviation"] = worst_dev;
    o.doc["random_max_jump_norm"] = worst_l;
  }
  return o;
}

Output run_interactions(const RunConfig& c) {
  Output o;
  PairScanOptions opt;
  opt.placement = c.center ? PairPlacement::Centered : PairPlacement::Origin;
  opt.mode = c.extended ? SeparationMode::Extended : SeparationMode::Braided;
  const double tm = c.theta_right - c.theta_left;
  if (c.scan == "gain") {
    o.table = scan_vs_gain(c.ds, tm, linspace(range_min(c, 0.0), range_max(c, 2.0), range_steps(c, 41)), opt);
  } else if (c.scan == "theta") {
    o.table = scan_vs_theta(c.ds, c.gain,
                            linspace(range_min(c, 0.0), range_max(c, 4.0 * kPi), range_steps(c, 81)), opt);
  } else if (c.scan == "ds") {
    const auto s = scan_vs_separation(
        c.gain, tm, linspace(range_min(c, 0.01), range_max(c, kPi - 0.01), range_steps(c, 157)), opt);
    o.table = s.table;
    o.table.metadata.push_back({"result.jp_roots", join(s.jp_roots)});
    o.table.metadata.push_back({"result.jc_roots", join(s.jc_roots)});
  } else {
    const auto [a, b] = scan_pair(c.ds, c.gain, opt);
    const auto w = WaveguideConfig::from_phase_sum_difference(c.gain, 0.0, tm, 1.0);
    o.table.header = {"d_s", "gain", "theta_minus", "jc", "jp"};
    o.table.add_row({c.ds, c.gain, tm, compute_jc(a, b, w), compute_jp(a, b, w)});
  }
  return o;
}

Output run_dispersion(const RunConfig& c) {
  Output o;
  const auto spec = SpinChainSpec::uniform(c.n, c.jc, c.jp, c.delta, sector_parity(c));
  std::vector<double> ks = c.continuum
                               ? linspace(range_min(c, 0.0), range_max(c, kPi), range_steps(c, 201))
                               : allowed_momenta(c.n, spec.parity).all();
  o.table.header = {"k", "eps_k"};
  if (c.convention_report) {
    o.table.header.insert(o.table.header.end(),
                          {"eps_spin_consistent", "eps_unit_hopping", "eps_momentum_block"});
  }
  for (double k : ks) {
    std::vector<double> row{k, dispersion(k, spec)};
    if (c.convention_report) {
      row.push_back(dispersion_bdg(k, c.jc, c.jp, c.delta, JwConvention::SpinConsistent));
      row.push_back(dispersion_bdg(k, c.jc, c.jp, c.delta, JwConvention::UnitHopping));
      row.push_back(momentum_hamiltonian_coeffs(k, spec).block_energy());
    }
    o.table.add_row(std::move(row));
  }
  if (c.convention_report) {
    const auto r = convention_report(spec);
    o.table.metadata.push_back({"result.max_abs_dev_spin_consistent", short_num(r.max_abs_dev_spin_consistent)});
    o.table.metadata.push_back({"result.ratio_unit_hopping", short_num(r.min_ratio_unit_hopping) + " " +
                                                               short_num(r.max_ratio_unit_hopping)});
    o.table.metadata.push_back({"result.ratio_momentum_block", short_num(r.min_ratio_momentum_block) +
                                                                   " " + short_num(r.max_ratio_momentum_block)});
    o.table.metadata.push_back({"result.max_angle_relation_residual", short_num(r.max_angle_relation_residual)});
  }
  return o;
}

Output run_gap(const RunConfig& c) {
  Output o;
  const std::string param = c.scan.empty() ? "delta" : c.scan;
  const auto base = SpinChainSpec::uniform(c.n, c.jc, c.jp, c.delta, sector_parity(c));
  const bool by_delta = param == "delta";
  const auto grid = by_delta ? linspace(range_min(c, -8.0), range_max(c, 8.0), range_steps(c, 161))
                             : linspace(range_min(c, -2.0), range_max(c, 2.0), range_steps(c, 81));
  const auto mode = c.continuum ? GapMode::Continuum : GapMode::Finite;
  const auto gaps = parallel_map<double>(grid.size(), [&](std::size_t i) {
    return energy_gap(with_param(base, by_delta ? ControlParam::Delta : ControlParam::Jp, grid[i]), mode);
  });
  o.table.header = {param, "gap"};
  for (std::size_t i = 0; i < grid.size(); ++i) o.table.add_row({grid[i], gaps[i]});
  return o;
}

Output run_fidelity(const RunConfig& c) {
  Output o;
  const std::string param = c.scan.empty() ? "delta" : c.scan;
  const bool by_delta = param == "delta";
  const double lo = range_min(c, by_delta ? -6.0 : -2.0);
  const double hi = range_max(c, by_delta ? 6.0 : 2.0);
  const int steps = range_steps(c, by_delta ? 240 : 80);
  const auto spec = SpinChainSpec::uniform(c.n, c.jc, c.jp, c.delta);
  const auto s = scan_fidelity(spec, by_delta ? ControlParam::Delta : ControlParam::Jp,
                               half_step_grid(lo, hi, (hi - lo) / steps), c.delta_h, sector_choice(c));
  o.table.header = {"h", "F", "chi_F"};
  for (std::size_t i = 0; i < s.grid.size(); ++i) o.table.add_row({s.grid[i], s.fidelity[i], s.chi[i]});
  o.table.metadata.push_back({"result.param", param});
  o.table.metadata.push_back({"result.peaks", join(s.peaks)});
  return o;
}

Output run_phase_diagram(const RunConfig& c) {
  Output o;
  const auto deltas = linspace(range_min(c, -8.0), range_max(c, 8.0), range_steps(c, 161));
  const auto jps = linspace(c.jp_min.value_or(-2.0), c.jp_max.value_or(2.0), c.jp_steps.value_or(81));
  const auto pd = phase_diagram(deltas, jps, c.jc, c.threshold);
  o.table.header = {"delta", "jp", "gap", "label"};
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    for (std::size_t j = 0; j < jps.size(); ++j) {
      o.table.add_row({deltas[i], jps[j], pd.gap[i][j], static_cast<double>(pd.label[i][j])});
    }
  }
  o.table.metadata.push_back({"result.gapped_regions", std::to_string(count_gapped_regions(pd))});
  return o;
}

void emit(const RunConfig& c, Output& o, std::ostream& out) {
  const std::string format = c.format.empty() ? (o.single ? "json" : "csv") : c.format;
  json config;
  for (const auto& [k, v] : c.echo()) config[k] = v;
  if (o.single) {
    if (format == "json") {
      json doc{{"version", kVersion}, {"config", config}};
      doc.update(o.doc);
      out << doc.dump(2) << '\n';
      return;
    }
    // One-row CSV from the scalar fields.
    ScanResult r;
    std::vector<double> row;
    for (const auto& [k, v] : o.doc.items()) {
      if (v.is_number() || v.is_boolean()) {
        r.header.push_back(k);
        row.push_back(v.is_boolean() ? (v.get<bool>() ? 1.0 : 0.0) : v.get<double>());
      } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          r.header.push_back(k + "_" + std::to_string(i));
          row.push_back(v[i].get<double>());
        }
      }
    }
    r.add_row(row);
    add_metadata(c, r);
    write_csv(r, out);
    return;
  }
  add_metadata(c, o.table);
  if (format == "csv") {
    write_csv(o.table, out);
    return;
  }
  json doc{{"version", kVersion}, {"config", config}, {"header", o.table.header}};
  json results = json::object();
  for (const auto& [k, v] : o.table.metadata) {
    if (k.rfind("result.", 0) == 0) results[k.substr(7)] = v;
  }
  doc["results"] = results;
  doc["rows"] = o.table.rows;
  out << doc.dump(2) << '\n';
}

}  // namespace

void run(const RunConfig& c, std::ostream& out) {
  static const std::map<std::string, std::function<Output(const RunConfig&)>> handlers = {
      {"waveguide", run_waveguide},   {"dfree", run_dfree},
      {"slh-check", run_slh_check},   {"interactions", run_interactions},
      {"dispersion", run_dispersion}, {"gap", run_gap},
      {"fidelity", run_fidelity},     {"phase-diagram", run_phase_diagram},
  };
  const auto it = handlers.find(c.subcommand);
  if (it == handlers.end()) throw UsageError("unknown subcommand '" + c.subcommand + "'");
  Output o = it->second(c);
  if (c.output.empty()) {
    emit(c, o, out);
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + c.output + "'");
  emit(c, o, file);
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = parse_config(args);
    run(cfg, out);
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    Parser p;
    out << p.app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::Success&) {
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace gwqed
