#include "gcpi/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gcpi/brackets.hpp"
#include "gcpi/oracle.hpp"
#include "gcpi/recursion.hpp"

namespace gcpi {

namespace {

std::string fmt17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(x)) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + key + "': " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for '" + key + "': " + value);
  }
}

std::vector<double> parse_numbers(const std::string& key, const std::string& value,
                                  std::size_t min_n, std::size_t max_n) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (out.size() < min_n || out.size() > max_n)
    throw ConfigError("wrong number of components for '" + key + "': " + value);
  return out;
}

Cplx parse_complex(const std::string& key, const std::string& value) {
  const auto v = parse_numbers(key, value, 1, 2);
  return Cplx(v[0], v.size() > 1 ? v[1] : 0.0);
}

struct CheckResult {
  std::string name;
  double max_dev = 0.0;
  std::optional<double> tolerance;
  bool pass = true;
};

struct Summary {
  std::string command;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  void add(const std::string& name, double dev, std::optional<double> tol) {
    checks.push_back({name, dev, tol, !tol || dev <= *tol});
  }
  void add_bound_below(const std::string& name, double dev, double lower_bound) {
    checks.push_back({name, dev, lower_bound, dev > lower_bound});
  }
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
  }
  void write_json(const std::string& path) const {
    nlohmann::json j;
    j["command"] = command;
    j["pass"] = all_pass();
    j["notes"] = notes;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json jc;
      jc["name"] = c.name;
      jc["max_dev"] = c.max_dev;
      if (c.tolerance)
        jc["tolerance"] = *c.tolerance;
      else
        jc["tolerance"] = nullptr;
      jc["pass"] = c.pass;
      j["checks"].push_back(jc);
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot open summary output: " + path);
    f << j.dump(2) << "\n";
  }
};

void finish_summary(const Summary& summary, const RunConfig& config) {
  if (!config.out.empty()) summary.write_json(config.out + ".summary.json");
}

// Resolves the requested mode list against the path modes a command
// supports. "all" selects every supported mode; "oracle" is implicit.
std::vector<std::string> resolve_modes(const RunConfig& config,
                                       const std::vector<std::string>& supported) {
  static const std::set<std::string> known = {"symbolic", "discrete",  "ode",
                                              "stationary", "oracle", "all"};
  std::set<std::string> requested;
  for (const auto& entry : config.modes) {
    std::stringstream ss(entry);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      if (!known.count(item)) throw ConfigError("unknown mode: " + item);
      requested.insert(item);
    }
  }
  if (requested.empty()) throw ConfigError("mode set must be non-empty");
  std::vector<std::string> out;
  for (const auto& m : supported) {
    if (requested.count("all") || requested.count(m)) out.push_back(m);
  }
  if (out.empty())
    throw ConfigError("none of the requested modes apply to this command");
  return out;
}

std::vector<std::string> resolve_models(const RunConfig& config) {
  if (config.model == "spin") return {"spin"};
  if (config.model == "jc") return {"jc"};
  if (config.model == "both") return {"spin", "jc"};
  throw ConfigError("unknown model: " + config.model);
}

std::ofstream open_out_file(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open output file: " + path);
  return f;
}

void csv_cell(std::ostream& os, Cplx z, bool lead_comma = true) {
  if (lead_comma) os << ',';
  os << fmt17(z.real()) << ',' << fmt17(z.imag());
}

} // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + " is not key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key at config line " + std::to_string(line_no));
    out[key] = value;
  }
  return out;
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "model") {
    config.model = value;
  } else if (key == "omega") {
    config.omega = parse_double(key, value);
  } else if (key == "omega0") {
    config.omega0 = parse_double(key, value);
  } else if (key == "lambda") {
    config.lambda = parse_double(key, value);
  } else if (key == "b-const") {
    config.b_const = parse_complex(key, value);
    config.b_sin.reset();
  } else if (key == "b-sin") {
    const auto v = parse_numbers(key, value, 3, 3);
    config.b_sin = std::array<double, 3>{v[0], v[1], v[2]};
    config.b_const.reset();
  } else if (key == "t") {
    config.t_total = parse_double(key, value);
    if (config.t_total < 0) throw ConfigError("t must be >= 0");
  } else if (key == "steps") {
    config.steps = parse_int(key, value);
    if (*config.steps < 1) throw ConfigError("steps must be >= 1");
  } else if (key == "m-max") {
    config.m_max = parse_int(key, value);
    if (*config.m_max < 1) throw ConfigError("m-max must be >= 1");
  } else if (key == "n-max") {
    config.n_max = parse_int(key, value);
    if (config.n_max < 2) throw ConfigError("n-max must be >= 2");
  } else if (key == "dt") {
    config.dt = parse_double(key, value);
    if (config.dt <= 0) throw ConfigError("dt must be > 0");
  } else if (key == "mode") {
    config.modes = {value};
  } else if (key == "zi") {
    config.z_i = parse_complex(key, value);
  } else if (key == "out") {
    config.out = value;
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

SpinFieldModel spin_model_from(const RunConfig& config) {
  SpinFieldModel model;
  model.omega = config.omega;
  if (config.b_sin) {
    model.field = SinusoidField{(*config.b_sin)[0], (*config.b_sin)[1], (*config.b_sin)[2]};
  } else {
    model.field = ConstantField{config.b_const.value_or(Cplx(0.5, 0.0))};
  }
  return model;
}

JaynesCummingsModel jc_model_from(const RunConfig& config) {
  return JaynesCummingsModel{config.omega0, config.omega, config.lambda};
}

int cmd_verify_compose(const RunConfig& config, std::ostream& report) {
  const int n_top = config.steps.value_or(5);
  if (n_top < 1 || n_top > n_max_symbolic)
    throw ConfigError("verify-compose needs 1 <= steps <= 8");

  Summary summary;
  summary.command = "verify-compose";
  std::ostringstream text;

  for (const auto& which : resolve_models(config)) {
    for (int n = 1; n <= n_top; ++n) {
      const TimeGrid grid{config.t_total, n};
      double dev = 0.0;
      if (which == "spin") {
        const SpinFieldModel model = spin_model_from(config);
        dev = max_coeff_dev(compose_discrete(model, grid),
                            assemble_propagator(recurse_exponent(model, grid)));
      } else {
        const JaynesCummingsModel model = jc_model_from(config);
        const Cplx z_bar_f = std::conj(config.z_i);
        dev = max_coeff_dev(compose_discrete(model, grid, config.z_i, z_bar_f),
                            assemble_propagator(recurse_exponent(model, grid, config.z_i),
                                                z_bar_f));
      }
      const std::string name = which + "_compose_vs_recursion_N" + std::to_string(n);
      summary.add(name, dev, 1e-12);
      text << "model=" << which << " N=" << n << " max_dev=" << fmt17(dev)
           << (dev <= 1e-12 ? " PASS" : " FAIL") << "\n";
    }
  }

  // Commuting-field counterexample: without the anticommuting partners the
  // two-slice composition must NOT match the single-exponential form.
  {
    const SpinFieldModel model = spin_model_from(config);
    const TimeGrid grid{config.t_total, 2};
    const double eps = grid.eps();
    const double b_scale =
        std::max(std::abs(field_at(model, eps)), std::abs(field_at(model, 2 * eps)));
    const double bound = 1e-6 * eps * eps * b_scale * b_scale;
    const double dev =
        max_coeff_dev(compose_discrete(model, grid, FieldMode::commuting),
                      assemble_propagator(recurse_exponent(model, grid, FieldMode::commuting)));
    summary.add_bound_below("commuting_counterexample_N2", dev, bound);
    text << "counterexample commuting N=2 deviation=" << fmt17(dev)
         << " required_above=" << fmt17(bound) << (dev > bound ? " PASS" : " FAIL") << "\n";
  }

  if (!config.out.empty()) {
    auto f = open_out_file(config.out);
    f << text.str();
  }
  report << text.str();
  finish_summary(summary, config);
  return summary.all_pass() ? exit_ok : exit_check_failed;
}

int cmd_spin(const RunConfig& config, std::ostream& report) {
  const auto modes = resolve_modes(config, {"discrete", "ode"});
  const int n = config.steps.value_or(64);
  if (n < 1) throw ConfigError("steps must be >= 1");
  const int mm = config.m_max.value_or(default_m_max_spin);
  const SpinFieldModel model = spin_model_from(config);
  const double eps = config.t_total / n;

  const bool want_discrete = std::count(modes.begin(), modes.end(), "discrete") > 0;
  const bool want_ode = std::count(modes.begin(), modes.end(), "ode") > 0;

  std::ofstream file;
  std::ostream* csv = &std::cout;
  if (!config.out.empty()) {
    file = open_out_file(config.out);
    csv = &file;
  }

  *csv << "t";
  for (const auto& m : modes)
    for (const char* name : {"u00", "u01", "u10", "u11"})
      *csv << ',' << m << "_re_" << name << ',' << m << "_im_" << name;
  for (const char* name : {"u00", "u01", "u10", "u11"})
    *csv << ",oracle_re_" << name << ",oracle_im_" << name;
  *csv << ",max_abs_dev\n";

  BracketState disc = initial_bracket_state_spin(mm);
  BracketState ode = initial_bracket_state_spin(mm);
  double max_dev_discrete = 0.0, max_dev_ode = 0.0;
  bool truncated = false;

  for (int j = 1; j <= n; ++j) {
    const double t_j = j * eps;
    const SpinKernel oracle = propagate_spin_exact(model, t_j);
    double row_dev = 0.0;
    *csv << fmt17(t_j);
    AssemblyInfo info;
    if (want_discrete) {
      disc = step_discrete(disc, model, j, eps);
      const SpinKernel k = assemble_kernel_spin(disc, &info);
      truncated |= info.truncated;
      const double dev = max_entry_dev(k, oracle);
      max_dev_discrete = std::max(max_dev_discrete, dev);
      row_dev = std::max(row_dev, dev);
      for (int idx = 0; idx < 4; ++idx) csv_cell(*csv, k.U(idx / 2, idx % 2));
    }
    if (want_ode) {
      ode = integrate_ode(ode, model, t_j, config.dt);
      const SpinKernel k = assemble_kernel_spin(ode, &info);
      truncated |= info.truncated;
      const double dev = max_entry_dev(k, oracle);
      max_dev_ode = std::max(max_dev_ode, dev);
      row_dev = std::max(row_dev, dev);
      for (int idx = 0; idx < 4; ++idx) csv_cell(*csv, k.U(idx / 2, idx % 2));
    }
    for (int idx = 0; idx < 4; ++idx) csv_cell(*csv, oracle.U(idx / 2, idx % 2));
    *csv << ',' << fmt17(row_dev) << "\n";
  }

  Summary summary;
  summary.command = "spin";
  if (want_ode) summary.add("ode_vs_oracle", max_dev_ode, 1e-6);
  if (want_discrete) summary.add("discrete_vs_oracle", max_dev_discrete, std::nullopt);
  if (truncated) summary.notes.push_back("truncation tail above warning threshold");

  report << "spin: ";
  for (const auto& c : summary.checks)
    report << c.name << "=" << fmt17(c.max_dev) << " ";
  report << (summary.all_pass() ? "PASS" : "FAIL") << "\n";
  finish_summary(summary, config);
  return summary.all_pass() ? exit_ok : exit_check_failed;
}

int cmd_jc(const RunConfig& config, std::ostream& report) {
  const auto modes = resolve_modes(config, {"discrete", "ode"});
  const int n = config.steps.value_or(64);
  if (n < 1) throw ConfigError("steps must be >= 1");
  const int mm = config.m_max.value_or(default_m_max_jc);
  if (mm > config.n_max - 2)
    throw ConfigError("truncation guard: m-max must be <= n-max - 2");
  if (std::abs(config.z_i) > 1.0)
    throw ConfigError("|zi| must be <= 1 (table comparisons are tuned for this range)");
  const JaynesCummingsModel model = jc_model_from(config);
  const double eps = config.t_total / n;

  const bool want_discrete = std::count(modes.begin(), modes.end(), "discrete") > 0;
  const bool want_ode = std::count(modes.begin(), modes.end(), "ode") > 0;

  std::ofstream file;
  std::ostream* csv = &std::cout;
  if (!config.out.empty()) {
    file = open_out_file(config.out);
    csv = &file;
  }
  *csv << "t,mode,sector,m,re_path,im_path,re_oracle,im_oracle,abs_dev\n";

  BracketState disc = initial_bracket_state_jc(mm, config.z_i);
  BracketState ode = initial_bracket_state_jc(mm, config.z_i);
  double max_dev_discrete = 0.0, max_dev_ode = 0.0, max_flip_dev = 0.0;
  const bool resonant_vacuum =
      std::abs(config.z_i) == 0.0 && std::abs(model.omega - model.omega_o) < 1e-12;
  bool truncated = false;

  const auto emit_mode = [&](const char* mode_name, const JcKernelTable& path,
                             const JcKernelTable& oracle, double t_j) {
    const char* sector_names = "ABCD";
    double dev_all = 0.0;
    for (int s = 0; s < 4; ++s) {
      const std::vector<Cplx>* pa = nullptr;
      const std::vector<Cplx>* po = nullptr;
      switch (s) {
        case 0: pa = &path.A; po = &oracle.A; break;
        case 1: pa = &path.B; po = &oracle.B; break;
        case 2: pa = &path.C; po = &oracle.C; break;
        default: pa = &path.D; po = &oracle.D; break;
      }
      for (int m = 0; m <= path.m_max(); ++m) {
        const double dev = std::abs((*pa)[m] - (*po)[m]);
        dev_all = std::max(dev_all, dev);
        *csv << fmt17(t_j) << ',' << mode_name << ',' << sector_names[s] << ',' << m;
        csv_cell(*csv, (*pa)[m]);
        csv_cell(*csv, (*po)[m]);
        *csv << ',' << fmt17(dev) << "\n";
      }
    }
    return dev_all;
  };

  for (int j = 1; j <= n; ++j) {
    const double t_j = j * eps;
    const JcKernelTable oracle =
        kernel_table_from_matrix(propagate_jc_exact(model, t_j, config.n_max), config.z_i, mm);
    AssemblyInfo info;
    if (want_discrete) {
      disc = step_discrete(disc, model, j, eps);
      const JcKernelTable path = assemble_kernel_jc(disc, &info);
      truncated |= info.truncated;
      max_dev_discrete = std::max(max_dev_discrete, emit_mode("discrete", path, oracle, t_j));
    }
    if (want_ode) {
      ode = integrate_ode(ode, model, t_j, config.dt);
      const JcKernelTable path = assemble_kernel_jc(ode, &info);
      truncated |= info.truncated;
      max_dev_ode = std::max(max_dev_ode, emit_mode("ode", path, oracle, t_j));
      if (resonant_vacuum && mm >= 1) {
        const double flip_prob = std::norm(path.B[1]);
        const double expected = std::pow(std::sin(model.lam * t_j), 2);
        max_flip_dev = std::max(max_flip_dev, std::abs(flip_prob - expected));
      }
    }
  }

  Summary summary;
  summary.command = "jc";
  if (want_ode) summary.add("ode_table_vs_oracle", max_dev_ode, 1e-6);
  if (want_discrete) summary.add("discrete_table_vs_oracle", max_dev_discrete, std::nullopt);
  if (want_ode && resonant_vacuum)
    summary.add("resonant_flip_vs_sin2", max_flip_dev, 1e-6);
  if (truncated) summary.notes.push_back("truncation tail above warning threshold");

  report << "jc: ";
  for (const auto& c : summary.checks)
    report << c.name << "=" << fmt17(c.max_dev) << " ";
  report << (summary.all_pass() ? "PASS" : "FAIL") << "\n";
  finish_summary(summary, config);
  return summary.all_pass() ? exit_ok : exit_check_failed;
}

int cmd_stationary(const RunConfig& config, std::ostream& report) {
  const int n_top = config.steps.value_or(n_max_symbolic);
  if (n_top < 1 || n_top > n_max_symbolic)
    throw ConfigError("stationary needs 1 <= steps <= 8");

  Summary summary;
  summary.command = "stationary";
  std::ostringstream text;

  for (const auto& which : resolve_models(config)) {
    for (int n = 1; n <= n_top; ++n) {
      const TimeGrid grid{config.t_total, n};
      double dev = 0.0;
      if (which == "spin") {
        const SpinFieldModel model = spin_model_from(config);
        dev = max_coeff_dev(stationary_path(model, grid),
                            assemble_propagator(recurse_exponent(model, grid)));
      } else {
        const JaynesCummingsModel model = jc_model_from(config);
        const Cplx z_bar_f = std::conj(config.z_i);
        dev = max_coeff_dev(stationary_path(model, grid, config.z_i, z_bar_f),
                            assemble_propagator(recurse_exponent(model, grid, config.z_i),
                                                z_bar_f));
      }
      summary.add(which + "_stationary_vs_recursion_N" + std::to_string(n), dev, 1e-12);
      text << "model=" << which << " N=" << n << " max_dev=" << fmt17(dev)
           << (dev <= 1e-12 ? " PASS" : " FAIL") << "\n";
    }
  }

  if (!config.out.empty()) {
    auto f = open_out_file(config.out);
    f << text.str();
  }
  report << text.str();
  finish_summary(summary, config);
  return summary.all_pass() ? exit_ok : exit_check_failed;
}

int cmd_convergence(const RunConfig& config, std::ostream& report) {
  constexpr int levels = 4;
  const int n_base = config.steps.value_or(32);
  if (n_base < 1) throw ConfigError("steps must be >= 1");

  std::ofstream file;
  std::ostream* csv = &std::cout;
  if (!config.out.empty()) {
    file = open_out_file(config.out);
    csv = &file;
  }
  *csv << "model,sweep,level,param,max_dev,ratio\n";

  Summary summary;
  summary.command = "convergence";
  const auto models = resolve_models(config);

  for (const auto& which : models) {
    // halving sweep: first-order convergence of the discrete recursion
    std::vector<double> devs;
    for (int level = 0; level < levels; ++level) {
      const int n = n_base << level;
      const double eps = config.t_total / n;
      double dev = 0.0;
      if (which == "spin") {
        const SpinFieldModel model = spin_model_from(config);
        const int mm = config.m_max.value_or(default_m_max_spin);
        BracketState s = initial_bracket_state_spin(mm);
        for (int j = 1; j <= n; ++j) s = step_discrete(s, model, j, eps);
        dev = max_entry_dev(assemble_kernel_spin(s), propagate_spin_exact(model, config.t_total));
      } else {
        const JaynesCummingsModel model = jc_model_from(config);
        const int mm = config.m_max.value_or(default_m_max_jc);
        if (mm > config.n_max - 2)
          throw ConfigError("truncation guard: m-max must be <= n-max - 2");
        BracketState s = initial_bracket_state_jc(mm, config.z_i);
        for (int j = 1; j <= n; ++j) s = step_discrete(s, model, j, eps);
        dev = max_table_dev(
            assemble_kernel_jc(s),
            kernel_table_from_matrix(propagate_jc_exact(model, config.t_total, config.n_max),
                                     config.z_i, mm));
      }
      devs.push_back(dev);
      *csv << which << ",eps_halving," << level << ',' << n << ',' << fmt17(dev) << ',';
      if (level > 0 && dev > 0.0) *csv << fmt17(devs[level - 1] / dev);
      *csv << "\n";
    }
    for (int level = 0; level + 1 < levels; ++level) {
      const double ratio = devs[level] / devs[level + 1];
      CheckResult c;
      c.name = which + "_eps_ratio_" + std::to_string(level);
      c.max_dev = ratio;
      c.tolerance = std::nullopt;
      c.pass = ratio >= 1.8 && ratio <= 2.2;
      summary.checks.push_back(c);
    }

    // m_max sweep: the reported truncation tail must not grow
    std::vector<double> tails;
    const int mm_base = config.m_max.value_or(
        which == "spin" ? default_m_max_spin : default_m_max_jc);
    for (int level = 0; level < 3; ++level) {
      const int mm = mm_base + 2 * level;
      BracketState s;
      if (which == "spin") {
        s = initial_bracket_state_spin(mm);
        s = integrate_ode(s, spin_model_from(config), config.t_total, config.dt);
      } else {
        s = initial_bracket_state_jc(mm, config.z_i);
        s = integrate_ode(s, jc_model_from(config), config.t_total, config.dt);
      }
      const double tail = truncation_tail(s);
      tails.push_back(tail);
      *csv << which << ",m_max_tail," << level << ',' << mm << ',' << fmt17(tail) << ',';
      if (level > 0 && tail > 0.0) *csv << fmt17(tails[level - 1] / tail);
      *csv << "\n";
    }
    for (int level = 0; level + 1 < 3; ++level) {
      CheckResult c;
      c.name = which + "_tail_nonincreasing_" + std::to_string(level);
      c.max_dev = tails[level + 1];
      c.tolerance = std::nullopt;
      c.pass = tails[level + 1] <= tails[level];
      summary.checks.push_back(c);
    }
  }

  report << "convergence: " << (summary.all_pass() ? "PASS" : "FAIL") << "\n";
  finish_summary(summary, config);
  return summary.all_pass() ? exit_ok : exit_check_failed;
}

} // namespace gcpi
