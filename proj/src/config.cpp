#include "frontwave/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace frontwave {

const char* mode_name(RunMode m) {
  switch (m) {
    case RunMode::Simulate: return "simulate";
    case RunMode::Sweep: return "sweep";
    case RunMode::Verify: return "verify";
    case RunMode::Ode: return "ode";
    case RunMode::Dirichlet: return "dirichlet";
    case RunMode::Fit: return "fit";
  }
  return "?";
}

std::optional<RunMode> mode_from_name(const std::string& name) {
  for (RunMode m : {RunMode::Simulate, RunMode::Sweep, RunMode::Verify,
                    RunMode::Ode, RunMode::Dirichlet, RunMode::Fit})
    if (name == mode_name(m)) return m;
  return std::nullopt;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line;
  mutable bool used = false;
};

using Table = std::map<std::string, Entry>;

[[noreturn]] void fail(const std::string& msg, int line) {
  throw ConfigError(msg + " (line " + std::to_string(line) + ")");
}

double parse_double(const std::string& key, const Entry& e) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(e.value, &pos);
  } catch (const std::exception&) {
    fail("value for '" + key + "' is not a number: '" + e.value + "'", e.line);
  }
  if (pos != e.value.size())
    fail("value for '" + key + "' is not a number: '" + e.value + "'", e.line);
  return v;
}

long parse_int(const std::string& key, const Entry& e) {
  const double v = parse_double(key, e);
  if (v != std::floor(v))
    fail("value for '" + key + "' must be an integer", e.line);
  return static_cast<long>(v);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const std::vector<std::string> kSweepKeys = {
    "a", "b", "s", "g", "d", "N", "t_end", "dr", "amplitude", "support_radius"};

}  // namespace

void apply_sweep_value(ExperimentConfig& cfg, const std::string& key,
                       double value) {
  if (key == "a") cfg.sim.params.a = value;
  else if (key == "b") cfg.sim.params.b = value;
  else if (key == "s") cfg.sim.params.s = value;
  else if (key == "g") cfg.sim.params.g = value;
  else if (key == "d") cfg.sim.params.d = value;
  else if (key == "N") {
    cfg.sim.params.dim_N = static_cast<int>(value);
    cfg.sim.grid.dim_N = static_cast<int>(value);
  } else if (key == "t_end") cfg.sim.t_end = value;
  else if (key == "dr") cfg.sim.grid.dr = value;
  else if (key == "amplitude") cfg.sim.init.amplitude = value;
  else if (key == "support_radius") cfg.sim.init.support_radius = value;
  else throw ConfigError("parameter '" + key + "' cannot be swept");
}

void resolve_grid(ExperimentConfig& cfg) {
  double r_max = cfg.r_max_value;
  if (cfg.r_max_auto) {
    const double c_star = spreading_speeds(cfg.sim.params).c_star;
    r_max = c_star * cfg.sim.t_end * 1.3 + 50.0;
  }
  const double dr = cfg.sim.grid.dr;
  cfg.sim.grid.n_points = static_cast<Index>(std::ceil(r_max / dr - 1e-12)) + 1;
}

ExperimentConfig parse_config(const std::string& text) {
  Table global, sweep;
  std::string section;  // "" or "sweep"
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header '" + line + "'", line_no);
      section = trim(line.substr(1, line.size() - 2));
      if (section != "sweep")
        fail("unknown section '[" + section + "]'", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail("expected key = value, got '" + line + "'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("empty key", line_no);
    Table& table = section.empty() ? global : sweep;
    if (table.count(key))
      fail("duplicate key '" + key + "'", line_no);
    table[key] = {value, line_no};
  }

  ExperimentConfig cfg;
  auto take = [&](const std::string& key) -> const Entry* {
    auto it = global.find(key);
    if (it == global.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  };

  if (const Entry* e = take("mode")) {
    cfg.mode = mode_from_name(e->value);
    if (!cfg.mode) fail("unknown mode '" + e->value + "'", e->line);
  }
  if (const Entry* e = take("a")) cfg.sim.params.a = parse_double("a", *e);
  if (const Entry* e = take("b")) cfg.sim.params.b = parse_double("b", *e);
  if (const Entry* e = take("s")) cfg.sim.params.s = parse_double("s", *e);
  if (const Entry* e = take("g")) cfg.sim.params.g = parse_double("g", *e);
  if (const Entry* e = take("d")) cfg.sim.params.d = parse_double("d", *e);
  if (const Entry* e = take("N")) {
    cfg.sim.params.dim_N = static_cast<int>(parse_int("N", *e));
    cfg.sim.grid.dim_N = cfg.sim.params.dim_N;
  }
  if (const Entry* e = take("t_end")) cfg.sim.t_end = parse_double("t_end", *e);
  if (const Entry* e = take("dr")) cfg.sim.grid.dr = parse_double("dr", *e);
  if (const Entry* e = take("snapshot_dt"))
    cfg.sim.snapshot_dt = parse_double("snapshot_dt", *e);
  if (const Entry* e = take("cfl")) cfg.sim.cfl_factor = parse_double("cfl", *e);
  if (const Entry* e = take("amplitude"))
    cfg.sim.init.amplitude = parse_double("amplitude", *e);
  if (const Entry* e = take("support_radius"))
    cfg.sim.init.support_radius = parse_double("support_radius", *e);
  if (const Entry* e = take("r_max")) {
    if (e->value == "auto") {
      cfg.r_max_auto = true;
    } else {
      cfg.r_max_auto = false;
      cfg.r_max_value = parse_double("r_max", *e);
    }
  }
  if (const Entry* e = take("levels")) {
    cfg.sim.levels.clear();
    for (const auto& tok : split_list(e->value))
      cfg.sim.levels.push_back(parse_double("levels", {tok, e->line}));
    if (cfg.sim.levels.empty()) fail("levels list is empty", e->line);
  }
  if (const Entry* e = take("c_audit_factor"))
    cfg.c_audit_factor = parse_double("c_audit_factor", *e);
  if (const Entry* e = take("seed"))
    cfg.seed = static_cast<unsigned long>(parse_int("seed", *e));
  if (const Entry* e = take("workers"))
    cfg.workers = static_cast<int>(parse_int("workers", *e));

  if (const Entry* e = take("ode_C0")) cfg.ode_x0.C = parse_double("ode_C0", *e);
  if (const Entry* e = take("ode_H0")) cfg.ode_x0.H = parse_double("ode_H0", *e);
  if (const Entry* e = take("ode_T")) cfg.ode_T = parse_double("ode_T", *e);
  if (const Entry* e = take("ode_dt")) cfg.ode_dt = parse_double("ode_dt", *e);

  if (const Entry* e = take("t0")) cfg.dirichlet_t0 = parse_double("t0", *e);
  if (const Entry* e = take("dxi")) cfg.dirichlet_dxi = parse_double("dxi", *e);
  if (const Entry* e = take("drho")) cfg.dirichlet_drho = parse_double("drho", *e);
  if (const Entry* e = take("tau_end"))
    cfg.dirichlet_tau_end = parse_double("tau_end", *e);
  if (const Entry* e = take("delta")) {
    if (e->value == "auto") {
      cfg.dirichlet_delta_auto = true;
    } else {
      cfg.dirichlet_delta_auto = false;
      cfg.dirichlet_delta = parse_double("delta", *e);
    }
  }

  if (const Entry* e = take("fit_field")) {
    if (e->value == "F") cfg.fit_field = FieldId::F;
    else if (e->value == "C") cfg.fit_field = FieldId::C;
    else if (e->value == "H") cfg.fit_field = FieldId::H;
    else if (e->value == "F+C") cfg.fit_field = FieldId::FC;
    else fail("fit_field must be one of F, C, H, F+C", e->line);
  }
  if (const Entry* e = take("fit_level")) cfg.fit_level = parse_double("fit_level", *e);
  {
    const Entry* e1 = take("fit_t1");
    const Entry* e2 = take("fit_t2");
    if ((e1 == nullptr) != (e2 == nullptr))
      throw ConfigError("fit_t1 and fit_t2 must be given together");
    if (e1 && e2) {
      cfg.fit_window_auto = false;
      cfg.fit_t1 = parse_double("fit_t1", *e1);
      cfg.fit_t2 = parse_double("fit_t2", *e2);
    }
  }

  for (const auto& [key, entry] : global)
    if (!entry.used)
      fail("unknown key '" + key + "'", entry.line);

  for (const auto& [key, entry] : sweep) {
    if (std::find(kSweepKeys.begin(), kSweepKeys.end(), key) == kSweepKeys.end())
      fail("parameter '" + key + "' cannot be swept", entry.line);
    SweepAxis axis;
    axis.key = key;
    axis.tokens = split_list(entry.value);
    if (axis.tokens.empty()) fail("sweep list for '" + key + "' is empty", entry.line);
    for (const auto& tok : axis.tokens)
      axis.values.push_back(parse_double(key, {tok, entry.line}));
    cfg.sweep_axes.push_back(std::move(axis));
  }

  cfg.sim.params.validate();
  if (!(cfg.c_audit_factor > 1.0))
    throw ConfigError("c_audit_factor must be > 1");
  resolve_grid(cfg);
  return cfg;
}

}  // namespace frontwave
