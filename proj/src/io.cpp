#include "frontwave/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace frontwave {

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file for digest: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a_digest(ss.str());
}

std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out << body;
}

std::string render_profiles_csv(const SimulationResult& sim) {
  std::string out = "t,r,F,C,H\n";
  const auto& grid = sim.config.grid;
  for (const auto& s : sim.snapshots) {
    const std::string ts = fmt15(s.t);
    for (Index i = 0; i < s.size(); ++i) {
      out += ts;
      out += ',';
      out += fmt15(grid.r(i));
      out += ',';
      out += fmt15(s.F[i]);
      out += ',';
      out += fmt15(s.C[i]);
      out += ',';
      out += fmt15(s.H[i]);
      out += '\n';
    }
  }
  return out;
}

std::string render_fronts_csv(const FrontSeries& fronts) {
  std::string out = "t,field,level,position\n";
  for (const auto& [key, xs] : fronts.positions) {
    for (std::size_t k = 0; k < fronts.times.size() && k < xs.size(); ++k) {
      if (std::isnan(xs[k])) continue;
      out += fmt15(fronts.times[k]);
      out += ',';
      out += field_name(key.field);
      out += ',';
      out += fmt15(key.level);
      out += ',';
      out += fmt15(xs[k]);
      out += '\n';
    }
  }
  return out;
}

std::string render_audit_ndjson(const std::vector<AuditRecord>& audits) {
  std::string out;
  for (const auto& a : audits) {
    nlohmann::json j;
    j["t"] = a.t;
    j["invariant_id"] = a.invariant_id;
    j["margin"] = a.margin;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string render_ode_csv(const OdeTrajectory& traj, const ModelParams& m) {
  std::string out = "t,C,H,Phi,dPhi_dt\n";
  const bool has_phi = m.g < 1.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const OdeState& x = traj.states[k];
    out += fmt15(traj.times[k]);
    out += ',';
    out += fmt15(x.C);
    out += ',';
    out += fmt15(x.H);
    out += ',';
    if (has_phi && x.C > 0.0 && x.H > 0.0) {
      out += fmt15(lyapunov(x, m));
      out += ',';
      out += fmt15(lyapunov_dissipation(x, m));
    } else {
      out += "nan,nan";
    }
    out += '\n';
  }
  return out;
}

std::string render_envelope_report(const EnvelopeReport& report) {
  nlohmann::json j;
  j["constants"] = {{"A1", report.constants.A1},
                    {"A2", report.constants.A2},
                    {"A_star", report.constants.A_star}};
  j["c_audit"] = report.constants.c_audit;
  j["h_audit_restricted"] = report.h_audit_restricted;
  j["checks"] = report.checks;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : report.violations) {
    j["violations"].push_back({{"t", v.t},
                               {"r", v.r},
                               {"field", std::string(1, v.field)},
                               {"margin", v.margin}});
  }
  return j.dump(2) + "\n";
}

std::string render_dirichlet_csv(const std::vector<DirichletRow>& rows) {
  std::string out = "t,xi,z_numeric,z_asymptotic,rel_error\n";
  for (const auto& r : rows) {
    out += fmt15(r.t);
    out += ',';
    out += fmt15(r.xi);
    out += ',';
    out += fmt15(r.z_numeric);
    out += ',';
    out += fmt15(r.z_asymptotic);
    out += ',';
    out += fmt15(r.rel_error);
    out += '\n';
  }
  return out;
}

}  // namespace frontwave
