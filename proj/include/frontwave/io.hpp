#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "frontwave/envelopes.hpp"
#include "frontwave/fronts.hpp"
#include "frontwave/ode.hpp"
#include "frontwave/solver.hpp"
#include "frontwave/spectral.hpp"

namespace frontwave {

/// FNV-1a 64-bit content digest, rendered as 16 hex digits.
std::string fnv1a_digest(const std::string& bytes);
std::string file_digest(const std::filesystem::path& path);

/// Formats a double with 15 significant digits ("%.15g").
std::string fmt15(double v);

void write_text_file(const std::filesystem::path& path, const std::string& body);

/// profiles.csv: header t,r,F,C,H; one row per snapshot per node.
std::string render_profiles_csv(const SimulationResult& sim);

/// fronts.csv: header t,field,level,position; absent crossings are omitted.
std::string render_fronts_csv(const FrontSeries& fronts);

/// audit.ndjson: one {"t","invariant_id","margin"} record per line.
std::string render_audit_ndjson(const std::vector<AuditRecord>& audits);

/// ode.csv: header t,C,H,Phi,dPhi_dt (Phi columns are nan when g >= 1).
std::string render_ode_csv(const OdeTrajectory& traj, const ModelParams& m);

/// envelope-report.json.
std::string render_envelope_report(const EnvelopeReport& report);

struct DirichletRow {
  double t, xi, z_numeric, z_asymptotic, rel_error;
};

/// dirichlet.csv: header t,xi,z_numeric,z_asymptotic,rel_error.
std::string render_dirichlet_csv(const std::vector<DirichletRow>& rows);

}  // namespace frontwave
