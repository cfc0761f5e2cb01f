#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memdiff/analysis.hpp"
#include "memdiff/harness.hpp"
#include "memdiff/violation.hpp"

namespace memdiff {

inline constexpr const char* kVersion = "0.1.0";

struct ConvergeSpec {
  std::string param = "dt";           // "dt" or "N"
  std::vector<double> values;         // empty -> {4e-3, 2e-3, 1e-3}
};

struct ParsedConfig {
  SolverConfig config;
  ConvergeSpec converge;
};

// Strict JSON config parsing: unknown keys rejected, violations carry the
// offending field path. Structural parse only; call validate_config after.
ParsedConfig parse_config_json(const std::string& text, Violations& errs);
ParsedConfig parse_config_file(const std::string& path, Violations& errs);

std::string fmt17(double v);  // %.17g
uint64_t fnv1a64(const std::string& bytes);

// Digest of the effective run inputs (defaults applied, seed overrides
// resolved), so identical digests imply byte-identical result files.
std::string config_digest(const SolverConfig& cfg, const ConvergeSpec& conv);

void write_trajectory_csv(const std::string& path, const GalerkinTrajectory& traj);
void write_energy_csv(const std::string& path, const CertificateReport& rep);
void write_converge_csv(const std::string& path, const ConvergenceTable& table);
void write_manifest(const std::string& path, const std::string& digest,
                    const std::vector<std::string>& outputs,
                    const std::string& started, const std::string& finished);
void write_energy_svg(const std::string& path, const CertificateReport& rep);

std::string iso8601_now();

}  // namespace memdiff
