#pragma once

// CSV and SVG emitters. Numbers are written in shortest round-trip form so
// every file is a deterministic function of its inputs.

#include <filesystem>
#include <string>
#include <vector>

#include "qgd/experiments.hpp"
#include "qgd/schemes.hpp"
#include "qgd/spectral.hpp"

namespace qgd {

std::string format_number(double x);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Columns x, rho, u.
std::string snapshot_csv(const MeshState& state, const Mesh& mesh);
/// Columns t, mass, momentum, min_rho, max_abs_u.
std::string diagnostics_csv(const Trajectory& traj);

struct VerdictRow {
  LinearizedParams params;
  StabilityVerdict verdict;
};

/// Columns alpha, beta, kappa, variant, necessary, criterion, sufficient,
/// oracle_rho, oracle_gram.
std::string verdict_csv(const std::vector<VerdictRow>& rows);

/// Columns alpha, beta, verdict, oscillation_score.
std::string region_csv(const RegionMap& map);
/// Columns alpha, necessary, criterion, sufficient (empty when unknown).
std::string overlay_csv(const RegionMap& map);

/// Density and velocity against x for the first and last snapshot.
std::string profile_svg(const Trajectory& traj, const Mesh& mesh, const std::string& title);

/// Filled markers for conservative runs, hollow for the others, with the
/// necessary (solid), criterion (dashed) and sufficient (dot-dash) curves.
std::string region_svg(const RegionMap& map, Regularization variant, const std::string& title);

}  // namespace qgd
