// Subcommand dispatch and the run drivers shared with the test binaries.
#pragma once

#include <string>
#include <vector>

#include "tailwave/config.hpp"
#include "tailwave/evolve_ads.hpp"
#include "tailwave/evolve_null.hpp"

namespace tailwave {

// Exit codes: 0 success, 1 validation, 2 numerical failure, 3 failed verify suite.
int run_command(int argc, char** argv);
int run_command(const std::vector<std::string>& args);  // args exclude the program name

struct AdsSummary {
  int ell = 0;
  cplx P0, Q;
  double energy_drift = 0.0;           // conserved discrete energy
  double energy_drift_field = 0.0;     // Galerkin energy of the field
  int n = 0;
  double cfl = 0.0;
};

struct NullSummary {
  int ell = 0;
  cplx P0, Q;  // compactified only
  double axis_max = 0.0;
};

// Runs the configured Cauchy problem; result.snapshots and P are kept.
EvolveResult run_ads(const RunConfig& cfg, AdsSummary* summary = nullptr);
NullField run_null(const RunConfig& cfg, const NullOptions& extra = {}, NullSummary* summary = nullptr);

struct ConvergenceRow {
  std::string observable;
  double diff_coarse = 0.0;  // |u_n - u_2n|
  double diff_fine = 0.0;    // |u_2n - u_4n|
  double order = 0.0;
  bool saturated = false;
};

// Three-grid self-convergence at n, 2n, 4n. For "ads" n is the radial cell
// count; for "null" it is 1/h of the compactified lattice.
std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg, const std::string& solver, int n);

}  // namespace tailwave
