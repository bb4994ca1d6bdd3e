// Per-mode Dirichlet problem d^{1-a} d^{a} Phi = f on (0, R_max).
#pragma once

#include <cstdint>
#include <vector>

#include "tailwave/twisted.hpp"

namespace tailwave {

struct EllipticProblem {
  double alpha = 0.5;
  int ell = 0;
  RadialGrid grid;
  RadialGridFunction f;  // node values of the right side
  double outer = 0.0;    // Phi(R_max)
};

struct EllipticSolution {
  RadialGridFunction Phi;
  double min_pivot = 0.0;
};

EllipticSolution solve_dirichlet_detail(const EllipticProblem& prob);
RadialGridFunction solve_dirichlet(const EllipticProblem& prob);

// H^1 norm (twist alpha) and the single-mode second-order norm ||R^{-p} d^{1-a} d^{a} Phi||.
double elliptic_h1_norm(const RadialGridFunction& Phi, double alpha);
double elliptic_h2_norm(const RadialGridFunction& Phi, double alpha, double p);
double weighted_l2_norm(const RadialGridFunction& f, double p);  // ||R^{-p} f||

struct EstimateRow {
  std::uint64_t seed = 0;
  double ratio_energ = 0.0;
  double ratio_elliptic = 0.0;
  int n = 0;
};

struct EstimateReport {
  std::vector<EstimateRow> rows;
  double max_ratio_energ = 0.0;
  double max_ratio_elliptic = 0.0;
};

// Random right sides: sums of three smooth bumps inside (0.05, 0.9), seeded per member.
RadialGridFunction random_rhs(const RadialGrid& grid, std::uint64_t seed);

// Hypothesis: p + 1 < alpha_{ell+1} with alpha_{ell+1}^2 = alpha^2 + 2(ell+1), p + 1 != -alpha.
EstimateReport estimate_report(int members, double alpha, double p, int ell, int n,
                               std::uint64_t seed0 = 1);

}  // namespace tailwave
