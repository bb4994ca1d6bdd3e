// Twisted radial derivatives R^{-a} d/dR (R^a f) on a cell-centered grid,
// twisted Sobolev norms, the conserved energy and the Hardy checker.
#pragma once

#include <complex>
#include <vector>

#include "tailwave/model.hpp"

namespace tailwave {

using cplx = std::complex<double>;

struct RadialGrid {
  int n = 0;
  double R_max = 1.0;

  RadialGrid() = default;
  RadialGrid(int n_cells, double r_max);

  double h() const { return R_max / n; }
  // Node j = 0..n-1 sits at (j + 1/2) h.
  double node(int j) const { return (j + 0.5) * h(); }
  // Face j = 0..n-2 sits between nodes j and j+1, at (j + 1) h.
  double face(int j) const { return (j + 1.0) * h(); }
  std::vector<double> nodes() const;
};

enum class Location { Nodes, Faces };

struct RadialGridFunction {
  RadialGrid grid;
  std::vector<cplx> values;
  int ell = 0;
  Location loc = Location::Nodes;

  static RadialGridFunction zeros(const RadialGrid& grid, int ell = 0);
  template <class F>
  static RadialGridFunction sample(const RadialGrid& grid, F&& f, int ell = 0) {
    RadialGridFunction out = zeros(grid, ell);
    for (int j = 0; j < grid.n; ++j) out.values[j] = f(grid.node(j));
    return out;
  }
  double position(int j) const { return loc == Location::Nodes ? grid.node(j) : grid.face(j); }
  std::size_t size() const { return values.size(); }
};

// Face values (R_{j+1}^a f_{j+1} - R_j^a f_j) / (h R_{j+1/2}^a).
RadialGridFunction twisted_d(const RadialGridFunction& f, double alpha);

// Node values of d^{1-a} applied to face data g.
RadialGridFunction twisted_d_faces(const RadialGridFunction& g, double alpha);

// Flux-form composition d^{1-a} d^{a}; the two end nodes are filled by
// quadratic extrapolation from the interior.
RadialGridFunction twisted_second(const RadialGridFunction& f, double alpha);

// Expanded form f'' + f'/R - a^2 f/R^2 with central differences; same end rule.
RadialGridFunction twisted_second_expanded(const RadialGridFunction& f, double alpha);

// Inner products with measure R dR.
cplx inner_nodes(const RadialGridFunction& a, const RadialGridFunction& b);
cplx inner_faces(const RadialGridFunction& a, const RadialGridFunction& b);

struct HardyResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
};

// lhs = ||R^{-1-p} f||, rhs = ||R^{-p} d^a f|| / |a + p|.
HardyResult hardy_check(const RadialGridFunction& f, double alpha, double p, double tol = 1e-9);

// Finite-volume weights of the regularized mode operator
// R^{-(2a+1)} d/dR (R^{2a+1} d/dR) on the cell-centered grid.
struct ModeWeights {
  double alpha = 0.0;
  std::vector<double> mass;    // integral of R^{2a+1} over each cell
  std::vector<double> charge;  // integral of R^{2a} over each cell
  std::vector<double> face;    // R^{2a+1} at interior faces
  double outer = 0.0;          // R_max^{2a+1}
};

ModeWeights mode_weights(const RadialGrid& grid, double alpha);

// out = A W with A the finite-volume mode operator: zero flux at R = 0,
// Dirichlet mirror ghost beyond R_max.
void apply_mode_operator(const ModeWeights& w, double h, const std::vector<cplx>& W,
                         std::vector<cplx>& out);

// Energy of a mode in the regularized variable W (Phi = R^{alpha_ell} W):
// sum of |Phi_T|^2 R dR and |d^{-alpha_ell} Phi|^2 R dR, which equals the
// alpha_0 form with the l(l+1) R^{-2} term after integration by parts.
// The Dirichlet condition at R_max enters through a mirror ghost.
double energy(const RadialGridFunction& W, const RadialGridFunction& Wdot,
              const ModelParams& params, int ell);

// The same energy written with d^{alpha_0} and l(l+1) R^{-2} |Phi|^2 on the
// midpoint rule. Agrees with energy() to O(h^2).
double energy_alpha0_form(const RadialGridFunction& W, const RadialGridFunction& Wdot,
                          const ModelParams& params, int ell);

struct DataNorms {
  double h1_data = 0.0;
  double h2_data = 0.0;
  double h2_data_N = 0.0;
};

// Per-mode H^1 norm squared with twisting exponent alpha.
double h1_norm2(const RadialGridFunction& Phi, double alpha, int ell);

DataNorms data_norms(const RadialGridFunction& Phi0, const RadialGridFunction& Phidot0,
                     const ModelParams& params, int N);

}  // namespace tailwave
