// Double-null diamond march for the per-mode radiation field psi = r phi.
//   compactified (U, V):  psi_UV = -2i qe psi_V / R + (i qe - l(l+1)) psi / R^2
//   physical (u, v):      psi_uv = -2i qe (1/r + 1/u) psi_v + (i qe - l(l+1)) psi / r^2
// ISP replaces the right side by -(a + l(l+1)) psi / R^2.
#pragma once

#include <complex>
#include <vector>

#include "tailwave/initdata.hpp"
#include "tailwave/model.hpp"

namespace tailwave {

enum class NullMode { Compactified, Physical };

struct NullDomain {
  NullMode mode = NullMode::Compactified;
  double h = 1.0 / 256.0;  // compactified: 1/h must be an even integer
  double u0 = 1.0;         // physical only
  double u_max = 1000.0;
  double v_max = 4000.0;
};

struct NullOptions {
  std::vector<double> record_v;   // physical: lines of constant v; compactified: constant V
  std::vector<int> record_diagonals;  // r = k h
  std::vector<double> record_T;   // compactified: slices of constant T
  bool store_full = false;
  double guard_factor = 1e6;
  int taylor_order = 3;           // compactified start: order of the T expansion
};

// A lattice line: x is u (or U) for constant-v lines and diagonals, R for T-slices.
struct NullLine {
  double coord = 0.0;
  std::vector<double> x;
  std::vector<cplx> psi;
};

struct NullField {
  NullDomain domain;
  ModelParams params;
  int ell = 0;
  cplx p;
  int rows = 0;  // number of first-coordinate lattice values
  int cols = 0;  // number of second-coordinate lattice values
  std::vector<NullLine> v_lines;
  std::vector<NullLine> diagonals;  // coord = k
  std::vector<NullLine> slices;     // coord = T
  // Full storage, row a holds columns b = first_col[a] .. cols - 1.
  std::vector<int> first_col;
  std::vector<std::vector<cplx>> full;
  double axis_max = 0.0;

  double first_coord(int a) const;   // u_a or U_a
  double second_coord(int b) const;  // v_b or V_b
  cplx at(int a, int b) const;       // requires store_full
};

// Diamond update at center index k >= 1 (R = k h):
//   N (1 + beta/2 + g) = E (1 - g) + W (1 + g) - S (1 + beta/2 - g).
// diamond_beta pairs g = i qe / k with the beta that keeps R^p exact.
cplx diamond_beta(cplx p, double kappa, int k);

// Coefficients exact on both axis solutions R^p and R^p (T + c R),
// c = 2 i qe / (2 alpha + 1). Used on the compactified lattice.
struct DiamondCoeffs {
  cplx beta, g;
};
DiamondCoeffs diamond_coeffs(cplx p, double kappa, double alpha, int k);

// Compactified: Cauchy data (W0, W1) on T = -1. Physical: the profile W0 read
// on the ray u = u0 as psi(u0, v) = R^p W0(u0 R) with R = 1/u0 - 1/v.
NullField evolve_null(const RadialProfile& data, const NullDomain& domain, const ModelParams& params,
                      int ell, const NullOptions& opt = {});

struct Series {
  std::vector<double> x;
  std::vector<cplx> y;
};

enum class RadiationProxy { Raw, Extrapolated };

// Compactified: the V = 0 row in physical u. Physical: the v = v_max line, or
// its quadratic extrapolation in 1/v from v_max, v_max/2, v_max/4.
Series sample_radiation(const NullField& field, RadiationProxy proxy = RadiationProxy::Raw);

// phi = psi / r0 along r = r0 against t = 2u + r0, linear in v between diagonals.
Series sample_timelike(const NullField& field, double r0);

// P(0) from the compactified field: least-squares polynomial in R of psi / R^p
// along V = 0 over [R_lo, R_hi], evaluated at R = 0.
cplx null_extract_P0(const NullField& field, double R_lo = 0.005, double R_hi = 0.04, int degree = 3);

// Nodes of a T-slice as W = psi / R^p, sorted by R.
Series slice_W(const NullField& field, double T);

}  // namespace tailwave
