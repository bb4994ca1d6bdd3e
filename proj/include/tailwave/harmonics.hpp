// Spherical harmonics on a Gauss-Legendre x uniform product grid,
// projections onto angular modes, and the Poincare-type identities.
#pragma once

#include <complex>
#include <vector>

namespace tailwave {

using cplx = std::complex<double>;

struct SphereGrid {
  int L = 0;  // band limit
  int ntheta = 0;
  int nphi = 0;
  std::vector<double> theta;   // Gauss-Legendre nodes mapped to theta
  std::vector<double> wtheta;  // Gauss-Legendre weights in cos(theta)
  std::vector<double> phi;     // uniform nodes
  // Y[(l*l + l + m) * npoints + i*nphi + k]
  std::vector<cplx> ytable;

  std::size_t npoints() const { return static_cast<std::size_t>(ntheta) * nphi; }
  double weight(int i) const;  // full quadrature weight of a point in row i
};

// Grid exact for products of harmonics up to degree L.
SphereGrid make_sphere_grid(int L);

struct SphereFunction {
  SphereGrid grid;
  std::vector<cplx> values;  // row-major in (theta, phi)
};

struct ModeCoefficients {
  int L = 0;
  std::vector<cplx> c;  // index l*l + l + m

  static std::size_t index(int l, int m) {
    return static_cast<std::size_t>(l * l + l + m);
  }
  cplx& at(int l, int m) { return c[index(l, m)]; }
  cplx at(int l, int m) const { return c[index(l, m)]; }
  double norm2() const;
};

cplx eval_harmonic(int l, int m, double theta, double phi);

SphereFunction sample_function(const SphereGrid& grid, const ModeCoefficients& coeffs);
ModeCoefficients analyze(const SphereFunction& f);

// Coefficients of degree ell only (others zero).
ModeCoefficients project(const SphereFunction& f, int ell);
SphereFunction project_geq(const SphereFunction& f, int ell);
// Coefficient-wise multiplication by -l(l+1), reconstructed on the grid.
SphereFunction laplacian(const SphereFunction& f);

cplx integrate(const SphereFunction& f);
cplx inner(const SphereFunction& f, const SphereFunction& g);
double l2norm2(const SphereFunction& f);
// Integral of |angular gradient|^2, as -<f, Laplacian f>.
double grad_norm2(const SphereFunction& f);

struct PoincareResiduals {
  double poinc1 = 0.0;    // |lhs - middle| + |middle| for the ell0 mode
  double poinc2 = 0.0;    // max over ell >= ell0 of both equalities
  double poinc2_5 = 0.0;  // max over ell >= ell0 + 1
  // Signed slack (rhs - lhs) of the two inequalities in the form that holds
  // for every ell0: the second-order bound with (Lap + ell0(ell0+1)) on
  // modes >= ell0, and the gradient bound on modes >= ell0 + 1.
  double slack3 = 0.0;
  double slack4 = 0.0;
  // Same inequalities read with (Lap + 2) and on modes >= ell0 for both.
  // These are negative for ell0 = 0 (slack3) and ell0 >= 1 (slack4) on
  // inputs with energy in the boundary mode.
  double slack3_shift2 = 0.0;
  double slack4_geq = 0.0;
};

PoincareResiduals poincare_residuals(const SphereFunction& f, int ell0);

}  // namespace tailwave
