// Cauchy evolution of the regularized per-mode field W = R^{-alpha_l} Phi
// on T in [-1, 0]:  W_TT = W'' + (2 alpha + 1) W'/R - 2 i qe W_T / R.
#pragma once

#include <complex>
#include <vector>

#include "tailwave/initdata.hpp"
#include "tailwave/model.hpp"
#include "tailwave/twisted.hpp"

namespace tailwave {

struct AdsMode {
  int ell = 0;
  RadialGridFunction W;
  RadialGridFunction Wdot;
};

struct AdsState {
  double T = -1.0;
  std::vector<AdsMode> modes;
  ModelParams params;
  ExponentTable exponents;
};

struct PSeries {
  int ell = 0;
  std::vector<double> T;
  std::vector<cplx> P;
};

struct AdsOptions {
  double cfl_max = 0.5;
  double guard_factor = 1e6;
};

AdsState make_state(const ModelParams& params, const std::vector<DataPair>& data, double T0 = -1.0);

// Piecewise-linear Galerkin matrices on the cell centers, symmetric tridiagonal
// (diagonal d, first off-diagonal o). The first element is the line through the
// two innermost nodes continued to the axis; the last ends at W(R_max) = 0.
//   mass    M = (R^{2a+1} phi_i, phi_j)
//   stiff   K = (R^{2a+1} phi_i', phi_j')
//   charge  G = (R^{2a} phi_i, phi_j)
struct ModeMatrices {
  std::vector<double> Md, Mo, Kd, Ko, Gd, Go;
};

ModeMatrices mode_matrices(const RadialGrid& grid, double alpha);

// Precomputed per-mode factorizations for repeated steps of one size.
// Leapfrog with the charge term centered in time,
//   M (q+ - 2q + q-)/dt^2 + i qe G (q+ - q-)/dt + K q = 0,
// run as explicit half kick, drift, implicit half kick on (q, p).
class AdsStepper {
 public:
  AdsStepper(const AdsState& state, double dt, const AdsOptions& opt = {});
  void step(AdsState& state) const;
  double dt() const { return dt_; }
  // |p_{n+1/2}|_M^2 + Re(q_{n+1}, K q_n); conserved exactly by the step (up to rounding).
  double discrete_energy(const AdsState& state, std::size_t mode) const;
  // p* M p + q* K q.
  double galerkin_energy(const AdsState& state, std::size_t mode) const;

 private:
  struct Coeffs {
    ModeMatrices m;
    std::vector<double> md, ml;  // LDL^T of M
    std::vector<cplx> rd, rl;    // LDL^T of M + i qe dt G
  };
  void half_kick(const Coeffs& c, const std::vector<cplx>& q, std::vector<cplx>& p, std::vector<cplx>& a,
                 std::vector<cplx>& b) const;
  double kappa_;
  double dt_;
  double guard_;
  std::vector<Coeffs> c_;
};

AdsState step(const AdsState& state, double dt, const AdsOptions& opt = {});

struct EnergySample {
  double T = 0.0;
  double energy = 0.0;       // AdsStepper::galerkin_energy
  double modified = 0.0;     // AdsStepper::discrete_energy
};

struct EvolveResult {
  std::vector<AdsState> snapshots;
  std::vector<PSeries> P;
  std::vector<std::vector<EnergySample>> energies;  // per mode
  double dt = 0.0;
  int steps = 0;
  double energy_drift(std::size_t mode) const;           // relative drift of the Galerkin energy
  double modified_energy_drift(std::size_t mode) const;  // relative drift of the conserved form
};

// Steps of size cfl * h (shortened uniformly to land on T_end). A snapshot
// is kept every `stride` steps and at the end; stride <= 0 keeps only the ends.
EvolveResult evolve(const AdsState& initial, double T_end = 0.0, double cfl = 0.4, int stride = 0,
                    const AdsOptions& opt = {});

cplx extract_P(const RadialGridFunction& W);
cplx extract_P(const AdsState& state, std::size_t mode = 0);

cplx compute_Q(cplx P0, const ModelParams& params, int ell);

}  // namespace tailwave
