// Power-law fits of decaying series and checks of the asymptotic profile.
#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "tailwave/evolve_null.hpp"
#include "tailwave/model.hpp"

namespace tailwave {

struct TailFit {
  double exponent = 0.0;      // slope of ln|y| against ln x
  double ln_amplitude = 0.0;
  double phase_slope = 0.0;   // slope of the unwrapped arg y against ln x
  double phase0 = 0.0;
  double residual = 0.0;      // RMS of the ln|y| fit
  cplx amplitude;             // exp(ln_amplitude + i phase0)
  double x_lo = 0.0, x_hi = 0.0;
  int n = 0;
};

// Least squares on samples with x in [x1, x2].
TailFit fit_power_law(const Series& s, double x1, double x2);

// Last decade of the samples with the final 5% of the x range dropped.
std::pair<double, double> default_window(const Series& s);

struct TailReport {
  TailFit fit;
  double predicted_exponent = 0.0;
  double predicted_phase_slope = 0.0;
  double rel_error = 0.0;        // |fit - predicted| / |predicted|
  double phase_rel_error = 0.0;  // zero when no phase is predicted
};

// Radiation field: exponent -Re p, phase slope -Im p. Timelike: twice both.
TailReport radiation_report(const TailFit& fit, const ModelParams& params, int ell);
TailReport timelike_report(const TailFit& fit, const ModelParams& params, int ell);

struct RateDoublingReport {
  double radiation_exponent = 0.0;
  double timelike_exponent = 0.0;
  double expected_radiation = 0.0;
  double expected_timelike = 0.0;
  double tol_rad = 0.05;   // relative
  double tol_time = 0.08;  // relative
  bool radiation_pass = false;
  bool timelike_pass = false;
  bool pass() const { return radiation_pass && timelike_pass; }
};

RateDoublingReport rate_doubling_report(const TailFit& radiation, const TailFit& timelike,
                                        const ModelParams& params, int ell, double tol_rad = 0.05,
                                        double tol_time = 0.08);

struct ProfileSample {
  double t = 0.0;
  double r = 0.0;
  cplx psi;  // r phi
};

struct ProfileResidual {
  double nu = 0.0;  // +infinity when the residual vanishes identically
  double max_weighted_residual = 0.0;
  TailFit fit;
  bool positive = false;
};

// E = |psi - Q z^p| / z^{Re p} with z = r / ((t - r)(t + r)), fitted as (t - r)^{-nu}.
ProfileResidual profile_residual(const std::vector<ProfileSample>& samples, cplx Q,
                                 const ModelParams& params, int ell);

}  // namespace tailwave
