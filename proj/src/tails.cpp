#include "tailwave/tails.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tailwave/errors.hpp"

namespace tailwave {

namespace {

struct Line {
  double slope, intercept, rms;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw EmptyWindowError("window has no spread in x");
  Line l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    ss += r * r;
  }
  l.rms = std::sqrt(ss / n);
  return l;
}

}  // namespace

TailFit fit_power_law(const Series& s, double x1, double x2) {
  if (!(x2 > x1) || !(x1 > 0.0)) throw EmptyWindowError("window must satisfy 0 < x1 < x2");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.x.size(); ++i)
    if (s.x[i] >= x1 && s.x[i] <= x2) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.x[a] < s.x[b]; });
  if (idx.size() < 8) throw EmptyWindowError("fewer than 8 samples in window");
  std::vector<double> lx, ly, ph;
  double prev = 0.0, acc = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const cplx y = s.y[idx[k]];
    if (!(std::abs(y) > 0.0)) throw ZeroSampleError("zero sample at x = " + std::to_string(s.x[idx[k]]));
    lx.push_back(std::log(s.x[idx[k]]));
    ly.push_back(std::log(std::abs(y)));
    const double a = std::arg(y);
    if (k == 0) acc = a;
    else acc += std::remainder(a - prev, 2.0 * M_PI);
    prev = a;
    ph.push_back(acc);
  }
  const Line m = least_squares(lx, ly);
  const Line p = least_squares(lx, ph);
  TailFit f;
  f.exponent = m.slope;
  f.ln_amplitude = m.intercept;
  f.residual = m.rms;
  f.phase_slope = p.slope;
  f.phase0 = p.intercept;
  f.amplitude = std::exp(cplx(f.ln_amplitude, f.phase0));
  f.x_lo = s.x[idx.front()];
  f.x_hi = s.x[idx.back()];
  f.n = static_cast<int>(idx.size());
  return f;
}

std::pair<double, double> default_window(const Series& s) {
  if (s.x.empty()) throw EmptyWindowError("empty series");
  const auto [lo, hi] = std::minmax_element(s.x.begin(), s.x.end());
  const double top = *lo + 0.95 * (*hi - *lo);
  return {std::max(*lo, top / 10.0), top};
}

namespace {

TailReport report(const TailFit& fit, double pe, double pph) {
  TailReport r;
  r.fit = fit;
  r.predicted_exponent = pe;
  r.predicted_phase_slope = pph;
  r.rel_error = std::abs(fit.exponent - pe) / std::abs(pe);
  r.phase_rel_error = pph != 0.0 ? std::abs(fit.phase_slope - pph) / std::abs(pph) : 0.0;
  return r;
}

}  // namespace

TailReport radiation_report(const TailFit& fit, const ModelParams& params, int ell) {
  const cplx p = p_of(params, ell);
  return report(fit, -p.real(), -p.imag());
}

TailReport timelike_report(const TailFit& fit, const ModelParams& params, int ell) {
  const cplx p = p_of(params, ell);
  return report(fit, -2.0 * p.real(), -2.0 * p.imag());
}

RateDoublingReport rate_doubling_report(const TailFit& radiation, const TailFit& timelike,
                                        const ModelParams& params, int ell, double tol_rad,
                                        double tol_time) {
  const double rp = p_of(params, ell).real();
  RateDoublingReport r;
  r.radiation_exponent = radiation.exponent;
  r.timelike_exponent = timelike.exponent;
  r.expected_radiation = -rp;
  r.expected_timelike = -2.0 * rp;
  r.tol_rad = tol_rad;
  r.tol_time = tol_time;
  r.radiation_pass = std::abs(radiation.exponent + rp) <= tol_rad * rp;
  r.timelike_pass = std::abs(timelike.exponent + 2.0 * rp) <= tol_time * 2.0 * rp;
  return r;
}

ProfileResidual profile_residual(const std::vector<ProfileSample>& samples, cplx Q,
                                 const ModelParams& params, int ell) {
  const cplx p = p_of(params, ell);
  Series E;
  double emax = 0.0;
  for (auto& s : samples) {
    const double z = s.r / ((s.t - s.r) * (s.t + s.r));
    if (!(s.t > s.r) || !(z > 0.0)) throw DomainError("profile sample outside the forward region");
    const double lz = std::log(z);
    const cplx model = Q * std::exp(p * lz);
    const double e = std::abs(s.psi - model) / std::exp(p.real() * lz);
    E.x.push_back(s.t - s.r);
    E.y.push_back(e);
    emax = std::max(emax, e);
  }
  ProfileResidual out;
  out.max_weighted_residual = emax;
  if (emax == 0.0) {
    out.nu = std::numeric_limits<double>::infinity();
    out.positive = true;
    return out;
  }
  const auto [lo, hi] = std::minmax_element(E.x.begin(), E.x.end());
  out.fit = fit_power_law(E, *lo, *hi);
  out.nu = -out.fit.exponent;
  out.positive = out.nu > 0.0;
  return out;
}

}  // namespace tailwave
