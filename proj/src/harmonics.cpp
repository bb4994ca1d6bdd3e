#include "tailwave/harmonics.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tailwave/errors.hpp"

namespace tailwave {

namespace {

constexpr double kPi = std::numbers::pi;

cplx harmonic_nonneg(int l, int m, double theta, double phi) {
  const double y = std::sph_legendre(static_cast<unsigned>(l), static_cast<unsigned>(m), theta);
  return y * std::polar(1.0, m * phi);
}

void check_same_grid(const SphereFunction& f, const SphereFunction& g) {
  if (f.grid.ntheta != g.grid.ntheta || f.grid.nphi != g.grid.nphi) {
    throw BandLimitError("sphere functions live on different grids");
  }
}

}  // namespace

cplx eval_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw IndexError("harmonic needs |m| <= l");
  if (m >= 0) return harmonic_nonneg(l, m, theta, phi);
  const cplx y = harmonic_nonneg(l, -m, theta, phi);
  return ((-m) % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

double SphereGrid::weight(int i) const { return wtheta[i] * 2.0 * kPi / nphi; }

SphereGrid make_sphere_grid(int L) {
  if (L < 0) throw BandLimitError("band limit must be >= 0");
  SphereGrid g;
  g.L = L;
  g.ntheta = L + 1;
  g.nphi = 2 * L + 1;
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(g.ntheta);
  for (int i = 0; i < g.ntheta; ++i) {
    double x = 0.0;
    double w = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, i, &x, &w, table);
    g.theta.push_back(std::acos(x));
    g.wtheta.push_back(w);
  }
  gsl_integration_glfixed_table_free(table);
  for (int k = 0; k < g.nphi; ++k) g.phi.push_back(2.0 * kPi * k / g.nphi);

  const std::size_t np = g.npoints();
  g.ytable.resize(static_cast<std::size_t>((L + 1) * (L + 1)) * np);
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      cplx* row = &g.ytable[ModeCoefficients::index(l, m) * np];
      for (int i = 0; i < g.ntheta; ++i) {
        for (int k = 0; k < g.nphi; ++k) {
          row[i * g.nphi + k] = eval_harmonic(l, m, g.theta[i], g.phi[k]);
        }
      }
    }
  }
  return g;
}

double ModeCoefficients::norm2() const {
  double s = 0.0;
  for (const cplx& z : c) s += std::norm(z);
  return s;
}

SphereFunction sample_function(const SphereGrid& grid, const ModeCoefficients& coeffs) {
  if (coeffs.L > grid.L) throw BandLimitError("coefficients exceed the grid band limit");
  SphereFunction f{grid, std::vector<cplx>(grid.npoints(), cplx{})};
  const std::size_t np = grid.npoints();
  for (int l = 0; l <= coeffs.L; ++l) {
    for (int m = -l; m <= l; ++m) {
      const cplx c = coeffs.at(l, m);
      if (c == cplx{}) continue;
      const cplx* y = &grid.ytable[ModeCoefficients::index(l, m) * np];
      for (std::size_t j = 0; j < np; ++j) f.values[j] += c * y[j];
    }
  }
  return f;
}

ModeCoefficients analyze(const SphereFunction& f) {
  const SphereGrid& g = f.grid;
  ModeCoefficients out;
  out.L = g.L;
  out.c.assign(static_cast<std::size_t>((g.L + 1) * (g.L + 1)), cplx{});
  const std::size_t np = g.npoints();
  for (int l = 0; l <= g.L; ++l) {
    for (int m = -l; m <= l; ++m) {
      const cplx* y = &g.ytable[ModeCoefficients::index(l, m) * np];
      cplx s{};
      for (int i = 0; i < g.ntheta; ++i) {
        cplx row{};
        for (int k = 0; k < g.nphi; ++k) {
          const std::size_t j = static_cast<std::size_t>(i) * g.nphi + k;
          row += f.values[j] * std::conj(y[j]);
        }
        s += g.weight(i) * row;
      }
      out.at(l, m) = s;
    }
  }
  return out;
}

ModeCoefficients project(const SphereFunction& f, int ell) {
  if (ell < 0 || ell > f.grid.L) throw BandLimitError("projection degree exceeds band limit");
  ModeCoefficients all = analyze(f);
  for (int l = 0; l <= all.L; ++l) {
    if (l == ell) continue;
    for (int m = -l; m <= l; ++m) all.at(l, m) = 0.0;
  }
  return all;
}

SphereFunction project_geq(const SphereFunction& f, int ell) {
  if (ell < 0 || ell > f.grid.L) throw BandLimitError("projection degree exceeds band limit");
  ModeCoefficients all = analyze(f);
  for (int l = 0; l < ell; ++l) {
    for (int m = -l; m <= l; ++m) all.at(l, m) = 0.0;
  }
  return sample_function(f.grid, all);
}

SphereFunction laplacian(const SphereFunction& f) {
  ModeCoefficients all = analyze(f);
  for (int l = 0; l <= all.L; ++l) {
    for (int m = -l; m <= l; ++m) all.at(l, m) *= -static_cast<double>(l) * (l + 1);
  }
  return sample_function(f.grid, all);
}

cplx integrate(const SphereFunction& f) {
  const SphereGrid& g = f.grid;
  cplx s{};
  for (int i = 0; i < g.ntheta; ++i) {
    cplx row{};
    for (int k = 0; k < g.nphi; ++k) row += f.values[static_cast<std::size_t>(i) * g.nphi + k];
    s += g.weight(i) * row;
  }
  return s;
}

cplx inner(const SphereFunction& f, const SphereFunction& g) {
  check_same_grid(f, g);
  SphereFunction prod{f.grid, f.values};
  for (std::size_t j = 0; j < prod.values.size(); ++j) prod.values[j] *= std::conj(g.values[j]);
  return integrate(prod);
}

double l2norm2(const SphereFunction& f) { return inner(f, f).real(); }

double grad_norm2(const SphereFunction& f) { return -inner(laplacian(f), f).real(); }

PoincareResiduals poincare_residuals(const SphereFunction& f, int ell0) {
  if (ell0 < 0 || ell0 > f.grid.L) throw BandLimitError("ell0 exceeds band limit");
  const SphereGrid& g = f.grid;
  const ModeCoefficients all = analyze(f);
  const double L0 = static_cast<double>(ell0) * (ell0 + 1);

  auto mode = [&](int l) {
    ModeCoefficients c = all;
    for (int k = 0; k <= c.L; ++k) {
      if (k == l) continue;
      for (int m = -k; m <= k; ++m) c.at(k, m) = 0.0;
    }
    return sample_function(g, c);
  };
  auto shifted = [&](const SphereFunction& h, double shift) {
    SphereFunction out = laplacian(h);
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] += shift * h.values[j];
    return out;
  };

  PoincareResiduals r;
  {
    const SphereFunction f0 = mode(ell0);
    const double lhs = grad_norm2(f0) - L0 * l2norm2(f0);
    const double mid = l2norm2(shifted(f0, L0));
    r.poinc1 = std::abs(lhs - mid) + std::abs(mid);
  }
  for (int l = ell0; l <= g.L; ++l) {
    const SphereFunction fl = mode(l);
    const double Ll = static_cast<double>(l) * (l + 1);
    const double grad = grad_norm2(fl);
    const double left = (Ll - L0) * (grad - L0 * l2norm2(fl));
    const double mid = l2norm2(shifted(fl, L0));
    const double right = (Ll - L0) * (Ll - L0) * l2norm2(fl);
    r.poinc2 = std::max({r.poinc2, std::abs(left - mid), std::abs(mid - right)});
    if (l >= ell0 + 1) {
      const double a = grad - L0 * l2norm2(fl);
      const double b = (Ll - L0) / Ll * grad;
      r.poinc2_5 = std::max(r.poinc2_5, std::abs(a - b));
    }
  }

  const SphereFunction geq = project_geq(f, ell0);
  const double gap_geq = grad_norm2(geq) - L0 * l2norm2(geq);
  r.slack3 = l2norm2(shifted(geq, L0)) / (2.0 * (ell0 + 1)) - gap_geq;
  r.slack3_shift2 = l2norm2(shifted(geq, 2.0)) / (2.0 * (ell0 + 1)) - gap_geq;
  r.slack4_geq = 0.5 * (ell0 + 2) * gap_geq - grad_norm2(geq);
  if (ell0 + 1 <= g.L) {
    const SphereFunction geq1 = project_geq(f, ell0 + 1);
    const double gap1 = grad_norm2(geq1) - L0 * l2norm2(geq1);
    r.slack4 = 0.5 * (ell0 + 2) * gap1 - grad_norm2(geq1);
  }
  return r;
}

}  // namespace tailwave
