#include "tailwave/evolve_ads.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <gsl/gsl_integration.h>

#include "tailwave/errors.hpp"

namespace tailwave {

AdsState make_state(const ModelParams& params, const std::vector<DataPair>& data, double T0) {
  if (data.empty()) throw OutOfRange("no modes supplied");
  AdsState s;
  s.T = T0;
  s.params = validate_params(params);
  int lmax = 0;
  for (auto& d : data) lmax = std::max(lmax, d.W0.ell);
  s.exponents = exponent_table(params, lmax);
  for (auto& d : data) {
    if (d.W0.grid.n != d.W1.grid.n || d.W0.grid.R_max != d.W1.grid.R_max)
      throw DomainError("W and Wdot grids differ");
    AdsMode m;
    m.ell = d.W0.ell;
    m.W = d.W0;
    m.Wdot = d.W1;
    m.Wdot.ell = m.ell;
    s.modes.push_back(std::move(m));
  }
  return s;
}

namespace {

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

// Integrals of w(R) f g over one element for linear f, g; w = R^s.
struct ElementQuad {
  gsl_integration_glfixed_table* t;
  ElementQuad() : t(gsl_integration_glfixed_table_alloc(16)) {}
  ~ElementQuad() { gsl_integration_glfixed_table_free(t); }
  ElementQuad(const ElementQuad&) = delete;
  ElementQuad& operator=(const ElementQuad&) = delete;

  // Moments int_lo^hi R^s (R - c)^k for k = 0, 1, 2.
  std::array<double, 3> moments(double s, double lo, double hi, double c) const {
    std::array<double, 3> m{};
    if (lo == 0.0) {
      // Exact on [0, hi]: expand (R - c)^k in powers of R.
      const double p0 = std::pow(hi, s + 1.0) / (s + 1.0);
      const double p1 = std::pow(hi, s + 2.0) / (s + 2.0);
      const double p2 = std::pow(hi, s + 3.0) / (s + 3.0);
      m[0] = p0;
      m[1] = p1 - c * p0;
      m[2] = p2 - 2.0 * c * p1 + c * c * p0;
      return m;
    }
    for (std::size_t i = 0; i < t->n; ++i) {
      double x, w;
      gsl_integration_glfixed_point(lo, hi, i, &x, &w, t);
      const double ws = w * std::pow(x, s);
      const double d = x - c;
      m[0] += ws;
      m[1] += ws * d;
      m[2] += ws * d * d;
    }
    return m;
  }
};

// Symmetric tridiagonal LDL^T; throws on a nonpositive or vanishing pivot.
template <class T>
void ldl(const std::vector<T>& d, const std::vector<T>& o, std::vector<T>& D, std::vector<T>& L) {
  const std::size_t n = d.size();
  D.assign(n, T(0.0));
  L.assign(n, T(0.0));
  D[0] = d[0];
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs(D[j - 1]) < 1e-300) throw SingularSystemError("vanishing pivot in the Galerkin system");
    L[j] = o[j - 1] / D[j - 1];
    D[j] = d[j] - L[j] * o[j - 1];
  }
}

template <class T>
void ldl_solve(const std::vector<T>& D, const std::vector<T>& L, std::vector<cplx>& x) {
  const std::size_t n = x.size();
  for (std::size_t j = 1; j < n; ++j) x[j] -= L[j] * x[j - 1];
  for (std::size_t j = 0; j < n; ++j) x[j] /= D[j];
  for (std::size_t j = n - 1; j-- > 0;) x[j] -= L[j + 1] * x[j + 1];
}

template <class T>
void tri_apply(const std::vector<T>& d, const std::vector<T>& o, const std::vector<cplx>& x,
               std::vector<cplx>& y) {
  const std::size_t n = x.size();
  y.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx v = d[j] * x[j];
    if (j > 0) v += o[j - 1] * x[j - 1];
    if (j + 1 < n) v += o[j] * x[j + 1];
    y[j] = v;
  }
}

double re_dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::real(std::conj(a[j]) * b[j]);
  return s;
}

// Largest eigenvalue of M^{-1} K by power iteration.
double largest_eigenvalue(const ModeMatrices& m, const std::vector<double>& D, const std::vector<double>& L) {
  const std::size_t n = m.Md.size();
  std::vector<cplx> x(n), y, Kx;
  for (std::size_t j = 0; j < n; ++j) x[j] = (j % 2 == 0) ? 1.0 : -1.0;
  double lam = 0.0;
  for (int it = 0; it < 300; ++it) {
    tri_apply(m.Kd, m.Ko, x, Kx);
    tri_apply(m.Md, m.Mo, x, y);
    lam = re_dot(x, Kx) / re_dot(x, y);
    y = Kx;
    ldl_solve(D, L, y);
    const double nrm = std::sqrt(re_dot(y, y));
    for (std::size_t j = 0; j < n; ++j) x[j] = y[j] / nrm;
  }
  return lam;
}

}  // namespace

ModeMatrices mode_matrices(const RadialGrid& g, double alpha) {
  const int n = g.n;
  const double h = g.h();
  const double sm = 2.0 * alpha + 1.0, sg = 2.0 * alpha;
  ModeMatrices m;
  m.Md.assign(n, 0.0);
  m.Kd.assign(n, 0.0);
  m.Gd.assign(n, 0.0);
  m.Mo.assign(n - 1, 0.0);
  m.Ko.assign(n - 1, 0.0);
  m.Go.assign(n - 1, 0.0);
  ElementQuad q;
  // Element between nodes j and j+1: phi_j = (x_{j+1} - R)/h, phi_{j+1} = (R - x_j)/h.
  for (int j = 0; j + 1 < n; ++j) {
    const double xa = g.node(j), xb = g.node(j + 1);
    const double lo = j == 0 ? 0.0 : xa;
    for (int which = 0; which < 2; ++which) {
      const double s = which == 0 ? sm : sg;
      // Moments about xa: phi_{j+1} = d/h, phi_j = 1 - d/h with d = R - xa.
      const auto mo = q.moments(s, lo, xb, xa);
      const double bb = mo[2] / (h * h);
      const double ab = mo[1] / h - bb;
      const double aa = mo[0] - 2.0 * mo[1] / h + bb;
      auto& D = which == 0 ? m.Md : m.Gd;
      auto& O = which == 0 ? m.Mo : m.Go;
      D[j] += aa;
      D[j + 1] += bb;
      O[j] += ab;
      if (which == 0) {
        const double k = mo[0] / (h * h);
        m.Kd[j] += k;
        m.Kd[j + 1] += k;
        m.Ko[j] -= k;
      }
    }
  }
  // Last half cell: phi = (R_max - R)/hl.
  {
    const double xa = g.node(n - 1), hl = g.R_max - xa;
    for (int which = 0; which < 2; ++which) {
      const double s = which == 0 ? sm : sg;
      const auto mo = q.moments(s, xa, g.R_max, g.R_max);
      (which == 0 ? m.Md : m.Gd)[n - 1] += mo[2] / (hl * hl);
      if (which == 0) m.Kd[n - 1] += mo[0] / (hl * hl);
    }
  }
  return m;
}

AdsStepper::AdsStepper(const AdsState& state, double dt, const AdsOptions& opt)
    : kappa_(state.params.qe()), dt_(dt) {
  if (state.modes.empty()) throw OutOfRange("state has no modes");
  const RadialGrid& g = state.modes[0].W.grid;
  const double h = g.h();
  if (!(dt > 0.0)) throw CflError("time step must be positive");
  if (dt > opt.cfl_max * h * (1.0 + 1e-12))
    throw CflError("dt = " + std::to_string(dt) + " exceeds cfl_max * h = " + std::to_string(opt.cfl_max * h));
  double scale = 0.0;
  for (auto& mode : state.modes) {
    if (mode.W.grid.n != g.n || mode.W.grid.R_max != g.R_max) throw DomainError("modes use different grids");
    scale = std::max({scale, max_abs(mode.W.values), max_abs(mode.Wdot.values)});
    Coeffs c;
    c.m = mode_matrices(g, alpha_of(state.params, mode.ell));
    ldl(c.m.Md, c.m.Mo, c.md, c.ml);
    const double lam = largest_eigenvalue(c.m, c.md, c.ml);
    if (dt * dt * lam / 4.0 >= 1.0) throw CflError("time step violates the stability bound of the mode operator");
    std::vector<cplx> pd(g.n), po(g.n - 1);
    for (int j = 0; j < g.n; ++j) pd[j] = cplx(c.m.Md[j], kappa_ * dt * c.m.Gd[j]);
    for (int j = 0; j + 1 < g.n; ++j) po[j] = cplx(c.m.Mo[j], kappa_ * dt * c.m.Go[j]);
    ldl(pd, po, c.rd, c.rl);
    c_.push_back(std::move(c));
  }
  guard_ = opt.guard_factor * (scale > 0.0 ? scale : 1e-300);
}

// p <- p + (dt/2) M^{-1} (-K q - 2 i qe G p)
void AdsStepper::half_kick(const Coeffs& c, const std::vector<cplx>& q, std::vector<cplx>& p,
                           std::vector<cplx>& a, std::vector<cplx>& b) const {
  tri_apply(c.m.Kd, c.m.Ko, q, a);
  tri_apply(c.m.Gd, c.m.Go, p, b);
  const cplx ch(0.0, 2.0 * kappa_);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = -a[j] - ch * b[j];
  ldl_solve(c.md, c.ml, a);
  for (std::size_t j = 0; j < a.size(); ++j) p[j] += 0.5 * dt_ * a[j];
}

void AdsStepper::step(AdsState& s) const {
  std::vector<cplx> a, b;
  for (std::size_t k = 0; k < s.modes.size(); ++k) {
    auto& q = s.modes[k].W.values;
    auto& p = s.modes[k].Wdot.values;
    const Coeffs& c = c_[k];
    const std::size_t n = q.size();
    half_kick(c, q, p, a, b);
    for (std::size_t j = 0; j < n; ++j) q[j] += dt_ * p[j];
    // (M + i qe dt G) p_{n+1} = M p_{n+1/2} - (dt/2) K q_{n+1}
    tri_apply(c.m.Md, c.m.Mo, p, a);
    tri_apply(c.m.Kd, c.m.Ko, q, b);
    for (std::size_t j = 0; j < n; ++j) p[j] = a[j] - 0.5 * dt_ * b[j];
    ldl_solve(c.rd, c.rl, p);
    for (std::size_t j = 0; j < n; ++j) {
      if (!(std::abs(q[j]) <= guard_)) throw BlowUpError("max|W| exceeded the guard at T = " + std::to_string(s.T + dt_));
    }
  }
  s.T += dt_;
}

double AdsStepper::galerkin_energy(const AdsState& s, std::size_t mode) const {
  const Coeffs& c = c_.at(mode);
  const auto& q = s.modes[mode].W.values;
  const auto& p = s.modes[mode].Wdot.values;
  std::vector<cplx> Mp, Kq;
  tri_apply(c.m.Md, c.m.Mo, p, Mp);
  tri_apply(c.m.Kd, c.m.Ko, q, Kq);
  return re_dot(p, Mp) + re_dot(q, Kq);
}

double AdsStepper::discrete_energy(const AdsState& s, std::size_t mode) const {
  const Coeffs& c = c_.at(mode);
  const auto& q = s.modes[mode].W.values;
  std::vector<cplx> p = s.modes[mode].Wdot.values, a, b, Mp, Kq;
  half_kick(c, q, p, a, b);
  tri_apply(c.m.Md, c.m.Mo, p, Mp);
  tri_apply(c.m.Kd, c.m.Ko, q, Kq);
  double e = re_dot(p, Mp);
  for (std::size_t j = 0; j < q.size(); ++j) e += std::real(std::conj(q[j] + dt_ * p[j]) * Kq[j]);
  return e;
}

AdsState step(const AdsState& state, double dt, const AdsOptions& opt) {
  AdsStepper st(state, dt, opt);
  AdsState out = state;
  st.step(out);
  return out;
}

double EvolveResult::energy_drift(std::size_t mode) const {
  const auto& e = energies.at(mode);
  const double e0 = e.front().energy;
  double d = 0.0;
  for (auto& s : e) d = std::max(d, std::abs(s.energy - e0));
  return e0 > 0.0 ? d / e0 : d;
}

double EvolveResult::modified_energy_drift(std::size_t mode) const {
  const auto& e = energies.at(mode);
  const double e0 = e.front().modified;
  double d = 0.0;
  for (auto& s : e) d = std::max(d, std::abs(s.modified - e0));
  return e0 > 0.0 ? d / e0 : d;
}

EvolveResult evolve(const AdsState& initial, double T_end, double cfl, int stride,
                    const AdsOptions& opt) {
  if (T_end < initial.T) throw OutOfRange("T_end precedes the initial time");
  if (!(cfl > 0.0) || cfl > opt.cfl_max) throw CflError("cfl must lie in (0, cfl_max]");
  const double h = initial.modes.at(0).W.grid.h();
  const double span = T_end - initial.T;
  const int nsteps = span > 0.0 ? static_cast<int>(std::ceil(span / (cfl * h) - 1e-9)) : 0;
  const double dt = nsteps > 0 ? span / nsteps : cfl * h;

  EvolveResult res;
  res.dt = dt;
  res.steps = nsteps;
  AdsState s = initial;
  AdsStepper st(s, dt, opt);
  const int pstride = stride > 0 ? stride : 1;
  res.P.resize(s.modes.size());
  res.energies.resize(s.modes.size());
  auto record = [&](bool snap) {
    for (std::size_t k = 0; k < s.modes.size(); ++k) {
      res.P[k].ell = s.modes[k].ell;
      res.P[k].T.push_back(s.T);
      res.P[k].P.push_back(extract_P(s.modes[k].W));
    }
    if (snap) res.snapshots.push_back(s);
  };
  auto record_energy = [&]() {
    for (std::size_t k = 0; k < s.modes.size(); ++k)
      res.energies[k].push_back({s.T, st.galerkin_energy(s, k), st.discrete_energy(s, k)});
  };
  record(true);
  record_energy();
  for (int i = 1; i <= nsteps; ++i) {
    st.step(s);
    if (i == nsteps) s.T = T_end;
    record_energy();
    const bool last = i == nsteps;
    if (last || i % pstride == 0) record(last || (stride > 0 && i % stride == 0));
  }
  return res;
}

cplx extract_P(const RadialGridFunction& W) {
  if (W.values.size() < 3) throw DomainError("need three cells to extract P");
  return 1.875 * W.values[0] - 1.25 * W.values[1] + 0.375 * W.values[2];
}

cplx extract_P(const AdsState& state, std::size_t mode) {
  return extract_P(state.modes.at(mode).W);
}

cplx compute_Q(cplx P0, const ModelParams& params, int ell) {
  const cplx p = p_of(params, ell);
  return std::exp(p * std::log(4.0)) * P0;
}

}  // namespace tailwave
