#include "tailwave/twisted.hpp"

#include <cmath>

#include "tailwave/errors.hpp"

namespace tailwave {

RadialGrid::RadialGrid(int n_cells, double r_max) : n(n_cells), R_max(r_max) {
  if (n_cells < 4) throw OutOfRange("radial grid needs at least 4 cells");
  if (!(r_max > 0.0)) throw OutOfRange("radial grid needs R_max > 0");
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = node(j);
  return out;
}

RadialGridFunction RadialGridFunction::zeros(const RadialGrid& grid, int ell) {
  RadialGridFunction f;
  f.grid = grid;
  f.values.assign(grid.n, cplx(0.0, 0.0));
  f.ell = ell;
  f.loc = Location::Nodes;
  return f;
}

namespace {

void require_nodes(const RadialGridFunction& f) {
  if (f.loc != Location::Nodes || static_cast<int>(f.values.size()) != f.grid.n)
    throw DomainError("expected node-located grid function");
}

void fill_ends_quadratic(std::vector<cplx>& v) {
  const std::size_t n = v.size();
  if (n < 5) return;
  v[0] = 3.0 * v[1] - 3.0 * v[2] + v[3];
  v[n - 1] = 3.0 * v[n - 2] - 3.0 * v[n - 3] + v[n - 4];
}

}  // namespace

RadialGridFunction twisted_d(const RadialGridFunction& f, double alpha) {
  require_nodes(f);
  const RadialGrid& g = f.grid;
  const double h = g.h();
  RadialGridFunction out;
  out.grid = g;
  out.ell = f.ell;
  out.loc = Location::Faces;
  out.values.resize(g.n - 1);
  for (int j = 0; j + 1 < g.n; ++j) {
    const double Ra = std::pow(g.node(j), alpha);
    const double Rb = std::pow(g.node(j + 1), alpha);
    const double Rf = std::pow(g.face(j), alpha);
    out.values[j] = (Rb * f.values[j + 1] - Ra * f.values[j]) / (h * Rf);
  }
  return out;
}

RadialGridFunction twisted_d_faces(const RadialGridFunction& gf, double alpha) {
  if (gf.loc != Location::Faces || static_cast<int>(gf.values.size()) != gf.grid.n - 1)
    throw DomainError("expected face-located grid function");
  const RadialGrid& g = gf.grid;
  const double h = g.h();
  const double b = 1.0 - alpha;
  RadialGridFunction out = RadialGridFunction::zeros(g, gf.ell);
  for (int j = 1; j + 1 < g.n; ++j) {
    const double Rm = std::pow(g.face(j - 1), b);
    const double Rp = std::pow(g.face(j), b);
    out.values[j] = (Rp * gf.values[j] - Rm * gf.values[j - 1]) / (h * std::pow(g.node(j), b));
  }
  fill_ends_quadratic(out.values);
  return out;
}

RadialGridFunction twisted_second(const RadialGridFunction& f, double alpha) {
  return twisted_d_faces(twisted_d(f, alpha), alpha);
}

RadialGridFunction twisted_second_expanded(const RadialGridFunction& f, double alpha) {
  require_nodes(f);
  const RadialGrid& g = f.grid;
  const double h = g.h();
  RadialGridFunction out = RadialGridFunction::zeros(g, f.ell);
  const double a2 = alpha * alpha;
  for (int j = 1; j + 1 < g.n; ++j) {
    const double R = g.node(j);
    const cplx d2 = (f.values[j + 1] - 2.0 * f.values[j] + f.values[j - 1]) / (h * h);
    const cplx d1 = (f.values[j + 1] - f.values[j - 1]) / (2.0 * h);
    out.values[j] = d2 + d1 / R - a2 * f.values[j] / (R * R);
  }
  fill_ends_quadratic(out.values);
  return out;
}

cplx inner_nodes(const RadialGridFunction& a, const RadialGridFunction& b) {
  const double h = a.grid.h();
  cplx s = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j)
    s += a.values[j] * std::conj(b.values[j]) * a.grid.node(static_cast<int>(j)) * h;
  return s;
}

cplx inner_faces(const RadialGridFunction& a, const RadialGridFunction& b) {
  const double h = a.grid.h();
  cplx s = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j)
    s += a.values[j] * std::conj(b.values[j]) * a.grid.face(static_cast<int>(j)) * h;
  return s;
}

HardyResult hardy_check(const RadialGridFunction& f, double alpha, double p, double tol) {
  require_nodes(f);
  if (std::abs(alpha + p) < 1e-9) throw DegenerateError("hardy_check requires alpha + p != 0");
  const RadialGrid& g = f.grid;
  const double h = g.h();
  double l2 = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double R = g.node(j);
    l2 += std::norm(f.values[j]) * std::pow(R, -2.0 - 2.0 * p) * R * h;
  }
  const RadialGridFunction d = twisted_d(f, alpha);
  double r2 = 0.0;
  for (int j = 0; j + 1 < g.n; ++j) {
    const double R = g.face(j);
    r2 += std::norm(d.values[j]) * std::pow(R, -2.0 * p) * R * h;
  }
  HardyResult out;
  out.lhs = std::sqrt(l2);
  out.rhs = std::sqrt(r2) / std::abs(alpha + p);
  out.pass = out.lhs <= out.rhs * (1.0 + tol) + 1e-300;
  return out;
}

namespace {

// integral of x^{q-1} over [j, j+1], q > 0
double cell_moment(int j, double q) {
  if (j == 0) return 1.0 / q;
  const double jp = j + 1.0;
  return -std::pow(jp, q) * std::expm1(q * std::log1p(-1.0 / jp)) / q;
}

}  // namespace

ModeWeights mode_weights(const RadialGrid& grid, double alpha) {
  ModeWeights w;
  w.alpha = alpha;
  const double h = grid.h();
  const double qm = 2.0 * alpha + 2.0;
  const double qc = 2.0 * alpha + 1.0;
  const double sm = std::pow(h, qm);
  const double sc = std::pow(h, qc);
  w.mass.resize(grid.n);
  w.charge.resize(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    w.mass[j] = sm * cell_moment(j, qm);
    w.charge[j] = sc * cell_moment(j, qc);
  }
  w.face.resize(grid.n - 1);
  for (int j = 0; j + 1 < grid.n; ++j) w.face[j] = std::pow(grid.face(j), qc);
  w.outer = std::pow(grid.R_max, qc);
  return w;
}

void apply_mode_operator(const ModeWeights& w, double h, const std::vector<cplx>& W,
                         std::vector<cplx>& out) {
  const std::size_t n = W.size();
  out.resize(n);
  cplx left = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx right = (j + 1 < n) ? w.face[j] * (W[j + 1] - W[j]) : -2.0 * w.outer * W[j];
    out[j] = (right - left) / (h * w.mass[j]);
    left = right;
  }
}

double energy(const RadialGridFunction& W, const RadialGridFunction& Wdot,
              const ModelParams& params, int ell) {
  require_nodes(W);
  require_nodes(Wdot);
  const double alpha = alpha_of(params, ell);
  const ModeWeights w = mode_weights(W.grid, alpha);
  const double h = W.grid.h();
  const int n = W.grid.n;
  double kin = 0.0, pot = 0.0;
  for (int j = 0; j < n; ++j) kin += w.mass[j] * std::norm(Wdot.values[j]);
  for (int j = 0; j + 1 < n; ++j) pot += w.face[j] * std::norm(W.values[j + 1] - W.values[j]) / h;
  pot += 2.0 * w.outer * std::norm(W.values[n - 1]) / h;
  return kin + pot;
}

double energy_alpha0_form(const RadialGridFunction& W, const RadialGridFunction& Wdot,
                          const ModelParams& params, int ell) {
  require_nodes(W);
  require_nodes(Wdot);
  const double alpha = alpha_of(params, ell);
  const double alpha0 = alpha_of(params, 0);
  const double L = ell * (ell + 1.0);
  const RadialGrid& g = W.grid;
  const double h = g.h();
  RadialGridFunction Phi = RadialGridFunction::zeros(g, ell);
  double kin = 0.0, ang = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double R = g.node(j);
    const double Ra = std::pow(R, alpha);
    Phi.values[j] = Ra * W.values[j];
    kin += std::norm(Ra * Wdot.values[j]) * R * h;
    ang += L * std::norm(Phi.values[j]) / R * h;
  }
  const RadialGridFunction d = twisted_d(Phi, alpha0);
  double rad = 0.0;
  for (int j = 0; j + 1 < g.n; ++j) rad += std::norm(d.values[j]) * g.face(j) * h;
  return kin + rad + ang;
}

double h1_norm2(const RadialGridFunction& Phi, double alpha, int ell) {
  require_nodes(Phi);
  const RadialGrid& g = Phi.grid;
  const double h = g.h();
  const double L = ell * (ell + 1.0);
  double s = 0.0;
  for (int j = 0; j < g.n; ++j) s += (1.0 + L) * std::norm(Phi.values[j]) / g.node(j) * h;
  const RadialGridFunction d = twisted_d(Phi, alpha);
  for (int j = 0; j + 1 < g.n; ++j) s += std::norm(d.values[j]) * g.face(j) * h;
  return s;
}

}  // namespace tailwave
