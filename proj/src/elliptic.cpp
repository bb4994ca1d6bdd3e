#include "tailwave/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include "tailwave/errors.hpp"
#include "tailwave/initdata.hpp"

namespace tailwave {

EllipticSolution solve_dirichlet_detail(const EllipticProblem& prob) {
  if (!(prob.alpha > 0.0)) throw OutOfRange("elliptic problem needs alpha > 0");
  const RadialGrid& g = prob.grid;
  if (prob.f.grid.n != g.n) throw DomainError("right side does not match grid");
  const int n = g.n;
  const double h = g.h();
  const double al = prob.alpha;
  const ModeWeights w = mode_weights(g, al);

  // K W = b with K symmetric positive definite: K = -h * M A. The source
  // integral over a cell treats R^{1-a} f as locally constant.
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
  std::vector<cplx> b(n);
  for (int j = 0; j < n; ++j) {
    double d = 0.0;
    if (j > 0) d += w.face[j - 1];
    if (j + 1 < n) d += w.face[j];
    else d += 2.0 * w.outer;
    diag[j] = d;
    if (j + 1 < n) off[j] = -w.face[j];
    b[j] = -h * w.charge[j] * std::pow(g.node(j), 1.0 - al) * prob.f.values[j];
  }
  b[n - 1] += 2.0 * w.outer * (prob.outer * std::pow(g.R_max, -al));

  // LDL^T for the symmetric tridiagonal matrix.
  std::vector<double> D(n), Lo(n > 1 ? n - 1 : 0);
  D[0] = diag[0];
  double min_pivot = D[0];
  for (int j = 1; j < n; ++j) {
    if (!(D[j - 1] > 0.0)) throw SingularSystemError("nonpositive pivot");
    Lo[j - 1] = off[j - 1] / D[j - 1];
    D[j] = diag[j] - Lo[j - 1] * off[j - 1];
    min_pivot = std::min(min_pivot, D[j]);
  }
  if (!(min_pivot > 0.0)) throw SingularSystemError("matrix numerically singular");

  std::vector<cplx> y(b);
  for (int j = 1; j < n; ++j) y[j] -= Lo[j - 1] * y[j - 1];
  for (int j = 0; j < n; ++j) y[j] /= D[j];
  for (int j = n - 2; j >= 0; --j) y[j] -= Lo[j] * y[j + 1];

  EllipticSolution sol;
  sol.Phi = RadialGridFunction::zeros(g, prob.ell);
  for (int j = 0; j < n; ++j) sol.Phi.values[j] = std::pow(g.node(j), al) * y[j];
  sol.min_pivot = min_pivot;
  return sol;
}

RadialGridFunction solve_dirichlet(const EllipticProblem& prob) {
  return solve_dirichlet_detail(prob).Phi;
}

double elliptic_h1_norm(const RadialGridFunction& Phi, double alpha) {
  return std::sqrt(h1_norm2(Phi, alpha, Phi.ell));
}

double weighted_l2_norm(const RadialGridFunction& f, double p) {
  const RadialGrid& g = f.grid;
  const double h = g.h();
  double s = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double R = g.node(j);
    s += std::norm(f.values[j]) * std::pow(R, 1.0 - 2.0 * p) * h;
  }
  return std::sqrt(s);
}

double elliptic_h2_norm(const RadialGridFunction& Phi, double alpha, double p) {
  const RadialGrid& g = Phi.grid;
  const ModeWeights w = mode_weights(g, alpha);
  const RadialGridFunction W = W_from_phi(Phi, alpha);
  std::vector<cplx> Aw;
  apply_mode_operator(w, g.h(), W.values, Aw);
  RadialGridFunction second = RadialGridFunction::zeros(g, Phi.ell);
  // The last node carries the Dirichlet closure, not the interior operator.
  for (int j = 0; j + 1 < g.n; ++j) second.values[j] = std::pow(g.node(j), alpha) * Aw[j];
  return weighted_l2_norm(second, p);
}

RadialGridFunction random_rhs(const RadialGrid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  struct Term { double c, w; cplx a; };
  Term t[3];
  for (auto& x : t) {
    x.w = 0.05 + 0.15 * U(rng);
    const double lo = 0.05 + x.w, hi = 0.9 - x.w;
    x.c = lo + (hi - lo) * U(rng);
    x.a = cplx(2.0 * U(rng) - 1.0, 2.0 * U(rng) - 1.0);
  }
  return RadialGridFunction::sample(grid, [&](double R) {
    cplx s = 0.0;
    for (auto& x : t) s += x.a * bump_shape((R - x.c) / x.w);
    return s;
  });
}

EstimateReport estimate_report(int members, double alpha, double p, int ell, int n,
                               std::uint64_t seed0) {
  const double alpha_next = std::sqrt(alpha * alpha + 2.0 * (ell + 1.0));
  if (!(p + 1.0 < alpha_next)) throw HypothesisError("needs p + 1 < alpha_{ell+1}");
  if (std::abs(p + 1.0 + alpha) < 1e-12) throw HypothesisError("needs p + 1 != -alpha_ell");
  const RadialGrid grid(n, 1.0);
  std::vector<std::future<EstimateRow>> jobs;
  for (int k = 0; k < members; ++k) {
    const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(k);
    jobs.push_back(std::async(std::launch::async, [=]() {
      EllipticProblem prob;
      prob.alpha = alpha;
      prob.ell = ell;
      prob.grid = grid;
      prob.f = random_rhs(grid, seed);
      prob.f.ell = ell;
      const RadialGridFunction Phi = solve_dirichlet(prob);
      EstimateRow row;
      row.seed = seed;
      row.n = n;
      const double fl2 = weighted_l2_norm(prob.f, 0.0);
      const double fp = weighted_l2_norm(prob.f, p);
      row.ratio_energ = fl2 > 0.0 ? elliptic_h1_norm(Phi, alpha) / fl2 : 0.0;
      row.ratio_elliptic = fp > 0.0 ? elliptic_h2_norm(Phi, alpha, p) / fp : 0.0;
      return row;
    }));
  }
  EstimateReport rep;
  for (auto& j : jobs) {
    rep.rows.push_back(j.get());
    rep.max_ratio_energ = std::max(rep.max_ratio_energ, rep.rows.back().ratio_energ);
    rep.max_ratio_elliptic = std::max(rep.max_ratio_elliptic, rep.rows.back().ratio_elliptic);
  }
  return rep;
}

}  // namespace tailwave
