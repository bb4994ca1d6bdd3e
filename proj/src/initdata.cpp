#include "tailwave/initdata.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "tailwave/errors.hpp"

namespace tailwave {

Family parse_family(const std::string& name) {
  if (name == "bump") return Family::Bump;
  if (name == "polynomial_bump") return Family::PolynomialBump;
  if (name == "static_mode") return Family::StaticMode;
  if (name == "gaussian") return Family::Gaussian;
  if (name == "custom_table") return Family::CustomTable;
  throw ConfigError("unknown data family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Bump: return "bump";
    case Family::PolynomialBump: return "polynomial_bump";
    case Family::StaticMode: return "static_mode";
    case Family::Gaussian: return "gaussian";
    case Family::CustomTable: return "custom_table";
  }
  return "?";
}

double bump_shape(double s) {
  const double d = 1.0 - s * s;
  if (d <= 0.0) return 0.0;
  return std::exp(-1.0 / d);
}

double polynomial_bump_shape(double s) {
  const double d = 1.0 - s * s;
  if (d <= 0.0) return 0.0;
  const double d2 = d * d;
  return d2 * d2;
}

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double static_cutoff(double R, double Rc, double ramp) {
  return 1.0 - smooth_step((R - Rc) / ramp);
}

namespace {

// Natural cubic spline over a real table; zero outside the table range.
class TableSpline {
 public:
  explicit TableSpline(std::vector<std::pair<double, double>> rows) {
    std::sort(rows.begin(), rows.end());
    if (rows.size() < 3) throw ConfigError("custom table needs at least 3 rows");
    for (auto& r : rows) {
      x_.push_back(r.first);
      y_.push_back(r.second);
    }
    for (std::size_t i = 1; i < x_.size(); ++i)
      if (!(x_[i] > x_[i - 1])) throw ConfigError("custom table R values must be distinct");
    spline_.reset(gsl_spline_alloc(gsl_interp_cspline, x_.size()));
    acc_.reset(gsl_interp_accel_alloc());
    gsl_spline_init(spline_.get(), x_.data(), y_.data(), x_.size());
  }
  double operator()(double R) const {
    if (R < x_.front() || R > x_.back()) return 0.0;
    return gsl_spline_eval(spline_.get(), R, acc_.get());
  }
  double max_x() const { return x_.back(); }

 private:
  struct SplineFree {
    void operator()(gsl_spline* s) const { gsl_spline_free(s); }
  };
  struct AccelFree {
    void operator()(gsl_interp_accel* a) const { gsl_interp_accel_free(a); }
  };
  std::vector<double> x_, y_;
  std::unique_ptr<gsl_spline, SplineFree> spline_;
  std::unique_ptr<gsl_interp_accel, AccelFree> acc_;
};

}  // namespace

RadialProfile make_profile(const DataFamily& fam) {
  if (!(fam.width > 0.0) && fam.family != Family::StaticMode && fam.family != Family::CustomTable)
    throw OutOfRange("data width must be positive");
  const double c = fam.center, w = fam.width;
  const cplx A = fam.amplitude, B = fam.velocity;
  RadialProfile p;
  switch (fam.family) {
    case Family::Bump:
      p.W0 = [=](double R) { return A * bump_shape((R - c) / w); };
      p.W1 = [=](double R) { return B * bump_shape((R - c) / w); };
      break;
    case Family::PolynomialBump:
      p.W0 = [=](double R) { return A * polynomial_bump_shape((R - c) / w); };
      p.W1 = [=](double R) { return B * polynomial_bump_shape((R - c) / w); };
      break;
    case Family::Gaussian:
      p.W0 = [=](double R) { const double s = (R - c) / w; return A * std::exp(-s * s); };
      p.W1 = [=](double R) { const double s = (R - c) / w; return B * std::exp(-s * s); };
      break;
    case Family::StaticMode:
      p.W0 = [=](double R) { return A * static_cutoff(R); };
      p.W1 = [](double) { return cplx(0.0, 0.0); };
      break;
    case Family::CustomTable: {
      auto sp = std::make_shared<TableSpline>(fam.table);
      p.W0 = [=](double R) { return A * (*sp)(R); };
      p.W1 = [=](double R) { return B * (*sp)(R); };
      break;
    }
  }
  return p;
}

namespace {

void check_support(const DataFamily& fam, const RadialGrid& grid) {
  const bool extend = fam.delta > 0.0;
  if (extend) {
    if (!(fam.delta < 0.5)) throw OutOfRange("delta must lie in (0, 1/2)");
    if (grid.R_max < 1.0 + fam.delta) throw SupportError("grid too short for the mollified extension");
  }
  switch (fam.family) {
    case Family::Bump:
    case Family::PolynomialBump:
      if (fam.center - fam.width < 0.0) throw SupportError("bump support reaches R < 0");
      if (!extend && fam.center + fam.width > 0.9 + 1e-12)
        throw SupportError("bump support must lie inside (0, 0.9)");
      break;
    case Family::Gaussian:
      if (!extend) throw SupportError("gaussian data need truncation at R = 1 (set delta > 0)");
      break;
    case Family::CustomTable: {
      double xmax = 0.0;
      for (auto& r : fam.table) xmax = std::max(xmax, r.first);
      if (!extend && xmax > 0.9 + 1e-12) throw SupportError("table support must lie inside (0, 0.9)");
      break;
    }
    case Family::StaticMode:
      break;
  }
}

}  // namespace

DataPair make_data(const DataFamily& fam, const RadialGrid& grid) {
  check_support(fam, grid);
  const RadialProfile prof = make_profile(fam);
  DataPair d{RadialGridFunction::sample(grid, prof.W0, fam.ell),
             RadialGridFunction::sample(grid, prof.W1, fam.ell)};
  if (fam.delta > 0.0 && fam.family != Family::StaticMode) {
    for (int j = 0; j < grid.n; ++j) {
      if (grid.node(j) > 1.0) {
        d.W0.values[j] = 0.0;
        d.W1.values[j] = 0.0;
      }
    }
    d.W0 = mollify_extend(d.W0, fam.delta);
    d.W1 = mollify_extend(d.W1, fam.delta);
  }
  if (fam.lambda != 0.0) {
    for (int j = 0; j < grid.n; ++j) d.W0.values[j] += fam.lambda * static_cutoff(grid.node(j));
  }
  return d;
}

RadialGridFunction mollify_extend(const RadialGridFunction& f, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw OutOfRange("delta must lie in (0, 1/2)");
  const RadialGrid& g = f.grid;
  const double h = g.h();
  const int K = static_cast<int>(std::floor(delta / h));
  if (K < 2) throw OutOfRange("delta must span at least two cells");
  std::vector<double> k(2 * K + 1);
  double sum = 0.0;
  for (int i = -K; i <= K; ++i) {
    k[i + K] = bump_shape(i * h / delta);
    sum += k[i + K];
  }
  for (double& x : k) x /= sum;
  RadialGridFunction out = f;
  for (int j = 0; j < g.n; ++j) {
    const double eta = smooth_step((g.node(j) - (1.0 - 2.0 * delta)) / delta);
    if (eta == 0.0) continue;
    cplx conv = 0.0;
    for (int i = -K; i <= K; ++i) {
      const int src = j - i;
      if (src >= 0 && src < g.n) conv += k[i + K] * f.values[src];
    }
    out.values[j] = (1.0 - eta) * f.values[j] + eta * conv;
  }
  return out;
}

DataPair static_solution(int ell, int m, const RadialGrid& grid, double Rc) {
  if (ell < 0 || std::abs(m) > ell) throw IndexError("static solution needs |m| <= ell");
  DataPair d{RadialGridFunction::sample(grid, [Rc](double R) { return cplx(static_cutoff(R, Rc)); }, ell),
             RadialGridFunction::zeros(grid, ell)};
  return d;
}

RadialGridFunction phi_from_W(const RadialGridFunction& W, double alpha) {
  RadialGridFunction out = W;
  for (int j = 0; j < W.grid.n; ++j) out.values[j] *= std::pow(W.grid.node(j), alpha);
  return out;
}

RadialGridFunction W_from_phi(const RadialGridFunction& Phi, double alpha) {
  RadialGridFunction out = Phi;
  for (int j = 0; j < Phi.grid.n; ++j) out.values[j] *= std::pow(Phi.grid.node(j), -alpha);
  return out;
}

RadialGridFunction tderiv_data_W(const RadialGridFunction& W0, const RadialGridFunction& W1,
                                 const ModelParams& params, int n) {
  if (n < 0) throw OutOfRange("derivative order must be nonnegative");
  if (n == 0) return W0;
  if (n == 1) return W1;
  const double alpha = alpha_of(params, W0.ell);
  const double kappa = params.qe();
  const ModeWeights w = mode_weights(W0.grid, alpha);
  const double h = W0.grid.h();
  std::vector<cplx> prev = W0.values, cur = W1.values, next, Aw;
  for (int k = 2; k <= n; ++k) {
    apply_mode_operator(w, h, prev, Aw);
    next.resize(Aw.size());
    for (std::size_t j = 0; j < Aw.size(); ++j)
      next[j] = Aw[j] - cplx(0.0, 2.0 * kappa) * (w.charge[j] / w.mass[j]) * cur[j];
    prev.swap(cur);
    cur.swap(next);
  }
  RadialGridFunction out = W0;
  out.values = cur;
  return out;
}

RadialGridFunction tderiv_data(const RadialGridFunction& Phi0, const RadialGridFunction& Phidot0,
                               const ModelParams& params, int n) {
  const double alpha = alpha_of(params, Phi0.ell);
  RadialGridFunction W1 = W_from_phi(Phidot0, alpha);
  W1.ell = Phi0.ell;
  return phi_from_W(tderiv_data_W(W_from_phi(Phi0, alpha), W1, params, n), alpha);
}

namespace {

// Per-mode H^1 norm squared in the W variable, radial twist alpha0.
double h1_W(const std::vector<cplx>& W, const RadialGrid& g, double al, double a0, double L) {
  const double h = g.h();
  double s = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double R = g.node(j);
    s += (1.0 + L) * std::norm(W[j]) * std::pow(R, 2.0 * al - 1.0) * h;
  }
  for (int j = 0; j + 1 < g.n; ++j) {
    const double R = g.face(j);
    const cplx d = (W[j + 1] - W[j]) / h + (al + a0) * 0.5 * (W[j + 1] + W[j]) / R;
    s += std::norm(d) * std::pow(R, 2.0 * al + 1.0) * h;
  }
  return s;
}

double second_W(const std::vector<cplx>& W, const RadialGrid& g, const ModeWeights& w) {
  std::vector<cplx> Aw;
  apply_mode_operator(w, g.h(), W, Aw);
  double s = 0.0;
  for (int j = 0; j < g.n; ++j) s += std::norm(Aw[j]) * w.mass[j];
  return s;
}

}  // namespace

DataNorms data_norms(const RadialGridFunction& Phi0, const RadialGridFunction& Phidot0,
                     const ModelParams& params, int N) {
  if (N < 0) throw OutOfRange("N must be nonnegative");
  const int ell = Phi0.ell;
  const double al = alpha_of(params, ell);
  const double a0 = alpha_of(params, 0);
  const double L = ell * (ell + 1.0);
  const RadialGrid& g = Phi0.grid;
  const ModeWeights w = mode_weights(g, al);
  RadialGridFunction W0 = W_from_phi(Phi0, al);
  RadialGridFunction W1 = W_from_phi(Phidot0, al);
  W1.ell = ell;

  std::vector<RadialGridFunction> Wn;
  for (int k = 0; k <= N + 1; ++k) Wn.push_back(tderiv_data_W(W0, W1, params, k));

  DataNorms out;
  double kin = 0.0;
  for (int j = 0; j < g.n; ++j) kin += std::norm(W1.values[j]) * w.mass[j];
  const double h1_0 = h1_W(W0.values, g, al, a0, L);
  out.h1_data = std::sqrt(h1_0 + kin);
  out.h2_data = std::sqrt(h1_0 + second_W(W0.values, g, w) + h1_W(W1.values, g, al, a0, L));
  double acc = 0.0;
  for (int k = 0; k <= N; ++k)
    acc += h1_W(Wn[k].values, g, al, a0, L) + second_W(Wn[k].values, g, w) +
           h1_W(Wn[k + 1].values, g, al, a0, L);
  out.h2_data_N = std::sqrt(acc);
  return out;
}

std::vector<std::pair<double, double>> read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table '" + path + "'");
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double R, v;
    if (ss >> R >> v) rows.emplace_back(R, v);
  }
  if (rows.empty()) throw ConfigError("table '" + path + "' has no numeric rows");
  return rows;
}

}  // namespace tailwave
