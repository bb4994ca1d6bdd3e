#include "tailwave/evolve_null.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tailwave/errors.hpp"

namespace tailwave {

namespace {

int lattice_count(double span, double h, const char* what) {
  const double x = span / h;
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-6 * std::max(1.0, x) || r < 2)
    throw OutOfRange(std::string(what) + " is not an integer number of lattice steps");
  return static_cast<int>(r);
}

cplx rpow(double R, cplx p) {
  if (R <= 0.0) return 0.0;
  return std::exp(p * std::log(R));
}

// Fourth-order central differences of a profile.
struct Derivs {
  cplx f, d1, d2;
};

Derivs derivs(const std::function<cplx(double)>& f, double R, double eps) {
  const cplx fp2 = f(R + 2 * eps), fp1 = f(R + eps), f0 = f(R), fm1 = f(R - eps), fm2 = f(R - 2 * eps);
  Derivs d;
  d.f = f0;
  d.d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * eps);
  d.d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * eps * eps);
  return d;
}

}  // namespace

double NullField::first_coord(int a) const {
  return domain.mode == NullMode::Compactified ? -1.0 + a * domain.h : domain.u0 + a * domain.h;
}

double NullField::second_coord(int b) const {
  return domain.mode == NullMode::Compactified ? -1.0 + b * domain.h : domain.u0 + b * domain.h;
}

cplx NullField::at(int a, int b) const {
  if (full.empty()) throw DomainError("field was not stored in full");
  if (a < 0 || a >= static_cast<int>(full.size())) throw RangeError("row outside lattice");
  const int off = b - first_col[a];
  if (off < 0 || off >= static_cast<int>(full[a].size())) throw RangeError("column outside lattice");
  return full[a][off];
}

namespace {

// A = (k+1)^p + (k-1)^p - 2k^p and B = (k+1)^p - (k-1)^p, both divided by k^p.
void diamond_moments(cplx p, int k, cplx& A, cplx& B) {
  if (k < 32) {
    const cplx kp = rpow(k, p), kp1 = rpow(k + 1.0, p), km1 = rpow(k - 1.0, p);
    A = (kp1 + km1 - 2.0 * kp) / kp;
    B = (kp1 - km1) / kp;
    return;
  }
  // (1 +- x)^p expanded in x = 1/k.
  const double x = 1.0 / k;
  cplx c = 1.0, even = 0.0, odd = 0.0;
  double xn = 1.0;
  for (int n = 1; n <= 24; ++n) {
    c *= (p - static_cast<double>(n - 1)) / static_cast<double>(n);
    xn *= x;
    if (n % 2 == 0) even += c * xn;
    else odd += c * xn;
  }
  A = 2.0 * even;
  B = 2.0 * odd;
}

}  // namespace

cplx diamond_beta(cplx p, double kappa, int k) {
  if (k < 1) throw AxisError("diamond center on the axis");
  cplx A, B;
  diamond_moments(p, k, A, B);
  return A - cplx(0.0, kappa / k) * B;
}

DiamondCoeffs diamond_coeffs(cplx p, double kappa, double alpha, int k) {
  if (k < 1) throw AxisError("diamond center on the axis");
  cplx A, B;
  diamond_moments(p, k, A, B);
  const cplx c(0.0, 2.0 * kappa / (2.0 * alpha + 1.0));
  DiamondCoeffs d;
  d.g = c * B / (2.0 + c * (A + 2.0));
  d.beta = A - d.g * B;
  return d;
}

NullField evolve_null(const RadialProfile& data, const NullDomain& dom, const ModelParams& params_in,
                      int ell, const NullOptions& opt) {
  const ModelParams params = validate_params(params_in);
  if (ell < 0) throw OutOfRange("ell must be nonnegative");
  if (!(dom.h > 0.0)) throw OutOfRange("lattice step must be positive");
  const bool compact = dom.mode == NullMode::Compactified;
  const double h = dom.h;
  const double kappa = params.qe();
  const double alpha = alpha_of(params, ell);
  const cplx p = p_of(params, ell);

  NullField F;
  F.domain = dom;
  F.params = params;
  F.ell = ell;
  F.p = p;

  int N2 = 0;  // compactified: 2N = 1/h
  if (compact) {
    N2 = lattice_count(1.0, h, "1/h");
    if (N2 % 2 != 0) throw OutOfRange("compactified lattice needs 1/h even");
    F.rows = N2 + 1;
    F.cols = N2 + 1;
  } else {
    if (!(dom.u0 > 0.0)) throw DomainError("physical mode needs u0 > 0");
    if (dom.v_max < dom.u_max) throw OutOfRange("v_max must be at least u_max");
    F.rows = lattice_count(dom.u_max - dom.u0, h, "u range") + 1;
    F.cols = lattice_count(dom.v_max - dom.u0, h, "v range") + 1;
  }
  const int cols = F.cols;
  auto first_col = [&](int a) { return compact ? std::max(a, N2 - a) : a; };

  // Recorded lines.
  std::vector<int> vcols;
  auto add_vline = [&](double coord) {
    const int b = static_cast<int>(std::lround(compact ? (coord + 1.0) / h : (coord - dom.u0) / h));
    if (b < 0 || b >= cols) throw RangeError("recorded line outside lattice");
    if (std::find(vcols.begin(), vcols.end(), b) != vcols.end()) return;
    vcols.push_back(b);
    NullLine l;
    l.coord = F.second_coord(b);
    F.v_lines.push_back(l);
  };
  if (compact) add_vline(0.0);
  else add_vline(dom.v_max);
  for (double v : opt.record_v) add_vline(v);
  for (int k : opt.record_diagonals) {
    if (k < 0 || k >= cols) throw RangeError("recorded diagonal outside lattice");
    NullLine l;
    l.coord = k;
    F.diagonals.push_back(l);
  }
  std::vector<int> svals;
  for (double T : opt.record_T) {
    if (!compact) throw DomainError("T-slices need the compactified mode");
    const int s = static_cast<int>(std::lround((T + 2.0) / h));
    if (s < N2 || s > 2 * N2) throw RangeError("slice outside lattice");
    svals.push_back(s);
    NullLine l;
    l.coord = -2.0 + s * h;
    F.slices.push_back(l);
  }

  // Potential and charge coefficients by center index k.
  std::vector<cplx> beta(cols + 1), gk(cols + 1);
  for (int k = 1; k <= cols; ++k) {
    if (compact) {
      const DiamondCoeffs d = diamond_coeffs(p, kappa, alpha, k);
      beta[k] = d.beta;
      gk[k] = d.g;
    } else {
      beta[k] = diamond_beta(p, kappa, k);
      gk[k] = cplx(0.0, kappa / k);
    }
  }
  const bool row_dependent = !compact && kappa != 0.0;
  std::vector<cplx> cE(cols + 1), cW(cols + 1), cS(cols + 1);
  auto set_coeffs = [&](double extra, int kmax) {
    for (int k = 1; k <= kmax; ++k) {
      const cplx g = gk[k] + cplx(0.0, extra);
      const cplx hb = 0.5 * beta[k];
      const cplx D = 1.0 + hb + g;
      cE[k] = (1.0 - g) / D;
      cW[k] = (1.0 + g) / D;
      cS[k] = (1.0 + hb - g) / D;
    }
  };
  set_coeffs(0.0, cols);

  // Compactified start values.
  const double eps = 1e-3;
  auto cauchy0 = [&](double R) { return rpow(R, p) * data.W0(R); };
  auto cauchy1 = [&](double R) {
    const Derivs w0 = derivs(data.W0, R, eps);
    const Derivs w1 = derivs(data.W1, R, eps);
    const cplx ik2(0.0, 2.0 * kappa);
    const cplx wdd = w0.d2 + (2.0 * alpha + 1.0) * w0.d1 / R - ik2 * w1.f / R;
    cplx val = w0.f + h * w1.f + 0.5 * h * h * wdd;
    if (opt.taylor_order >= 3) {
      const cplx wddd = w1.d2 + (2.0 * alpha + 1.0) * w1.d1 / R - ik2 * wdd / R;
      val += h * h * h / 6.0 * wddd;
    }
    return rpow(R, p) * val;
  };

  std::vector<cplx> prev(cols, 0.0), cur(cols, 0.0);
  double guard = 0.0;
  auto record_row = [&](int a, const std::vector<cplx>& row) {
    const int b0 = first_col(a);
    const double x = F.first_coord(a);
    for (std::size_t i = 0; i < vcols.size(); ++i)
      if (vcols[i] >= b0) {
        F.v_lines[i].x.push_back(x);
        F.v_lines[i].psi.push_back(row[vcols[i]]);
      }
    for (auto& d : F.diagonals) {
      const int b = a + static_cast<int>(d.coord);
      if (b >= b0 && b < cols) {
        d.x.push_back(x);
        d.psi.push_back(row[b]);
      }
    }
    for (std::size_t i = 0; i < svals.size(); ++i) {
      const int b = svals[i] - a;
      if (b >= b0 && b < cols) {
        F.slices[i].x.push_back((b - a) * h);
        F.slices[i].psi.push_back(row[b]);
      }
    }
    if (opt.store_full) {
      F.first_col.push_back(b0);
      F.full.emplace_back(row.begin() + b0, row.end());
    }
    F.axis_max = std::max(F.axis_max, b0 == a ? std::abs(row[a]) : 0.0);
  };

  // Row 0.
  if (compact) {
    prev[N2] = cauchy0(1.0);
  } else {
    for (int b = 1; b < cols; ++b) {
      const double R = 1.0 / dom.u0 - 1.0 / F.second_coord(b);
      prev[b] = rpow(R, p) * data.W0(dom.u0 * R);
    }
    prev[0] = 0.0;
  }
  for (int b = first_col(0); b < cols; ++b) guard = std::max(guard, std::abs(prev[b]));
  record_row(0, prev);

  for (int a = 1; a < F.rows; ++a) {
    const int b0 = first_col(a);
    int bd = b0;  // first diamond column
    if (compact && a <= N2 / 2) {
      const int s0 = N2 - a;
      cur[s0] = s0 == a ? 0.0 : cauchy0((s0 - a) * h);
      if (s0 + 1 < cols) cur[s0 + 1] = cauchy1((s0 + 1 - a) * h);
      bd = s0 + 2;
      guard = std::max({guard, std::abs(cur[s0]), s0 + 1 < cols ? std::abs(cur[s0 + 1]) : 0.0});
    } else {
      cur[a] = 0.0;
      bd = a + 1;
    }
    if (row_dependent) set_coeffs(kappa * h / (F.first_coord(a) - 0.5 * h), cols - 1 - a);
    double rowmax = 0.0;
    for (int b = bd; b < cols; ++b) {
      const int k = b - a;
      const cplx E = prev[b], S = prev[b - 1], W = cur[b - 1];
      const cplx& ce = cE[k];
      const cplx& cw = cW[k];
      const cplx& cs = cS[k];
      const double re = ce.real() * E.real() - ce.imag() * E.imag() + cw.real() * W.real() -
                        cw.imag() * W.imag() - cs.real() * S.real() + cs.imag() * S.imag();
      const double im = ce.real() * E.imag() + ce.imag() * E.real() + cw.real() * W.imag() +
                        cw.imag() * W.real() - cs.real() * S.imag() - cs.imag() * S.real();
      cur[b] = cplx(re, im);
      rowmax = std::max(rowmax, std::abs(re) + std::abs(im));
    }
    const double lim = opt.guard_factor * (guard > 0.0 ? guard : 1e-300) * 2.0;
    if (!(rowmax <= lim))
      throw BlowUpError("max|psi| exceeded the guard at row " + std::to_string(a));
    record_row(a, cur);
    prev.swap(cur);
  }
  return F;
}

namespace {

const NullLine& find_line(const std::vector<NullLine>& lines, double coord, double tol, const char* what) {
  const NullLine* best = nullptr;
  double d = tol;
  for (auto& l : lines)
    if (std::abs(l.coord - coord) <= d) {
      d = std::abs(l.coord - coord);
      best = &l;
    }
  if (!best) throw RangeError(std::string(what) + " was not recorded");
  return *best;
}

}  // namespace

Series sample_radiation(const NullField& F, RadiationProxy proxy) {
  Series s;
  const double tol = 0.5 * F.domain.h;
  if (F.domain.mode == NullMode::Compactified) {
    const NullLine& l = find_line(F.v_lines, 0.0, tol, "V = 0 line");
    for (std::size_t i = 0; i < l.x.size(); ++i)
      if (l.x[i] < 0.0) {
        s.x.push_back(-1.0 / l.x[i]);
        s.y.push_back(l.psi[i]);
      }
    return s;
  }
  const double vm = F.second_coord(F.cols - 1);
  const NullLine& l1 = find_line(F.v_lines, vm, tol, "v = v_max line");
  if (proxy == RadiationProxy::Raw) {
    s.x = l1.x;
    s.y = l1.psi;
    return s;
  }
  const NullLine& l2 = find_line(F.v_lines, 0.5 * vm, 0.5 + tol, "v = v_max/2 line");
  const NullLine& l3 = find_line(F.v_lines, 0.25 * vm, 0.5 + tol, "v = v_max/4 line");
  const double x1 = 1.0 / l1.coord, x2 = 1.0 / l2.coord, x3 = 1.0 / l3.coord;
  const double w1 = x2 * x3 / ((x1 - x2) * (x1 - x3));
  const double w2 = x1 * x3 / ((x2 - x1) * (x2 - x3));
  const double w3 = x1 * x2 / ((x3 - x1) * (x3 - x2));
  const std::size_t n = std::min({l1.x.size(), l2.x.size(), l3.x.size()});
  for (std::size_t i = 0; i < n; ++i) {
    s.x.push_back(l1.x[i]);
    s.y.push_back(w1 * l1.psi[i] + w2 * l2.psi[i] + w3 * l3.psi[i]);
  }
  return s;
}

Series sample_timelike(const NullField& F, double r0) {
  if (F.domain.mode != NullMode::Physical) throw DomainError("timelike sampling needs the physical mode");
  const double h = F.domain.h;
  if (!(r0 >= 0.0) || r0 > (F.cols - 1) * h) throw RangeError("r0 outside lattice");
  const int k0 = static_cast<int>(std::floor(r0 / h + 1e-9));
  double th = r0 / h - k0;
  if (th < 1e-9) th = 0.0;
  const NullLine& d0 = find_line(F.diagonals, k0, 0.25, "diagonal at r0");
  const NullLine* d1 = th > 0.0 ? &find_line(F.diagonals, k0 + 1, 0.25, "diagonal above r0") : &d0;
  const std::size_t n = std::min(d0.x.size(), d1->x.size());
  Series s;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx psi = (1.0 - th) * d0.psi[i] + th * d1->psi[i];
    s.x.push_back(2.0 * d0.x[i] + r0);
    s.y.push_back(r0 > 0.0 ? psi / r0 : cplx(0.0));
  }
  return s;
}

namespace {

// Least squares for a small complex polynomial fit; returns the constant term.
cplx poly_fit_at_zero(const std::vector<double>& x, const std::vector<cplx>& y, int degree) {
  const int m = degree + 1;
  std::vector<double> A(m * m, 0.0);
  std::vector<cplx> b(m, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> phi(m);
    phi[0] = 1.0;
    for (int k = 1; k < m; ++k) phi[k] = phi[k - 1] * x[i];
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) A[r * m + c] += phi[r] * phi[c];
      b[r] += phi[r] * y[i];
    }
  }
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(A[r * m + col]) > std::abs(A[piv * m + col])) piv = r;
    if (std::abs(A[piv * m + col]) < 1e-300) throw SingularSystemError("degenerate polynomial fit");
    if (piv != col) {
      for (int c = 0; c < m; ++c) std::swap(A[col * m + c], A[piv * m + c]);
      std::swap(b[col], b[piv]);
    }
    for (int r = col + 1; r < m; ++r) {
      const double f = A[r * m + col] / A[col * m + col];
      for (int c = col; c < m; ++c) A[r * m + c] -= f * A[col * m + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<cplx> c(m);
  for (int r = m - 1; r >= 0; --r) {
    cplx s = b[r];
    for (int k = r + 1; k < m; ++k) s -= A[r * m + k] * c[k];
    c[r] = s / A[r * m + r];
  }
  return c[0];
}

}  // namespace

cplx null_extract_P0(const NullField& F, double R_lo, double R_hi, int degree) {
  if (F.domain.mode != NullMode::Compactified) throw DomainError("P(0) extraction needs the compactified mode");
  const NullLine& l = find_line(F.v_lines, 0.0, 0.5 * F.domain.h, "V = 0 line");
  std::vector<double> x;
  std::vector<cplx> y;
  for (std::size_t i = 0; i < l.x.size(); ++i) {
    const double R = -l.x[i];
    if (R >= R_lo && R <= R_hi) {
      x.push_back(R / R_hi);
      y.push_back(l.psi[i] / rpow(R, F.p));
    }
  }
  if (static_cast<int>(x.size()) < 2 * (degree + 1)) throw EmptyWindowError("too few lattice points in the fit range");
  return poly_fit_at_zero(x, y, degree);
}

Series slice_W(const NullField& F, double T) {
  const NullLine& l = find_line(F.slices, T, 0.5 * F.domain.h, "T-slice");
  std::vector<std::size_t> idx(l.x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return l.x[i] < l.x[j]; });
  Series s;
  for (std::size_t i : idx)
    if (l.x[i] > 0.0) {
      s.x.push_back(l.x[i]);
      s.y.push_back(l.psi[i] / rpow(l.x[i], F.p));
    }
  return s;
}

}  // namespace tailwave
