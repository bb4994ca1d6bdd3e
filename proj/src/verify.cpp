#include "tailwave/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "tailwave/elliptic.hpp"
#include "tailwave/errors.hpp"
#include "tailwave/evolve_ads.hpp"
#include "tailwave/harmonics.hpp"
#include "tailwave/initdata.hpp"
#include "tailwave/twisted.hpp"

namespace tailwave {

namespace {

RadialGridFunction random_bumps(const RadialGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  struct Term { double c, w; cplx a; };
  std::vector<Term> t(3);
  for (auto& x : t) {
    x.w = 0.03 + 0.12 * U(rng);
    x.c = 0.1 + x.w + (0.8 - 2.0 * x.w) * U(rng);
    x.a = cplx(2.0 * U(rng) - 1.0, 2.0 * U(rng) - 1.0);
  }
  return RadialGridFunction::sample(g, [&](double R) {
    cplx s = 0.0;
    for (auto& x : t) s += x.a * bump_shape((R - x.c) / x.w);
    return s;
  });
}

}  // namespace

SuiteResult verify_hardy(std::uint64_t seed, int members, int n) {
  SuiteResult r;
  r.name = "hardy";
  r.header = {"alpha", "p", "member", "lhs", "rhs"};
  const RadialGrid g(n, 1.0);
  const double tol = 1e-9 + 10.0 * g.h() * g.h();
  const std::pair<double, double> pairs[] = {{1.0, 0.0}, {1.5, 0.3}, {0.4, -1.0}};
  std::mt19937_64 rng(seed);
  int fails = 0;
  double worst = 0.0;
  for (auto [alpha, p] : pairs) {
    for (int k = 0; k < members; ++k) {
      const RadialGridFunction f = random_bumps(g, rng);
      const HardyResult h = hardy_check(f, alpha, p, tol);
      worst = std::max(worst, h.lhs / h.rhs);
      if (!h.pass) ++fails;
      r.rows.push_back({alpha, p, static_cast<double>(k), h.lhs, h.rhs});
    }
  }
  r.pass = fails == 0;
  std::ostringstream os;
  os << "failures=" << fails << " max_ratio=" << worst;
  r.detail = os.str();
  return r;
}

SuiteResult verify_poincare(std::uint64_t seed, int members, int L) {
  SuiteResult r;
  r.name = "poincare";
  r.header = {"ell0", "member", "poinc1", "poinc2", "poinc2_5", "slack3", "slack4"};
  const SphereGrid g = make_sphere_grid(L);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  double worst_id = 0.0, worst_slack = 0.0;
  for (int ell0 = 0; ell0 <= 2; ++ell0) {
    for (int k = 0; k < members; ++k) {
      ModeCoefficients c;
      c.L = L;
      c.c.resize(static_cast<std::size_t>((L + 1) * (L + 1)));
      for (auto& x : c.c) x = cplx(N(rng), N(rng));
      const double scale = 1.0 / std::sqrt(c.norm2());
      for (auto& x : c.c) x *= scale;
      const SphereFunction f = sample_function(g, c);
      const PoincareResiduals pr = poincare_residuals(f, ell0);
      worst_id = std::max({worst_id, pr.poinc1, pr.poinc2, pr.poinc2_5});
      worst_slack = std::min({worst_slack, pr.slack3, pr.slack4});
      r.rows.push_back({static_cast<double>(ell0), static_cast<double>(k), pr.poinc1, pr.poinc2,
                        pr.poinc2_5, pr.slack3, pr.slack4});
    }
  }
  r.pass = worst_id <= 1e-9 && worst_slack >= -1e-9;
  std::ostringstream os;
  os << "max_identity_residual=" << worst_id << " min_slack=" << worst_slack;
  r.detail = os.str();
  return r;
}

SuiteResult verify_elliptic(std::uint64_t seed, int members, int n) {
  SuiteResult r;
  r.name = "elliptic";
  r.header = {"seed", "ratio_energ", "ratio_elliptic", "n"};
  const double alpha = 0.4, p = 0.0;
  const EstimateReport a = estimate_report(members, alpha, p, 0, n, seed);
  const EstimateReport b = estimate_report(members, alpha, p, 0, 2 * n, seed);
  for (auto* rep : {&a, &b})
    for (auto& row : rep->rows)
      r.rows.push_back({static_cast<double>(row.seed), row.ratio_energ, row.ratio_elliptic,
                        static_cast<double>(row.n)});
  const double d1 = std::abs(b.max_ratio_energ - a.max_ratio_energ) / a.max_ratio_energ;
  const double d2 = std::abs(b.max_ratio_elliptic - a.max_ratio_elliptic) / a.max_ratio_elliptic;
  r.pass = std::isfinite(a.max_ratio_energ) && std::isfinite(a.max_ratio_elliptic) && d1 < 0.1 && d2 < 0.1;
  std::ostringstream os;
  os << "max_ratio_energ=" << a.max_ratio_energ << "->" << b.max_ratio_energ
     << " max_ratio_elliptic=" << a.max_ratio_elliptic << "->" << b.max_ratio_elliptic;
  r.detail = os.str();
  return r;
}

SuiteResult verify_energy(std::uint64_t seed, int n) {
  SuiteResult r;
  r.name = "energy";
  r.header = {"model", "modified_drift", "field_drift", "phase_deviation"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 2.0 * M_PI);
  const RadialGrid g(n, 2.5);
  DataFamily fam;
  fam.center = 0.5;
  fam.width = 0.3;
  fam.velocity = cplx(0.3, -0.2);
  bool ok = true;
  std::ostringstream os;
  int idx = 0;
  for (const ModelParams& P : {ModelParams::isp(2.0), ModelParams::csf(0.3)}) {
    const DataPair d = make_data(fam, g);
    const EvolveResult res = evolve(make_state(P, {d}), 0.0, 0.4);
    const cplx rot = std::polar(1.0, U(rng));
    DataPair d2 = d;
    for (auto& v : d2.W0.values) v *= rot;
    for (auto& v : d2.W1.values) v *= rot;
    const EvolveResult res2 = evolve(make_state(P, {d2}), 0.0, 0.4);
    double dev = 0.0, amp = 0.0;
    const auto& A = res.snapshots.back().modes[0].W.values;
    const auto& B = res2.snapshots.back().modes[0].W.values;
    for (std::size_t j = 0; j < A.size(); ++j) {
      dev = std::max(dev, std::abs(rot * A[j] - B[j]));
      amp = std::max(amp, std::abs(A[j]));
    }
    dev /= amp;
    const double md = res.modified_energy_drift(0);
    ok = ok && md <= 1e-6 && dev <= 1e-10;
    r.rows.push_back({static_cast<double>(idx++), md, res.energy_drift(0), dev});
    os << P.describe() << ": modified_drift=" << md << " field_drift=" << res.energy_drift(0)
       << " phase_dev=" << dev << "; ";
  }
  r.pass = ok;
  r.detail = os.str();
  return r;
}

std::vector<std::string> suite_names() { return {"hardy", "poincare", "elliptic", "energy"}; }

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "hardy") return verify_hardy(seed);
  if (name == "poincare") return verify_poincare(seed);
  if (name == "elliptic") return verify_elliptic(seed);
  if (name == "energy") return verify_energy(seed);
  throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace tailwave
