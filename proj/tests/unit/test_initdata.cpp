#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "tailwave/errors.hpp"
#include "tailwave/initdata.hpp"

using namespace tailwave;

namespace {

double sup(const RadialGridFunction& f) {
  double m = 0.0;
  for (auto v : f.values) m = std::max(m, std::abs(v));
  return m;
}

// Discrete H^1 norm squared of node data restricted to R < Rcut.
double h1_below(const RadialGridFunction& f, double alpha, double Rcut) {
  const RadialGrid& g = f.grid;
  const auto d = twisted_d(f, alpha);
  double s = 0.0;
  for (int j = 0; j < g.n; ++j)
    if (g.node(j) < Rcut) s += std::norm(f.values[j]) / g.node(j) * g.h();
  for (int j = 0; j + 1 < g.n; ++j)
    if (g.node(j + 1) < Rcut) s += std::norm(d.values[j]) * g.face(j) * g.h();
  return s;
}

}  // namespace

TEST_SUITE("initdata") {

TEST_CASE("shape functions") {
  CHECK(bump_shape(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(bump_shape(1.0) == 0.0);
  CHECK(bump_shape(-1.2) == 0.0);
  CHECK(polynomial_bump_shape(0.5) == doctest::Approx(std::pow(0.75, 4)).epsilon(1e-15));
  CHECK(smooth_step(-0.1) == 0.0);
  CHECK(smooth_step(1.1) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  for (double x = 0.05; x < 1.0; x += 0.05) CHECK(smooth_step(x) + smooth_step(1 - x) == doctest::Approx(1.0));
  CHECK(static_cutoff(1.9) == 1.0);
  CHECK(static_cutoff(2.6) == 0.0);
}

TEST_CASE("bump data examples") {
  RadialGrid g(1000, 1.0);
  DataFamily fam;
  fam.amplitude = 0.0;
  auto z = make_data(fam, g);
  CHECK(sup(z.W0) == 0.0);
  CHECK(sup(z.W1) == 0.0);

  fam.amplitude = 1.0;
  fam.center = 0.5;
  fam.width = 0.2;
  const auto prof = make_profile(fam);
  CHECK(prof.W0(0.5) == cplx(std::exp(-1.0)));
  CHECK(std::abs(prof.W0(0.6) - std::exp(-1.0 / 0.75)) < 1e-15);
  const auto d = make_data(fam, g);
  for (int j = 0; j < g.n; ++j) {
    const double R = g.node(j);
    if (std::abs(R - 0.5) >= 0.2) {
      CHECK(d.W0.values[j] == cplx(0.0));
      CHECK(d.W1.values[j] == cplx(0.0));
    } else {
      CHECK(std::abs(d.W0.values[j]) > 0.0);
    }
  }

  fam.velocity = cplx(0.0, 2.0);
  const auto v = make_data(fam, g);
  CHECK(v.W1.values[500] == cplx(0.0, 2.0) * v.W0.values[500]);
}

TEST_CASE("support errors") {
  RadialGrid g(200, 1.0);
  DataFamily fam;
  fam.center = 0.8;
  fam.width = 0.2;
  CHECK_THROWS_AS(make_data(fam, g), SupportError);
  fam.center = 0.1;
  CHECK_THROWS_AS(make_data(fam, g), SupportError);
  DataFamily gauss;
  gauss.family = Family::Gaussian;
  CHECK_THROWS_AS(make_data(gauss, g), SupportError);
  CHECK_THROWS_AS(parse_family("plane_wave"), ConfigError);
  CHECK(parse_family(family_name(Family::PolynomialBump)) == Family::PolynomialBump);
}

TEST_CASE("static modes") {
  RadialGrid g(300, 3.0);
  const auto s = static_solution(1, 0, g);
  for (int j = 0; j < g.n; ++j) {
    if (g.node(j) <= 2.0) CHECK(s.W0.values[j] == cplx(1.0));
    CHECK(s.W1.values[j] == cplx(0.0));
  }
  CHECK(s.W0.values.back() == cplx(0.0));
  CHECK_THROWS_AS(static_solution(1, 2, g), IndexError);

  DataFamily fam;
  fam.family = Family::StaticMode;
  fam.ell = 1;
  const auto d = make_data(fam, g);
  for (int j = 0; j < g.n; ++j) CHECK(d.W0.values[j] == s.W0.values[j]);

  // R^alpha times the cutoff is annihilated by the twisted second derivative on R < 2.
  const double alpha = alpha_of(ModelParams::isp(0.0), 1);
  double err[2];
  for (int k = 0; k < 2; ++k) {
    RadialGrid gf(600 << k, 3.0);
    const auto phi = phi_from_W(static_solution(1, 0, gf).W0, alpha);
    const auto t2 = twisted_second(phi, alpha);
    err[k] = 0.0;
    for (int j = 1; j < gf.n; ++j)
      if (gf.node(j) > 0.2 && gf.node(j) < 1.9) err[k] = std::max(err[k], std::abs(t2.values[j]));
  }
  CHECK(err[0] < 1e-3);
  CHECK(std::log2(err[0] / err[1]) > 1.9);
}

TEST_CASE("lambda adds a static mode") {
  RadialGrid g(400, 3.0);
  DataFamily fam;
  const auto a = make_data(fam, g);
  fam.lambda = 0.75;
  const auto b = make_data(fam, g);
  for (int j = 0; j < g.n; ++j)
    CHECK(std::abs(b.W0.values[j] - a.W0.values[j] - 0.75 * static_cutoff(g.node(j))) < 1e-15);
}

TEST_CASE("mollified extension") {
  RadialGrid g(2000, 2.0);
  const double delta = 0.1;
  // Supported well inside: unchanged.
  auto inner = RadialGridFunction::sample(g, [](double R) { return cplx(bump_shape((R - 0.4) / 0.3)); });
  const auto same = mollify_extend(inner, delta);
  for (int j = 0; j < g.n; ++j) CHECK(same.values[j] == inner.values[j]);

  auto ramp = RadialGridFunction::sample(g, [](double R) { return cplx(R <= 1.0 ? 1.0 - 0.3 * R : 0.0); });
  double ratios[3];
  int k = 0;
  for (double d : {0.1, 0.05, 0.025}) {
    const auto out = mollify_extend(ramp, d);
    CHECK(sup(out) <= sup(ramp) * (1 + 1e-14));
    for (int j = 0; j < g.n; ++j) {
      if (g.node(j) > 1.0 + d) CHECK(out.values[j] == cplx(0.0));
      if (g.node(j) <= 1.0 - 2 * d) CHECK(out.values[j] == ramp.values[j]);
    }
    ratios[k++] = std::sqrt(h1_below(out, 0.5, 2.0) / h1_below(ramp, 0.5, 1.0));
  }
  // The extension norm does not grow like 1/delta as delta shrinks.
  CHECK(ratios[1] / ratios[0] < 1.5);
  CHECK(ratios[2] / ratios[1] < 1.5);
  for (double r : ratios) CHECK(r < 5.0);

  CHECK_THROWS_AS(mollify_extend(ramp, 0.6), OutOfRange);
  CHECK_THROWS_AS(mollify_extend(ramp, 0.001), OutOfRange);
}

TEST_CASE("time derivative recursion examples") {
  const ModelParams isp = ModelParams::isp(0.7);
  const double a0 = alpha_of(isp, 0);
  RadialGrid g(800, 4.0);
  const auto phi0 = RadialGridFunction::sample(g, [](double R) { return cplx(std::sin(R), R); });
  const auto phi1 = RadialGridFunction::sample(g, [](double R) { return cplx(R * R, 0.0); });
  const auto t0 = tderiv_data(phi0, phi1, isp, 0), t1 = tderiv_data(phi0, phi1, isp, 1);
  for (int j = 0; j < g.n; ++j) {
    CHECK(std::abs(t0.values[j] - phi0.values[j]) < 1e-14);
    CHECK(std::abs(t1.values[j] - phi1.values[j]) < 1e-14);
  }

  const auto zero = RadialGridFunction::zeros(g);
  const auto st = RadialGridFunction::sample(g, [&](double R) { return cplx(std::pow(R, a0)); });
  const auto s2 = tderiv_data(st, zero, isp, 2);
  for (int j = 0; j < g.n; ++j)
    if (g.node(j) < 3.5) CHECK(std::abs(s2.values[j]) < 1e-9);

  double prev = 0.0;
  for (int n : {400, 800, 1600}) {
    RadialGrid gn(n, 4.0);
    const auto z = RadialGridFunction::zeros(gn);
    const auto sq = RadialGridFunction::sample(gn, [](double R) { return cplx(R * R); });
    const auto q2 = tderiv_data(sq, z, isp, 2);
    double err = 0.0;
    for (int j = 0; j < gn.n; ++j)
      if (gn.node(j) > 0.2 && gn.node(j) < 3.0) err = std::max(err, std::abs(q2.values[j] - (4 - a0 * a0)));
    CHECK(err < 1e-2);
    if (prev > 0.0) CHECK(std::log2(prev / err) > 1.8);
    prev = err;
  }
}

TEST_CASE("charge term in the recursion") {
  const ModelParams csf = ModelParams::csf(0.3);
  const double a0 = alpha_of(csf, 0);
  RadialGrid g(1600, 2.0);
  const auto zero = RadialGridFunction::zeros(g);
  const auto v = RadialGridFunction::sample(g, [&](double R) { return cplx(std::pow(R, a0) * (1 + R)); });
  const auto t2 = tderiv_data(zero, v, csf, 2);
  for (int j = 0; j < g.n; ++j) {
    const double R = g.node(j);
    if (R < 0.2 || R > 1.5) continue;
    const cplx expect = cplx(0.0, -2.0 * 0.3) * v.values[j] / R;
    CHECK(std::abs(t2.values[j] - expect) < 1e-4 * std::abs(expect));
  }
}

TEST_CASE("generated data have finite norms up to the required order") {
  for (const ModelParams& mp : {ModelParams::isp(2.0), ModelParams::csf(0.3)}) {
    for (int ell : {0, 1}) {
      const double alpha = alpha_of(mp, ell);
      DataFamily fam;
      fam.center = 0.5;
      fam.width = 0.3;
      fam.velocity = 0.3;
      fam.ell = ell;
      RadialGrid g(512, 1.0);
      const auto d = make_data(fam, g);
      const auto n = data_norms(phi_from_W(d.W0, alpha), phi_from_W(d.W1, alpha), mp,
                                static_cast<int>(std::floor(alpha)) + 1);
      CHECK(std::isfinite(n.h2_data_N));
      CHECK(n.h2_data_N > 0.0);
    }
  }
}

TEST_CASE("custom tables") {
  const std::string path = "initdata_table_test.csv";
  {
    std::ofstream out(path);
    out << "R,value\n";
    for (int i = 0; i <= 40; ++i) {
      const double R = 0.1 + 0.015 * i;
      out << R << "," << std::sin(3.0 * R) << "\n";
    }
  }
  DataFamily fam;
  fam.family = Family::CustomTable;
  fam.table = read_table_csv(path);
  CHECK(fam.table.size() == 41);
  const auto prof = make_profile(fam);
  CHECK(std::abs(prof.W0(0.4321) - std::sin(3.0 * 0.4321)) < 1e-5);
  CHECK(prof.W0(0.05) == cplx(0.0));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_table_csv(path), ConfigError);
}

}
