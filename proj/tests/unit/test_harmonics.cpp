#include <doctest.h>

#include <cmath>
#include <random>

#include "tailwave/errors.hpp"
#include "tailwave/harmonics.hpp"

using namespace tailwave;

namespace {

const double kPi = 3.14159265358979323846;

ModeCoefficients zero_coeffs(int L) {
  ModeCoefficients c;
  c.L = L;
  c.c.assign(static_cast<std::size_t>((L + 1) * (L + 1)), cplx(0.0));
  return c;
}

SphereFunction basis(const SphereGrid& g, int l, int m, cplx amp = 1.0) {
  ModeCoefficients c = zero_coeffs(g.L);
  c.at(l, m) = amp;
  return sample_function(g, c);
}

double max_diff(const SphereFunction& a, const SphereFunction& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j) d = std::max(d, std::abs(a.values[j] - b.values[j]));
  return d;
}

ModeCoefficients random_coeffs(int L, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  ModeCoefficients c = zero_coeffs(L);
  for (auto& x : c.c) x = cplx(nd(rng), nd(rng));
  return c;
}

}  // namespace

TEST_SUITE("harmonics") {

TEST_CASE("closed-form low-degree harmonics") {
  for (double th : {0.1, 0.7, 1.9, 3.0}) {
    for (double ph : {0.0, 1.3, 4.4}) {
      const double ct = std::cos(th), st = std::sin(th);
      CHECK(std::abs(eval_harmonic(0, 0, th, ph) - 1.0 / std::sqrt(4 * kPi)) < 1e-15);
      CHECK(std::abs(eval_harmonic(1, 0, th, ph) - std::sqrt(3 / (4 * kPi)) * ct) < 1e-14);
      const cplx y11 = -std::sqrt(3 / (8 * kPi)) * st * std::polar(1.0, ph);
      CHECK(std::abs(eval_harmonic(1, 1, th, ph) - y11) < 1e-14);
      const cplx y1m1 = std::sqrt(3 / (8 * kPi)) * st * std::polar(1.0, -ph);
      CHECK(std::abs(eval_harmonic(1, -1, th, ph) - y1m1) < 1e-14);
      const double y20 = std::sqrt(5 / (16 * kPi)) * (3 * ct * ct - 1);
      CHECK(std::abs(eval_harmonic(2, 0, th, ph) - y20) < 1e-14);
    }
  }
  CHECK_THROWS_AS(eval_harmonic(1, 2, 0.3, 0.1), IndexError);
}

TEST_CASE("quadrature orthonormality") {
  const SphereGrid g = make_sphere_grid(6);
  CHECK(g.ntheta >= g.L + 1);
  CHECK(g.nphi >= 2 * g.L + 1);
  SphereFunction y32{g, {}}, y10{g, {}}, y20{g, {}};
  for (int i = 0; i < g.ntheta; ++i)
    for (int k = 0; k < g.nphi; ++k) {
      y32.values.push_back(eval_harmonic(3, 2, g.theta[i], g.phi[k]));
      y10.values.push_back(eval_harmonic(1, 0, g.theta[i], g.phi[k]));
      y20.values.push_back(eval_harmonic(2, 0, g.theta[i], g.phi[k]));
    }
  CHECK(std::abs(l2norm2(y32) - 1.0) < 1e-13);
  CHECK(std::abs(inner(y10, y20)) < 1e-14);
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m)
      for (int l2 = 0; l2 <= 6; ++l2)
        for (int m2 = -l2; m2 <= l2; ++m2) {
          const cplx ip = inner(basis(g, l, m), basis(g, l2, m2));
          const double expect = (l == l2 && m == m2) ? 1.0 : 0.0;
          CHECK(std::abs(ip - expect) < 1e-12);
        }
}

TEST_CASE("projection examples") {
  const SphereGrid g = make_sphere_grid(4);
  const SphereFunction y11 = basis(g, 1, 1);
  const ModeCoefficients p1 = project(y11, 1);
  CHECK(std::abs(p1.at(1, 1) - 1.0) < 1e-13);
  CHECK(std::abs(p1.at(1, 0)) < 1e-13);
  CHECK(max_diff(sample_function(g, p1), y11) < 1e-13);
  const ModeCoefficients p0 = project(y11, 0);
  CHECK(p0.norm2() < 1e-26);

  ModeCoefficients c = zero_coeffs(4);
  c.at(0, 0) = 3.0;
  c.at(2, 0) = 2.0;
  const SphereFunction f = sample_function(g, c);
  CHECK(max_diff(project_geq(f, 1), basis(g, 2, 0, 2.0)) < 1e-13);

  SphereFunction one{g, std::vector<cplx>(g.npoints(), cplx(1.0))};
  const ModeCoefficients q = project(one, 0);
  CHECK(std::abs(q.at(0, 0) - std::sqrt(4 * kPi)) < 1e-13);
  CHECK(max_diff(sample_function(g, q), one) < 1e-13);

  CHECK_THROWS_AS(project(one, 5), BandLimitError);
  CHECK_THROWS_AS(project_geq(one, 5), BandLimitError);
}

TEST_CASE("eigenvalue relation on basis inputs") {
  const SphereGrid g = make_sphere_grid(8);
  for (int l = 0; l <= 8; ++l)
    for (int m = -l; m <= l; ++m) {
      const SphereFunction y = basis(g, l, m);
      SphereFunction expect = y;
      for (auto& x : expect.values) x *= -double(l * (l + 1));
      CHECK(max_diff(laplacian(y), expect) < 1e-10);
    }
}

TEST_CASE("Parseval, idempotence and orthogonality of projections") {
  std::mt19937_64 rng(11);
  const SphereGrid g = make_sphere_grid(7);
  for (int trial = 0; trial < 10; ++trial) {
    const ModeCoefficients c = random_coeffs(7, rng);
    const SphereFunction f = sample_function(g, c);
    CHECK(std::abs(l2norm2(f) - c.norm2()) < 1e-10 * c.norm2());
    const SphereFunction h = sample_function(g, random_coeffs(7, rng));
    for (int l = 0; l <= 7; ++l) {
      const SphereFunction pl = sample_function(g, project(f, l));
      CHECK(max_diff(sample_function(g, project(pl, l)), pl) < 1e-12);
      const SphereFunction geq = project_geq(f, l);
      CHECK(max_diff(project_geq(geq, l), geq) < 1e-12);
      for (int l2 = 0; l2 <= 7; ++l2) {
        if (l2 == l) continue;
        const SphereFunction ql = sample_function(g, project(h, l2));
        CHECK(std::abs(inner(pl, ql)) < 1e-11);
      }
    }
  }
}

TEST_CASE("Poincare identities on basis functions") {
  const SphereGrid g = make_sphere_grid(6);
  for (int l0 = 0; l0 <= 3; ++l0) {
    const auto r = poincare_residuals(basis(g, l0, l0 > 0 ? 1 : 0), l0);
    CHECK(r.poinc1 < 1e-11);
  }
  const SphereFunction y20 = basis(g, 2, 0);
  // ||(Lap + 2) Y20||^2 = (6 - 2)^2.
  SphereFunction sh = laplacian(y20);
  for (std::size_t j = 0; j < sh.values.size(); ++j) sh.values[j] += 2.0 * y20.values[j];
  CHECK(std::abs(l2norm2(sh) - 16.0) < 1e-11);
  CHECK(std::abs((6.0 - 2.0) * (grad_norm2(y20) - 2.0 * l2norm2(y20)) - 16.0) < 1e-11);
  // Gradient gap equals (6 - 2)/6 of the gradient norm.
  CHECK(std::abs(grad_norm2(y20) - 6.0) < 1e-11);
  CHECK(std::abs((grad_norm2(y20) - 2.0) - (4.0 / 6.0) * grad_norm2(y20)) < 1e-11);
  const auto r = poincare_residuals(y20, 1);
  CHECK(r.poinc2 < 1e-10);
  CHECK(r.poinc2_5 < 1e-10);
  CHECK(r.slack3 >= -1e-9);
  CHECK(r.slack4 >= -1e-9);
}

TEST_CASE("Poincare inequalities on random band-limited functions") {
  std::mt19937_64 rng(2024);
  const SphereGrid g = make_sphere_grid(8);
  for (int trial = 0; trial < 100; ++trial) {
    ModeCoefficients c = random_coeffs(8, rng);
    const double s = 1.0 / std::sqrt(c.norm2());
    for (auto& x : c.c) x *= s;
    const SphereFunction f = sample_function(g, c);
    for (int l0 : {0, 1, 2}) {
      const auto r = poincare_residuals(f, l0);
      CHECK(r.poinc1 < 1e-9);
      CHECK(r.poinc2 < 1e-9);
      CHECK(r.poinc2_5 < 1e-9);
      CHECK(r.slack3 >= -1e-9);
      CHECK(r.slack4 >= -1e-9);
    }
  }
}

}
