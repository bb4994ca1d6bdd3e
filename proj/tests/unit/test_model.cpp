#include <doctest.h>

#include <cmath>

#include "tailwave/errors.hpp"
#include "tailwave/model.hpp"

using namespace tailwave;

TEST_SUITE("model") {

TEST_CASE("validation accepts and rejects ranges") {
  CHECK_NOTHROW(validate_params(ModelParams::isp(0.0)));
  CHECK_NOTHROW(validate_params(ModelParams::isp(-0.24)));
  CHECK_THROWS_AS(validate_params(ModelParams::isp(-0.3)), OutOfRange);
  CHECK_THROWS_AS(validate_params(ModelParams::isp(-0.25)), OutOfRange);
  CHECK_NOTHROW(validate_params(ModelParams::csf(0.3)));
  CHECK_NOTHROW(validate_params(ModelParams::csf(-0.3)));
  CHECK_THROWS_AS(validate_params(ModelParams::csf(0.6)), OutOfRange);
  CHECK_THROWS_AS(validate_params(ModelParams::csf(0.5)), OutOfRange);
  CHECK_THROWS_AS(validate_params(ModelParams::csf(0.0)), OutOfRange);

  ModelParams p;
  p.kind = Kind::CSF;
  p.q = 0.2;
  p.e = 1.5;
  const ModelParams v = validate_params(p);
  CHECK(v.q == 0.2);
  CHECK(v.e == 1.5);
  CHECK(v.qe() == doctest::Approx(0.3));
}

TEST_CASE("exponent examples") {
  const auto t0 = exponent_table(ModelParams::isp(0.0), 1);
  CHECK(t0.p[0].real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t0.alpha[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t0.p[1].real() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(t0.alpha[1] == doctest::Approx(1.5).epsilon(1e-15));

  const auto t2 = exponent_table(ModelParams::isp(2.0), 0);
  CHECK(t2.lmax() == 0);
  CHECK(t2.p[0].real() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(t2.p[0].imag() == 0.0);
  CHECK(t2.alpha[0] == doctest::Approx(1.5).epsilon(1e-15));

  const auto tc = exponent_table(ModelParams::csf(0.3), 0);
  CHECK(tc.p[0].real() == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(tc.p[0].imag() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(tc.alpha[0] == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("invalid parameters are rejected by the table") {
  CHECK_THROWS_AS(exponent_table(ModelParams::isp(-1.0), 2), OutOfRange);
  CHECK_THROWS_AS(exponent_table(ModelParams::csf(0.7), 2), OutOfRange);
}

TEST_CASE("table invariants over a parameter sweep") {
  for (double a : {-0.2, 0.0, 0.5, 2.0, 6.0, 11.3}) {
    const auto t = exponent_table(ModelParams::isp(a), 12);
    for (int l = 0; l <= 12; ++l) {
      CHECK(std::abs(t.p[l].real() - 0.5 - t.alpha[l]) < 1e-14);
      CHECK(t.p[l].imag() == 0.0);
      const double direct = 0.5 * std::sqrt(1.0 + 4.0 * a + 4.0 * l * (l + 1));
      CHECK(std::abs(t.alpha[l] - direct) < 1e-14);
      if (l > 0) CHECK(t.alpha[l] > t.alpha[l - 1]);
    }
  }
  for (double qe : {-0.45, -0.1, 0.01, 0.3, 0.499}) {
    const auto t = exponent_table(ModelParams::csf(qe), 12);
    CHECK(t.alpha[0] > 0.0);
    CHECK(t.alpha[0] < 0.5);
    for (int l = 0; l <= 12; ++l) {
      CHECK(std::abs(t.p[l].real() - 0.5 - t.alpha[l]) < 1e-14);
      CHECK(t.p[l].imag() == qe);
      if (l >= 1) CHECK(t.alpha[l] >= std::sqrt(2.0));
      if (l > 0) CHECK(t.alpha[l] > t.alpha[l - 1]);
    }
  }
}

TEST_CASE("coupling a = l'(l'+1) shifts the mode index") {
  CHECK(alpha_of(ModelParams::isp(2.0), 0) == alpha_of(ModelParams::isp(0.0), 1));
  CHECK(std::abs(alpha_of(ModelParams::isp(6.0), 0) - alpha_of(ModelParams::isp(0.0), 2)) < 1e-15);
  CHECK(p_of(ModelParams::isp(2.0), 0) == p_of(ModelParams::isp(0.0), 1));
}

TEST_CASE("kind names round trip") {
  CHECK(parse_kind("isp") == Kind::ISP);
  CHECK(parse_kind("csf") == Kind::CSF);
  CHECK(std::string(kind_name(Kind::CSF)) == "csf");
  CHECK_THROWS_AS(parse_kind("kg"), OutOfRange);
  CHECK(ModelParams::isp(2).describe().find("isp") != std::string::npos);
}

}
