// Equation parameters and closed-form exponent tables.
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace tailwave {

using cplx = std::complex<double>;

enum class Kind { ISP, CSF };

struct ModelParams {
  Kind kind = Kind::ISP;
  double a = 0.0;  // inverse-square coupling (ISP)
  double q = 0.0;  // charge (CSF)
  double e = 0.0;  // background charge (CSF)

  static ModelParams isp(double a);
  // Stores q = qe, e = 1.
  static ModelParams csf(double qe);

  // Product qe; zero for ISP.
  double qe() const { return kind == Kind::CSF ? q * e : 0.0; }
  std::string describe() const;
};

struct ExponentTable {
  std::vector<cplx> p;
  std::vector<double> alpha;
  int lmax() const { return static_cast<int>(alpha.size()) - 1; }
};

// Throws OutOfRange when a <= -1/4 (ISP) or |qe| outside (0, 1/2) (CSF).
ModelParams validate_params(const ModelParams& params);

double alpha_of(const ModelParams& params, int ell);
cplx p_of(const ModelParams& params, int ell);

ExponentTable exponent_table(const ModelParams& params, int lmax);

Kind parse_kind(const std::string& text);
const char* kind_name(Kind kind);

}  // namespace tailwave
