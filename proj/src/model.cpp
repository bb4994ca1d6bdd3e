#include "tailwave/model.hpp"

#include <cmath>
#include <sstream>

#include "tailwave/errors.hpp"

namespace tailwave {

ModelParams ModelParams::isp(double a) {
  ModelParams m;
  m.kind = Kind::ISP;
  m.a = a;
  return m;
}

ModelParams ModelParams::csf(double qe) {
  ModelParams m;
  m.kind = Kind::CSF;
  m.q = qe;
  m.e = 1.0;
  return m;
}

std::string ModelParams::describe() const {
  std::ostringstream os;
  os.precision(12);
  if (kind == Kind::ISP) {
    os << "isp a=" << a;
  } else {
    os << "csf q=" << q << " e=" << e << " qe=" << qe();
  }
  return os.str();
}

ModelParams validate_params(const ModelParams& params) {
  if (params.kind == Kind::ISP) {
    if (!std::isfinite(params.a) || params.a <= -0.25) {
      std::ostringstream os;
      os << "a = " << params.a << " must satisfy a > -1/4";
      throw OutOfRange(os.str());
    }
  } else {
    const double qe = params.qe();
    if (!std::isfinite(qe) || std::abs(qe) >= 0.5) {
      std::ostringstream os;
      os << "|qe| = " << std::abs(qe) << " must satisfy |qe| < 1/2";
      throw OutOfRange(os.str());
    }
    if (qe == 0.0) {
      throw OutOfRange("qe = 0 is not a charged model; use kind = isp with a = 0");
    }
  }
  return params;
}

double alpha_of(const ModelParams& params, int ell) {
  const double L = static_cast<double>(ell) * (ell + 1);
  if (params.kind == Kind::ISP) {
    return 0.5 * std::sqrt(1.0 + 4.0 * params.a + 4.0 * L);
  }
  const double qe = params.qe();
  return 0.5 * std::sqrt(1.0 - 4.0 * qe * qe + 4.0 * L);
}

cplx p_of(const ModelParams& params, int ell) {
  return {0.5 + alpha_of(params, ell), params.qe()};
}

ExponentTable exponent_table(const ModelParams& params, int lmax) {
  validate_params(params);
  if (lmax < 0) throw OutOfRange("lmax must be >= 0");
  ExponentTable t;
  for (int ell = 0; ell <= lmax; ++ell) {
    t.alpha.push_back(alpha_of(params, ell));
    t.p.push_back(p_of(params, ell));
  }
  return t;
}

Kind parse_kind(const std::string& text) {
  if (text == "isp" || text == "ISP") return Kind::ISP;
  if (text == "csf" || text == "CSF") return Kind::CSF;
  throw OutOfRange("unknown model kind '" + text + "' (expected isp or csf)");
}

const char* kind_name(Kind kind) { return kind == Kind::ISP ? "isp" : "csf"; }

}  // namespace tailwave
