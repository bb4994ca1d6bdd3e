#include "tailwave/geometry.hpp"

#include <cmath>
#include <sstream>

#include "tailwave/errors.hpp"

namespace tailwave {

NullPoint null_from_spherical(const SphericalPoint& p) {
  if (p.r < 0.0) throw DomainError("area radius r must be >= 0");
  return {0.5 * (p.t - p.r), 0.5 * (p.t + p.r)};
}

SphericalPoint spherical_from_null(const NullPoint& p) {
  if (p.v < p.u) throw DomainError("null point requires v >= u");
  return {p.u + p.v, p.v - p.u};
}

CompactPoint compact_from_null(const NullPoint& p) {
  if (!(p.u > 0.0)) {
    std::ostringstream os;
    os << "compactified chart needs u > 0, got u = " << p.u;
    throw DomainError(os.str());
  }
  if (p.v < p.u) throw DomainError("null point requires v >= u");
  CompactPoint c;
  c.U = -1.0 / p.u;
  c.V = -1.0 / p.v;
  c.T = c.U + c.V;
  // (v - u)/(u v) avoids cancellation in V - U for large u, v.
  c.R = (p.v - p.u) / (p.u * p.v);
  return c;
}

NullPoint null_from_compact(const CompactPoint& p) {
  if (!(p.U < 0.0) || !(p.V < 0.0)) {
    throw DomainError("physical chart needs U < 0 and V < 0");
  }
  return {-1.0 / p.U, -1.0 / p.V};
}

CompactPoint compact_from_TR(double T, double R) {
  if (R < 0.0) throw DomainError("R must be >= 0");
  CompactPoint c;
  c.T = T;
  c.R = R;
  c.U = 0.5 * (T - R);
  c.V = 0.5 * (T + R);
  return c;
}

double sigma1_R_of_r(double r) {
  if (r < 0.0) throw DomainError("r must be >= 0");
  return r / (2.0 + std::sqrt(4.0 + r * r));
}

double sigma1_r_of_R(double R) {
  if (R < 0.0 || R >= 1.0) throw DomainError("hyperboloid R must lie in [0, 1)");
  return 4.0 * R / (1.0 - R * R);
}

double sigma1_t_of_r(double r) { return 2.0 + std::sqrt(4.0 + r * r); }

bool in_forward_domain(const SphericalPoint& p) {
  const double s = p.t - 2.0;
  return p.r >= 0.0 && p.t >= 4.0 && s * s - p.r * p.r >= 4.0;
}

MorawetzCoefficients morawetz_coefficients(const SphericalPoint& p) {
  const double k = 0.5 * (p.t * p.t + p.r * p.r);
  const double m = p.r * p.t;
  return {k, m, m, k};
}

}  // namespace tailwave
