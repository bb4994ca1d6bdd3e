// Coordinate charts (t,r) <-> (u,v) <-> (U,V) <-> (T,R) and the hyperboloid.
#pragma once

namespace tailwave {

struct SphericalPoint {
  double t = 0.0;
  double r = 0.0;
};

struct NullPoint {
  double u = 0.0;
  double v = 0.0;
};

struct CompactPoint {
  double U = 0.0;
  double V = 0.0;
  double T = 0.0;
  double R = 0.0;
};

struct MorawetzCoefficients {
  double K_t, K_r, Kperp_t, Kperp_r;
};

NullPoint null_from_spherical(const SphericalPoint& p);
SphericalPoint spherical_from_null(const NullPoint& p);

// Requires u > 0.
CompactPoint compact_from_null(const NullPoint& p);
// Requires U < 0 and V < 0.
NullPoint null_from_compact(const CompactPoint& p);
CompactPoint compact_from_TR(double T, double R);

// R-coordinate of the point of the hyperboloid T = -1 at area radius r.
double sigma1_R_of_r(double r);
// Inverse of sigma1_R_of_r on [0, 1).
double sigma1_r_of_R(double R);
// Time coordinate t of the hyperboloid point at area radius r.
double sigma1_t_of_r(double r);

bool in_forward_domain(const SphericalPoint& p);

MorawetzCoefficients morawetz_coefficients(const SphericalPoint& p);

}  // namespace tailwave
