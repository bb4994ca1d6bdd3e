// Initial data on the hyperboloid T = -1, in the regularized variable W.
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tailwave/model.hpp"
#include "tailwave/twisted.hpp"

namespace tailwave {

enum class Family { Bump, PolynomialBump, StaticMode, Gaussian, CustomTable };

Family parse_family(const std::string& name);
std::string family_name(Family f);

struct DataFamily {
  Family family = Family::Bump;
  double center = 0.5;
  double width = 0.2;
  cplx amplitude{1.0, 0.0};
  cplx velocity{0.0, 0.0};  // Wdot = velocity * shape
  int ell = 0;
  int m = 0;
  double delta = 0.0;       // > 0: truncate at R = 1 and mollify across it
  double lambda = 0.0;      // adds lambda * static mode
  std::vector<std::pair<double, double>> table;  // CustomTable rows (R, value)
};

// Pointwise W and Wdot, before truncation and mollification.
struct RadialProfile {
  std::function<cplx(double)> W0;
  std::function<cplx(double)> W1;
};

double bump_shape(double s);             // exp(-1/(1-s^2)), |s| < 1
double polynomial_bump_shape(double s);  // (1-s^2)^4, |s| < 1
double smooth_step(double x);            // 0 for x <= 0, 1 for x >= 1, C-infinity
double static_cutoff(double R, double Rc = 2.0, double ramp = 0.5);

RadialProfile make_profile(const DataFamily& fam);

struct DataPair {
  RadialGridFunction W0;
  RadialGridFunction W1;
};

DataPair make_data(const DataFamily& fam, const RadialGrid& grid);

// Keeps R <= 1 - 2 delta, blends into the mollified data on [1 - 2 delta, 1 - delta].
RadialGridFunction mollify_extend(const RadialGridFunction& f, double delta);

DataPair static_solution(int ell, int m, const RadialGrid& grid, double Rc = 2.0);

// d_T^n Phi at T = -1 for node data Phi^0, Phidot^0.
RadialGridFunction tderiv_data(const RadialGridFunction& Phi0, const RadialGridFunction& Phidot0,
                               const ModelParams& params, int n);

// Same recursion in the W variable.
RadialGridFunction tderiv_data_W(const RadialGridFunction& W0, const RadialGridFunction& W1,
                                 const ModelParams& params, int n);

RadialGridFunction phi_from_W(const RadialGridFunction& W, double alpha);
RadialGridFunction W_from_phi(const RadialGridFunction& Phi, double alpha);

// Two-column CSV R,value.
std::vector<std::pair<double, double>> read_table_csv(const std::string& path);

}  // namespace tailwave
