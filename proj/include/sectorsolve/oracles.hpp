#pragma once

#include <stdexcept>
#include <vector>

namespace sectorsolve::oracles {

struct OracleFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Minimal solution of the half-plane problem restricted to the normal
/// coordinate: 2 log(1 + x1/sqrt(2)). Satisfies -u'' = e^{-u}, u(0) = 0.
double halfplane_profile(double x1);

/// Closed-form solution of -Laplace(phi) = e^{-phi}, phi = 0 on the circle of
/// radius R, evaluated at distance x_rel from the center:
/// log((A^2 - x_rel^2)^2 / (8 A^2)), A = sqrt(2) + sqrt(2 + R^2).
double disk_closed_form(double R, double x_rel);

enum class RadialKind { Ball, Annulus };

/// Radially symmetric solution of Laplace(v) = e^v with v = -2 log(eps) on
/// the boundary, computed by shooting with adaptive embedded Runge-Kutta.
struct RadialProfile {
  RadialKind kind = RadialKind::Ball;
  double inner_radius = 0;  // 0 for BALL, a for ANNULUS
  double outer_radius = 0;  // eta or b
  double epsilon = 1;
  std::vector<double> r;
  std::vector<double> v;
  std::vector<double> vp;  // v'
  double vp_inner = 0;     // v'(a) (ANNULUS only)
  double vp_outer = 0;     // v'(eta) or v'(b)
};

RadialProfile radial_bvp(RadialKind kind, double r_outer, double epsilon,
                         double r_inner = 0, double ode_tol = 1e-10);

/// Residuals of the exact energy identities satisfied by the profile, plus
/// the derivative bounds they imply.
struct RadialIdentityReport {
  double identity_residual = 0;  // |LHS - RHS| of the applicable identity
  bool derivative_bound_ok = false;
  double derivative_bound = 0;   // the bound that was checked
  double critical_radius = 0;    // ANNULUS: c with v'(c) = 0
  bool critical_radius_ok = false;
};

RadialIdentityReport radial_identity_check(const RadialProfile& profile);

}  // namespace sectorsolve::oracles
