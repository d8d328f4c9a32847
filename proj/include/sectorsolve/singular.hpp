#pragma once

#include <optional>
#include <vector>

#include "sectorsolve/discretization.hpp"

namespace sectorsolve {

/// Primal/dual harmonic corner singularities for a sector of half-opening
/// theta0, exponent alpha = pi/(2 theta0), in corner-local polar coordinates
/// (axis = bisector direction).
struct SingularBasis {
  double alpha = 0;
  Vec2 corner = Vec2::Zero();
  Vec2 axis = Vec2::UnitX();  // bisector, unit length

  static SingularBasis for_sector(double theta0, Vec2 corner = Vec2::Zero(),
                                  Vec2 axis = Vec2::UnitX());
  /// Local polar coordinates (r, theta) of p, theta measured from the axis.
  std::pair<double, double> polar(const Vec2& p) const;
};

enum class SingularKind { S, Sstar };

/// S(r,t) = r^alpha cos(alpha t); S*(r,t) = (1/pi) r^{-alpha} cos(alpha t).
double eval_singular(const SingularBasis& basis, SingularKind kind, const Vec2& p);

/// Dual singular function of the truncated sector:
/// (1/pi) (r^{-alpha} - (r/R^2)^alpha) cos(alpha t). Vanishes at r = R.
double eval_dual_ps(const SingularBasis& basis, double R, const Vec2& p);

enum class ExtractionMethod { Dual, RayFit };

struct SingularityEstimate {
  double lambda = 0;
  ExtractionMethod method = ExtractionMethod::Dual;
  double low = 0, high = 0;      // uncertainty bracket, low <= lambda <= high
  double window_low = 0, window_high = 0;  // fit window or sector radius
};

struct FitFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Singularity coefficient by the dual-function formula
/// Lambda_R = int_{Omega_R} W e^{-u} P_s^R, with the r^{-alpha} integrand
/// handled by polar subdivision of corner-adjacent triangles. The bracket
/// comes from one quadrature refinement. Requires alpha < 1.
SingularityEstimate extract_lambda_dual(const Field& u, const Field& weight,
                                        const SingularBasis& basis, double R);

/// Least-squares fit of ray samples of u against {r^a cos(a t), r cos t, r^2}
/// over the window; returns the r^a coefficient. Bracket from varying the
/// window by +-25%. Default ray: the bisector.
SingularityEstimate extract_lambda_fit(const Field& u, const SingularBasis& basis,
                                       double r_min, double r_max,
                                       const std::vector<double>& rays = {0.0},
                                       int samples_per_ray = 40);

/// Cutoff variant of the dual formula for solutions on polygons:
/// lambda = int (chi W e^{-u} - 2 grad(chi).grad(u) - Laplace(chi) u) P_s^{2B}
/// over the tangent subsector of radius 2B. chi is the radial C^2 quintic
/// with chi = 1 for r <= B/2 and chi = 0 for r >= B.
SingularityEstimate extract_lambda_dual_cutoff(const Field& u, const Field& weight,
                                               const SingularBasis& basis, double B);

/// Radial C^2 cutoff used by the extraction above (value, first and second
/// radial derivatives).
struct CutoffValues {
  double value = 0, d1 = 0, d2 = 0;
};
CutoffValues radial_cutoff(double r, double B);

}  // namespace sectorsolve
