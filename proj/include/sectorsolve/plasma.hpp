#pragma once

#include <optional>

#include "sectorsolve/geometry.hpp"
#include "sectorsolve/sector_study.hpp"

namespace sectorsolve {

using PointwiseFunction = std::function<double(const Vec2&)>;

/// One equilibrium solve -Laplace(phi) = kappa e^{phi_e - phi} on a polygon
/// with homogeneous Dirichlet data, kappa = eps^{-2}.
struct PlasmaCase {
  PolygonSpec domain;
  double epsilon = 1;
  double kappa = 1;
  Field phi;
  double mass = 0;         // int kappa e^{phi_e - phi}, lumped quadrature
  double mass_flux = 0;    // -boundary flux of phi (gradient quadrature)
  std::optional<SingularityEstimate> lambda;        // RAYFIT, singular domains
  std::optional<SingularityEstimate> lambda_dual;   // cutoff-dual cross-check
  SolveReport solve;
  bool layer_resolved = true;
};

/// Boundary-layer meshed solve. Meshes are refined geometrically toward the
/// whole boundary with first-layer width <= eps/3 and graded toward the
/// reentrant corner when present.
PlasmaCase solve_plasma(const PolygonSpec& domain, double epsilon,
                        const PointwiseFunction& phi_e = {},
                        double interior_h = 0.1);

struct ScalingRow {
  double epsilon = 0;
  double mass = 0;
  double eps_mass = 0;
  double lambda = 0;      // 0 for regular domains
  double eps_alpha_lambda = 0;
  bool layer_resolved = true;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double perimeter = 0;
  double alpha = 0;                 // 0 for regular domains
  double mass_slope = 0;            // log-log fit, expected -1
  double lambda_slope = 0;          // expected -alpha
  double eps_mass_extrapolated = 0; // Richardson, first-order in eps
  double eps_mass_low = 0, eps_mass_high = 0;
  bool complete = true;
  std::string failure;
};

ScalingReport sweep_eps(const PolygonSpec& domain,
                        const std::vector<double>& epsilons,
                        const PointwiseFunction& phi_e = {}, int jobs = 1,
                        double interior_h = 0.1);

struct BlowupComparison {
  double window = 0;           // sample window |xi| <= window
  int samples = 0;
  int skipped = 0;             // sample points outside either mesh
  double lower_violation = 0;  // max(u_R - v_eps), expected <= tolerance
  double upper_violation = 0;  // max(v_eps - u_Rmax)
  double lambda_gap = 0;       // |eps^alpha lambda_eps - Lambda|
  double lambda_gap_relative = 0;
};

/// Compares the rescaled solution v_eps(xi) = phi_eps(eps xi) with the
/// truncated sector solutions bracketing it.
BlowupComparison blowup_compare(const PlasmaCase& plasma,
                                const MinimalSolutionStudy& sector,
                                double window = 4);

struct SandwichReport {
  double kappa = 0;
  double phi_e_min = 0, phi_e_max = 0;
  double mass_low = 0, mass_mid = 0, mass_high = 0;
  double lambda_low = 0, lambda_mid = 0, lambda_high = 0;
  bool mass_ordered = false;
  bool lambda_ordered = false;  // true when domain regular (vacuously)
  bool complete = true;
  std::string failure;
};

/// Checks the external-potential sandwich: solves with (kappa e^{min phi_e}, 0),
/// (kappa, phi_e), (kappa e^{max phi_e}, 0) and verifies the mass and
/// singularity-coefficient orderings.
SandwichReport sandwich_check(const PolygonSpec& domain, double kappa,
                              const PointwiseFunction& phi_e,
                              double interior_h = 0.1);

}  // namespace sectorsolve
