#pragma once

#include <optional>

#include "sectorsolve/conformal.hpp"
#include "sectorsolve/nonlinear.hpp"
#include "sectorsolve/singular.hpp"

namespace sectorsolve {

/// One property check of the minimal-solution suite.
struct PropertyCheck {
  std::string name;
  bool passed = false;
  double residual = 0;   // worst signed violation (<= 0 means satisfied)
  double tolerance = 0;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_passed() const;
  const PropertyCheck& operator[](const std::string& name) const;
  /// Measured but never asserted: worst concavity defect of theta -> u(r,theta).
  double concavity_defect = 0;
};

/// Property suite for a computed minimal-solution candidate on a sector mesh:
/// (a) mirror symmetry, (b) angular maximum on the bisector, (c) radial
/// derivative bound r d_r u <= 2, (d) logarithmic upper bound, (e) inscribed
/// disk lower bound, (f) directional monotonicity over the translation-
/// invariant cone of directions, (g) nonnegativity.
PropertyReport verify_minimal_properties(const Field& u, double theta0, double R);

struct StudyStep {
  double R = 0;
  Field u;
  SolveReport solve;
  std::optional<SingularityEstimate> lambda;  // reentrant sectors only
};

struct MinimalSolutionStudy {
  double theta0 = 0;
  double alpha = 0;
  double h = 0;
  double beta = 0;
  std::vector<StudyStep> steps;
  std::optional<PropertyReport> properties;   // on the largest-R field
  std::optional<SingularityEstimate> lambda_extrapolated;
  bool complete = true;                        // false if a solve diverged
  std::string failure;
};

/// R-sweep producing the truncated-domain solutions, their singularity
/// coefficients (dual formula), the property suite on the largest domain,
/// and the extrapolated coefficient bracket.
MinimalSolutionStudy sweep_R(double theta0, const std::vector<double>& radii,
                             double h, double beta = 0, int jobs = 1,
                             bool run_properties = true);

/// Default grading exponent: 2/alpha for reentrant sectors, 1 otherwise.
double default_grading(double theta0);

struct FamilyParams {
  double mu_minus = 0;
  double mu_plus = 0;
};

struct FamilySolution {
  FamilyParams mu;
  Field v;      // bounded part, solves -Laplace(v) = e^{-H} e^{-v}
  Field u_ref;  // unweighted solution on the same mesh
  SingularBasis basis;

  /// phi_mu = H_mu + v with the harmonic part added in closed form.
  double eval_phi(const Vec2& p) const;
  double eval_H(const Vec2& p) const;
};

/// Solves the weighted truncated problem with W = e^{-H_mu} for the
/// non-uniqueness family phi_mu = H_mu + v. Rejects mu_minus > 0 in salient
/// or flat sectors (alpha >= 1).
FamilySolution family_mu(double theta0, FamilyParams mu, double R, double h);

}  // namespace sectorsolve
