#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "sectorsolve/nonlinear.hpp"

namespace sectorsolve::conformal {

using Complex = std::complex<double>;

/// Forward map of the upper half-plane onto the disk D2 centered at -i/2
/// with radius 1/2, and its inverse.
Complex phi_map(Complex z1);   // 1/(z1 + i)
Complex psi_map(Complex z2);   // 1/z2 - i
Complex phi_prime(Complex z1); // -1/(z1 + i)^2
Complex psi_prime(Complex z2); // -1/z2^2

struct MapSingularity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TransformDirection { HalfPlaneToDisk, DiskToHalfPlane };

/// Log-derivative transform between solutions of Laplace(w) = 4 e^{2w} on the
/// two planes: w2(z2) = log|Psi'(z2)| + w1(Psi(z2)) and its inverse.
std::function<double(Complex)> transform_field(
    const std::function<double(Complex)>& w, TransformDirection direction);

/// Solution of the truncated mixed problem on D2:
/// Laplace(w) = 4 e^{2w}, w = min(k, -log|z2|^2) on the left half-circle,
/// d_n w = -2 on the right half-circle. Solved internally in u = -2w
/// variables to reuse the semilinear solver.
struct DiskSolution {
  Field w;  // w-variables on the D2 mesh
  double truncation = 0;
  SolveReport report;
};

DiskSolution solve_disk_truncated(double k, double h);
/// Variant on a caller-provided D2 mesh (shared across truncation levels).
DiskSolution solve_disk_truncated(double k, std::shared_ptr<const Mesh> mesh,
                                  const Field* warm_start = nullptr);

std::shared_ptr<const Mesh> make_disk_domain(double h, double k_max = 6);

/// Evaluator of the split-plane supersolution
/// phi*(x) = -2 log|Phi'(x/sqrt(8))| - 2 w2^k(Phi(x/sqrt(8))), extended to
/// the full split plane by even reflection across theta = 0.
class PhiStarEvaluator {
public:
  PhiStarEvaluator(DiskSolution solution, double min_nodal_w0);

  double operator()(const Vec2& x) const;
  double truncation() const { return solution_.truncation; }
  /// min nodal value of the k = 0 solve; enters the upper bound
  /// phi*(x) <= 2 log(1 + (sqrt(2)/2) r sin|theta| + r^2/8) - 2m.
  double lower_bound_constant() const { return m_; }
  double upper_bound(const Vec2& x) const;

private:
  DiskSolution solution_;
  double m_ = 0;
};

struct PhiStarResult {
  std::vector<double> values;         // at the requested points, final level
  std::vector<double> level_changes;  // max |change| per schedule step
  std::vector<double> schedule;       // truncation levels used
  double m = 0;                       // min nodal w2^0
  PhiStarEvaluator evaluator;
};

/// Runs the truncation schedule (warm-started, one shared mesh), evaluates
/// phi* at the given points in the closed upper half-plane, and reports the
/// per-level convergence estimate.
PhiStarResult build_phistar(const std::vector<Vec2>& points, double h,
                            std::vector<double> schedule = {0, 2, 4, 6},
                            double stop_change = 1e-3);

}  // namespace sectorsolve::conformal
