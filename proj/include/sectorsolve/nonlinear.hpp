#pragma once

#include <functional>
#include <map>
#include <memory>

#include "sectorsolve/discretization.hpp"

namespace sectorsolve {

enum class LinearSolver { Auto, Direct, ConjugateGradient };

struct SolveOptions {
  double residual_tol = 1e-10;  // relative nonlinear residual
  int max_newton = 50;
  double armijo_c = 1e-4;
  LinearSolver linear_solver = LinearSolver::Auto;
  int direct_node_limit = 300000;  // Auto switches to CG above this
  double cg_tol = 1e-13;
};

struct SolveReport {
  int iterations = 0;
  double residual = 0;  // final relative residual
  std::vector<double> energy;
  bool converged = false;
};

struct SolveDiverged : std::runtime_error {
  Field last_iterate;
  SolveReport report;
  SolveDiverged(const std::string& what, Field f, SolveReport r)
      : std::runtime_error(what), last_iterate(std::move(f)), report(std::move(r)) {}
};

struct PreconditionViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using BoundaryFunction = std::function<double(const Vec2&)>;

/// Solves -Laplace(u) = W(x) e^{-u} with per-tag Dirichlet data and per-tag
/// constant Neumann flux, by damped Newton on the convex energy. Dirichlet
/// conditions are imposed by elimination. `neumann` prescribes the outward
/// flux d_n u on the tagged segments.
std::pair<Field, SolveReport> solve_semilinear(
    std::shared_ptr<const Mesh> mesh, const Field& weight,
    const std::map<int, BoundaryFunction>& dirichlet,
    const std::map<int, double>& neumann = {}, const SolveOptions& opts = {});

/// Same solve with a preassembled operator (reused across related solves).
std::pair<Field, SolveReport> solve_semilinear(
    const Operator& op, const Field& weight,
    const std::map<int, BoundaryFunction>& dirichlet,
    const std::map<int, double>& neumann = {}, const SolveOptions& opts = {});

/// Monotone fixed-point iteration u_{n+1} = (-Laplace + sigma I)^{-1}
/// (W e^{-u_n} + sigma u_n) with sigma = max nodal W e^{-u_n}, starting from
/// a discrete subsolution (homogeneous Dirichlet data). Iterates are nodally
/// nondecreasing.
Field monotone_iterate(std::shared_ptr<const Mesh> mesh, const Field& weight,
                       const Field& start, const SolveOptions& opts = {});

/// Nonlinear residual of `u` against the lumped weak form (all free nodes),
/// relative to the residual of the zero-interior state.
double relative_residual(const Operator& op, const Field& u, const Field& weight,
                         const std::map<int, double>& neumann = {});

}  // namespace sectorsolve
