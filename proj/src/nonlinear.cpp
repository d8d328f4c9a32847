#include "sectorsolve/nonlinear.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <cmath>

namespace sectorsolve {

namespace {

struct ReducedSystem {
  std::vector<int> free_nodes;          // local -> global
  std::vector<int> local_index;         // global -> local (-1 fixed)
  Eigen::SparseMatrix<double> K_ff;
  Eigen::VectorXd neumann_full;         // combined flux load, all nodes

  static ReducedSystem build(const Operator& op, const std::map<int, double>& neumann) {
    ReducedSystem sys;
    const int n = static_cast<int>(op.free_mask.size());
    sys.local_index.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      if (op.free_mask[i]) {
        sys.local_index[i] = static_cast<int>(sys.free_nodes.size());
        sys.free_nodes.push_back(i);
      }
    }
    std::vector<Eigen::Triplet<double>> triplets;
    for (int col = 0; col < op.stiffness.outerSize(); ++col) {
      const int lc = sys.local_index[col];
      if (lc < 0) continue;
      for (Eigen::SparseMatrix<double>::InnerIterator it(op.stiffness, col); it; ++it) {
        const int lr = sys.local_index[it.row()];
        if (lr >= 0) triplets.emplace_back(lr, lc, it.value());
      }
    }
    const int nf = static_cast<int>(sys.free_nodes.size());
    sys.K_ff.resize(nf, nf);
    sys.K_ff.setFromTriplets(triplets.begin(), triplets.end());
    sys.neumann_full = Eigen::VectorXd::Zero(n);
    for (const auto& [segment, flux] : neumann) {
      const auto it = op.neumann_loads.find(segment);
      if (it != op.neumann_loads.end()) sys.neumann_full += flux * it->second;
    }
    return sys;
  }

  Eigen::VectorXd residual(const Operator& op, const Eigen::VectorXd& u,
                           const Field& weight) const {
    const Eigen::VectorXd Ku = op.stiffness * u;
    Eigen::VectorXd F(free_nodes.size());
    for (size_t l = 0; l < free_nodes.size(); ++l) {
      const int i = free_nodes[l];
      F[l] = Ku[i] - op.lumped_mass[i] * weight[i] * std::exp(-u[i]) - neumann_full[i];
    }
    return F;
  }

  double energy(const Operator& op, const Eigen::VectorXd& u, const Field& weight) const {
    double J = 0.5 * u.dot(op.stiffness * u) - neumann_full.dot(u);
    for (int i = 0; i < u.size(); ++i)
      J += op.lumped_mass[i] * weight[i] * std::exp(-u[i]);
    return J;
  }
};

Eigen::VectorXd apply_dirichlet(const Operator& op,
                                const std::map<int, BoundaryFunction>& dirichlet) {
  const Mesh& mesh = *op.mesh;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(mesh.node_count());
  for (const auto& be : mesh.boundary_edges) {
    if (be.tag.kind != BcKind::Dirichlet) continue;
    const auto it = dirichlet.find(be.tag.segment);
    if (it == dirichlet.end() || !it->second) continue;  // homogeneous
    u[be.a] = it->second(mesh.nodes[be.a]);
    u[be.b] = it->second(mesh.nodes[be.b]);
  }
  return u;
}

class LinearSolverImpl {
public:
  LinearSolverImpl(const Eigen::SparseMatrix<double>& pattern, bool direct, double cg_tol)
      : direct_(direct), cg_tol_(cg_tol) {
    if (direct_) ldlt_.analyzePattern(pattern);
  }

  void factorize(const Eigen::SparseMatrix<double>& J) {
    if (direct_) {
      ldlt_.factorize(J);
      if (ldlt_.info() != Eigen::Success)
        throw std::runtime_error("internal-error: indefinite Newton system");
    } else {
      cg_.setTolerance(cg_tol_);
      cg_.setMaxIterations(5000);
      cg_.compute(J);
    }
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) {
    return direct_ ? Eigen::VectorXd(ldlt_.solve(rhs)) : Eigen::VectorXd(cg_.solve(rhs));
  }

private:
  bool direct_;
  double cg_tol_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::IncompleteCholesky<double>> cg_;
};

bool use_direct(const SolveOptions& opts, int free_count) {
  switch (opts.linear_solver) {
    case LinearSolver::Direct: return true;
    case LinearSolver::ConjugateGradient: return false;
    case LinearSolver::Auto: break;
  }
  return free_count <= opts.direct_node_limit;
}

}  // namespace

std::pair<Field, SolveReport> solve_semilinear(
    const Operator& op, const Field& weight,
    const std::map<int, BoundaryFunction>& dirichlet,
    const std::map<int, double>& neumann, const SolveOptions& opts) {
  if (opts.residual_tol <= 0 || opts.max_newton < 1)
    throw InvalidSpec("invalid solve options");
  for (int i = 0; i < weight.size(); ++i)
    if (!(weight[i] >= 0) || !std::isfinite(weight[i]))
      throw InvalidSpec("weight must be nodally finite and nonnegative");

  const auto sys = ReducedSystem::build(op, neumann);
  if (sys.free_nodes.empty())
    throw InvalidSpec("no free nodes: Dirichlet boundary covers every node");

  Eigen::VectorXd u = apply_dirichlet(op, dirichlet);
  SolveReport report;
  report.energy.push_back(sys.energy(op, u, weight));

  Eigen::VectorXd F = sys.residual(op, u, weight);
  const double scale = F.norm();
  auto make_field = [&](const Eigen::VectorXd& v) {
    return Field(op.mesh, v);
  };
  if (scale == 0) {
    report.converged = true;
    return {make_field(u), report};
  }

  const int nf = static_cast<int>(sys.free_nodes.size());
  LinearSolverImpl linear(sys.K_ff, use_direct(opts, nf), opts.cg_tol);
  Eigen::SparseMatrix<double> J = sys.K_ff;

  for (int iter = 0; iter < opts.max_newton; ++iter) {
    report.residual = F.norm() / scale;
    if (report.residual <= opts.residual_tol) {
      report.converged = true;
      return {make_field(u), report};
    }
    // Newton system: (K + diag(m W e^{-u})) delta = -F on the free nodes.
    Eigen::VectorXd diag(nf);
    for (int l = 0; l < nf; ++l) {
      const int i = sys.free_nodes[l];
      diag[l] = op.lumped_mass[i] * weight[i] * std::exp(-u[i]);
    }
    J = sys.K_ff;
    for (int l = 0; l < nf; ++l) J.coeffRef(l, l) += diag[l];
    linear.factorize(J);
    const Eigen::VectorXd delta = linear.solve(-F);

    const double slope = F.dot(delta);  // directional derivative of the energy
    const double E0 = report.energy.back();
    double t = 1.0;
    Eigen::VectorXd candidate = u;
    double E1 = E0;
    for (int back = 0; back < 50; ++back) {
      candidate = u;
      for (int l = 0; l < nf; ++l) candidate[sys.free_nodes[l]] += t * delta[l];
      E1 = sys.energy(op, candidate, weight);
      if (E1 <= E0 + opts.armijo_c * t * slope) break;
      t *= 0.5;
      if (t < 1e-14) break;
    }
    u = candidate;
    report.energy.push_back(E1);
    report.iterations = iter + 1;
    F = sys.residual(op, u, weight);
  }
  report.residual = F.norm() / scale;
  if (report.residual <= opts.residual_tol) {
    report.converged = true;
    return {make_field(u), report};
  }
  throw SolveDiverged("Newton did not converge in " + std::to_string(opts.max_newton) +
                          " iterations (relative residual " +
                          std::to_string(report.residual) + ")",
                      make_field(u), report);
}

std::pair<Field, SolveReport> solve_semilinear(
    std::shared_ptr<const Mesh> mesh, const Field& weight,
    const std::map<int, BoundaryFunction>& dirichlet,
    const std::map<int, double>& neumann, const SolveOptions& opts) {
  const Operator op = assemble_operator(std::move(mesh));
  return solve_semilinear(op, weight, dirichlet, neumann, opts);
}

Field monotone_iterate(std::shared_ptr<const Mesh> mesh, const Field& weight,
                       const Field& start, const SolveOptions& opts) {
  const Operator op = assemble_operator(mesh);
  const auto sys = ReducedSystem::build(op, {});

  Eigen::VectorXd u = start.values();
  // Subsolution precondition: nonpositive lumped residual at free nodes and
  // nonpositive trace on the (homogeneous) Dirichlet boundary.
  const Eigen::VectorXd F0 = sys.residual(op, u, weight);
  const double slack = 1e-10 * (1.0 + F0.cwiseAbs().maxCoeff());
  if (F0.maxCoeff() > slack)
    throw PreconditionViolation("start field is not a discrete subsolution");
  for (int i = 0; i < u.size(); ++i)
    if (!op.free_mask[i] && u[i] > 1e-12)
      throw PreconditionViolation("start field exceeds the boundary data");

  const int nf = static_cast<int>(sys.free_nodes.size());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  ldlt.analyzePattern(sys.K_ff);
  const int max_sweeps = 5000;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double sigma = 0;
    for (int l = 0; l < nf; ++l) {
      const int i = sys.free_nodes[l];
      sigma = std::max(sigma, weight[i] * std::exp(-u[i]));
    }
    Eigen::SparseMatrix<double> A = sys.K_ff;
    Eigen::VectorXd rhs(nf);
    for (int l = 0; l < nf; ++l) {
      const int i = sys.free_nodes[l];
      A.coeffRef(l, l) += sigma * op.lumped_mass[i];
      rhs[l] = op.lumped_mass[i] * (weight[i] * std::exp(-u[i]) + sigma * u[i]);
    }
    ldlt.factorize(A);
    const Eigen::VectorXd next = ldlt.solve(rhs);
    double change = 0;
    for (int l = 0; l < nf; ++l) {
      change = std::max(change, std::abs(next[l] - u[sys.free_nodes[l]]));
      u[sys.free_nodes[l]] = next[l];
    }
    if (change <= opts.residual_tol * (1.0 + u.cwiseAbs().maxCoeff()))
      return Field(mesh, u);
  }
  throw std::runtime_error("monotone iteration did not converge");
}

double relative_residual(const Operator& op, const Field& u, const Field& weight,
                         const std::map<int, double>& neumann) {
  const auto sys = ReducedSystem::build(op, neumann);
  Eigen::VectorXd base = u.values();
  for (int i : sys.free_nodes) base[i] = 0;
  const double scale = sys.residual(op, base, weight).norm();
  const double res = sys.residual(op, u.values(), weight).norm();
  return scale > 0 ? res / scale : res;
}

}  // namespace sectorsolve
