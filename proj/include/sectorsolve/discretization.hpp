#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <map>
#include <memory>

#include "sectorsolve/mesh.hpp"

namespace sectorsolve {

struct AssemblyFailure : std::runtime_error {
  int triangle = -1;
  AssemblyFailure(const std::string& what, int tri)
      : std::runtime_error(what), triangle(tri) {}
};

struct EvaluationError : std::runtime_error {
  int node = -1;
  EvaluationError(const std::string& what, int n)
      : std::runtime_error(what), node(n) {}
};

/// Nodal scalar field bound to a mesh. Point evaluation interpolates
/// barycentrically inside the containing triangle.
class Field {
public:
  Field() = default;
  Field(std::shared_ptr<const Mesh> mesh, Eigen::VectorXd values)
      : mesh_(std::move(mesh)), values_(std::move(values)) {}

  const Mesh& mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }
  double operator[](int i) const { return values_[i]; }
  int size() const { return static_cast<int>(values_.size()); }

  double eval(const Vec2& p) const;
  /// Evaluation that clamps points marginally outside the mesh onto the
  /// nearest element (boundary-chord sampling).
  double eval_clamped(const Vec2& p) const;
  /// Piecewise-constant gradient of the interpolant at p.
  Vec2 gradient(const Vec2& p) const;

private:
  std::shared_ptr<const Mesh> mesh_;
  Eigen::VectorXd values_;
};

/// P1 operators for -Laplace with mixed boundary conditions: exact stiffness,
/// lumped mass, per-tag Neumann boundary load vectors, and the free-node mask
/// (nodes not on any Dirichlet edge).
struct Operator {
  std::shared_ptr<const Mesh> mesh;
  Eigen::SparseMatrix<double> stiffness;  // full, exactly symmetric
  Eigen::VectorXd lumped_mass;
  std::vector<char> free_mask;
  std::map<int, Eigen::VectorXd> neumann_loads;  // segment id -> lumped edge lengths

  int free_count() const;
};

Operator assemble_operator(std::shared_ptr<const Mesh> mesh);

Field interpolate_field(std::shared_ptr<const Mesh> mesh,
                        const std::function<double(const Vec2&)>& f);
Field constant_field(std::shared_ptr<const Mesh> mesh, double value);

/// Convex energy J(u) = 1/2 int |grad u|^2 + int W e^{-u} - sum_t g_t int_{G_t} u
/// with the nonlinear term integrated by vertex (lumped) quadrature.
double energy_functional(const Operator& op, const Field& u, const Field& weight,
                         const std::map<int, double>& neumann = {});

}  // namespace sectorsolve
