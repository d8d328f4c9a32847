#include "sectorsolve/discretization.hpp"

#include <cmath>

namespace sectorsolve {

double Field::eval(const Vec2& p) const {
  const auto loc = mesh_->locate(p);
  if (!loc) throw OutsideDomain("field evaluation outside mesh");
  const auto& tri = mesh_->triangles[loc->triangle];
  return loc->bary[0] * values_[tri[0]] + loc->bary[1] * values_[tri[1]] +
         loc->bary[2] * values_[tri[2]];
}

double Field::eval_clamped(const Vec2& p) const {
  const auto loc = mesh_->locate_clamped(p);
  const auto& tri = mesh_->triangles[loc.triangle];
  return loc.bary[0] * values_[tri[0]] + loc.bary[1] * values_[tri[1]] +
         loc.bary[2] * values_[tri[2]];
}

Vec2 Field::gradient(const Vec2& p) const {
  const auto loc = mesh_->locate(p);
  if (!loc) throw OutsideDomain("field gradient outside mesh");
  const auto& tri = mesh_->triangles[loc->triangle];
  const Vec2& a = mesh_->nodes[tri[0]];
  const Vec2& b = mesh_->nodes[tri[1]];
  const Vec2& c = mesh_->nodes[tri[2]];
  const double det = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
  // grad of the barycentric basis: rotate opposite edges.
  const Vec2 g0(b.y() - c.y(), c.x() - b.x());
  const Vec2 g1(c.y() - a.y(), a.x() - c.x());
  const Vec2 g2(a.y() - b.y(), b.x() - a.x());
  return (values_[tri[0]] * g0 + values_[tri[1]] * g1 + values_[tri[2]] * g2) / det;
}

int Operator::free_count() const {
  int n = 0;
  for (char f : free_mask) n += (f != 0);
  return n;
}

Operator assemble_operator(std::shared_ptr<const Mesh> mesh) {
  Operator op;
  op.mesh = mesh;
  const int n = mesh->node_count();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(mesh->triangle_count()) * 9);
  op.lumped_mass = Eigen::VectorXd::Zero(n);

  for (int t = 0; t < mesh->triangle_count(); ++t) {
    const auto& tri = mesh->triangles[t];
    const Vec2& a = mesh->nodes[tri[0]];
    const Vec2& b = mesh->nodes[tri[1]];
    const Vec2& c = mesh->nodes[tri[2]];
    const double det = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    if (!(det > 0) || !std::isfinite(det))
      throw AssemblyFailure("degenerate triangle in assembly", t);
    const double area = 0.5 * det;
    const Vec2 g[3] = {Vec2(b.y() - c.y(), c.x() - b.x()) / det,
                       Vec2(c.y() - a.y(), a.x() - c.x()) / det,
                       Vec2(a.y() - b.y(), b.x() - a.x()) / det};
    for (int i = 0; i < 3; ++i) {
      op.lumped_mass[tri[i]] += area / 3.0;
      for (int j = i; j < 3; ++j) {
        const double k = area * g[i].dot(g[j]);
        triplets.emplace_back(tri[i], tri[j], k);
        if (j != i) triplets.emplace_back(tri[j], tri[i], k);
      }
    }
  }
  op.stiffness.resize(n, n);
  op.stiffness.setFromTriplets(triplets.begin(), triplets.end());

  op.free_mask.assign(n, 1);
  for (const auto& be : mesh->boundary_edges) {
    if (be.tag.kind == BcKind::Dirichlet) {
      op.free_mask[be.a] = 0;
      op.free_mask[be.b] = 0;
    } else {
      const double len = (mesh->nodes[be.b] - mesh->nodes[be.a]).norm();
      auto [it, inserted] = op.neumann_loads.try_emplace(be.tag.segment,
                                                         Eigen::VectorXd::Zero(n));
      it->second[be.a] += 0.5 * len;
      it->second[be.b] += 0.5 * len;
    }
  }
  return op;
}

Field interpolate_field(std::shared_ptr<const Mesh> mesh,
                        const std::function<double(const Vec2&)>& f) {
  Eigen::VectorXd values(mesh->node_count());
  for (int i = 0; i < mesh->node_count(); ++i) {
    values[i] = f(mesh->nodes[i]);
    if (!std::isfinite(values[i]))
      throw EvaluationError("non-finite value at node " + std::to_string(i), i);
  }
  return Field(std::move(mesh), std::move(values));
}

Field constant_field(std::shared_ptr<const Mesh> mesh, double value) {
  const int n = mesh->node_count();
  return Field(std::move(mesh), Eigen::VectorXd::Constant(n, value));
}

double energy_functional(const Operator& op, const Field& u, const Field& weight,
                         const std::map<int, double>& neumann) {
  const Eigen::VectorXd& x = u.values();
  double J = 0.5 * x.dot(op.stiffness * x);
  for (int i = 0; i < x.size(); ++i)
    J += op.lumped_mass[i] * weight[i] * std::exp(-x[i]);
  for (const auto& [segment, flux] : neumann) {
    const auto it = op.neumann_loads.find(segment);
    if (it == op.neumann_loads.end()) continue;
    J -= flux * it->second.dot(x);
  }
  return J;
}

}  // namespace sectorsolve
