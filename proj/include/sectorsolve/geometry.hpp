#pragma once

#include <functional>
#include <optional>
#include <string>

#include "sectorsolve/mesh.hpp"

namespace sectorsolve {

/// Truncated sector {r < R, |theta| < theta0}. theta0 = pi is the split
/// plane (slit domain); nodes on the slit are duplicated, one per side.
struct SectorSpec {
  double theta0 = 0;            // half-opening, 0 < theta0 <= pi
  double radius = 0;            // truncation radius R
  double mesh_size = 0;         // target element size h
  double grading_exponent = 1;  // radial power grading beta >= 1

  double alpha() const { return M_PI / (2.0 * theta0); }
  bool reentrant() const { return alpha() < 1.0; }
  void validate() const;
};

/// Simple straight polygon, counterclockwise. If reentrant_index is set the
/// mesh is graded toward that vertex and the vertex becomes corner_node.
struct PolygonSpec {
  std::vector<Vec2> vertices;
  std::optional<int> reentrant_index;
  double mesh_size = 0;
  double grading_exponent = 1;

  double perimeter() const;
  double diameter() const;
  void validate() const;
  /// Half-opening of the tangent cone at the reentrant vertex.
  double reentrant_half_angle() const;
};

struct DiskSpec {
  Vec2 center = Vec2::Zero();
  double radius = 0;
  bool split = false;  // tag left half-circle Dirichlet, right Neumann
  double mesh_size = 0;

  void validate() const;
};

// Boundary segment ids used by the generators.
inline constexpr int kSectorRayLower = 1;
inline constexpr int kSectorRayUpper = 2;
inline constexpr int kSectorArc = 3;
inline constexpr int kDiskDirichlet = 1;
inline constexpr int kDiskNeumann = 2;
inline constexpr int kPolygonBoundary = 1;

/// Structured polar-product mesh of the truncated sector. Node radii follow
/// r_k = R (k/N)^beta; the node set and the triangulation are exactly
/// mirror-symmetric under theta -> -theta.
Mesh mesh_sector(const SectorSpec& spec);

/// Unstructured mesh of a simple polygon, all boundary Dirichlet, graded
/// toward the reentrant vertex when present. `size_field` overrides the
/// default target size (used for boundary-layer meshes).
Mesh mesh_polygon(const PolygonSpec& spec,
                  const std::function<double(const Vec2&)>& size_field = {});

/// Structured polar mesh of a disk. With spec.split set, the left
/// half-circle is Dirichlet and the right one Neumann, with refinement
/// concentrated near the top boundary point (center + (0, radius)), where
/// the mixed problem's Dirichlet datum blows up. `rim_size` optionally caps
/// the element size at the refined boundary point (defaults to h/8 for
/// split disks).
Mesh mesh_disk(const DiskSpec& spec, double rim_size = 0);

/// Split-disk variant required by the conformal construction.
Mesh mesh_disk_mixed(const DiskSpec& spec, double rim_size = 0);

PolygonSpec polygon_from_json(const std::string& json_text);
PolygonSpec unit_square(double h, double beta = 1);
/// Square [-1,1]^2 minus the cone {|theta| >= 3*pi/4} around the negative
/// x-axis: one reentrant corner of half-opening 3*pi/4 at the origin, with
/// the bisector along +x and the polygon inside its tangent cone.
PolygonSpec lshape(double h, double beta = 1);

}  // namespace sectorsolve
