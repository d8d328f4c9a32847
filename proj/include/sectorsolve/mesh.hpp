#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sectorsolve {

using Vec2 = Eigen::Vector2d;

struct InvalidSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutsideDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BcKind { Dirichlet, Neumann };

struct BoundaryTag {
  BcKind kind = BcKind::Dirichlet;
  int segment = 0;
};

struct BoundaryEdge {
  int a = -1;
  int b = -1;
  BoundaryTag tag;
};

/// Conforming P1 triangle mesh with tagged boundary edges. Immutable after
/// construction; the locator is built lazily on first point query.
class Mesh {
public:
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;  // CCW, positive area
  std::vector<BoundaryEdge> boundary_edges;
  std::optional<int> corner_node;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }

  double triangle_area(int t) const;
  double area() const;
  double max_element_diameter() const;
  double min_element_diameter() const;

  /// Containing triangle and barycentric coordinates of `p`.
  /// `slack` is the accepted barycentric undershoot (points marginally
  /// outside an element still resolve to it).
  struct Location {
    int triangle = -1;
    std::array<double, 3> bary{};
  };
  std::optional<Location> locate(const Vec2& p, double slack = 1e-12) const;

  /// Nearest-element location for points slightly outside the mesh
  /// (e.g. between a boundary chord and the arc it approximates).
  /// Barycentric coordinates are clamped to the element.
  Location locate_clamped(const Vec2& p) const;

private:
  void build_locator() const;

  struct Locator {
    double x0 = 0, y0 = 0, cell = 1;
    int nx = 0, ny = 0;
    std::vector<std::vector<int>> bins;
    bool built = false;
  };
  mutable Locator locator_;
};

/// Checks all structural mesh invariants (orientation, conformity, tagged
/// boundary coverage). Throws MeshError with a description on violation.
void validate_mesh(const Mesh& mesh);

std::array<double, 3> barycentric(const Vec2& a, const Vec2& b, const Vec2& c,
                                  const Vec2& p);

}  // namespace sectorsolve
