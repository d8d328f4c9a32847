#include "sectorsolve/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace sectorsolve {

std::array<double, 3> barycentric(const Vec2& a, const Vec2& b, const Vec2& c,
                                  const Vec2& p) {
  const Vec2 v0 = b - a, v1 = c - a, v2 = p - a;
  const double det = v0.x() * v1.y() - v0.y() * v1.x();
  const double l1 = (v2.x() * v1.y() - v2.y() * v1.x()) / det;
  const double l2 = (v0.x() * v2.y() - v0.y() * v2.x()) / det;
  return {1.0 - l1 - l2, l1, l2};
}

double Mesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  const Vec2 e1 = nodes[tri[1]] - nodes[tri[0]];
  const Vec2 e2 = nodes[tri[2]] - nodes[tri[0]];
  return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

double Mesh::area() const {
  double total = 0;
  for (int t = 0; t < triangle_count(); ++t) total += triangle_area(t);
  return total;
}

double Mesh::max_element_diameter() const {
  double d = 0;
  for (const auto& tri : triangles)
    for (int e = 0; e < 3; ++e)
      d = std::max(d, (nodes[tri[e]] - nodes[tri[(e + 1) % 3]]).norm());
  return d;
}

double Mesh::min_element_diameter() const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& tri : triangles) {
    double longest = 0;
    for (int e = 0; e < 3; ++e)
      longest = std::max(longest, (nodes[tri[e]] - nodes[tri[(e + 1) % 3]]).norm());
    d = std::min(d, longest);
  }
  return d;
}

void Mesh::build_locator() const {
  if (locator_.built) return;
  Vec2 lo(std::numeric_limits<double>::max(), std::numeric_limits<double>::max());
  Vec2 hi = -lo;
  for (const auto& n : nodes) {
    lo = lo.cwiseMin(n);
    hi = hi.cwiseMax(n);
  }
  const int target = std::max(1, static_cast<int>(std::sqrt(triangles.size())));
  const double span = std::max(hi.x() - lo.x(), hi.y() - lo.y());
  locator_.cell = std::max(span / target, 1e-300);
  locator_.x0 = lo.x();
  locator_.y0 = lo.y();
  locator_.nx = std::max(1, static_cast<int>((hi.x() - lo.x()) / locator_.cell) + 1);
  locator_.ny = std::max(1, static_cast<int>((hi.y() - lo.y()) / locator_.cell) + 1);
  locator_.bins.assign(static_cast<size_t>(locator_.nx) * locator_.ny, {});
  auto clampi = [](int v, int n) { return std::min(std::max(v, 0), n - 1); };
  for (int t = 0; t < triangle_count(); ++t) {
    Vec2 tlo = nodes[triangles[t][0]], thi = tlo;
    for (int e = 1; e < 3; ++e) {
      tlo = tlo.cwiseMin(nodes[triangles[t][e]]);
      thi = thi.cwiseMax(nodes[triangles[t][e]]);
    }
    const int i0 = clampi(static_cast<int>((tlo.x() - locator_.x0) / locator_.cell), locator_.nx);
    const int i1 = clampi(static_cast<int>((thi.x() - locator_.x0) / locator_.cell), locator_.nx);
    const int j0 = clampi(static_cast<int>((tlo.y() - locator_.y0) / locator_.cell), locator_.ny);
    const int j1 = clampi(static_cast<int>((thi.y() - locator_.y0) / locator_.cell), locator_.ny);
    for (int i = i0; i <= i1; ++i)
      for (int j = j0; j <= j1; ++j)
        locator_.bins[static_cast<size_t>(j) * locator_.nx + i].push_back(t);
  }
  locator_.built = true;
}

std::optional<Mesh::Location> Mesh::locate(const Vec2& p, double slack) const {
  build_locator();
  auto clampi = [](int v, int n) { return std::min(std::max(v, 0), n - 1); };
  const int ci = clampi(static_cast<int>((p.x() - locator_.x0) / locator_.cell), locator_.nx);
  const int cj = clampi(static_cast<int>((p.y() - locator_.y0) / locator_.cell), locator_.ny);
  // The home bin first, then an expanding ring in case p sits on a bin line.
  for (int ring = 0; ring <= 1; ++ring) {
    for (int dj = -ring; dj <= ring; ++dj) {
      for (int di = -ring; di <= ring; ++di) {
        if (ring == 1 && std::max(std::abs(di), std::abs(dj)) != 1) continue;
        const int i = ci + di, j = cj + dj;
        if (i < 0 || j < 0 || i >= locator_.nx || j >= locator_.ny) continue;
        for (int t : locator_.bins[static_cast<size_t>(j) * locator_.nx + i]) {
          const auto& tri = triangles[t];
          const auto b = barycentric(nodes[tri[0]], nodes[tri[1]], nodes[tri[2]], p);
          if (b[0] >= -slack && b[1] >= -slack && b[2] >= -slack)
            return Location{t, b};
        }
      }
    }
  }
  return std::nullopt;
}

Mesh::Location Mesh::locate_clamped(const Vec2& p) const {
  if (auto loc = locate(p)) return *loc;
  build_locator();
  auto clampi = [](int v, int n) { return std::min(std::max(v, 0), n - 1); };
  const int ci = clampi(static_cast<int>((p.x() - locator_.x0) / locator_.cell), locator_.nx);
  const int cj = clampi(static_cast<int>((p.y() - locator_.y0) / locator_.cell), locator_.ny);
  int best = -1;
  std::array<double, 3> best_bary{};
  double best_min = -std::numeric_limits<double>::infinity();
  for (int ring = 0; ring < std::max(locator_.nx, locator_.ny); ++ring) {
    for (int dj = -ring; dj <= ring; ++dj) {
      for (int di = -ring; di <= ring; ++di) {
        if (ring > 0 && std::max(std::abs(di), std::abs(dj)) != ring) continue;
        const int i = ci + di, j = cj + dj;
        if (i < 0 || j < 0 || i >= locator_.nx || j >= locator_.ny) continue;
        for (int t : locator_.bins[static_cast<size_t>(j) * locator_.nx + i]) {
          const auto& tri = triangles[t];
          const auto b = barycentric(nodes[tri[0]], nodes[tri[1]], nodes[tri[2]], p);
          const double m = std::min({b[0], b[1], b[2]});
          if (m > best_min) {
            best_min = m;
            best = t;
            best_bary = b;
          }
        }
      }
    }
    if (best >= 0 && ring >= 2) break;
  }
  if (best < 0) throw OutsideDomain("point not near any mesh element");
  double sum = 0;
  for (auto& v : best_bary) {
    v = std::max(v, 0.0);
    sum += v;
  }
  for (auto& v : best_bary) v /= sum;
  return Location{best, best_bary};
}

void validate_mesh(const Mesh& mesh) {
  const int n = mesh.node_count();
  if (n < 3) throw MeshError("mesh has fewer than 3 nodes");
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    for (int i : mesh.triangles[t])
      if (i < 0 || i >= n) throw MeshError("triangle node index out of range");
    if (mesh.triangle_area(t) <= 0)
      throw MeshError("triangle " + std::to_string(t) + " not positively oriented");
  }
  // Conformity: interior edges shared by exactly 2 triangles, boundary edges
  // by exactly 1, and every 1-triangle edge carries exactly one tag.
  std::map<std::pair<int, int>, int> edge_count;
  auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (const auto& tri : mesh.triangles)
    for (int e = 0; e < 3; ++e) edge_count[key(tri[e], tri[(e + 1) % 3])]++;
  std::map<std::pair<int, int>, int> tag_count;
  for (const auto& be : mesh.boundary_edges) {
    if (be.a < 0 || be.a >= n || be.b < 0 || be.b >= n || be.a == be.b)
      throw MeshError("invalid boundary edge");
    tag_count[key(be.a, be.b)]++;
  }
  for (const auto& [k, c] : edge_count) {
    if (c > 2) throw MeshError("edge shared by more than 2 triangles");
    const auto it = tag_count.find(k);
    if (c == 1) {
      if (it == tag_count.end()) throw MeshError("untagged boundary edge");
      if (it->second != 1) throw MeshError("boundary edge with multiple tags");
    } else if (it != tag_count.end()) {
      throw MeshError("interior edge carries a boundary tag");
    }
  }
  for (const auto& [k, c] : tag_count)
    if (!edge_count.count(k)) throw MeshError("boundary edge not part of any triangle");
  if (mesh.corner_node && (*mesh.corner_node < 0 || *mesh.corner_node >= n))
    throw MeshError("corner node out of range");
}

}  // namespace sectorsolve
