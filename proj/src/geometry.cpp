#include "sectorsolve/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace sectorsolve {

namespace {

constexpr double kPi = std::numbers::pi;

double snap_small(double v) { return std::abs(v) < 1e-14 ? 0.0 : v; }

int even_at_least(double v, int floor_even) {
  int n = static_cast<int>(std::ceil(v));
  n = std::max(n, floor_even);
  if (n % 2) ++n;
  return n;
}

}  // namespace

void SectorSpec::validate() const {
  if (!(theta0 > 0) || theta0 > kPi + 1e-15)
    throw InvalidSpec("sector half-opening must lie in (0, pi]");
  if (!(radius > 0)) throw InvalidSpec("sector radius must be positive");
  if (!(mesh_size > 0)) throw InvalidSpec("mesh size must be positive");
  if (mesh_size >= radius) throw InvalidSpec("mesh size must be smaller than the radius");
  if (grading_exponent < 1) throw InvalidSpec("grading exponent must be >= 1");
}

Mesh mesh_sector(const SectorSpec& spec) {
  spec.validate();
  const double R = spec.radius, h = spec.mesh_size, beta = spec.grading_exponent;
  const double theta0 = spec.theta0;
  const bool slit = theta0 >= kPi - 1e-15;

  const int N = std::max(2, static_cast<int>(std::ceil(R / h)));
  const int M = even_at_least(2.0 * theta0 * R / h, 4);

  Mesh mesh;
  mesh.nodes.reserve(1 + static_cast<size_t>(N) * (M + 1));
  mesh.nodes.emplace_back(0.0, 0.0);
  mesh.corner_node = 0;

  std::vector<double> radii(N + 1);
  for (int k = 0; k <= N; ++k)
    radii[k] = R * std::pow(static_cast<double>(k) / N, beta);
  radii[N] = R;

  // Angles theta_j = theta0 (2j - M)/M; coordinates are computed for the
  // lower half and mirrored so the node set is bitwise symmetric in theta.
  std::vector<double> ct(M + 1), st(M + 1);
  for (int j = 0; j <= M; ++j) {
    const int jm = M - j;
    if (j < jm) {
      const double t = theta0 * (2.0 * j - M) / M;
      ct[j] = snap_small(std::cos(t));
      st[j] = snap_small(std::sin(t));
    } else if (j == jm) {
      ct[j] = 1.0;
      st[j] = 0.0;
    } else {
      ct[j] = ct[jm];
      st[j] = -st[jm];
    }
  }

  auto id = [M](int k, int j) { return 1 + (k - 1) * (M + 1) + j; };
  for (int k = 1; k <= N; ++k)
    for (int j = 0; j <= M; ++j)
      mesh.nodes.emplace_back(radii[k] * ct[j], radii[k] * st[j]);

  // Fan around the corner, then trapezoid strips. The diagonal direction is
  // mirrored between the two angular halves so the triangulation itself is
  // symmetric, not just the node set.
  for (int j = 0; j < M; ++j)
    mesh.triangles.push_back({0, id(1, j), id(1, j + 1)});
  for (int k = 1; k < N; ++k) {
    for (int j = 0; j < M; ++j) {
      const int a = id(k, j), b = id(k + 1, j), c = id(k + 1, j + 1), d = id(k, j + 1);
      if (j < M / 2) {
        mesh.triangles.push_back({a, b, c});
        mesh.triangles.push_back({a, c, d});
      } else {
        mesh.triangles.push_back({d, b, c});
        mesh.triangles.push_back({d, a, b});
      }
    }
  }

  const BoundaryTag lower{BcKind::Dirichlet, kSectorRayLower};
  const BoundaryTag upper{BcKind::Dirichlet, kSectorRayUpper};
  const BoundaryTag arc{BcKind::Dirichlet, kSectorArc};
  mesh.boundary_edges.push_back({0, id(1, 0), lower});
  mesh.boundary_edges.push_back({0, id(1, M), upper});
  for (int k = 1; k < N; ++k) {
    mesh.boundary_edges.push_back({id(k, 0), id(k + 1, 0), lower});
    mesh.boundary_edges.push_back({id(k, M), id(k + 1, M), upper});
  }
  for (int j = 0; j < M; ++j)
    mesh.boundary_edges.push_back({id(N, j), id(N, j + 1), arc});

  (void)slit;  // the slit sides are the j = 0 and j = M node columns,
               // duplicated by construction
  return mesh;
}

void DiskSpec::validate() const {
  if (!(radius > 0)) throw InvalidSpec("disk radius must be positive");
  if (!(mesh_size > 0)) throw InvalidSpec("mesh size must be positive");
  if (mesh_size >= radius) throw InvalidSpec("mesh size must be smaller than the radius");
}

namespace {

Mesh disk_from_rings(const DiskSpec& spec, const std::vector<double>& radii,
                     const std::vector<double>& angles) {
  const int N = static_cast<int>(radii.size());
  const int M = static_cast<int>(angles.size());
  Mesh mesh;
  mesh.nodes.reserve(1 + static_cast<size_t>(N) * M);
  mesh.nodes.push_back(spec.center);
  auto id = [M](int i, int j) { return 1 + (i - 1) * M + (j % M); };
  for (int i = 1; i <= N; ++i)
    for (int j = 0; j < M; ++j)
      mesh.nodes.push_back(spec.center + radii[i - 1] * Vec2(std::cos(angles[j]),
                                                             std::sin(angles[j])));
  for (int j = 0; j < M; ++j)
    mesh.triangles.push_back({0, id(1, j), id(1, j + 1)});
  for (int i = 1; i < N; ++i) {
    for (int j = 0; j < M; ++j) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }
  for (int j = 0; j < M; ++j) {
    BoundaryTag tag{BcKind::Dirichlet, kDiskDirichlet};
    if (spec.split) {
      const double a0 = angles[j];
      double a1 = angles[(j + 1) % M];
      if (a1 < a0) a1 += 2 * kPi;
      const double mid = 0.5 * (a0 + a1);
      const bool left = std::cos(mid) < 0;
      tag = left ? BoundaryTag{BcKind::Dirichlet, kDiskDirichlet}
                 : BoundaryTag{BcKind::Neumann, kDiskNeumann};
    }
    mesh.boundary_edges.push_back({id(N, j), id(N, j + 1), tag});
  }
  return mesh;
}

}  // namespace

Mesh mesh_disk(const DiskSpec& spec, double rim_size) {
  spec.validate();
  const double rho = spec.radius, h = spec.mesh_size;
  if (!spec.split) {
    const int N = std::max(2, static_cast<int>(std::ceil(rho / h)));
    const int M = std::max(8, static_cast<int>(std::ceil(2 * kPi * rho / h)));
    std::vector<double> radii(N), angles(M);
    for (int i = 0; i < N; ++i) radii[i] = rho * (i + 1.0) / N;
    for (int j = 0; j < M; ++j) angles[j] = 2 * kPi * j / M;
    return disk_from_rings(spec, radii, angles);
  }

  // Split disk: radial grading toward the rim and angular grading toward the
  // top boundary point, where the mixed problem concentrates its data.
  if (rim_size <= 0) rim_size = h / 8;
  const int N = std::max(4, static_cast<int>(std::ceil(2.0 * rho / h)));
  std::vector<double> radii(N);
  for (int i = 1; i <= N; ++i) {
    const double s = 1.0 - static_cast<double>(i) / N;
    radii[i - 1] = rho * (1.0 - s * s);
  }
  radii[N - 1] = rho;

  // Offsets from the top, geometric growth from the refined size.
  const double d_min = std::max(rim_size / rho, 1e-6);
  const double d_max = std::max(h / rho, 2 * d_min);
  std::vector<double> offsets{0.0};
  double step = d_min;
  while (offsets.back() < kPi) {
    double next = offsets.back() + step;
    if (next > kPi - 0.5 * step) next = kPi;
    offsets.push_back(next);
    step = std::min(step * 1.3, d_max);
  }
  const int H = static_cast<int>(offsets.size()) - 1;
  std::vector<double> angles;
  angles.reserve(2 * H);
  const double top = kPi / 2;
  for (int i = H; i >= 1; --i) angles.push_back(top - offsets[i]);  // -pi/2 .. top
  for (int i = 0; i < H; ++i) angles.push_back(top + offsets[i]);   // top .. < 3pi/2
  return disk_from_rings(spec, radii, angles);
}

Mesh mesh_disk_mixed(const DiskSpec& spec, double rim_size) {
  if (!spec.split) throw InvalidSpec("mixed disk mesh requires the split flag");
  return mesh_disk(spec, rim_size);
}

double PolygonSpec::perimeter() const {
  double p = 0;
  const int n = static_cast<int>(vertices.size());
  for (int i = 0; i < n; ++i) p += (vertices[(i + 1) % n] - vertices[i]).norm();
  return p;
}

double PolygonSpec::diameter() const {
  double d = 0;
  for (size_t i = 0; i < vertices.size(); ++i)
    for (size_t j = i + 1; j < vertices.size(); ++j)
      d = std::max(d, (vertices[i] - vertices[j]).norm());
  return d;
}

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_properly_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                                 const Vec2& d) {
  const double d1 = cross2(b - a, c - a);
  const double d2 = cross2(b - a, d - a);
  const double d3 = cross2(d - c, a - c);
  const double d4 = cross2(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

double signed_area(const std::vector<Vec2>& v) {
  double s = 0;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) s += cross2(v[i], v[(i + 1) % n]);
  return 0.5 * s;
}

double interior_angle(const std::vector<Vec2>& v, int i) {
  const int n = static_cast<int>(v.size());
  const Vec2 din = (v[i] - v[(i + n - 1) % n]).normalized();
  const Vec2 dout = (v[(i + 1) % n] - v[i]).normalized();
  // Turn angle: CCW-positive exterior angle; interior = pi - turn.
  const double turn = std::atan2(cross2(din, dout), din.dot(dout));
  return kPi - turn;
}

}  // namespace

double PolygonSpec::reentrant_half_angle() const {
  if (!reentrant_index) throw InvalidSpec("polygon has no reentrant vertex");
  return 0.5 * interior_angle(vertices, *reentrant_index);
}

void PolygonSpec::validate() const {
  const int n = static_cast<int>(vertices.size());
  if (n < 3) throw InvalidSpec("polygon needs at least 3 vertices");
  if (!(mesh_size > 0)) throw InvalidSpec("mesh size must be positive");
  if (grading_exponent < 1) throw InvalidSpec("grading exponent must be >= 1");
  if (signed_area(vertices) <= 0)
    throw InvalidSpec("polygon must be counterclockwise");
  for (int i = 0; i < n; ++i) {
    if ((vertices[(i + 1) % n] - vertices[i]).norm() < 1e-14)
      throw InvalidSpec("degenerate polygon side");
    for (int j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_properly_intersect(vertices[i], vertices[(i + 1) % n],
                                      vertices[j], vertices[(j + 1) % n]))
        throw InvalidSpec("polygon is self-intersecting");
    }
  }
  if (reentrant_index) {
    const int ri = *reentrant_index;
    if (ri < 0 || ri >= n) throw InvalidSpec("reentrant index out of range");
    const double ang = interior_angle(vertices, ri);
    if (!(ang > kPi && ang < 2 * kPi))
      throw InvalidSpec("reentrant vertex must have interior angle in (pi, 2pi)");
    // Tangent-cone containment: no part of the polygon may enter the convex
    // complement cone at the reentrant vertex.
    const Vec2 v = vertices[ri];
    const Vec2 din = (v - vertices[(ri + n - 1) % n]).normalized();
    const Vec2 dout = (vertices[(ri + 1) % n] - v).normalized();
    // Complement cone spans from -dout (CCW) to din.
    const Vec2 e1 = -dout, e2 = din;
    auto inside_complement = [&](const Vec2& p) {
      const Vec2 w = p - v;
      return cross2(e1, w) > 1e-12 && cross2(w, e2) > 1e-12;
    };
    for (int i = 0; i < n; ++i) {
      const Vec2 a = vertices[i], b = vertices[(i + 1) % n];
      for (int s = 1; s < 16; ++s) {
        if (inside_complement(a + (b - a) * (s / 16.0)))
          throw InvalidSpec("polygon leaves the tangent cone at the reentrant vertex");
      }
      if (i != ri && inside_complement(a))
        throw InvalidSpec("polygon leaves the tangent cone at the reentrant vertex");
    }
  }
}

namespace {

// --- unstructured polygon meshing: ear clipping + longest-edge refinement
//     + Delaunay flips ---

struct EdgeKey {
  int a, b;
  bool operator<(const EdgeKey& o) const {
    return a != o.a ? a < o.a : b < o.b;
  }
  bool operator==(const EdgeKey& o) const { return a == o.a && b == o.b; }
};
EdgeKey make_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

struct EdgeKeyHash {
  size_t operator()(const EdgeKey& k) const {
    return std::hash<long long>()((static_cast<long long>(k.a) << 32) | k.b);
  }
};

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> ring(n);
  for (int i = 0; i < n; ++i) ring[i] = i;
  std::vector<std::array<int, 3>> tris;
  auto is_convex = [&](int i) {
    const int m = static_cast<int>(ring.size());
    const Vec2& a = pts[ring[(i + m - 1) % m]];
    const Vec2& b = pts[ring[i]];
    const Vec2& c = pts[ring[(i + 1) % m]];
    return cross2(b - a, c - b) > 1e-14;
  };
  auto contains_other = [&](int i) {
    const int m = static_cast<int>(ring.size());
    const Vec2& a = pts[ring[(i + m - 1) % m]];
    const Vec2& b = pts[ring[i]];
    const Vec2& c = pts[ring[(i + 1) % m]];
    for (int j = 0; j < m; ++j) {
      if (j == i || j == (i + m - 1) % m || j == (i + 1) % m) continue;
      const auto bc = barycentric(a, b, c, pts[ring[j]]);
      if (bc[0] > -1e-12 && bc[1] > -1e-12 && bc[2] > -1e-12) return true;
    }
    return false;
  };
  auto min_angle = [&](int i) {
    const int m = static_cast<int>(ring.size());
    const Vec2& a = pts[ring[(i + m - 1) % m]];
    const Vec2& b = pts[ring[i]];
    const Vec2& c = pts[ring[(i + 1) % m]];
    const double la = (c - b).norm(), lb = (a - c).norm(), lc = (b - a).norm();
    const double area2 = std::abs(cross2(b - a, c - a));
    return area2 / (std::max({la, lb, lc}) * (la + lb + lc));
  };
  while (ring.size() > 3) {
    const int m = static_cast<int>(ring.size());
    int best = -1;
    double best_quality = -1;
    for (int i = 0; i < m; ++i) {
      if (!is_convex(i) || contains_other(i)) continue;
      const double q = min_angle(i);
      if (q > best_quality) {
        best_quality = q;
        best = i;
      }
    }
    if (best < 0) throw MeshError("ear clipping failed (polygon not simple?)");
    const int m2 = static_cast<int>(ring.size());
    tris.push_back({ring[(best + m2 - 1) % m2], ring[best], ring[(best + 1) % m2]});
    ring.erase(ring.begin() + best);
  }
  tris.push_back({ring[0], ring[1], ring[2]});
  return tris;
}

struct WorkMesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> tris;
  std::unordered_map<EdgeKey, int, EdgeKeyHash> boundary;  // edge -> segment id

  double longest_edge(int t, int* edge_index = nullptr) const {
    double best = -1;
    int bi = 0;
    for (int e = 0; e < 3; ++e) {
      const double len = (nodes[tris[t][(e + 1) % 3]] - nodes[tris[t][e]]).norm();
      if (len > best) {
        best = len;
        bi = e;
      }
    }
    if (edge_index) *edge_index = bi;
    return best;
  }
};

void refine_to_size(WorkMesh& wm, const std::function<double(const Vec2&)>& size) {
  for (int pass = 0; pass < 80; ++pass) {
    // Longest edges of violating triangles, closed under the rule that a
    // triangle with any marked edge also marks its own longest edge.
    std::set<EdgeKey> marked;
    for (int t = 0; t < static_cast<int>(wm.tris.size()); ++t) {
      int ei = 0;
      const double le = wm.longest_edge(t, &ei);
      const Vec2 c = (wm.nodes[wm.tris[t][0]] + wm.nodes[wm.tris[t][1]] +
                      wm.nodes[wm.tris[t][2]]) / 3.0;
      if (le > size(c))
        marked.insert(make_key(wm.tris[t][ei], wm.tris[t][(ei + 1) % 3]));
    }
    if (marked.empty()) return;
    for (;;) {
      bool grew = false;
      for (int t = 0; t < static_cast<int>(wm.tris.size()); ++t) {
        bool any = false;
        for (int e = 0; e < 3; ++e)
          any = any || marked.count(make_key(wm.tris[t][e], wm.tris[t][(e + 1) % 3]));
        if (!any) continue;
        int ei = 0;
        wm.longest_edge(t, &ei);
        const auto k = make_key(wm.tris[t][ei], wm.tris[t][(ei + 1) % 3]);
        if (!marked.count(k)) {
          marked.insert(k);
          grew = true;
        }
      }
      if (!grew) break;
    }
    std::map<EdgeKey, int> midpoint;
    for (const auto& k : marked) {
      midpoint[k] = static_cast<int>(wm.nodes.size());
      wm.nodes.push_back(0.5 * (wm.nodes[k.a] + wm.nodes[k.b]));
      const auto bit = wm.boundary.find(k);
      if (bit != wm.boundary.end()) {
        const int seg = bit->second;
        const int m = midpoint[k];
        wm.boundary.erase(bit);
        wm.boundary[make_key(k.a, m)] = seg;
        wm.boundary[make_key(m, k.b)] = seg;
      }
    }
    std::vector<std::array<int, 3>> out;
    out.reserve(wm.tris.size() * 2);
    // Bisect each triangle across its marked edges, longest first.
    std::function<void(std::array<int, 3>)> emit = [&](std::array<int, 3> tri) {
      int ei = -1;
      double best = -1;
      for (int e = 0; e < 3; ++e) {
        const auto k = make_key(tri[e], tri[(e + 1) % 3]);
        if (!midpoint.count(k)) continue;
        const double len = (wm.nodes[tri[(e + 1) % 3]] - wm.nodes[tri[e]]).norm();
        if (len > best) {
          best = len;
          ei = e;
        }
      }
      if (ei < 0) {
        out.push_back(tri);
        return;
      }
      const int a = tri[ei], b = tri[(ei + 1) % 3], c = tri[(ei + 2) % 3];
      const int m = midpoint.at(make_key(a, b));
      emit({a, m, c});
      emit({m, b, c});
    };
    for (const auto& tri : wm.tris) emit(tri);
    wm.tris = std::move(out);
  }
  throw MeshError("size-driven refinement did not terminate");
}

void delaunay_flips(WorkMesh& wm) {
  auto opposite_angle = [&](const std::array<int, 3>& tri, int a, int b) {
    int c = -1;
    for (int v : tri)
      if (v != a && v != b) c = v;
    const Vec2 u = wm.nodes[a] - wm.nodes[c];
    const Vec2 v = wm.nodes[b] - wm.nodes[c];
    return std::atan2(std::abs(cross2(u, v)), u.dot(v));
  };
  for (int pass = 0; pass < 60; ++pass) {
    std::unordered_map<EdgeKey, std::pair<int, int>, EdgeKeyHash> adj;
    for (int t = 0; t < static_cast<int>(wm.tris.size()); ++t) {
      for (int e = 0; e < 3; ++e) {
        const auto k = make_key(wm.tris[t][e], wm.tris[t][(e + 1) % 3]);
        auto it = adj.find(k);
        if (it == adj.end())
          adj[k] = {t, -1};
        else
          it->second.second = t;
      }
    }
    std::vector<char> dirty(wm.tris.size(), 0);
    int flips = 0;
    std::vector<EdgeKey> keys;
    keys.reserve(adj.size());
    for (const auto& [k, v] : adj)
      if (v.second >= 0 && !wm.boundary.count(k)) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (const auto& k : keys) {
      const auto [t1, t2] = adj.at(k);
      if (dirty[t1] || dirty[t2]) continue;
      if (opposite_angle(wm.tris[t1], k.a, k.b) +
              opposite_angle(wm.tris[t2], k.a, k.b) >
          kPi + 1e-10) {
        int c1 = -1, c2 = -1;
        for (int v : wm.tris[t1])
          if (v != k.a && v != k.b) c1 = v;
        for (int v : wm.tris[t2])
          if (v != k.a && v != k.b) c2 = v;
        // Replace (a,b,c1),(b,a,c2) by (c1,c2,a?),(c2,c1,b?) keeping CCW.
        auto oriented = [&](int x, int y, int z) -> std::array<int, 3> {
          if (cross2(wm.nodes[y] - wm.nodes[x], wm.nodes[z] - wm.nodes[x]) < 0)
            return {x, z, y};
          return {x, y, z};
        };
        const auto na = oriented(c1, c2, k.a);
        const auto nb = oriented(c1, c2, k.b);
        const double a1 = cross2(wm.nodes[na[1]] - wm.nodes[na[0]],
                                 wm.nodes[na[2]] - wm.nodes[na[0]]);
        const double a2 = cross2(wm.nodes[nb[1]] - wm.nodes[nb[0]],
                                 wm.nodes[nb[2]] - wm.nodes[nb[0]]);
        if (a1 <= 1e-16 || a2 <= 1e-16) continue;  // non-convex pair
        wm.tris[t1] = na;
        wm.tris[t2] = nb;
        dirty[t1] = dirty[t2] = 1;
        ++flips;
      }
    }
    if (flips == 0) return;
  }
}

}  // namespace

Mesh mesh_polygon(const PolygonSpec& spec,
                  const std::function<double(const Vec2&)>& size_field) {
  spec.validate();
  const double h = spec.mesh_size;
  const double diam = spec.diameter();
  const double beta = spec.grading_exponent;

  std::function<double(const Vec2&)> size = size_field;
  if (!size) {
    if (spec.reentrant_index && beta > 1) {
      const Vec2 corner = spec.vertices[*spec.reentrant_index];
      const double floor_size = 0.5 * h * std::pow(h / diam, beta - 1);
      size = [h, diam, beta, corner, floor_size](const Vec2& p) {
        const double r = (p - corner).norm();
        const double graded = h * std::pow(std::max(r, 1e-300) / diam, 1.0 - 1.0 / beta);
        return std::clamp(graded, floor_size, h);
      };
    } else {
      size = [h](const Vec2&) { return h; };
    }
  }

  WorkMesh wm;
  wm.nodes = spec.vertices;
  wm.tris = ear_clip(spec.vertices);
  const int n = static_cast<int>(spec.vertices.size());
  for (int i = 0; i < n; ++i)
    wm.boundary[make_key(i, (i + 1) % n)] = i + 1;
  delaunay_flips(wm);
  refine_to_size(wm, size);
  delaunay_flips(wm);

  Mesh mesh;
  mesh.nodes = std::move(wm.nodes);
  mesh.triangles.reserve(wm.tris.size());
  for (auto tri : wm.tris) {
    if (cross2(mesh.nodes[tri[1]] - mesh.nodes[tri[0]],
               mesh.nodes[tri[2]] - mesh.nodes[tri[0]]) < 0)
      std::swap(tri[1], tri[2]);
    mesh.triangles.push_back(tri);
  }
  mesh.boundary_edges.reserve(wm.boundary.size());
  std::vector<std::pair<EdgeKey, int>> sorted_boundary(wm.boundary.begin(),
                                                       wm.boundary.end());
  std::sort(sorted_boundary.begin(), sorted_boundary.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [k, seg] : sorted_boundary)
    mesh.boundary_edges.push_back({k.a, k.b, {BcKind::Dirichlet, seg}});
  if (spec.reentrant_index) mesh.corner_node = *spec.reentrant_index;
  return mesh;
}

PolygonSpec polygon_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  PolygonSpec spec;
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw InvalidSpec("polygon JSON needs a \"vertices\" array");
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2)
      throw InvalidSpec("polygon vertex must be [x, y]");
    spec.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  if (j.contains("reentrant_index") && !j["reentrant_index"].is_null())
    spec.reentrant_index = j["reentrant_index"].get<int>();
  spec.mesh_size = j.value("h", 0.1);
  spec.grading_exponent = j.value("beta", 1.0);
  spec.validate();
  return spec;
}

PolygonSpec unit_square(double h, double beta) {
  PolygonSpec spec;
  spec.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  spec.mesh_size = h;
  spec.grading_exponent = beta;
  return spec;
}

PolygonSpec lshape(double h, double beta) {
  PolygonSpec spec;
  spec.vertices = {{0, 0}, {-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  spec.reentrant_index = 0;
  spec.mesh_size = h;
  spec.grading_exponent = beta;
  return spec;
}

}  // namespace sectorsolve
