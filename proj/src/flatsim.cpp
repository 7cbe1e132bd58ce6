#include "sv/flatsim.hpp"

#include "json.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace sv::flat {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

[[noreturn]] void bad_gluing(const std::string& what) { throw Error(ErrorCode::BadGluing, what); }

// Angle swept counterclockwise from u to v, in [0, 2π).
double angle_from(Vec u, Vec v) {
  double a = std::atan2(cross(u, v), dot(u, v));
  if (a < 0) a += kTwoPi;
  return a;
}

// Angle from u to v when v is known to lie in a corner of angle < π starting at u.
double angle_in_corner(Vec u, Vec v) {
  double a = std::atan2(cross(u, v), dot(u, v));
  return a < 0 && a > -1e-9 ? 0.0 : a;
}

Vec rotate(Vec v, double a) {
  double c = std::cos(a), s = std::sin(a);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

double wrap(double a, double period) {
  double r = std::fmod(a, period);
  if (r < 0) r += period;
  return r;
}

double segment_distance(Vec p, Vec q) {
  Vec d = q - p;
  double len2 = dot(d, d);
  double t = len2 > 0 ? std::clamp(-dot(p, d) / len2, 0.0, 1.0) : 0.0;
  return (p + d * t).norm();
}

bool point_in_triangle(Vec p, Vec a, Vec b, Vec c, double tol) {
  return cross(b - a, p - a) >= -tol && cross(c - b, p - b) >= -tol && cross(a - c, p - c) >= -tol;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Partition TranslationSurface::stratum() const {
  std::vector<int> orders;
  for (const auto& c : cones) orders.push_back(c.order);
  return Partition(orders);
}

void TranslationSurface::scale(double factor) {
  for (auto& tri : edges)
    for (auto& e : tri) e = e * factor;
  area *= factor * factor;
}

void TranslationSurface::finalize(double eps) {
  const int n = triangle_count();
  if (n == 0) bad_gluing("no triangles");
  if (static_cast<int>(glue.size()) != n) bad_gluing("gluing table size mismatch");

  double scale_len = 0;
  for (const auto& tri : edges)
    for (const auto& e : tri) scale_len = std::max(scale_len, e.norm());
  const double tol = eps * std::max(scale_len, 1.0);

  area = 0;
  for (int t = 0; t < n; ++t) {
    const auto& e = edges[t];
    if ((e[0] + e[1] + e[2]).norm() > tol) bad_gluing("triangle " + std::to_string(t) + " does not close");
    double twice = cross(e[0], e[1]);
    if (twice <= tol * scale_len) bad_gluing("triangle " + std::to_string(t) + " is degenerate or clockwise");
    area += twice / 2;
    for (int i = 0; i < 3; ++i) {
      EdgeRef g = glue[t][i];
      if (g.tri < 0 || g.tri >= n || g.side < 0 || g.side > 2) bad_gluing("unglued edge");
      EdgeRef back = glue[g.tri][g.side];
      if (back.tri != t || back.side != i) bad_gluing("gluing is not an involution");
      if (g.tri == t && g.side == i) bad_gluing("edge glued to itself");
      if ((e[i] + edges[g.tri][g.side]).norm() > tol) bad_gluing("glued edges are not opposite vectors");
    }
  }

  corner_angle.assign(n, {0, 0, 0});
  corner_offset.assign(n, {0, 0, 0});
  cone_of.assign(n, {-1, -1, -1});
  cones.clear();
  for (int t = 0; t < n; ++t)
    for (int i = 0; i < 3; ++i) corner_angle[t][i] = angle_from(edges[t][i], -edges[t][(i + 2) % 3]);

  for (int t = 0; t < n; ++t) {
    for (int i = 0; i < 3; ++i) {
      if (cone_of[t][i] >= 0) continue;
      ConePoint cone;
      const int id = static_cast<int>(cones.size());
      EdgeRef cur{t, i};
      double total = 0;
      // Walk counterclockwise: the far ray of a corner is the reversed
      // previous edge, and across it sits the next corner.
      do {
        if (cone_of[cur.tri][cur.side] >= 0) bad_gluing("corner cycle is inconsistent");
        cone_of[cur.tri][cur.side] = id;
        corner_offset[cur.tri][cur.side] = total;
        total += corner_angle[cur.tri][cur.side];
        cone.corners.push_back(cur);
        cur = glue[cur.tri][(cur.side + 2) % 3];
      } while (cur.tri != t || cur.side != i);
      cone.angle = total;
      double turns = total / kTwoPi;
      int k = static_cast<int>(std::lround(turns)) - 1;
      if (k < 0 || std::abs(turns - (k + 1)) > 1e-6)
        bad_gluing("cone angle " + std::to_string(total) + " is not a positive multiple of 2pi");
      cone.order = k;
      cones.push_back(std::move(cone));
    }
  }
}

TranslationSurface build_from_polygons(const PolygonSpec& spec, double eps) {
  struct SideSlot {
    int tri = -1;
    int idx = -1;
  };
  TranslationSurface s;
  std::vector<SideSlot> sides;

  for (const auto& poly : spec.polygons) {
    const int n = static_cast<int>(poly.size());
    if (n < 3) bad_gluing("polygon with fewer than 3 vertices");
    double twice_area = 0;
    double diam = 0;
    for (int k = 0; k < n; ++k) {
      twice_area += cross(poly[k], poly[(k + 1) % n]);
      diam = std::max(diam, (poly[(k + 1) % n] - poly[k]).norm());
    }
    if (twice_area <= 0) bad_gluing("polygon is not counterclockwise");
    const double tol = eps * diam * diam;

    const int base_side = static_cast<int>(sides.size());
    sides.resize(base_side + n);

    // Ear clipping; each triangle keeps its vertex indices so diagonals can be paired.
    std::vector<int> ring(n);
    std::iota(ring.begin(), ring.end(), 0);
    std::vector<std::array<int, 3>> tris;
    while (ring.size() > 3) {
      const int m = static_cast<int>(ring.size());
      bool clipped = false;
      for (int j = 0; j < m && !clipped; ++j) {
        int a = ring[(j + m - 1) % m], b = ring[j], c = ring[(j + 1) % m];
        if (cross(poly[b] - poly[a], poly[c] - poly[b]) <= tol) continue;
        bool empty = true;
        for (int v : ring) {
          if (v == a || v == b || v == c) continue;
          if (point_in_triangle(poly[v], poly[a], poly[b], poly[c], tol)) {
            empty = false;
            break;
          }
        }
        if (!empty) continue;
        tris.push_back({a, b, c});
        ring.erase(ring.begin() + j);
        clipped = true;
      }
      if (!clipped) bad_gluing("polygon could not be triangulated");
    }
    tris.push_back({ring[0], ring[1], ring[2]});

    const int base_tri = s.triangle_count();
    std::map<std::pair<int, int>, EdgeRef> diagonals;
    for (std::size_t q = 0; q < tris.size(); ++q) {
      const auto& v = tris[q];
      const int t = base_tri + static_cast<int>(q);
      s.edges.push_back({poly[v[1]] - poly[v[0]], poly[v[2]] - poly[v[1]], poly[v[0]] - poly[v[2]]});
      s.glue.push_back({});
      for (int i = 0; i < 3; ++i) {
        int from = v[i], to = v[(i + 1) % 3];
        if (to == (from + 1) % n) {
          sides[base_side + from] = {t, i};
        } else {
          auto it = diagonals.find({to, from});
          if (it != diagonals.end()) {
            s.glue[t][i] = it->second;
            s.glue[it->second.tri][it->second.side] = {t, i};
            diagonals.erase(it);
          } else {
            diagonals[{from, to}] = {t, i};
          }
        }
      }
    }
    if (!diagonals.empty()) bad_gluing("triangulation left an unmatched diagonal");
  }

  std::vector<int> paired(sides.size(), 0);
  for (auto [i, j] : spec.pairs) {
    const int count = static_cast<int>(sides.size());
    if (i < 0 || j < 0 || i >= count || j >= count || i == j) bad_gluing("side index out of range");
    if (paired[i]++ || paired[j]++) bad_gluing("side paired twice");
    SideSlot a = sides[i], b = sides[j];
    s.glue[a.tri][a.idx] = {b.tri, b.idx};
    s.glue[b.tri][b.idx] = {a.tri, a.idx};
  }
  for (std::size_t k = 0; k < paired.size(); ++k)
    if (!paired[k]) bad_gluing("side " + std::to_string(k) + " is not paired");

  s.finalize(eps);
  return s;
}

PolygonSpec parse_polygon_json(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("polygon spec: ") + e.what());
  }
  PolygonSpec spec;
  try {
    auto read_polygon = [&](const json& p) {
      std::vector<Vec> verts;
      for (const auto& v : p.at("vertices")) verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
      spec.polygons.push_back(std::move(verts));
    };
    if (doc.contains("polygons")) {
      for (const auto& p : doc.at("polygons")) read_polygon(p);
    } else {
      read_polygon(doc);
    }
    for (const auto& pr : doc.at("pairs")) spec.pairs.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("polygon spec: ") + e.what());
  }
  return spec;
}

PolygonSpec regular_octagon() {
  const double c = std::sqrt(0.5);
  const std::vector<Vec> steps = {{1, 0}, {c, c}, {0, 1}, {-c, c}, {-1, 0}, {-c, -c}, {0, -1}, {c, -c}};
  std::vector<Vec> verts;
  Vec p{0, 0};
  for (Vec d : steps) {
    verts.push_back(p);
    p = p + d;
  }
  return {{verts}, {{0, 4}, {1, 5}, {2, 6}, {3, 7}}};
}

PolygonSpec four_square_surface() {
  // Squares 0 and 1 form a horizontal cylinder of length 2; squares 2 and 3
  // are horizontal cylinders of length 1 sitting above them.
  const int right[4] = {1, 0, 2, 3};
  const int up[4] = {2, 3, 0, 1};
  PolygonSpec spec;
  for (int q = 0; q < 4; ++q) spec.polygons.push_back({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  for (int q = 0; q < 4; ++q) {
    spec.pairs.emplace_back(4 * q + 1, 4 * right[q] + 3);
    spec.pairs.emplace_back(4 * q + 2, 4 * up[q] + 0);
  }
  return spec;
}

PolygonSpec square_torus() { return {{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}, {{0, 2}, {1, 3}}}; }

PolygonSpec square_torus_with_point(Vec p) {
  const Vec corner[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  PolygonSpec spec;
  for (int k = 0; k < 4; ++k) spec.polygons.push_back({corner[k], corner[(k + 1) % 4], p});
  // Triangle k has sides 3k (outer), 3k+1 (to p), 3k+2 (from p).
  for (int k = 0; k < 4; ++k) spec.pairs.emplace_back(3 * k + 1, 3 * ((k + 1) % 4) + 2);
  spec.pairs.emplace_back(0, 6);
  spec.pairs.emplace_back(3, 9);
  return spec;
}

IrreduciblePermutation IrreduciblePermutation::symmetric(int n) {
  IrreduciblePermutation p;
  for (int j = 0; j < n; ++j) p.pi.push_back(n - j);
  return p;
}

std::string IrreduciblePermutation::str() const {
  std::string out;
  for (std::size_t j = 0; j < pi.size(); ++j) out += (j ? " " : "") + std::to_string(pi[j]);
  return out;
}

void check_irreducible(const IrreduciblePermutation& perm) {
  const int n = perm.size();
  std::vector<int> seen(n + 1, 0);
  for (int v : perm.pi) {
    if (v < 1 || v > n || seen[v]++) throw Error(ErrorCode::ParseError, "not a permutation: " + perm.str());
  }
  if (n < 2) throw Error(ErrorCode::Reducible, "permutation of fewer than 2 letters");
  int top = 0;
  for (int k = 1; k < n; ++k) {
    top = std::max(top, perm.pi[k - 1]);
    if (top == k) throw Error(ErrorCode::Reducible, "prefix of length " + std::to_string(k) + " is invariant");
  }
}

Stratum stratum_of_permutation(const IrreduciblePermutation& perm) {
  check_irreducible(perm);
  const int n = perm.size();
  // Nodes 0..n are top vertices T_k, n+1..2n+1 bottom vertices B_k.
  std::vector<int> parent(2 * n + 2);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  auto bottom = [&](int k) { return n + 1 + k; };
  unite(0, bottom(0));
  unite(n, bottom(n));
  for (int j = 1; j <= n; ++j) {
    unite(j - 1, bottom(perm.pi[j - 1] - 1));
    unite(j, bottom(perm.pi[j - 1]));
  }
  // Each interior top vertex contributes exactly one downward direction, and
  // a cone point of angle 2π(k+1) has k+1 of them.
  std::map<int, int> downward;
  for (int k = 0; k <= n; ++k) downward[find(k)] += 0;
  for (int k = 1; k < n; ++k) ++downward[find(k)];
  std::vector<int> orders;
  for (auto [root, count] : downward) orders.push_back(count - 1);
  return Stratum::of(Partition(orders));
}

IrreduciblePermutation permutation_for(const Partition& alpha) {
  const Partition stripped = alpha.stripped();
  if (stripped == Partition{0} && alpha.size() == 1) return {{2, 1}};
  if (alpha.count(0) == 0 && (is_minimal_shape(alpha) || is_pair_shape(alpha))) {
    const int g = genus_of(alpha);
    return IrreduciblePermutation::symmetric(alpha.size() == 1 ? 2 * g : 2 * g + 1);
  }
  const int n = Stratum::of(alpha).dim_complex();
  if (n > 9) throw Error(ErrorCode::InvalidStratum, "no permutation search beyond 9 letters for " + alpha.str());
  IrreduciblePermutation p;
  p.pi.resize(n);
  std::iota(p.pi.begin(), p.pi.end(), 1);
  do {
    try {
      if (stratum_of_permutation(p).alpha == alpha) return p;
    } catch (const Error&) {
    }
  } while (std::next_permutation(p.pi.begin(), p.pi.end()));
  throw Error(ErrorCode::InvalidStratum, "no permutation realizes " + alpha.str());
}

TranslationSurface suspension(const IrreduciblePermutation& perm, const std::vector<double>& lengths,
                              const std::vector<double>& heights) {
  check_irreducible(perm);
  const int n = perm.size();
  if (static_cast<int>(lengths.size()) != n || static_cast<int>(heights.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "suspension data has the wrong length");
  std::vector<Vec> zeta(n);
  for (int j = 0; j < n; ++j) {
    if (!(lengths[j] > 0)) throw Error(ErrorCode::SamplingFailure, "non-positive length");
    zeta[j] = {lengths[j], heights[j]};
  }
  std::vector<int> at_bottom(n);
  for (int j = 0; j < n; ++j) at_bottom[perm.pi[j] - 1] = j;

  std::vector<Vec> top(n + 1), bot(n + 1);
  for (int k = 1; k <= n; ++k) {
    top[k] = top[k - 1] + zeta[k - 1];
    bot[k] = bot[k - 1] + zeta[at_bottom[k - 1]];
  }
  for (int k = 1; k < n; ++k) {
    if (!(top[k].y > 0) || !(bot[k].y < 0))
      throw Error(ErrorCode::SamplingFailure, "heights violate the suspension inequalities");
  }

  // Counterclockwise: bottom chain left to right, then top chain right to left.
  PolygonSpec spec;
  std::vector<Vec> verts;
  for (int k = 0; k <= n; ++k) verts.push_back(bot[k]);
  for (int k = n - 1; k >= 1; --k) verts.push_back(top[k]);
  spec.polygons.push_back(verts);
  for (int j = 1; j <= n; ++j) spec.pairs.emplace_back(perm.pi[j - 1] - 1, n + (n - j));
  return build_from_polygons(spec);
}

TranslationSurface sample_surface(const IrreduciblePermutation& perm, std::uint64_t seed) {
  const Stratum expected = stratum_of_permutation(perm);
  const int n = perm.size();
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> lengths(n), heights(n);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    double sum = 0;
    for (auto& l : lengths) sum += (l = expo(rng));
    for (auto& l : lengths) l /= sum;
    for (auto& h : heights) h = unif(rng);
    double run = 0;
    bool ok = true;
    for (int k = 0; k + 1 < n && ok; ++k) ok = (run += heights[k]) > 0;
    std::vector<int> at_bottom(n);
    for (int j = 0; j < n; ++j) at_bottom[perm.pi[j] - 1] = j;
    run = 0;
    for (int k = 0; k + 1 < n && ok; ++k) ok = (run += heights[at_bottom[k]]) < 0;
    if (!ok) continue;
    try {
      TranslationSurface s = suspension(perm, lengths, heights);
      if (s.stratum() != expected.alpha)
        bad_gluing("measured cone angles disagree with the permutation: " + s.stratum().str());
      s.scale(1 / std::sqrt(s.area));
      return s;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SamplingFailure) throw;
    }
  }
  throw Error(ErrorCode::SamplingFailure, "no admissible suspension after 100000 draws");
}

namespace {

struct Arrival {
  Vec hol;
  EdgeRef corner;  // corner at the far end containing the reversed segment
};

// Develops straight segments leaving corner (t, i) inside the wedge between
// directions r and l (r clockwise of l, both inside the corner).
template <class Visit>
void develop_corner(const TranslationSurface& s, int t, int i, Vec r, Vec l, bool include_first_edge, double L,
                    double eps, Visit&& visit) {
  const double limit = L * (1 + 1e-12);
  const auto& e = s.edges[t];
  if (include_first_edge && e[i].norm() <= limit) visit(Arrival{e[i], {t, (i + 1) % 3}});

  struct Frame {
    int tri, side;
    Vec p, q, r, l;
  };
  std::vector<Frame> stack;
  stack.push_back({t, (i + 1) % 3, e[i], -e[(i + 2) % 3], r, l});
  long budget = 200'000'000;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (--budget < 0) throw Error(ErrorCode::ToleranceBreach, "development did not terminate");
    if (segment_distance(f.p, f.q) > limit) continue;
    EdgeRef g = s.glue[f.tri][f.side];
    const auto& ge = s.edges[g.tri];
    Vec apex = f.p + ge[(g.side + 1) % 3];
    double an = apex.norm();
    bool right_of_l = cross(apex, f.l) > eps * an * f.l.norm();
    bool left_of_r = cross(f.r, apex) > eps * an * f.r.norm();
    int next_a = (g.side + 1) % 3, next_b = (g.side + 2) % 3;
    if (left_of_r && right_of_l) {
      if (an <= limit) visit(Arrival{apex, {g.tri, next_b}});
      stack.push_back({g.tri, next_a, f.p, apex, f.r, apex});
      stack.push_back({g.tri, next_b, apex, f.q, apex, f.l});
    } else if (!left_of_r) {
      stack.push_back({g.tri, next_b, apex, f.q, f.r, f.l});
    } else {
      stack.push_back({g.tri, next_a, f.p, apex, f.r, f.l});
    }
  }
}

bool positive_half(Vec h, double eps) {
  double tol = eps * h.norm();
  return h.y > tol || (std::abs(h.y) <= tol && h.x > 0);
}

struct Boundary {
  std::size_t first;  // record the chain starts with
  Vec holonomy;       // waist vector
};

// A cylinder boundary, oriented with the cylinder on its left, is a closed
// chain of parallel connections turning by exactly π on the left at every
// junction. Each cylinder owns one such chain with positive direction.
std::vector<Boundary> cylinder_boundaries(const TranslationSurface& s, const std::vector<SaddleConnectionRecord>& recs,
                                          double L, double eps) {
  const int cones = static_cast<int>(s.cones.size());
  std::vector<std::vector<std::pair<double, std::size_t>>> by_start(cones);
  for (std::size_t k = 0; k < recs.size(); ++k) by_start[recs[k].from_zero].push_back({recs[k].theta_start, k});
  for (auto& v : by_start) std::sort(v.begin(), v.end());

  const double tol = 1e-7;
  auto next_of = [&](std::size_t k) -> long {
    const auto& r = recs[k];
    const double total = s.cones[r.to_zero].angle;
    const double want = wrap(r.theta_end - std::numbers::pi, total);
    const auto& list = by_start[r.to_zero];
    if (list.empty()) return -1;
    auto near = [&](double th) {
      double d = std::abs(th - want);
      return std::min(d, total - d) < tol;
    };
    auto it = std::lower_bound(list.begin(), list.end(), std::make_pair(want - tol, std::size_t{0}));
    if (it != list.end() && near(it->first)) return static_cast<long>(it->second);
    if (near(list.front().first)) return static_cast<long>(list.front().second);
    if (near(list.back().first)) return static_cast<long>(list.back().second);
    return -1;
  };

  std::vector<Boundary> out;
  std::vector<char> done(recs.size(), 0);
  const double limit = L * (1 + 1e-12);
  for (std::size_t k = 0; k < recs.size(); ++k) {
    if (done[k] || !positive_half(recs[k].holonomy, eps)) continue;
    Vec sum{0, 0};
    double length = 0;
    std::size_t cur = k;
    bool closed = false;
    while (length <= limit) {
      sum = sum + recs[cur].holonomy;
      length += recs[cur].holonomy.norm();
      long nx = next_of(cur);
      if (nx < 0) break;
      if (static_cast<std::size_t>(nx) == k) {
        closed = true;
        break;
      }
      cur = static_cast<std::size_t>(nx);
      if (done[cur]) break;
    }
    if (!closed || length > limit) continue;
    for (std::size_t c = k;;) {
      done[c] = 1;
      c = static_cast<std::size_t>(next_of(c));
      if (c == k) break;
    }
    out.push_back({k, sum});
  }
  return out;
}

}  // namespace

std::vector<SaddleConnectionRecord> oriented_saddle_connections(const TranslationSurface& s, double L,
                                                                const SearchOptions& opt) {
  if (!(L > 0)) throw Error(ErrorCode::DimensionMismatch, "L must be positive");
  std::vector<SaddleConnectionRecord> out;
  for (int c = 0; c < static_cast<int>(s.cones.size()); ++c) {
    for (EdgeRef corner : s.cones[c].corners) {
      const auto& e = s.edges[corner.tri];
      Vec a = e[corner.side];
      Vec b = -e[(corner.side + 2) % 3];
      double base = s.corner_offset[corner.tri][corner.side];
      develop_corner(s, corner.tri, corner.side, a, b, true, L, opt.eps, [&](const Arrival& hit) {
        SaddleConnectionRecord rec;
        rec.holonomy = hit.hol;
        rec.from_zero = c;
        rec.to_zero = s.cone_of[hit.corner.tri][hit.corner.side];
        rec.is_closed = rec.from_zero == rec.to_zero;
        rec.theta_start = wrap(base + angle_in_corner(a, hit.hol), s.cones[c].angle);
        Vec arrival_a = s.edges[hit.corner.tri][hit.corner.side];
        rec.theta_end = wrap(s.corner_offset[hit.corner.tri][hit.corner.side] + angle_in_corner(arrival_a, -hit.hol),
                             s.cones[rec.to_zero].angle);
        out.push_back(rec);
      });
    }
  }

  // Two connections leaving one cone point in the same direction means the
  // surface is too degenerate for the chosen epsilon.
  std::vector<std::size_t> order(out.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (out[x].from_zero != out[y].from_zero) return out[x].from_zero < out[y].from_zero;
    return out[x].theta_start < out[y].theta_start;
  });
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& a = out[order[k]];
    const auto& b = out[order[(k + 1) % order.size()]];
    if (order.size() < 2 || a.from_zero != b.from_zero || &a == &b) continue;
    double gap = wrap(b.theta_start - a.theta_start, s.cones[a.from_zero].angle);
    if (gap < opt.eps || s.cones[a.from_zero].angle - gap < opt.eps)
      throw Error(ErrorCode::ToleranceBreach, "two saddle connections leave a cone point in one direction");
  }
  return out;
}

std::vector<SaddleConnectionRecord> saddle_connections_up_to(const TranslationSurface& s, double L,
                                                             const SearchOptions& opt) {
  std::vector<SaddleConnectionRecord> out;
  for (const auto& r : oriented_saddle_connections(s, L, opt)) {
    bool keep = r.from_zero != r.to_zero ? r.from_zero < r.to_zero : positive_half(r.holonomy, opt.eps);
    if (keep) out.push_back(r);
  }
  return out;
}

std::vector<Cylinder> cylinders_up_to(const TranslationSurface& s, double L, const SearchOptions& opt) {
  const auto recs = oriented_saddle_connections(s, L, opt);
  std::vector<Cylinder> out;
  for (const auto& b : cylinder_boundaries(s, recs, L, opt.eps)) {
    const auto& r = recs[b.first];
    // Some segment crosses the cylinder from this boundary point to a point of
    // the far boundary within sqrt(h^2 + w^2); the height is the smallest
    // transverse displacement among connections leaving into the cylinder.
    const double w = b.holonomy.norm();
    const double radius = std::hypot(s.area / w, w) * (1 + 1e-9) + opt.eps;
    const double lo = r.theta_start, hi = r.theta_start + std::numbers::pi;
    const double total = s.cones[r.from_zero].angle;
    double height = std::numeric_limits<double>::infinity();
    for (EdgeRef corner : s.cones[r.from_zero].corners) {
      const double o = s.corner_offset[corner.tri][corner.side];
      const double span = s.corner_angle[corner.tri][corner.side];
      for (double shift : {-total, 0.0, total}) {
        double x = std::max(lo, o + shift), y = std::min(hi, o + shift + span);
        if (y - x < 1e-12) continue;
        Vec a = s.edges[corner.tri][corner.side];
        Vec rr = rotate(a, x - (o + shift)), ll = rotate(a, y - (o + shift));
        bool first = o + shift > lo && o + shift < hi;
        develop_corner(s, corner.tri, corner.side, rr, ll, first, radius, opt.eps, [&](const Arrival& hit) {
          double perp = cross(b.holonomy, hit.hol) / w;
          if (perp > opt.eps) height = std::min(height, perp);
        });
      }
    }
    if (!std::isfinite(height)) throw Error(ErrorCode::ToleranceBreach, "cylinder height search found nothing");
    out.push_back({b.holonomy, height});
  }
  return out;
}

std::map<int, int> multiplicity_histogram(const std::vector<SaddleConnectionRecord>& unique_records, double eps) {
  std::vector<Vec> hol;
  for (const auto& r : unique_records) hol.push_back(positive_half(r.holonomy, eps) ? r.holonomy : -r.holonomy);
  std::sort(hol.begin(), hol.end(), [](Vec a, Vec b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  std::vector<char> used(hol.size(), 0);
  std::map<int, int> hist;
  for (std::size_t i = 0; i < hol.size(); ++i) {
    if (used[i]) continue;
    int size = 0;
    const double tol = eps * std::max(1.0, hol[i].norm());
    for (std::size_t j = i; j < hol.size() && hol[j].x - hol[i].x <= tol; ++j) {
      if (!used[j] && (hol[j] - hol[i]).norm() <= tol) {
        used[j] = 1;
        ++size;
      }
    }
    ++hist[size];
  }
  return hist;
}

const char* class_name(CountingClass c) {
  switch (c) {
    case CountingClass::BetweenZeros: return "between";
    case CountingClass::Closed: return "closed";
    case CountingClass::Cylinders: return "cylinders";
    case CountingClass::All: return "all";
  }
  return "?";
}

CountingClass parse_class(const std::string& name) {
  for (auto c : {CountingClass::BetweenZeros, CountingClass::Closed, CountingClass::Cylinders, CountingClass::All})
    if (name == class_name(c)) return c;
  throw Error(ErrorCode::ParseError, "unknown counting class '" + name + "' (between|closed|cylinders|all)");
}

double CountReport::estimate(CountingClass c) const {
  auto it = counts.find(class_name(c));
  long n = it == counts.end() ? 0 : it->second;
  return static_cast<double>(n) / (std::numbers::pi * L * L);
}

CountReport count_up_to(const TranslationSurface& s, double L, const SearchOptions& opt) {
  CountReport rep;
  rep.L = L;
  long between = 0, closed = 0;
  const auto recs = oriented_saddle_connections(s, L, opt);
  for (const auto& r : recs) {
    if (!r.is_closed)
      between += r.from_zero < r.to_zero;
    else
      closed += positive_half(r.holonomy, opt.eps);
  }
  const long cylinders = static_cast<long>(cylinder_boundaries(s, recs, L, opt.eps).size());
  rep.counts["between"] = between;
  rep.counts["closed"] = closed;
  rep.counts["cylinders"] = cylinders;
  rep.counts["all"] = between + closed;
  return rep;
}

EmpiricalResult empirical_constant(const IrreduciblePermutation& perm, CountingClass cls, double L, int trials,
                                   std::uint64_t seed, int threads) {
  if (trials < 1) throw Error(ErrorCode::DimensionMismatch, "trials must be at least 1");
  stratum_of_permutation(perm);
  EmpiricalResult res;
  res.cls = cls;
  res.L = L;
  res.trials = trials;
  res.counts.assign(trials, 0);
  res.estimates.assign(trials, 0);
  std::vector<int> resamples(trials, 0);

  auto run_trial = [&](int k) {
    std::uint64_t state = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k)));
    for (int attempt = 0;; ++attempt) {
      try {
        TranslationSurface s = sample_surface(perm, state);
        CountReport rep = count_up_to(s, L);
        res.counts[k] = rep.counts.at(class_name(cls));
        res.estimates[k] = rep.estimate(cls);
        resamples[k] = attempt;
        return;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ToleranceBreach || attempt >= 20) throw;
        state = splitmix64(state);
      }
    }
  };

  threads = std::max(1, std::min(threads, trials));
  if (threads == 1) {
    for (int k = 0; k < trials; ++k) run_trial(k);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int k = w; k < trials; k += threads) run_trial(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  double sum = 0;
  for (double x : res.estimates) sum += x;
  res.mean = sum / trials;
  double ss = 0;
  for (double x : res.estimates) ss += (x - res.mean) * (x - res.mean);
  res.stderr_ = trials > 1 ? std::sqrt(ss / (trials - 1) / trials) : 0.0;
  res.resamples = std::accumulate(resamples.begin(), resamples.end(), 0);
  return res;
}

}  // namespace sv::flat
