#pragma once

#include "sv/strata.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace sv::flat {

struct Vec {
  double x = 0;
  double y = 0;

  Vec operator+(Vec o) const { return {x + o.x, y + o.y}; }
  Vec operator-(Vec o) const { return {x - o.x, y - o.y}; }
  Vec operator-() const { return {-x, -y}; }
  Vec operator*(double s) const { return {x * s, y * s}; }
  double norm() const { return std::hypot(x, y); }
};

inline double cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }

struct EdgeRef {
  int tri = -1;
  int side = -1;
};

struct ConePoint {
  int order = 0;
  double angle = 0;                // total angle
  std::vector<EdgeRef> corners;    // corners around the point in counterclockwise order
};

// Triangles carry edge vectors e0, e1, e2 (counterclockwise, summing to zero);
// corner i sits at the start of edge i.
class TranslationSurface {
 public:
  std::vector<std::array<Vec, 3>> edges;
  std::vector<std::array<EdgeRef, 3>> glue;
  std::vector<std::array<int, 3>> cone_of;
  std::vector<std::array<double, 3>> corner_angle;
  std::vector<std::array<double, 3>> corner_offset;  // angular position of edge i around its cone point
  std::vector<ConePoint> cones;
  double area = 0;

  int triangle_count() const { return static_cast<int>(edges.size()); }
  Partition stratum() const;
  int genus() const { return genus_of(stratum()); }

  // Fills cones, angles and offsets from edges and glue. Throws BadGluing.
  void finalize(double eps = 1e-9);
  void scale(double factor);
};

// Polygons listed counterclockwise; sides are numbered globally, polygon by
// polygon, side k of a polygon running from vertex k to vertex k+1.
struct PolygonSpec {
  std::vector<std::vector<Vec>> polygons;
  std::vector<std::pair<int, int>> pairs;
};

TranslationSurface build_from_polygons(const PolygonSpec& spec, double eps = 1e-9);
PolygonSpec parse_polygon_json(const std::string& text);

PolygonSpec regular_octagon();
PolygonSpec four_square_surface();
PolygonSpec square_torus();
// Unit square torus with a second marked point at p (0 < p.x, p.y < 1).
PolygonSpec square_torus_with_point(Vec p);

// pi[j] is the bottom position (1-based) of the letter at top position j+1.
struct IrreduciblePermutation {
  std::vector<int> pi;
  int size() const { return static_cast<int>(pi.size()); }
  static IrreduciblePermutation symmetric(int n);
  std::string str() const;
};

void check_irreducible(const IrreduciblePermutation& perm);
Stratum stratum_of_permutation(const IrreduciblePermutation& perm);
// Standard permutation for H(0), H(2g-2) and H(1,1); throws InvalidStratum otherwise.
IrreduciblePermutation permutation_for(const Partition& alpha);

// Suspension polygon with the given lengths (all > 0) and heights; throws
// SamplingFailure when the heights violate the suspension inequalities.
TranslationSurface suspension(const IrreduciblePermutation& perm, const std::vector<double>& lengths,
                              const std::vector<double>& heights);
TranslationSurface sample_surface(const IrreduciblePermutation& perm, std::uint64_t seed);

struct SaddleConnectionRecord {
  Vec holonomy;
  int from_zero = 0;
  int to_zero = 0;
  bool is_closed = false;
  double theta_start = 0;  // direction at from_zero, in [0, angle)
  double theta_end = 0;    // direction of the reversed segment at to_zero
};

struct SearchOptions {
  double eps = 1e-9;
};

// Every saddle connection is reported twice, once from each end.
std::vector<SaddleConnectionRecord> oriented_saddle_connections(const TranslationSurface& s, double L,
                                                                const SearchOptions& opt = {});
// One record per saddle connection.
std::vector<SaddleConnectionRecord> saddle_connections_up_to(const TranslationSurface& s, double L,
                                                             const SearchOptions& opt = {});

struct Cylinder {
  Vec holonomy;
  double height = 0;
};

std::vector<Cylinder> cylinders_up_to(const TranslationSurface& s, double L, const SearchOptions& opt = {});

enum class CountingClass { BetweenZeros, Closed, Cylinders, All };
const char* class_name(CountingClass c);
CountingClass parse_class(const std::string& name);

struct CountReport {
  double L = 0;
  std::map<std::string, long> counts;
  double estimate(CountingClass c) const;
};

CountReport count_up_to(const TranslationSurface& s, double L, const SearchOptions& opt = {});

// Sizes of groups of connections sharing a holonomy vector (up to sign)
// within eps, mapped to how often each size occurs. Diagnostic only.
std::map<int, int> multiplicity_histogram(const std::vector<SaddleConnectionRecord>& unique_records, double eps = 1e-9);

struct EmpiricalResult {
  CountingClass cls = CountingClass::All;
  double L = 0;
  int trials = 0;
  double mean = 0;
  double stderr_ = 0;
  std::vector<long> counts;
  std::vector<double> estimates;
  int resamples = 0;
};

EmpiricalResult empirical_constant(const IrreduciblePermutation& perm, CountingClass cls, double L, int trials,
                                   std::uint64_t seed, int threads = 1);

}  // namespace sv::flat
