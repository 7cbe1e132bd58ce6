#pragma once

#include "sv/strata.hpp"

#include <compare>
#include <string>
#include <vector>

namespace sv {

struct DistinctPiece {
  int a1 = 0;  // a'
  int a2 = 0;  // a''
  Partition rest;

  // rest with the collapsed zero a1+a2 (a 0 entry when a = 0).
  Partition alpha() const { return rest.with(a1 + a2); }

  auto operator<=>(const DistinctPiece&) const = default;
  bool operator==(const DistinctPiece&) const = default;
};

struct DistinctConfig {
  int m1 = 0;
  int m2 = 0;
  std::vector<DistinctPiece> pieces;

  int p() const { return static_cast<int>(pieces.size()); }
  bool operator==(const DistinctConfig&) const = default;
};

struct SymmetryInfo {
  int gamma_minus = 1;  // |Gamma_-|
  int gamma = 1;        // |Gamma|
  bool operator==(const SymmetryInfo&) const = default;
};

std::vector<std::string> validate_distinct(const DistinctConfig& cfg, const Stratum& ambient);

DistinctConfig rotate(const DistinctConfig& cfg, int r);
// Reverses the cycle, swaps a' with a'' in every piece, and swaps m1 with m2.
DistinctConfig reverse_swap(const DistinctConfig& cfg);
DistinctConfig canonicalize_distinct(const DistinctConfig& cfg);
SymmetryInfo symmetry_distinct(const DistinctConfig& cfg);

// All canonical configurations joining a zero of order m1 to a zero of order m2.
std::vector<DistinctConfig> enumerate_distinct(const Stratum& ambient, int m1, int m2);

}  // namespace sv
