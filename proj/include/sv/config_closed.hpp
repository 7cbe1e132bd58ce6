#pragma once

#include "sv/config_distinct.hpp"
#include "sv/strata.hpp"

#include <compare>
#include <string>
#include <vector>

namespace sv {

class VolumeTable;

enum class PieceKind { FigureEight, PairOfHoles };
enum class Glue { Direct, Cylinder };

struct ClosedPiece {
  PieceKind kind = PieceKind::FigureEight;
  int x = 0;  // a' or b'
  int y = 0;  // a'' or b''
  Partition rest;

  // Figure eight: rest with x+y. Pair of holes: rest with x and y. Zeros of
  // order 0 stay as marked points.
  Partition alpha() const;
  int genus() const { return genus_of(alpha()); }
  int d() const { return Stratum::of(alpha()).dim_real(); }
  bool is_f() const { return kind == PieceKind::FigureEight; }

  auto operator<=>(const ClosedPiece&) const = default;
  bool operator==(const ClosedPiece&) const = default;
};

struct ClosedConfig {
  std::vector<ClosedPiece> pieces;
  std::vector<Glue> glue;  // glue[i] joins piece i-1 to piece i, cyclically

  int p() const { return static_cast<int>(pieces.size()); }
  int q() const;
  int multiplicity() const { return p() + q(); }
  bool operator==(const ClosedConfig&) const = default;
};

enum class NewbornType { I, II, III };

struct NewbornZero {
  int order = 0;
  NewbornType type = NewbornType::I;
  std::vector<int> chain;  // piece indices in walking order
};

std::vector<NewbornZero> newborn_zeros(const ClosedConfig& cfg);
Partition newborn_partition(const ClosedConfig& cfg);

std::vector<std::string> validate_closed(const ClosedConfig& cfg, const Stratum& ambient);

ClosedConfig rotate(const ClosedConfig& cfg, int r);
// Reverses the cycle, swaps x with y in every piece, and reattaches the gluings.
ClosedConfig reverse_swap(const ClosedConfig& cfg);
ClosedConfig canonicalize_closed(const ClosedConfig& cfg);
SymmetryInfo symmetry_closed(const ClosedConfig& cfg);

// Throws DimensionMismatch unless 2q + 2 + sum d_i equals dim_R of the ambient.
std::vector<int> d_values(const ClosedConfig& cfg, const Stratum& ambient);

// Shapes that occur on hyperelliptic components of H(2g-2) and H(g-1,g-1).
bool is_hyp_shape(const ClosedConfig& cfg, const Partition& alpha);

// All valid canonical configurations, ignoring components.
std::vector<ClosedConfig> enumerate_closed_all(const Stratum& ambient);

// Configurations with a nonzero constant on the given component.
std::vector<ClosedConfig> enumerate_closed(const StratumComponent& component, const VolumeTable& table);

}  // namespace sv
