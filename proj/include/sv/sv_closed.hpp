#pragma once

#include "sv/config_closed.hpp"
#include "sv/sv_distinct.hpp"

#include <vector>

namespace sv {

struct ClosedRow {
  ClosedConfig config;
  SymmetryInfo symmetry;
  Rational m;
  SVConstant constant;
};

Rational combinatorial_factor_closed(const ClosedConfig& cfg, const Stratum& ambient);
// Same factor with every pair-of-holes weight (b'+1)(b''+1) replaced by (b'+1).
Rational combinatorial_factor_closed_hyp(const ClosedConfig& cfg, const Stratum& ambient);

SVConstant constant_closed(const ClosedConfig& cfg, const StratumComponent& component, const VolumeTable& table);

std::vector<ClosedRow> table_closed(const StratumComponent& component, const VolumeTable& table);

}  // namespace sv
