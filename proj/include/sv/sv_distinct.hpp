#pragma once

#include "sv/config_distinct.hpp"
#include "sv/volumes.hpp"

#include <string>
#include <vector>

namespace sv {

enum class ConstantKind { Distinct, Closed };

// Distinct: c = coeff. Closed: c = coeff / pi^2, so c * zeta(2) = coeff / 6.
struct SVConstant {
  Rational coeff;
  ConstantKind kind = ConstantKind::Distinct;
  int pi_power = 0;  // power of pi left after cancelling volumes

  // The value printed in tables: c for distinct, c * zeta(2) for closed.
  Rational reported() const { return kind == ConstantKind::Closed ? Rational(coeff / 6) : coeff; }
  double approx() const;
  std::string str() const;
};

struct DistinctRow {
  DistinctConfig config;
  SymmetryInfo symmetry;
  Rational m;
  SVConstant constant;
};

// Combinatorial factor M for the unlabelled-zero count.
Rational combinatorial_factor_distinct(const DistinctConfig& cfg, const Stratum& ambient);

SVConstant constant_general(const DistinctConfig& cfg, const StratumComponent& component, const VolumeTable& table);
SVConstant constant_mult1(const StratumComponent& component, int m1, int m2, const VolumeTable& table);
// Named zeros m1, m2 fixed in advance: no redistribution factors, no 1/|Gamma_-|.
SVConstant constant_problem1(const DistinctConfig& cfg, const StratumComponent& component, const VolumeTable& table);

std::vector<DistinctRow> table_distinct(const StratumComponent& component, const VolumeTable& table);

}  // namespace sv
