#include "sv/sv_distinct.hpp"

#include "constants_common.hpp"

#include <cstdio>
#include <set>

namespace sv {

double SVConstant::approx() const {
  Rational r = reported();
  return static_cast<double>(boost::multiprecision::numerator(r)) /
         static_cast<double>(boost::multiprecision::denominator(r));
}

std::string SVConstant::str() const {
  if (kind == ConstantKind::Closed) return to_string(reported()) + " * zeta2^-1";
  return to_string(coeff);
}

Rational combinatorial_factor_distinct(const DistinctConfig& cfg, const Stratum& ambient) {
  SymmetryInfo sym = symmetry_distinct(cfg);
  std::vector<Partition> rests;
  Rational r = 1;
  for (const auto& piece : cfg.pieces) {
    rests.push_back(piece.rest);
    r *= piece.a1 + piece.a2 + 1;
  }
  r *= detail::redistribution_factor(ambient.alpha.stripped(), rests);
  return r / (sym.gamma_minus * sym.gamma);
}

namespace {

void require_valid(const DistinctConfig& cfg, const Stratum& ambient) {
  auto v = validate_distinct(cfg, ambient);
  if (!v.empty()) throw Error(ErrorCode::NotAdmissible, "configuration invalid on " + ambient.str() + ": " + v.front());
}

bool hyp_shape_distinct(const DistinctConfig& cfg) {
  if (cfg.p() > 2) return false;
  for (const auto& piece : cfg.pieces) {
    if (!piece.rest.empty() || piece.a1 != piece.a2) return false;
  }
  return true;
}

// Numerator and denominator volumes for a component, given the combinatorial
// factor m for the generic count.
SVConstant evaluate(const DistinctConfig& cfg, const StratumComponent& component, const VolumeTable& table,
                    const Rational& m) {
  const Stratum& amb = component.stratum;
  const Partition alpha = amb.alpha.stripped();
  std::vector<Partition> pieces;
  std::vector<int> d;
  for (const auto& piece : cfg.pieces) {
    pieces.push_back(piece.alpha());
    d.push_back(Stratum::of(piece.alpha()).dim_real());
  }
  Rational f = detail::dimension_factor(d, amb.dim_real());
  Rational w;
  switch (component.label) {
    case Label::Connected:
      w = detail::product_of(pieces, Label::Connected, table);
      break;
    case Label::Hyperelliptic:
      if (cfg.p() >= 3) throw Error(ErrorCode::NotAdmissible, "hyperelliptic components carry multiplicity at most 2");
      w = hyp_shape_distinct(cfg) ? detail::product_of(pieces, Label::Hyperelliptic, table) : Rational(0);
      break;
    case Label::NonHyperelliptic:
      w = detail::product_of(pieces, Label::Connected, table);
      if (hyp_shape_distinct(cfg)) w -= detail::product_of(pieces, Label::Hyperelliptic, table);
      break;
    case Label::EvenSpin:
    case Label::OddSpin: {
      Parity phi = component.label == Label::EvenSpin ? Parity::Even : Parity::Odd;
      w = detail::parity_sum(pieces, 0, phi, table);
      auto hyp_parity = hyperelliptic_spin_parity(alpha);
      if (is_pair_shape(alpha) && hyp_parity && *hyp_parity == phi && hyp_shape_distinct(cfg))
        w -= detail::product_of(pieces, Label::Hyperelliptic, table);
      break;
    }
  }
  Rational v = component_volume(alpha, component.label, table);
  if (w == 0 || v == 0)
    throw Error(ErrorCode::NotAdmissible, "configuration does not occur on " + component.str());
  SVConstant c;
  c.kind = ConstantKind::Distinct;
  c.coeff = m * f * w / v;
  c.pi_power = detail::pi_power_of(pieces) - 2 * amb.genus;
  return c;
}

}  // namespace

SVConstant constant_general(const DistinctConfig& cfg, const StratumComponent& component, const VolumeTable& table) {
  require_valid(cfg, component.stratum);
  return evaluate(cfg, component, table, combinatorial_factor_distinct(cfg, component.stratum));
}

SVConstant constant_mult1(const StratumComponent& component, int m1, int m2, const VolumeTable& table) {
  Partition alpha = component.stratum.alpha.stripped();
  DistinctConfig cfg{m1, m2, {{m1, m2, alpha.without(m1).without(m2)}}};
  return constant_general(cfg, component, table);
}

SVConstant constant_problem1(const DistinctConfig& cfg, const StratumComponent& component, const VolumeTable& table) {
  require_valid(cfg, component.stratum);
  Rational m = 1;
  for (const auto& piece : cfg.pieces) m *= piece.a1 + piece.a2 + 1;
  m /= symmetry_distinct(cfg).gamma;
  return evaluate(cfg, component, table, m);
}

std::vector<DistinctRow> table_distinct(const StratumComponent& component, const VolumeTable& table) {
  std::vector<DistinctRow> rows;
  const Partition& alpha = component.stratum.alpha;
  std::set<int> values(alpha.entries().begin(), alpha.entries().end());
  for (int m1 : values)
    for (int m2 : values) {
      if (m1 > m2 || (m1 == m2 && alpha.count(m1) < 2) || m1 == 0) continue;
      for (auto& cfg : enumerate_distinct(component.stratum, m1, m2)) {
        try {
          SVConstant c = constant_general(cfg, component, table);
          rows.push_back({cfg, symmetry_distinct(cfg), combinatorial_factor_distinct(cfg, component.stratum), c});
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotAdmissible) throw;
        }
      }
    }
  return rows;
}

}  // namespace sv
