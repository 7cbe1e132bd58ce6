#include "sv/sv_closed.hpp"

#include "constants_common.hpp"

namespace sv {

namespace {

Rational closed_factor(const ClosedConfig& cfg, const Stratum& ambient, bool hyp_weights) {
  SymmetryInfo sym = symmetry_closed(cfg);
  std::vector<Partition> rests;
  Rational r = 1;
  for (const auto& piece : cfg.pieces) {
    rests.push_back(piece.rest);
    if (piece.is_f())
      r *= piece.x + piece.y + 1;
    else if (hyp_weights)
      r *= piece.x + 1;
    else
      r *= (piece.x + 1) * (piece.y + 1);
  }
  r *= detail::redistribution_factor(ambient.alpha.stripped(), rests);
  return r / (sym.gamma_minus * sym.gamma);
}

bool exceptional(const Partition& alpha) {
  int g = genus_of(alpha);
  return is_minimal_shape(alpha) || (is_pair_shape(alpha) && g % 2 == 1);
}

}  // namespace

Rational combinatorial_factor_closed(const ClosedConfig& cfg, const Stratum& ambient) {
  return closed_factor(cfg, ambient, false);
}

Rational combinatorial_factor_closed_hyp(const ClosedConfig& cfg, const Stratum& ambient) {
  return closed_factor(cfg, ambient, true);
}

SVConstant constant_closed(const ClosedConfig& cfg, const StratumComponent& component, const VolumeTable& table) {
  const Stratum& amb = component.stratum;
  const Partition alpha = amb.alpha.stripped();
  auto violations = validate_closed(cfg, amb);
  if (!violations.empty())
    throw Error(ErrorCode::NotAdmissible, "configuration invalid on " + amb.str() + ": " + violations.front());
  std::vector<int> d = d_values(cfg, amb);
  std::vector<Partition> pieces;
  for (const auto& piece : cfg.pieces) pieces.push_back(piece.alpha());

  Rational f = detail::dimension_factor(d, amb.dim_real());
  Rational m = combinatorial_factor_closed(cfg, amb);
  bool hyp_shape = is_hyp_shape(cfg, alpha);
  // Weighted count of hyperelliptic surfaces produced by this configuration.
  auto hyp_term = [&]() -> Rational {
    return combinatorial_factor_closed_hyp(cfg, amb) * detail::product_of(pieces, Label::Hyperelliptic, table);
  };

  Rational numerator;
  switch (component.label) {
    case Label::Connected:
      numerator = m * detail::product_of(pieces, Label::Connected, table);
      break;
    case Label::Hyperelliptic:
      if (!hyp_shape) throw Error(ErrorCode::NotAdmissible, "configuration does not occur on " + component.str());
      numerator = hyp_term();
      break;
    case Label::NonHyperelliptic:
      numerator = m * detail::product_of(pieces, Label::Connected, table);
      if (hyp_shape) numerator -= hyp_term();
      break;
    case Label::EvenSpin:
    case Label::OddSpin: {
      Parity phi = component.label == Label::EvenSpin ? Parity::Even : Parity::Odd;
      bool any_h = false;
      bool any_odd_b = false;
      for (const auto& piece : cfg.pieces)
        if (!piece.is_f()) {
          any_h = true;
          if (piece.x % 2 == 1 || piece.y % 2 == 1) any_odd_b = true;
        }
      Rational w;
      if (!any_h) {
        // Figure eights only; the parity shift is the same in both orientations
        // because a' and a'' have equal parity on every piece.
        auto shift_of = [](const ClosedConfig& c, bool forward) {
          int s = 1;
          for (const auto& piece : c.pieces) s += (forward ? piece.x : piece.y) + 1;
          return s;
        };
        int shift = shift_of(cfg, true);
        if ((shift - shift_of(cfg, false)) % 2 != 0)
          throw Error(ErrorCode::NotAdmissible, "figure-eight parity depends on orientation");
        w = detail::parity_sum(pieces, shift, phi, table);
      } else if (!any_odd_b) {
        w = detail::parity_sum(pieces, 0, phi, table);
      } else {
        w = detail::product_of(pieces, Label::Connected, table) / 2;
      }
      numerator = m * w;
      auto hyp_parity = hyperelliptic_spin_parity(alpha);
      if (exceptional(alpha) && hyp_shape && hyp_parity && *hyp_parity == phi) numerator -= hyp_term();
      break;
    }
  }
  Rational v = component_volume(alpha, component.label, table);
  if (numerator == 0 || v == 0)
    throw Error(ErrorCode::NotAdmissible, "configuration does not occur on " + component.str());
  SVConstant c;
  c.kind = ConstantKind::Closed;
  c.coeff = numerator * f / v;
  c.pi_power = detail::pi_power_of(pieces) - 2 * amb.genus;
  return c;
}

std::vector<ClosedRow> table_closed(const StratumComponent& component, const VolumeTable& table) {
  std::vector<ClosedRow> rows;
  for (auto& cfg : enumerate_closed(component, table)) {
    SVConstant c = constant_closed(cfg, component, table);
    Rational m = component.label == Label::Hyperelliptic ? combinatorial_factor_closed_hyp(cfg, component.stratum)
                                                         : combinatorial_factor_closed(cfg, component.stratum);
    rows.push_back({cfg, symmetry_closed(cfg), m, c});
  }
  return rows;
}

}  // namespace sv
