#include "sv/volumes.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace sv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool has_label(const std::vector<Label>& labels, Label l) {
  return std::find(labels.begin(), labels.end(), l) != labels.end();
}

// Single-component strata are stored under their unique label.
Label storage_label(const Partition& stripped, Label label) {
  auto labels = classify_components(stripped);
  if (label == Label::Connected && labels.size() == 1) return labels.front();
  return label;
}

}  // namespace

VolumeTable VolumeTable::bundled() {
  VolumeTable t;
  std::istringstream in(kBundledVolumes);
  t.merge(in);
  return t;
}

void VolumeTable::set(const Partition& alpha, Label label, const Rational& coeff) {
  Partition s = alpha.stripped();
  entries_[{s, storage_label(s, label)}] = coeff;
}

std::vector<std::string> VolumeTable::merge(std::istream& in) {
  std::vector<std::string> warnings;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + why);
    };
    auto bar1 = body.find('|');
    auto bar2 = bar1 == std::string_view::npos ? bar1 : body.find('|', bar1 + 1);
    if (bar2 == std::string_view::npos || body.find('|', bar2 + 1) != std::string_view::npos)
      fail("expected '<partition> | <tag> | <p/q>'");
    Partition alpha;
    Label label;
    Rational value;
    try {
      alpha = Partition::parse(trim(body.substr(0, bar1))).stripped();
      genus_of(alpha);
      label = parse_label(trim(body.substr(bar1 + 1, bar2 - bar1 - 1)));
      value = parse_rational(trim(body.substr(bar2 + 1)));
    } catch (const Error& e) {
      fail(e.what());
    }
    if (value < 0) fail("negative volume");
    auto labels = classify_components(alpha);
    if (label == Label::Connected && labels.size() > 1)
      fail("H(" + alpha.str() + ") has several components; give each one separately");
    if (label != Label::Connected && !has_label(labels, label))
      fail(std::string("component '") + label_tag(label) + "' does not exist in H(" + alpha.str() + ")");
    Key key{alpha, storage_label(alpha, label)};
    auto it = entries_.find(key);
    if (it != entries_.end() && it->second != value)
      warnings.push_back("ConflictWarning: line " + std::to_string(lineno) + " overrides H(" + alpha.str() + ") " +
                         label_tag(key.second) + " = " + to_string(it->second));
    entries_[key] = value;
  }
  return warnings;
}

std::optional<Rational> VolumeTable::raw(const Partition& alpha, Label label) const {
  Partition s = alpha.stripped();
  auto it = entries_.find({s, storage_label(s, label)});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void VolumeTable::write(std::ostream& out) const {
  for (const auto& [key, value] : entries_) {
    out << key.first.str() << " | " << label_tag(key.second) << " | " << to_string(value) << '\n';
  }
}

void VolumeTable::scale(const Rational& factor) {
  for (auto& [key, value] : entries_) value *= factor;
}

VolumeTable load_volume_table(std::istream& in, std::vector<std::string>* warnings) {
  VolumeTable t = VolumeTable::bundled();
  auto w = t.merge(in);
  if (warnings) *warnings = std::move(w);
  return t;
}

Rational component_volume(const Partition& alpha, Label label, const VolumeTable& table) {
  Partition s = alpha.stripped();
  auto labels = classify_components(s);
  auto need = [&](Label l) -> Rational {
    auto r = table.raw(s, l);
    if (!r)
      throw Error(ErrorCode::MissingVolume,
                  std::string("no volume for H^") + label_tag(l) + "(" + s.str() + "); extend the volume table");
    return *r;
  };
  switch (label) {
    case Label::Connected: {
      Rational total = 0;
      for (Label l : labels) total += need(l);
      return total;
    }
    case Label::Hyperelliptic:
      if (!is_minimal_shape(s) && !is_pair_shape(s)) return 0;
      if (has_label(labels, Label::Hyperelliptic)) return need(Label::Hyperelliptic);
      return need(labels.front());  // the torus
    case Label::EvenSpin:
    case Label::OddSpin:
      if (s.has_odd_entry())
        throw Error(ErrorCode::NoSpinStructure, "H(" + s.str() + ") has no spin structure");
      if (has_label(labels, label)) return need(label);
      return 0;
    case Label::NonHyperelliptic:
      if (has_label(labels, label)) return need(label);
      throw Error(ErrorCode::UnknownComponent, "H(" + s.str() + ") has no nonhyperelliptic component");
  }
  return 0;
}

StratumVolume lookup_volume(const StratumComponent& component, const VolumeTable& table) {
  return {component_volume(component.stratum.alpha, component.label, table), 2 * component.stratum.genus};
}

StratumVolume volume_with_hyp(const Partition& alpha, Parity phi, const VolumeTable& table) {
  Partition s = alpha.stripped();
  Label l = phi == Parity::Even ? Label::EvenSpin : Label::OddSpin;
  Rational v = component_volume(s, l, table);
  if (delta(s, phi)) v += component_volume(s, Label::Hyperelliptic, table);
  return {v, 2 * genus_of(s)};
}

StratumVolume volume_disconnected(const std::vector<StratumComponent>& parts, const VolumeTable& table) {
  StratumVolume out{1, 0};
  if (parts.empty()) return out;
  int d = 0;
  Integer num = 1;
  for (const auto& part : parts) {
    int di = part.stratum.dim_real();
    d += di;
    num *= factorial(di / 2 - 1);
    auto v = lookup_volume(part, table);
    out.coeff *= v.coeff;
    out.pi_power += v.pi_power;
  }
  Integer den = factorial(d / 2 - 1) * (Integer(1) << (parts.size() - 1));
  out.coeff *= Rational(num, den);
  return out;
}

}  // namespace sv
