#pragma once

#include "sv/strata.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sv {

// Vol = coeff * pi^pi_power.
struct StratumVolume {
  Rational coeff;
  int pi_power = 0;
};

class VolumeTable {
 public:
  using Key = std::pair<Partition, Label>;

  static VolumeTable bundled();
  static VolumeTable empty() { return VolumeTable(); }

  // Merges "<partition> | <tag> | <p/q>" lines. Returns one warning string per
  // overridden entry. Throws ParseError carrying the 1-based line number.
  std::vector<std::string> merge(std::istream& in);
  void set(const Partition& alpha, Label label, const Rational& coeff);

  // Raw stored coefficient; alpha is stripped of marked points first.
  std::optional<Rational> raw(const Partition& alpha, Label label) const;
  const std::map<Key, Rational>& entries() const { return entries_; }

  void write(std::ostream& out) const;
  void scale(const Rational& factor);

 private:
  std::map<Key, Rational> entries_;
};

// Bundled defaults merged with the given stream.
VolumeTable load_volume_table(std::istream& in, std::vector<std::string>* warnings = nullptr);

// Coefficient of pi^(2g) for one labelled component (Connected = all components).
// Nonexistent components have volume 0.
Rational component_volume(const Partition& alpha, Label label, const VolumeTable& table);

StratumVolume lookup_volume(const StratumComponent& component, const VolumeTable& table);

// Vol(H^phi(alpha)) + delta(alpha, phi) Vol(H^hyp(alpha)).
StratumVolume volume_with_hyp(const Partition& alpha, Parity phi, const VolumeTable& table);

// Volume of a stratum of disconnected surfaces with the given parts.
StratumVolume volume_disconnected(const std::vector<StratumComponent>& parts, const VolumeTable& table);

// Text of the bundled data file.
extern const char* const kBundledVolumes;

}  // namespace sv
