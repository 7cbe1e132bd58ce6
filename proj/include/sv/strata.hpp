#pragma once

#include "sv/core.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sv {

// Multiset of zero orders, stored weakly decreasing. A 0 entry is a marked point.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> entries);
  Partition(std::initializer_list<int> entries) : Partition(std::vector<int>(entries)) {}

  // "3,1", "2,0", "1^4" style is not accepted; plain comma lists only.
  static Partition parse(std::string_view text);

  const std::vector<int>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  int operator[](int i) const { return entries_[i]; }

  int count(int m) const;
  int positive_sum() const;
  int positive_count() const;
  bool has_odd_entry() const;

  // Positive entries only; a partition with no positive entries becomes (0).
  Partition stripped() const;
  Partition with(int m) const;
  Partition with(const Partition& other) const;
  // Removes one occurrence of m; throws ZeroNotInStratum when absent.
  Partition without(int m) const;
  bool contains(const Partition& sub) const;
  Partition minus(const Partition& sub) const;

  std::string str() const;

  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> entries_;
};

int genus_of(const Partition& alpha);

struct Stratum {
  Partition alpha;
  int genus = 1;

  static Stratum of(const Partition& alpha);
  int dim_complex() const { return 2 * genus - 1 + alpha.size(); }
  int dim_real() const { return 2 * dim_complex(); }
  std::string str() const { return "H(" + alpha.str() + ")"; }
  bool operator==(const Stratum&) const = default;
};

enum class Label { Connected, Hyperelliptic, EvenSpin, OddSpin, NonHyperelliptic };
enum class Parity { Even = 0, Odd = 1 };

const char* label_tag(Label label);
Label parse_label(std::string_view tag);
inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }
inline Parity parity_of(int n) { return (n % 2 + 2) % 2 == 0 ? Parity::Even : Parity::Odd; }
inline int as_int(Parity p) { return p == Parity::Odd ? 1 : 0; }

// Marked points are stripped before classification.
std::vector<Label> classify_components(const Partition& alpha);

bool is_minimal_shape(const Partition& stripped);  // (2g-2)
bool is_pair_shape(const Partition& stripped);     // (g-1,g-1)

std::optional<Parity> hyperelliptic_spin_parity(const Partition& alpha);
int delta(const Partition& alpha, Parity phi);

struct StratumComponent {
  Stratum stratum;
  Label label = Label::Connected;

  std::string str() const;
};

// Label Connected is always accepted (total over components); other labels must
// be admitted by classify_components.
StratumComponent make_component(const Partition& alpha, Label label);

}  // namespace sv
