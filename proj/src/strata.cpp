#include "sv/strata.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

namespace sv {

Partition::Partition(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 0) throw Error(ErrorCode::InvalidStratum, "negative zero order");
  std::sort(entries_.begin(), entries_.end(), std::greater<int>());
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || value < 0)
      throw Error(ErrorCode::ParseError, "bad partition '" + std::string(text) + "' at offset " + std::to_string(pos));
    out.push_back(value);
    pos = comma + 1;
  }
  return Partition(std::move(out));
}

int Partition::count(int m) const { return static_cast<int>(std::count(entries_.begin(), entries_.end(), m)); }

int Partition::positive_sum() const {
  int s = 0;
  for (int e : entries_) s += e;
  return s;
}

int Partition::positive_count() const {
  return static_cast<int>(std::count_if(entries_.begin(), entries_.end(), [](int e) { return e > 0; }));
}

bool Partition::has_odd_entry() const {
  return std::any_of(entries_.begin(), entries_.end(), [](int e) { return e % 2 == 1; });
}

Partition Partition::stripped() const {
  std::vector<int> pos;
  for (int e : entries_)
    if (e > 0) pos.push_back(e);
  if (pos.empty()) pos.push_back(0);
  return Partition(std::move(pos));
}

Partition Partition::with(int m) const {
  std::vector<int> v = entries_;
  v.push_back(m);
  return Partition(std::move(v));
}

Partition Partition::with(const Partition& other) const {
  std::vector<int> v = entries_;
  v.insert(v.end(), other.entries_.begin(), other.entries_.end());
  return Partition(std::move(v));
}

Partition Partition::without(int m) const {
  std::vector<int> v = entries_;
  auto it = std::find(v.begin(), v.end(), m);
  if (it == v.end()) throw Error(ErrorCode::ZeroNotInStratum, std::to_string(m) + " not in (" + str() + ")");
  v.erase(it);
  return Partition(std::move(v));
}

bool Partition::contains(const Partition& sub) const {
  // Both sides are sorted descending, so a merge walk suffices.
  std::size_t i = 0;
  for (int e : sub.entries_) {
    while (i < entries_.size() && entries_[i] > e) ++i;
    if (i == entries_.size() || entries_[i] != e) return false;
    ++i;
  }
  return true;
}

Partition Partition::minus(const Partition& sub) const {
  Partition r = *this;
  for (int e : sub.entries_) r = r.without(e);
  return r;
}

std::string Partition::str() const {
  std::string s;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries_[i]);
  }
  return s;
}

int genus_of(const Partition& alpha) {
  if (alpha.empty()) throw Error(ErrorCode::InvalidStratum, "empty partition");
  int s = alpha.positive_sum();
  if (s % 2 != 0) throw Error(ErrorCode::OddSum, "entries of (" + alpha.str() + ") sum to an odd number");
  return s / 2 + 1;
}

Stratum Stratum::of(const Partition& alpha) {
  Stratum s;
  s.alpha = alpha;
  s.genus = genus_of(alpha);
  return s;
}

const char* label_tag(Label label) {
  switch (label) {
    case Label::Connected: return "c";
    case Label::Hyperelliptic: return "hyp";
    case Label::EvenSpin: return "even";
    case Label::OddSpin: return "odd";
    case Label::NonHyperelliptic: return "nonhyp";
  }
  return "?";
}

Label parse_label(std::string_view tag) {
  if (tag == "c" || tag == "connected") return Label::Connected;
  if (tag == "hyp") return Label::Hyperelliptic;
  if (tag == "even") return Label::EvenSpin;
  if (tag == "odd") return Label::OddSpin;
  if (tag == "nonhyp") return Label::NonHyperelliptic;
  throw Error(ErrorCode::UnknownComponent, "unknown component tag '" + std::string(tag) + "'");
}

bool is_minimal_shape(const Partition& s) { return s.size() == 1; }

bool is_pair_shape(const Partition& s) { return s.size() == 2 && s[0] == s[1] && s[0] > 0; }

std::vector<Label> classify_components(const Partition& alpha) {
  Partition s = alpha.stripped();
  int g = genus_of(s);
  if (g == 1) return {Label::Connected};
  if (g == 2) return {Label::Hyperelliptic};
  if (g == 3) {
    if (s == Partition{4} || s == Partition{2, 2}) return {Label::Hyperelliptic, Label::OddSpin};
    return {Label::Connected};
  }
  if (is_minimal_shape(s)) return {Label::Hyperelliptic, Label::EvenSpin, Label::OddSpin};
  if (is_pair_shape(s)) {
    if (g % 2 == 0) return {Label::Hyperelliptic, Label::NonHyperelliptic};
    return {Label::Hyperelliptic, Label::EvenSpin, Label::OddSpin};
  }
  if (s.has_odd_entry()) return {Label::Connected};
  return {Label::EvenSpin, Label::OddSpin};
}

std::optional<Parity> hyperelliptic_spin_parity(const Partition& alpha) {
  Partition s = alpha.stripped();
  int g = genus_of(s);
  if (is_minimal_shape(s)) return parity_of((g + 1) / 2);
  if (is_pair_shape(s) && g % 2 == 1) return parity_of((g + 1) / 2);
  return std::nullopt;
}

int delta(const Partition& alpha, Parity phi) {
  auto p = hyperelliptic_spin_parity(alpha);
  return p && *p == phi ? 1 : 0;
}

std::string StratumComponent::str() const {
  if (label == Label::Connected) return stratum.str();
  return std::string("H^") + label_tag(label) + "(" + stratum.alpha.str() + ")";
}

StratumComponent make_component(const Partition& alpha, Label label) {
  StratumComponent c;
  c.stratum = Stratum::of(alpha);
  c.label = label;
  if (label == Label::Connected) return c;
  auto labels = classify_components(alpha);
  if (std::find(labels.begin(), labels.end(), label) == labels.end())
    throw Error(ErrorCode::UnknownComponent,
                std::string("component '") + label_tag(label) + "' does not exist in H(" + alpha.str() + ")");
  return c;
}

}  // namespace sv
