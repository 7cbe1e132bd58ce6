#include "sv/config_distinct.hpp"

#include "combinatorics.hpp"

#include <algorithm>
#include <set>

namespace sv {

std::vector<std::string> validate_distinct(const DistinctConfig& cfg, const Stratum& ambient) {
  std::vector<std::string> out;
  int p = cfg.p();
  if (p == 0) {
    out.push_back("no pieces");
    return out;
  }
  int s1 = 0, s2 = 0;
  Partition rests;
  for (const auto& piece : cfg.pieces) {
    if (piece.a1 < 0 || piece.a2 < 0) out.push_back("negative split");
    s1 += piece.a1;
    s2 += piece.a2;
    rests = rests.with(piece.rest);
    for (int e : piece.rest.entries())
      if (e == 0) out.push_back("marked point inside a piece rest");
    if ((piece.rest.positive_sum() + piece.a1 + piece.a2) % 2 != 0)
      out.push_back("parity: |rest| differs from a'+a'' mod 2 on piece (" + piece.rest.str() + ")");
  }
  if (s1 != cfg.m1 + 1 - p)
    out.push_back("sum of a' is " + std::to_string(s1) + ", expected m1+1-p = " + std::to_string(cfg.m1 + 1 - p));
  if (s2 != cfg.m2 + 1 - p)
    out.push_back("sum of a'' is " + std::to_string(s2) + ", expected m2+1-p = " + std::to_string(cfg.m2 + 1 - p));
  Partition expected = ambient.alpha.stripped();
  if (rests.with(cfg.m1).with(cfg.m2) != expected)
    out.push_back("rests with m1, m2 do not reproduce (" + expected.str() + ")");
  return out;
}

DistinctConfig rotate(const DistinctConfig& cfg, int r) {
  DistinctConfig out = cfg;
  int p = cfg.p();
  for (int j = 0; j < p; ++j) out.pieces[j] = cfg.pieces[(j + r) % p];
  return out;
}

DistinctConfig reverse_swap(const DistinctConfig& cfg) {
  DistinctConfig out;
  out.m1 = cfg.m2;
  out.m2 = cfg.m1;
  int p = cfg.p();
  for (int j = 0; j < p; ++j) {
    const auto& src = cfg.pieces[p - 1 - j];
    out.pieces.push_back({src.a2, src.a1, src.rest});
  }
  return out;
}

DistinctConfig canonicalize_distinct(const DistinctConfig& cfg) {
  std::vector<DistinctConfig> seeds;
  if (cfg.m1 < cfg.m2) {
    seeds.push_back(cfg);
  } else if (cfg.m1 > cfg.m2) {
    seeds.push_back(reverse_swap(cfg));
  } else {
    seeds.push_back(cfg);
    seeds.push_back(reverse_swap(cfg));
  }
  DistinctConfig best = seeds.front();
  for (const auto& s : seeds)
    for (int r = 0; r < s.p(); ++r) {
      DistinctConfig c = rotate(s, r);
      if (c.pieces < best.pieces) best = c;
    }
  return best;
}

SymmetryInfo symmetry_distinct(const DistinctConfig& cfg) {
  SymmetryInfo info;
  int p = cfg.p();
  info.gamma = 0;
  for (int r = 0; r < p; ++r)
    if (rotate(cfg, r).pieces == cfg.pieces) ++info.gamma;
  if (cfg.m1 == cfg.m2) {
    DistinctConfig rs = reverse_swap(cfg);
    for (int r = 0; r < p; ++r)
      if (rotate(rs, r).pieces == cfg.pieces) info.gamma_minus = 2;
  }
  return info;
}

std::vector<DistinctConfig> enumerate_distinct(const Stratum& ambient, int m1, int m2) {
  const Partition& alpha = ambient.alpha;
  if (alpha.count(0) > 0)
    throw Error(ErrorCode::InvalidStratum, "enumeration needs a stratum without marked points");
  Partition pool = alpha.without(m1).without(m2);
  std::set<std::vector<DistinctPiece>> seen;
  std::vector<std::pair<int, DistinctConfig>> found;
  for (int p = 1; p <= std::min(m1, m2) + 1; ++p) {
    detail::for_each_composition(m1 + 1 - p, p, [&](const std::vector<int>& a1) {
      detail::for_each_composition(m2 + 1 - p, p, [&](const std::vector<int>& a2) {
        detail::for_each_distribution(pool, p, [&](const std::vector<Partition>& rests) {
          DistinctConfig cfg{m1, m2, {}};
          for (int i = 0; i < p; ++i) {
            if ((rests[i].positive_sum() + a1[i] + a2[i]) % 2 != 0) return;
            cfg.pieces.push_back({a1[i], a2[i], rests[i]});
          }
          DistinctConfig c = canonicalize_distinct(cfg);
          if (seen.insert(c.pieces).second) found.emplace_back(p, std::move(c));
        });
      });
    });
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second.pieces < y.second.pieces;
  });
  std::vector<DistinctConfig> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

}  // namespace sv
