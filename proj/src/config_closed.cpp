#include "sv/config_closed.hpp"

#include "combinatorics.hpp"
#include "sv/sv_closed.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace sv {

Partition ClosedPiece::alpha() const {
  if (kind == PieceKind::FigureEight) return rest.with(x + y);
  return rest.with(x).with(y);
}

int ClosedConfig::q() const { return static_cast<int>(std::count(glue.begin(), glue.end(), Glue::Cylinder)); }

std::vector<NewbornZero> newborn_zeros(const ClosedConfig& cfg) {
  int p = cfg.p();
  if (p == 0 || static_cast<int>(cfg.glue.size()) != p)
    throw Error(ErrorCode::MalformedCycle, "glue count must equal piece count");
  // A chain starts right after a cylinder or at the right hole of a pair of
  // holes, walks to the right through figure eights and stops at a cylinder or
  // at the left hole of a pair of holes.
  std::vector<NewbornZero> out;
  auto walk = [&](int first, int order, bool from_cylinder) {
    NewbornZero z;
    z.order = order;
    int k = first;
    for (int steps = 0; steps <= p; ++steps) {
      const ClosedPiece& piece = cfg.pieces[k];
      z.chain.push_back(k);
      if (!piece.is_f()) {
        z.order += piece.x + 1;
        z.type = from_cylinder ? NewbornType::II : NewbornType::III;
        out.push_back(z);
        return;
      }
      z.order += piece.x + piece.y + 2;
      int next = (k + 1) % p;
      if (cfg.glue[next] == Glue::Cylinder) {
        z.type = from_cylinder ? NewbornType::I : NewbornType::II;
        out.push_back(z);
        return;
      }
      k = next;
    }
    throw Error(ErrorCode::MalformedCycle, "chain does not terminate");
  };
  for (int i = 0; i < p; ++i) {
    if (cfg.glue[i] == Glue::Cylinder) walk(i, 0, true);
    const ClosedPiece& piece = cfg.pieces[i];
    if (!piece.is_f()) {
      int next = (i + 1) % p;
      if (cfg.glue[next] == Glue::Cylinder) {
        NewbornZero z;
        z.order = piece.y + 1;
        z.type = NewbornType::II;
        z.chain = {i};
        out.push_back(z);
      } else {
        // The hole side itself is not part of the walk's first piece.
        std::size_t before = out.size();
        walk(next, piece.y + 1, false);
        out[before].chain.insert(out[before].chain.begin(), i);
      }
    }
  }
  if (out.empty())
    throw Error(ErrorCode::MalformedCycle, "no cylinder and no pair of holes: figure eights glued in a closed ring");
  return out;
}

Partition newborn_partition(const ClosedConfig& cfg) {
  std::vector<int> orders;
  for (const auto& z : newborn_zeros(cfg)) orders.push_back(z.order);
  return Partition(orders);
}

std::vector<std::string> validate_closed(const ClosedConfig& cfg, const Stratum& ambient) {
  std::vector<std::string> out;
  int p = cfg.p();
  if (p == 0 || static_cast<int>(cfg.glue.size()) != p) {
    out.push_back("glue count must equal piece count");
    return out;
  }
  bool any_h = std::any_of(cfg.pieces.begin(), cfg.pieces.end(), [](const ClosedPiece& c) { return !c.is_f(); });
  if (!any_h && cfg.q() == 0) {
    out.push_back("needs a pair of holes or a cylinder");
    return out;
  }
  Partition rests;
  for (const auto& piece : cfg.pieces) {
    if (piece.x < 0 || piece.y < 0) out.push_back("negative surgery index");
    for (int e : piece.rest.entries())
      if (e == 0) out.push_back("marked point inside a piece rest");
    if (piece.alpha().positive_sum() % 2 != 0) out.push_back("piece (" + piece.alpha().str() + ") has odd total order");
    rests = rests.with(piece.rest);
  }
  if (!out.empty()) return out;
  Partition got = newborn_partition(cfg).with(rests);
  if (got != ambient.alpha.stripped())
    out.push_back("newborn zeros with rests give (" + got.str() + "), expected (" + ambient.alpha.stripped().str() + ")");
  return out;
}

ClosedConfig rotate(const ClosedConfig& cfg, int r) {
  ClosedConfig out = cfg;
  int p = cfg.p();
  for (int j = 0; j < p; ++j) {
    out.pieces[j] = cfg.pieces[(j + r) % p];
    out.glue[j] = cfg.glue[(j + r) % p];
  }
  return out;
}

ClosedConfig reverse_swap(const ClosedConfig& cfg) {
  ClosedConfig out = cfg;
  int p = cfg.p();
  for (int j = 0; j < p; ++j) {
    const ClosedPiece& src = cfg.pieces[p - 1 - j];
    out.pieces[j] = {src.kind, src.y, src.x, src.rest};
    out.glue[j] = cfg.glue[(p - j) % p];
  }
  return out;
}

namespace {

using Key = std::vector<std::tuple<Glue, PieceKind, int, int, Partition>>;

Key key_of(const ClosedConfig& cfg) {
  Key k;
  for (int j = 0; j < cfg.p(); ++j) {
    const auto& c = cfg.pieces[j];
    k.emplace_back(cfg.glue[j], c.kind, c.x, c.y, c.rest);
  }
  return k;
}

}  // namespace

ClosedConfig canonicalize_closed(const ClosedConfig& cfg) {
  ClosedConfig best = cfg;
  Key best_key = key_of(cfg);
  for (const ClosedConfig& seed : {cfg, reverse_swap(cfg)})
    for (int r = 0; r < cfg.p(); ++r) {
      ClosedConfig c = rotate(seed, r);
      Key k = key_of(c);
      if (k < best_key) {
        best_key = std::move(k);
        best = std::move(c);
      }
    }
  return best;
}

SymmetryInfo symmetry_closed(const ClosedConfig& cfg) {
  SymmetryInfo info;
  info.gamma = 0;
  ClosedConfig rs = reverse_swap(cfg);
  for (int r = 0; r < cfg.p(); ++r) {
    if (rotate(cfg, r) == cfg) ++info.gamma;
    if (rotate(rs, r) == cfg) info.gamma_minus = 2;
  }
  return info;
}

std::vector<int> d_values(const ClosedConfig& cfg, const Stratum& ambient) {
  std::vector<int> d;
  int total = 2 * cfg.q() + 2;
  for (const auto& piece : cfg.pieces) {
    d.push_back(piece.d());
    total += d.back();
  }
  if (total != ambient.dim_real())
    throw Error(ErrorCode::DimensionMismatch, "2q+2+sum d_i = " + std::to_string(total) + " but dim_R " +
                                                  ambient.str() + " = " + std::to_string(ambient.dim_real()));
  return d;
}

bool is_hyp_shape(const ClosedConfig& cfg, const Partition& alpha) {
  Partition s = alpha.stripped();
  int g = genus_of(s);
  for (const auto& piece : cfg.pieces)
    if (!piece.rest.empty()) return false;
  int p = cfg.p();
  auto symmetric = [](const ClosedPiece& c) { return c.x == c.y; };
  if (is_minimal_shape(s) && g >= 2) {
    if (p == 1) {
      const auto& c = cfg.pieces[0];
      if (c.x != g - 2 || c.y != g - 2) return false;
      return c.is_f() ? cfg.glue[0] == Glue::Cylinder : cfg.glue[0] == Glue::Direct;
    }
    if (p == 2) {
      if (cfg.q() != 0) return false;
      const auto& u = cfg.pieces[0];
      const auto& v = cfg.pieces[1];
      if (u.is_f() == v.is_f() || !symmetric(u) || !symmetric(v)) return false;
      return u.genus() + v.genus() == g - 1;
    }
    return false;
  }
  if (is_pair_shape(s)) {
    if (p == 1) {
      const auto& c = cfg.pieces[0];
      return !c.is_f() && c.x == g - 2 && c.y == g - 2 && cfg.glue[0] == Glue::Cylinder;
    }
    if (p == 2) {
      if (cfg.q() != 0) return false;
      const auto& u = cfg.pieces[0];
      const auto& v = cfg.pieces[1];
      if (u.is_f() || v.is_f() || !symmetric(u) || !symmetric(v)) return false;
      return u.genus() + v.genus() == g - 1;
    }
  }
  return false;
}

std::vector<ClosedConfig> enumerate_closed_all(const Stratum& ambient) {
  const Partition& alpha = ambient.alpha;
  if (alpha.count(0) > 0)
    throw Error(ErrorCode::InvalidStratum, "enumeration needs a stratum without marked points");
  int g = ambient.genus;
  std::set<Key> seen;
  std::vector<std::pair<int, ClosedConfig>> found;
  for (int p = 1; p <= g - 1; ++p) {
    int budget = 2 * g - 2 - 2 * p;
    for (int kinds = 0; kinds < (1 << p); ++kinds) {
      for (int glues = 0; glues < (1 << p); ++glues) {
        if (kinds == 0 && glues == 0) continue;
        ClosedConfig shape;
        for (int i = 0; i < p; ++i) {
          shape.pieces.push_back({(kinds >> i) & 1 ? PieceKind::PairOfHoles : PieceKind::FigureEight, 0, 0, {}});
          shape.glue.push_back((glues >> i) & 1 ? Glue::Cylinder : Glue::Direct);
        }
        for (int used = 0; used <= budget; ++used) {
          detail::for_each_composition(used, 2 * p, [&](const std::vector<int>& xy) {
            ClosedConfig cfg = shape;
            for (int i = 0; i < p; ++i) {
              cfg.pieces[i].x = xy[2 * i];
              cfg.pieces[i].y = xy[2 * i + 1];
            }
            Partition born = newborn_partition(cfg);
            if (!alpha.contains(born)) return;
            Partition pool = alpha.minus(born);
            if (pool.positive_sum() != budget - used) return;
            detail::for_each_distribution(pool, p, [&](const std::vector<Partition>& rests) {
              ClosedConfig full = cfg;
              for (int i = 0; i < p; ++i) {
                if ((rests[i].positive_sum() + full.pieces[i].x + full.pieces[i].y) % 2 != 0) return;
                full.pieces[i].rest = rests[i];
              }
              ClosedConfig c = canonicalize_closed(full);
              if (seen.insert(key_of(c)).second) found.emplace_back(p, std::move(c));
            });
          });
        }
      }
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return key_of(a.second) < key_of(b.second);
  });
  std::vector<ClosedConfig> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::vector<ClosedConfig> enumerate_closed(const StratumComponent& component, const VolumeTable& table) {
  std::vector<ClosedConfig> out;
  for (auto& cfg : enumerate_closed_all(component.stratum)) {
    if (component.label == Label::Hyperelliptic) {
      if (is_hyp_shape(cfg, component.stratum.alpha)) out.push_back(std::move(cfg));
      continue;
    }
    if (component.label == Label::Connected) {
      out.push_back(std::move(cfg));
      continue;
    }
    try {
      if (constant_closed(cfg, component, table).coeff != 0) out.push_back(std::move(cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAdmissible) throw;
    }
  }
  return out;
}

}  // namespace sv
