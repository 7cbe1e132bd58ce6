#pragma once

#include "sv/strata.hpp"
#include "sv/volumes.hpp"

#include <array>
#include <functional>
#include <set>
#include <vector>

namespace sv::detail {

// prod over distinct orders m of o(m)! / prod_i r_i(m)!, where r_i(m) counts m in rest i.
inline Rational redistribution_factor(const Partition& alpha, const std::vector<Partition>& rests) {
  Rational r = 1;
  std::set<int> values(alpha.entries().begin(), alpha.entries().end());
  for (int m : values) {
    Integer den = 1;
    for (const auto& rest : rests) den *= factorial(rest.count(m));
    r *= Rational(factorial(alpha.count(m)), den);
  }
  return r;
}

// 1/2^(p-1) * prod (d_i/2 - 1)! / (n/2 - 2)!.
inline Rational dimension_factor(const std::vector<int>& d, int n) {
  Integer num = 1;
  for (int di : d) num *= factorial(di / 2 - 1);
  Integer den = factorial(n / 2 - 2) * (Integer(1) << (d.size() - 1));
  return Rational(num, den);
}

// Sum over parity vectors phi with sum(phi) + shift = target (mod 2) of
// prod volume_with_hyp(alpha_i, phi_i).
inline Rational parity_sum(const std::vector<Partition>& alphas, int shift, Parity target, const VolumeTable& table) {
  std::size_t p = alphas.size();
  std::vector<std::array<Rational, 2>> v(p);
  for (std::size_t i = 0; i < p; ++i) {
    v[i][0] = volume_with_hyp(alphas[i], Parity::Even, table).coeff;
    v[i][1] = volume_with_hyp(alphas[i], Parity::Odd, table).coeff;
  }
  // dp[k] = sum of products over the first i pieces with parity sum k.
  std::array<Rational, 2> dp{Rational(1), Rational(0)};
  for (std::size_t i = 0; i < p; ++i) {
    std::array<Rational, 2> next{Rational(0), Rational(0)};
    for (int k = 0; k < 2; ++k)
      for (int f = 0; f < 2; ++f) next[(k + f) % 2] += dp[k] * v[i][f];
    dp = next;
  }
  int want = ((as_int(target) - shift) % 2 + 2) % 2;
  return dp[want];
}

inline Rational product_of(const std::vector<Partition>& alphas, Label label, const VolumeTable& table) {
  Rational r = 1;
  for (const auto& a : alphas) r *= component_volume(a, label, table);
  return r;
}

inline int pi_power_of(const std::vector<Partition>& alphas) {
  int s = 0;
  for (const auto& a : alphas) s += 2 * genus_of(a);
  return s;
}

}  // namespace sv::detail
