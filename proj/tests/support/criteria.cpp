#include "criteria.hpp"

#include "reference_tables.hpp"
#include "oracles.hpp"
#include "reference_values.hpp"

#include "sv/flatsim.hpp"
#include "sv/notation.hpp"
#include "sv/sv_closed.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace sv::oracle {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string block_name(const ReferenceBlock& b) { return b.component().str(); }

std::vector<StratumComponent> components_up_to_genus(int max_genus) {
  std::vector<StratumComponent> out;
  for (int g = 2; g <= max_genus; ++g) {
    for (const Partition& alpha : strata_up_to_dim(4 * g)) {
      if (genus_of(alpha) != g) continue;
      auto labels = classify_components(alpha);
      for (Label l : labels) out.push_back(make_component(alpha, l));
      if (labels.size() > 1) out.push_back(make_component(alpha, Label::Connected));
    }
  }
  return out;
}

int closed_dim_sum(const ClosedConfig& cfg) {
  int total = 2 * cfg.q() + 2;
  for (const auto& piece : cfg.pieces) {
    const Partition a = piece.alpha();
    total += 2 * (2 * genus_of(a) - 1 + a.size());
  }
  return total;
}

int distinct_dim_sum(const DistinctConfig& cfg) {
  int total = 2;
  for (const auto& piece : cfg.pieces) {
    const Partition a = piece.alpha();
    total += 2 * (2 * genus_of(a) - 1 + a.size());
  }
  return total;
}

}  // namespace

SVConstant evaluate(const std::string& stratum, const std::string& component, const std::string& kind,
                    const std::string& pattern, const VolumeTable& table) {
  StratumComponent comp = make_component(Partition::parse(stratum), parse_label(component));
  if (kind == "distinct") return constant_general(parse_distinct(pattern), comp, table);
  return constant_closed(parse_closed(pattern), comp, table);
}

CriterionReport criterion_reference_distinct() {
  CriterionReport r{1, "genus-4 distinct-zero reference tables"};
  auto t0 = Clock::now();
  const VolumeTable table = VolumeTable::bundled();
  int rows = 0;
  std::ostringstream counts;
  for (const auto& block : load_reference_tables(data_path("genus4_distinct.txt"))) {
    auto generated = table_distinct(block.component(), table);
    std::map<std::string, const DistinctRow*> by_key;
    for (const auto& row : generated) by_key[orbit_key(row.config)] = &row;
    if (by_key.size() != generated.size()) r.fail(block_name(block) + ": duplicate generated rows");
    if (generated.size() != block.rows.size())
      r.fail(block_name(block) + ": " + std::to_string(generated.size()) + " generated rows, expected " +
             std::to_string(block.rows.size()));
    counts << (rows ? "+" : "") << generated.size();
    for (const auto& want : block.rows) {
      ++rows;
      auto it = by_key.find(orbit_key(parse_distinct(want.pattern)));
      if (it == by_key.end()) {
        r.fail(block_name(block) + " " + want.pattern + ": not generated");
        continue;
      }
      const DistinctRow& got = *it->second;
      if (got.symmetry.gamma_minus != want.gamma_minus || got.symmetry.gamma != want.gamma ||
          (want.m && got.m != *want.m) || got.constant.reported() != want.value)
        r.fail(block_name(block) + " " + want.pattern + ": got (" + std::to_string(got.symmetry.gamma_minus) + ", " +
               std::to_string(got.symmetry.gamma) + ", " + to_string(got.m) + ", " + got.constant.str() + ")");
    }
  }
  r.seconds = since(t0);
  if (r.seconds >= 5) r.fail("runtime " + std::to_string(r.seconds) + " s exceeds 5 s");
  r.summary = std::to_string(rows) + " rows (" + counts.str() + ") matched exactly";
  return r;
}

CriterionReport criterion_reference_closed() {
  CriterionReport r{2, "genus-4 closed-geodesic reference tables"};
  auto t0 = Clock::now();
  const VolumeTable table = VolumeTable::bundled();
  int rows = 0;
  std::ostringstream counts;
  for (const auto& block : load_reference_tables(data_path("genus4_closed.txt"))) {
    auto generated = table_closed(block.component(), table);
    std::map<std::string, const ClosedRow*> by_key;
    for (const auto& row : generated) by_key[orbit_key(row.config)] = &row;
    if (by_key.size() != generated.size()) r.fail(block_name(block) + ": duplicate generated rows");
    if (generated.size() != block.rows.size())
      r.fail(block_name(block) + ": " + std::to_string(generated.size()) + " generated rows, expected " +
             std::to_string(block.rows.size()));
    counts << (rows ? "+" : "") << generated.size();
    for (const auto& want : block.rows) {
      ++rows;
      auto it = by_key.find(orbit_key(parse_closed(want.pattern)));
      if (it == by_key.end()) {
        r.fail(block_name(block) + " " + want.pattern + ": not generated");
        continue;
      }
      const ClosedRow& got = *it->second;
      if (got.symmetry.gamma_minus != want.gamma_minus || got.symmetry.gamma != want.gamma ||
          (want.m && got.m != *want.m) || got.constant.reported() != want.value)
        r.fail(block_name(block) + " " + want.pattern + ": got (" + std::to_string(got.symmetry.gamma_minus) + ", " +
               std::to_string(got.symmetry.gamma) + ", " + to_string(got.m) + ", " + got.constant.str() + ")");
    }
  }
  r.seconds = since(t0);
  if (r.seconds >= 10) r.fail("runtime " + std::to_string(r.seconds) + " s exceeds 10 s");
  r.summary = std::to_string(rows) + " rows (" + counts.str() + ") matched exactly";
  return r;
}

CriterionReport criterion_worked_examples() {
  CriterionReport r{3, "reference constants"};
  auto t0 = Clock::now();
  const VolumeTable table = VolumeTable::bundled();
  int checked = 0;
  auto check = [&](const WorkedCase& c, const std::string& kind, const VolumeTable& t) {
    ++checked;
    try {
      SVConstant got = evaluate(c.stratum, c.component, kind, c.pattern, t);
      if (got.reported() != parse_rational(c.value))
        r.fail(std::string("H^") + c.component + "(" + c.stratum + ") " + c.pattern + ": got " + got.str() +
               ", expected " + c.value);
    } catch (const Error& e) {
      r.fail(std::string(c.pattern) + ": " + e.what());
    }
  };
  for (const auto& c : worked_distinct()) check(c, "distinct", table);
  for (const auto& c : worked_closed()) check(c, "closed", table);

  // Multiplicity-one totals through the dedicated entry point.
  struct Mult1 {
    const char* stratum;
    const char* component;
    int m1, m2;
    const char* value;
  };
  for (const Mult1& m : {Mult1{"3,1", "c", 3, 1, "7625/1024"}, Mult1{"2,2", "hyp", 2, 2, "225/32"},
                         Mult1{"2,2", "odd", 2, 2, "80/9"}}) {
    ++checked;
    auto comp = make_component(Partition::parse(m.stratum), parse_label(m.component));
    if (constant_mult1(comp, m.m1, m.m2, table).reported() != parse_rational(m.value))
      r.fail(std::string("mult-1 total on ") + comp.str() + " differs from " + m.value);
  }

  // Newborn zeros of the nine-piece cycle.
  ++checked;
  ClosedConfig nine = parse_closed(kNinePieceCycle);
  Partition expected{22, 14, 4, 11, 9};
  if (newborn_partition(nine) != expected) r.fail("nine-piece cycle newborn zeros: " + newborn_partition(nine).str());
  if (Partition(wall_newborn_orders(nine)) != expected) r.fail("wall model disagrees on the nine-piece cycle");

  // Genus 5: recover Vol(H(1^8)) from one mult-2 distinct entry, then check
  // the closed values against it.  Constants scale like 1/Vol(H(1^8)).
  VolumeTable extended = table;
  const Partition p8 = Partition::parse(kPrincipal8);
  extended.set(p8, Label::Connected, 1);
  Rational unit = evaluate(kPrincipal8Anchor.stratum, "c", "distinct", kPrincipal8Anchor.pattern, extended).reported();
  Rational vol8 = unit / parse_rational(kPrincipal8Anchor.value);
  extended.set(p8, Label::Connected, vol8);
  for (const auto& c : worked_genus5_closed()) check(c, "closed", extended);

  r.seconds = since(t0);
  r.summary = std::to_string(checked) + " worked values reproduced; Vol(H(1^8)) recovered as " + to_string(vol8) +
              " * pi^10";
  return r;
}

CriterionReport criterion_small_tables() {
  CriterionReport r{4, "small-genus tables and MissingVolume beyond genus 4"};
  auto t0 = Clock::now();
  const VolumeTable table = VolumeTable::bundled();
  for (const auto& e : small_genus_table_entries()) {
    try {
      SVConstant got = evaluate(e.stratum, e.component, e.kind, e.pattern, table);
      if (got.reported() != parse_rational(e.value))
        r.fail(std::string(e.table) + ": got " + got.str() + ", expected " + e.value);
    } catch (const Error& err) {
      r.fail(std::string(e.table) + ": " + err.what());
    }
  }
  int missing = 0;
  for (const auto& e : genus5_table_entries()) {
    try {
      evaluate(e.stratum, e.component, e.kind, e.pattern, table);
      r.fail(std::string(e.table) + ": expected MissingVolume");
    } catch (const Error& err) {
      if (err.code() == ErrorCode::MissingVolume)
        ++missing;
      else
        r.fail(std::string(e.table) + ": wrong error " + error_name(err.code()));
    }
  }
  r.seconds = since(t0);
  r.summary = std::to_string(small_genus_table_entries().size()) + " entries exact, " + std::to_string(missing) +
              " genus-5 entries raise MissingVolume";
  return r;
}

CriterionReport criterion_enumeration_oracle() {
  CriterionReport r{5, "brute-force enumeration oracle"};
  auto t0 = Clock::now();
  int strata = 0, distinct_sets = 0, closed_sets = 0;
  for (const Partition& alpha : strata_up_to_dim(8)) {
    ++strata;
    Stratum amb = Stratum::of(alpha);
    std::set<int> values(alpha.entries().begin(), alpha.entries().end());
    for (int m1 : values)
      for (int m2 : values) {
        if (m1 > m2 || (m1 == m2 && alpha.count(m1) < 2)) continue;
        ++distinct_sets;
        auto got = enumerate_distinct(amb, m1, m2);
        std::set<std::string> keys;
        for (const auto& cfg : got) {
          keys.insert(orbit_key(cfg));
          if (!validate_distinct(cfg, amb).empty()) r.fail(amb.str() + " " + format_distinct(cfg) + " does not validate");
        }
        if (keys.size() != got.size()) r.fail(amb.str() + ": duplicate distinct configurations");
        if (keys != brute_distinct(alpha, m1, m2))
          r.fail(amb.str() + " m=(" + std::to_string(m1) + "," + std::to_string(m2) + "): distinct sets differ");
      }
    ++closed_sets;
    auto brute = brute_closed(alpha);
    for (const auto& list : {enumerate_closed_all(amb),
                             enumerate_closed(make_component(alpha, Label::Connected), VolumeTable::bundled())}) {
      std::set<std::string> keys;
      for (const auto& cfg : list) {
        keys.insert(orbit_key(cfg));
        if (!validate_closed(cfg, amb).empty()) r.fail(amb.str() + " " + format_closed(cfg) + " does not validate");
      }
      if (keys.size() != list.size()) r.fail(amb.str() + ": duplicate closed configurations");
      if (keys != brute) r.fail(amb.str() + ": closed sets differ");
    }
  }

  // Three-piece configurations of H(4,3,2,1) with m = (3,4).
  Stratum h4321 = Stratum::of(Partition{4, 3, 2, 1});
  std::set<std::string> got3, want3;
  for (const auto& cfg : enumerate_distinct(h4321, 3, 4))
    if (cfg.p() == 3) got3.insert(orbit_key(cfg));
  for (const auto& text : h4321_three_piece_rows()) {
    DistinctConfig cfg = parse_distinct(text);
    if (!validate_distinct(cfg, h4321).empty()) r.fail("H(4,3,2,1) p=3 row " + text + " does not validate");
    want3.insert(orbit_key(cfg));
  }
  if (want3.size() != 15 || got3 != want3)
    r.fail("H(4,3,2,1) p=3: " + std::to_string(got3.size()) + " generated p=3 rows vs " + std::to_string(want3.size()));

  r.seconds = since(t0);
  if (r.seconds >= 60) r.fail("runtime exceeds 60 s");
  r.summary = std::to_string(strata) + " strata, " + std::to_string(distinct_sets) + " distinct and " +
              std::to_string(closed_sets) + " closed sets equal brute force; H(4,3,2,1) p=3 has " +
              std::to_string(got3.size()) + " rows";
  return r;
}

CriterionReport criterion_properties() {
  CriterionReport r{6, "dimension, pi-power, symmetry and round-trip properties"};
  auto t0 = Clock::now();
  const VolumeTable table = VolumeTable::bundled();
  long rows = 0;
  for (const auto& comp : components_up_to_genus(4)) {
    const int dim = comp.stratum.dim_real();
    for (const auto& row : table_distinct(comp, table)) {
      ++rows;
      const std::string where = comp.str() + " " + format_distinct(row.config);
      if (distinct_dim_sum(row.config) != dim) r.fail(where + ": dimension identity");
      if (row.constant.pi_power != 0) r.fail(where + ": pi power " + std::to_string(row.constant.pi_power));
      if (parse_distinct(format_distinct(row.config)) != row.config) r.fail(where + ": parse(format) round trip");
      const std::string printed = print_distinct(row.config);
      if (print_distinct(parse_distinct(printed)) != printed) r.fail(where + ": print idempotence");
    }
    for (const auto& row : table_closed(comp, table)) {
      ++rows;
      const std::string where = comp.str() + " " + format_closed(row.config);
      if (closed_dim_sum(row.config) != dim) r.fail(where + ": dimension identity");
      try {
        d_values(row.config, comp.stratum);
      } catch (const Error& e) {
        r.fail(where + ": " + e.what());
      }
      if (row.constant.pi_power != -2) r.fail(where + ": pi power " + std::to_string(row.constant.pi_power));
      if (parse_closed(format_closed(row.config)) != row.config) r.fail(where + ": parse(format) round trip");
      const std::string printed = print_closed(row.config);
      if (print_closed(parse_closed(printed)) != printed) r.fail(where + ": print idempotence");
    }
  }
  for (const char* file : {"genus4_distinct.txt", "genus4_closed.txt"})
    for (const auto& block : load_reference_tables(data_path(file)))
      for (const auto& row : block.rows) {
        const bool distinct = std::string(file) == "genus4_distinct.txt";
        std::string printed = distinct ? print_distinct(parse_distinct(row.pattern)) : print_closed(parse_closed(row.pattern));
        std::string again = distinct ? print_distinct(parse_distinct(printed)) : print_closed(parse_closed(printed));
        if (printed != again) r.fail(row.pattern + ": reference pattern round trip");
      }

  std::mt19937_64 rng(20240607);
  const int n = 5000;
  int symmetric = 0;
  for (int k = 0; k < n; ++k) {
    DistinctConfig d = random_distinct(rng);
    SymmetryInfo want = orbit_symmetry(d), got = symmetry_distinct(d);
    if (!(want == got)) r.fail("distinct symmetry " + format_distinct(d));
    if (want.gamma > 1 || want.gamma_minus > 1) ++symmetric;
    if (!validate_distinct(d, ambient_of(d)).empty()) r.fail("random distinct config invalid " + format_distinct(d));
    DistinctConfig c = canonicalize_distinct(d);
    if (canonicalize_distinct(c) != c || canonicalize_distinct(rotate(d, k % d.p())) != c ||
        canonicalize_distinct(reverse_swap(d)) != c || orbit_key(c) != orbit_key(d))
      r.fail("distinct canonical form " + format_distinct(d));
    if (parse_distinct(format_distinct(d)) != d) r.fail("distinct round trip " + format_distinct(d));

    ClosedConfig q = random_closed(rng);
    SymmetryInfo wq = orbit_symmetry(q), gq = symmetry_closed(q);
    if (!(wq == gq)) r.fail("closed symmetry " + format_closed(q));
    if (wq.gamma > 1 || wq.gamma_minus > 1) ++symmetric;
    if (!validate_closed(q, ambient_of(q)).empty()) r.fail("random closed config invalid " + format_closed(q));
    ClosedConfig cq = canonicalize_closed(q);
    if (canonicalize_closed(cq) != cq || canonicalize_closed(rotate(q, k % q.p())) != cq ||
        canonicalize_closed(reverse_swap(q)) != cq || orbit_key(cq) != orbit_key(q))
      r.fail("closed canonical form " + format_closed(q));
    if (parse_closed(format_closed(q)) != q) r.fail("closed round trip " + format_closed(q));
    if (Partition(wall_newborn_orders(q)) != newborn_partition(q)) r.fail("newborn zeros " + format_closed(q));
  }
  r.seconds = since(t0);
  r.summary = std::to_string(rows) + " generated rows checked; " + std::to_string(2 * n) +
              " random configs agree with orbit symmetry (" + std::to_string(symmetric) + " with nontrivial symmetry)";
  return r;
}

CriterionReport criterion_simulator_oracles() {
  CriterionReport r{7, "simulator exact oracles"};
  auto t0 = Clock::now();
  using namespace sv::flat;
  const double radii[] = {1.5, 5, 12.5, 25, 37.5, 50};
  auto torus = build_from_polygons(square_torus());
  const Vec p{0.31415926, 0.27182818};
  auto marked = build_from_polygons(square_torus_with_point(p));
  for (double L : radii) {
    const long prim = primitive_vectors_in_disc(L);
    const long lattice = lattice_points_in_disc(p.x, p.y, L);
    auto t = count_up_to(torus, L);
    if (t.counts.at("closed") != prim / 2 || t.counts.at("cylinders") != prim / 2 || t.counts.at("between") != 0)
      r.fail("torus at L=" + std::to_string(L) + ": closed " + std::to_string(t.counts.at("closed")) + ", cylinders " +
             std::to_string(t.counts.at("cylinders")) + ", expected " + std::to_string(prim / 2));
    auto m = count_up_to(marked, L);
    if (m.counts.at("between") != lattice || m.counts.at("closed") != prim || m.counts.at("cylinders") != prim)
      r.fail("marked torus at L=" + std::to_string(L) + ": between " + std::to_string(m.counts.at("between")) + "/" +
             std::to_string(lattice) + ", closed " + std::to_string(m.counts.at("closed")) + "/" + std::to_string(prim) +
             ", cylinders " + std::to_string(m.counts.at("cylinders")));
  }

  auto four = build_from_polygons(four_square_surface());
  int vertical = 0;
  for (const auto& rec : saddle_connections_up_to(four, 1.5))
    if (std::abs(rec.holonomy.x) < 1e-9 && std::abs(std::abs(rec.holonomy.y) - 1) < 1e-9) ++vertical;
  if (vertical != 4) r.fail("four-square surface: holonomy (0,1) has multiplicity " + std::to_string(vertical));
  if (four.stratum() != Partition{1, 1}) r.fail("four-square surface is not in H(1,1)");

  auto oct = build_from_polygons(regular_octagon());
  int vcyl = 0;
  for (const auto& c : cylinders_up_to(oct, 4.0))
    if (std::abs(c.holonomy.x) < 1e-9) ++vcyl;
  if (vcyl != 2) r.fail("octagon: " + std::to_string(vcyl) + " vertical cylinders");
  if (oct.stratum() != Partition{2} || std::abs(oct.cones.at(0).angle - 6 * std::numbers::pi) > 1e-9)
    r.fail("octagon is not a single 6pi cone");

  r.seconds = since(t0);
  r.summary = "torus counts exact for L up to 50; (0,1) multiplicity " + std::to_string(vertical) + "; octagon " +
              std::to_string(vcyl) + " vertical cylinders";
  return r;
}

CriterionReport criterion_statistics(int threads) {
  CriterionReport r{8, "statistical agreement of sampled surfaces"};
  auto t0 = Clock::now();
  using namespace sv::flat;
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6;
  struct Target {
    const char* label;
    Partition alpha;
    CountingClass cls;
    double L;
    double value;
  };
  const Target targets[] = {
      {"H(1,1) between", Partition{1, 1}, CountingClass::BetweenZeros, 13, 37.0 / 8},
      {"H(1,1) cylinders", Partition{1, 1}, CountingClass::Cylinders, 22, 2.5 / zeta2},
      {"H(2) cylinders", Partition{2}, CountingClass::Cylinders, 26, (5.0 / 3) / zeta2},
  };
  std::ostringstream summary;
  summary.precision(4);
  for (const auto& t : targets) {
    auto t1 = Clock::now();
    EmpiricalResult res = empirical_constant(permutation_for(t.alpha), t.cls, t.L, 20, 12345, threads);
    long fewest = *std::min_element(res.counts.begin(), res.counts.end());
    double rel = (res.mean - t.value) / t.value;
    double secs = since(t1);
    summary << t.label << ": mean " << res.mean << " +- " << res.stderr_ << " vs " << t.value << " ("
            << std::showpos << 100 * rel << std::noshowpos << "%, min count " << fewest << ", " << secs << " s); ";
    if (std::abs(rel) > 0.10)
      r.fail(std::string(t.label) + ": relative error " + std::to_string(rel) + ", stderr " + std::to_string(res.stderr_));
    if (fewest < 2000) r.fail(std::string(t.label) + ": a trial found only " + std::to_string(fewest));
    if (secs > 600) r.fail(std::string(t.label) + ": exceeded 10 minutes");
  }
  r.seconds = since(t0);
  r.summary = summary.str();
  if (r.summary.size() >= 2) r.summary.resize(r.summary.size() - 2);
  return r;
}

std::vector<std::function<CriterionReport()>> all_criteria(int threads) {
  return {criterion_reference_distinct,   criterion_reference_closed, criterion_worked_examples,
          criterion_small_tables,        criterion_enumeration_oracle, criterion_properties,
          criterion_simulator_oracles,   [threads] { return criterion_statistics(threads); }};
}

}  // namespace sv::oracle
