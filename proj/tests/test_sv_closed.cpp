#include "reference_values.hpp"

#include "sv/notation.hpp"
#include "sv/sv_closed.hpp"

#include <gtest/gtest.h>

namespace sv {
namespace {

Rational q(const char* text) { return parse_rational(text); }

StratumComponent comp(const char* alpha, const char* tag) {
  return make_component(Partition::parse(alpha), parse_label(tag));
}

class ClosedConstants : public ::testing::Test {
 protected:
  VolumeTable table = VolumeTable::bundled();
};

TEST_F(ClosedConstants, CombinatorialFactor) {
  EXPECT_EQ(combinatorial_factor_closed(parse_closed("=(H0,0)=(H0,0)"), Stratum::of(Partition{1, 1, 1, 1})), 6);
  EXPECT_EQ(combinatorial_factor_closed(parse_closed("=(H0,0)=(H0,0)=(H0,0)"),
                                        Stratum::of(Partition{1, 1, 1, 1, 1, 1})),
            120);
  EXPECT_EQ(combinatorial_factor_closed(parse_closed("=(F0+3;1)"), Stratum::of(Partition{5, 1})), 4);
}

TEST_F(ClosedConstants, WorkedValues) {
  for (const auto& w : oracle::worked_closed()) {
    SCOPED_TRACE(std::string(w.stratum) + " " + w.component + " " + w.pattern);
    auto c = constant_closed(parse_closed(w.pattern), comp(w.stratum, w.component), table);
    EXPECT_EQ(c.kind, ConstantKind::Closed);
    EXPECT_EQ(c.pi_power, -2);
    EXPECT_EQ(c.reported(), q(w.value));
  }
  EXPECT_EQ(constant_closed(parse_closed("=(H0,4)"), comp("5,1", "c"), table).reported(), q("38125/15552"));
}

TEST_F(ClosedConstants, Tables) {
  auto rows = table_closed(comp("2,1,1,1,1", "c"), table);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows.back().constant.reported(), q("1/360"));

  auto odd = table_closed(comp("2,2", "odd"), table);
  std::vector<Rational> values;
  for (const auto& r : odd) values.push_back(r.constant.reported());
  EXPECT_EQ(values, (std::vector<Rational>{q("6"), q("6/5"), q("32/15"), q("1/6")}));

  auto hyp = table_closed(comp("3,3", "hyp"), table);
  ASSERT_EQ(hyp.size(), 2u);
  EXPECT_EQ(hyp[0].constant.reported(), q("15/2"));
  EXPECT_EQ(hyp[1].constant.reported(), q("35/9"));

  bool found_a = false, found_b = false;
  for (const auto& r : table_closed(comp("3,3", "nonhyp"), table)) {
    found_a = found_a || r.constant.reported() == q("3699/1120");
    found_b = found_b || r.constant.reported() == q("1/5");
  }
  EXPECT_TRUE(found_a);
  EXPECT_TRUE(found_b);
}

TEST_F(ClosedConstants, ComponentsAddUpToConnected) {
  for (const char* alpha : {"4", "2,2", "4,2", "3,3"}) {
    Partition a = Partition::parse(alpha);
    auto labels = classify_components(a);
    Rational vol_total = component_volume(a, Label::Connected, table);
    for (const auto& row : table_closed(make_component(a, Label::Connected), table)) {
      Rational weighted = 0;
      for (Label l : labels) {
        Rational v = component_volume(a, l, table);
        if (v == 0) continue;
        try {
          weighted += v * constant_closed(row.config, make_component(a, l), table).coeff;
        } catch (const Error& e) {
          ASSERT_EQ(e.code(), ErrorCode::NotAdmissible);
        }
      }
      EXPECT_EQ(weighted, vol_total * row.constant.coeff) << alpha << " " << print_closed(row.config);
    }
  }
}

TEST_F(ClosedConstants, GenusFiveNeedsVolume) {
  try {
    constant_closed(parse_closed("=(H0,0)=(H0,0)=(H0,0)=(H0,0)"), comp(oracle::kPrincipal8, "c"), table);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingVolume);
  }
}

}  // namespace
}  // namespace sv
