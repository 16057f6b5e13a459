#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "fso/holarchy.hpp"
#include "oracles.hpp"

namespace fso {
namespace {

using testing::atomic;
using testing::composite;
using testing::roles;

HolarchyErrc build_error(const HolarchySpec& spec) {
  try {
    (void)build_holarchy(spec);
  } catch (const HolarchyError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected HolarchyError";
  return HolarchyErrc::malformed_holon;
}

TEST(Holarchy, BuildsTwoLevelCommunity) {
  HolarchySpec spec;
  spec.roles = roles(1);
  spec.holons = {composite(0, {1, 2}), atomic(1, {0}), atomic(2, {0})};
  const Holarchy h = build_holarchy(spec);

  EXPECT_EQ(h.root(), HolonId{0});
  EXPECT_EQ(h.depth(), 1u);
  EXPECT_EQ(h.at(HolonId{0}).representative, HolonId{1});
  EXPECT_EQ(h.parent_of(HolonId{2}), HolonId{0});
  EXPECT_FALSE(h.parent_of(HolonId{0}).has_value());
  EXPECT_TRUE(validate(h).empty());
}

TEST(Holarchy, MutualMembershipIsACycle) {
  HolarchySpec spec;
  spec.roles = roles(1);
  spec.holons = {composite(0, {1}), composite(1, {0})};
  EXPECT_EQ(build_error(spec), HolarchyErrc::cycle_detected);
}

TEST(Holarchy, RepresentativeMustBeAMember) {
  HolarchySpec spec;
  spec.roles = roles(1);
  spec.holons = {composite(0, {1, 11}), composite(1, {10}, 11), atomic(10, {0}), atomic(11, {0})};
  EXPECT_EQ(build_error(spec), HolarchyErrc::representative_not_member);
}

TEST(Holarchy, RejectsMalformedInputs) {
  HolarchySpec dup;
  dup.roles = roles(1);
  dup.holons = {composite(0, {1}), atomic(1, {0}), atomic(1, {0})};
  EXPECT_EQ(build_error(dup), HolarchyErrc::duplicate_id);

  HolarchySpec unknown_role;
  unknown_role.roles = roles(1);
  unknown_role.holons = {composite(0, {1}), atomic(1, {9})};
  EXPECT_EQ(build_error(unknown_role), HolarchyErrc::unknown_role);

  HolarchySpec unknown_member;
  unknown_member.roles = roles(1);
  unknown_member.holons = {composite(0, {1, 7}), atomic(1, {0})};
  EXPECT_EQ(build_error(unknown_member), HolarchyErrc::unknown_holon);

  HolarchySpec empty;
  empty.roles = roles(1);
  empty.holons = {composite(0, {1}), composite(1, {})};
  EXPECT_EQ(build_error(empty), HolarchyErrc::malformed_holon);

  HolarchySpec two_parents;
  two_parents.roles = roles(1);
  two_parents.holons = {composite(0, {1, 2}), composite(1, {3}), composite(2, {3}), atomic(3, {0})};
  EXPECT_EQ(build_error(two_parents), HolarchyErrc::cycle_detected);
}

TEST(Holarchy, ValidateReportsCorruptedRepresentative) {
  Holarchy h = build_holarchy(testing::two_districts());
  std::vector<Holon> holons;
  for (const auto& [id, holon] : h.holons()) holons.push_back(holon);
  for (Holon& holon : holons)
    if (holon.id == HolonId{1}) holon.representative = HolonId{20};
  const Holarchy broken = Holarchy::from_parts(h.roles(), holons);

  const auto violations = validate(broken);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].kind, ViolationKind::representative_not_member);
  EXPECT_EQ(violations[0].holon, HolonId{1});
}

TEST(Holarchy, HigherUpAndVisibleCommunity) {
  const Holarchy h = build_holarchy(testing::two_districts());
  EXPECT_EQ(higher_up_of(h, HolonId{1}), HolonId{0});
  EXPECT_FALSE(higher_up_of(h, HolonId{0}).has_value());
  EXPECT_THROW((void)higher_up_of(h, HolonId{10}), HolarchyError);

  EXPECT_EQ(visible_community_of(h, HolonId{10}), (std::set<HolonId>{HolonId{10}, HolonId{11}}));
  EXPECT_EQ(visible_community_of(h, HolonId{0}), (std::set<HolonId>{HolonId{0}}));
}

TEST(Holarchy, CapabilitiesAndAncestors) {
  const Holarchy h = build_holarchy(testing::two_districts());
  EXPECT_EQ(h.capabilities_of(HolonId{2}), (std::set<RoleId>{RoleId{0}, RoleId{2}}));
  EXPECT_EQ(h.capabilities_of(HolonId{0}), (std::set<RoleId>{RoleId{0}, RoleId{1}, RoleId{2}}));
  EXPECT_TRUE(h.is_in_subtree(HolonId{21}, HolonId{2}));
  EXPECT_FALSE(h.is_in_subtree(HolonId{21}, HolonId{1}));

  const std::vector<HolonId> pair{HolonId{10}, HolonId{11}};
  EXPECT_EQ(h.lowest_common_ancestor(pair), HolonId{1});
  const std::vector<HolonId> across{HolonId{10}, HolonId{21}};
  EXPECT_EQ(h.lowest_common_ancestor(across), HolonId{0});
  EXPECT_EQ(h.next_free_id(), HolonId{22});
}

TEST(Holarchy, PermanentCompositeAddsAffiliationNotParent) {
  const Holarchy h = build_holarchy(testing::two_districts());
  Holon soc;
  soc.id = h.next_free_id();
  soc.kind = HolonKind::composite;
  soc.members = {HolonId{10}, HolonId{20}};
  soc.representative = HolonId{10};
  soc.origin = Origin::permanentified;
  const Holarchy grown = h.with_composite(soc, HolonId{0});

  EXPECT_TRUE(validate(grown).empty());
  EXPECT_EQ(grown.parent_of(HolonId{10}), HolonId{1});
  EXPECT_EQ(grown.parent_of(soc.id), HolonId{0});
  EXPECT_EQ(grown.affiliations_of(HolonId{20}), std::vector<HolonId>{soc.id});
  EXPECT_EQ(grown.without_composite(soc.id), h);
}

TEST(Holarchy, SiblingVisibilityMatchesDirectScan) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const HolarchySpec spec = oracle::random_holarchy(rng);
    const Holarchy h = build_holarchy(spec);
    for (const auto& [id, holon] : h.holons()) {
      std::set<std::uint64_t> got;
      for (HolonId v : visible_community_of(h, id)) got.insert(v.value());
      EXPECT_EQ(got, oracle::sibling_scan(spec, id.value())) << "holon " << id;
    }
  }
}

// Random structural corruption; the library must agree with the reference validity check.
HolarchySpec corrupt(HolarchySpec spec, std::mt19937_64& rng) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::vector<std::size_t> comps;
  for (std::size_t i = 0; i < spec.holons.size(); ++i)
    if (spec.holons[i].kind == HolonKind::composite) comps.push_back(i);
  HolonSpec& c = spec.holons[comps[pick(comps.size())]];
  HolonSpec& any = spec.holons[pick(spec.holons.size())];
  switch (pick(8)) {
    case 0:
      break;  // untouched
    case 1:
      c.members.push_back(any.id);  // second parent, self-membership or cycle
      break;
    case 2:
      c.representative = any.id;
      break;
    case 3:
      any.id = spec.holons[pick(spec.holons.size())].id;
      break;
    case 4:
      if (any.kind == HolonKind::atomic) any.capabilities.push_back(RoleId{40});
      break;
    case 5:
      c.members.push_back(HolonId{999});
      break;
    case 6:
      if (any.kind == HolonKind::atomic) any.members.push_back(c.id);
      break;
    default:
      c.members.clear();
      c.representative.reset();
      break;
  }
  return spec;
}

TEST(Holarchy, ValidityAgreesWithReferenceOnRandomHolarchies) {
  std::mt19937_64 rng(2024);
  int valid = 0;
  for (int i = 0; i < 300; ++i) {
    const HolarchySpec spec = corrupt(oracle::random_holarchy(rng), rng);
    bool built = true;
    try {
      (void)build_holarchy(spec);
    } catch (const HolarchyError&) {
      built = false;
    }
    ASSERT_EQ(built, oracle::spec_is_valid(spec)) << "case " << i;
    valid += built ? 1 : 0;
  }
  EXPECT_GT(valid, 30);
  EXPECT_LT(valid, 290);
}

TEST(Holarchy, GeneratedHolarchiesRespectShape) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Holarchy h = build_holarchy(oracle::random_holarchy(rng));
    EXPECT_LE(h.depth(), 4u);
    EXPECT_LE(h.atomic_holons().size(), 12u);
    EXPECT_LE(h.composite_holons().size(), 6u);
  }
}

}  // namespace
}  // namespace fso
