#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "fso/evolution.hpp"

namespace fso {
namespace {

Son son_of(std::string activity, std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> members, Tick formed,
           Tick dissolves) {
  Son s;
  s.activity = std::move(activity);
  for (auto [h, r] : members) s.members.emplace_back(HolonId{h}, RoleId{r});
  s.formed_at = formed;
  s.dissolves_at = dissolves;
  return s;
}

TEST(Evolution, SignatureIgnoresRolesAndOrder) {
  const Son a = son_of("assist", {{20, 2}, {10, 1}}, 0, 5);
  const Son b = son_of("assist", {{10, 2}, {20, 1}}, 3, 8);
  EXPECT_EQ(signature_of(a), signature_of(b));
  EXPECT_EQ(signature_of(a).members, (std::vector<HolonId>{HolonId{10}, HolonId{20}}));
}

TEST(Evolution, FaultWindowIsHalfOpen) {
  EvolutionPolicy policy;
  policy.fault_injection = {{"assist", 40, 70}};
  EXPECT_EQ(policy.outcome_for(son_of("assist", {{1, 0}}, 30, 39)), Outcome::success);
  EXPECT_EQ(policy.outcome_for(son_of("assist", {{1, 0}}, 35, 40)), Outcome::failure);
  EXPECT_EQ(policy.outcome_for(son_of("assist", {{1, 0}}, 65, 70)), Outcome::success);
  EXPECT_EQ(policy.outcome_for(son_of("other", {{1, 0}}, 35, 45)), Outcome::success);
}

TEST(Evolution, RecordOutcomeUpdatesLedger) {
  ExperienceLedger ledger;
  EvolutionPolicy policy;
  policy.strength_increment = 0.5;
  const Son s = son_of("assist", {{10, 1}, {20, 2}, {30, 0}}, 0, 5);
  record_outcome(ledger, s, Outcome::success, 5, policy);
  record_outcome(ledger, s, Outcome::failure, 9, policy);

  const SignatureRecord& rec = ledger.son_outcomes.at(signature_of(s));
  EXPECT_EQ(rec.successes, 1u);
  EXPECT_EQ(rec.failures, 1u);
  EXPECT_EQ(rec.last_seen, 9);
  EXPECT_EQ(ledger.holon_perf.at(HolonId{20}).completed, 1u);
  EXPECT_EQ(ledger.holon_perf.at(HolonId{20}).failed, 1u);
  EXPECT_EQ(ledger.failure_ticks.at(signature_of(s).members), std::vector<Tick>{9});
}

TEST(Evolution, ConnectionStrengthIsSymmetric) {
  ExperienceLedger ledger;
  const EvolutionPolicy policy;
  record_outcome(ledger, son_of("a", {{3, 0}, {8, 1}}, 0, 1), Outcome::success, 1, policy);
  record_outcome(ledger, son_of("b", {{8, 0}, {3, 1}}, 1, 2), Outcome::success, 2, policy);
  EXPECT_DOUBLE_EQ(connection_strength(ledger, HolonId{3}, HolonId{8}), 2.0);
  EXPECT_DOUBLE_EQ(connection_strength(ledger, HolonId{8}, HolonId{3}), 2.0);
  EXPECT_DOUBLE_EQ(connection_strength(ledger, HolonId{3}, HolonId{4}), 0.0);
}

TEST(Evolution, PermanentifiesAtThresholdOnce) {
  const Holarchy h = build_holarchy(testing::two_districts());
  ExperienceLedger ledger;
  EvolutionPolicy policy;
  policy.permanentify_threshold = 3;
  const Son s = son_of("assist", {{11, 1}, {20, 2}}, 0, 5);

  for (int i = 0; i < 2; ++i) record_outcome(ledger, s, Outcome::success, 5 + i, policy);
  EXPECT_TRUE(maybe_permanentify(ledger, h, policy, 6).created.empty());

  record_outcome(ledger, s, Outcome::success, 7, policy);
  const PermanentifyResult r = maybe_permanentify(ledger, h, policy, 7);
  ASSERT_EQ(r.created.size(), 1u);
  const CreatedSoc& c = r.created[0];
  EXPECT_EQ(c.id, HolonId{22});
  EXPECT_EQ(c.parent, HolonId{0});
  EXPECT_TRUE(validate(r.holarchy).empty());
  EXPECT_EQ(r.holarchy.at(c.id).origin, Origin::permanentified);
  EXPECT_EQ(r.holarchy.at(c.id).created_at, 7);
  EXPECT_EQ(r.holarchy.parent_of(HolonId{11}), HolonId{1});

  record_outcome(ledger, s, Outcome::success, 8, policy);
  EXPECT_TRUE(maybe_permanentify(ledger, r.holarchy, policy, 8).created.empty());
}

TEST(Evolution, TeamsInsideOneSocAttachThere) {
  const Holarchy h = build_holarchy(testing::two_districts());
  ExperienceLedger ledger;
  EvolutionPolicy policy;
  policy.permanentify_threshold = 1;
  // Same members as SoC 1: nothing new to create.
  record_outcome(ledger, son_of("x", {{10, 0}, {11, 1}}, 0, 1), Outcome::success, 1, policy);
  EXPECT_TRUE(maybe_permanentify(ledger, h, policy, 1).created.empty());
  // A single actor is never a community.
  record_outcome(ledger, son_of("y", {{21, 0}}, 0, 1), Outcome::success, 1, policy);
  EXPECT_TRUE(maybe_permanentify(ledger, h, policy, 1).created.empty());
}

TEST(Evolution, PrunesOnRecentFailuresOnly) {
  const Holarchy h = build_holarchy(testing::two_districts());
  ExperienceLedger ledger;
  EvolutionPolicy policy;
  policy.permanentify_threshold = 1;
  policy.prune_failure_threshold = 2;
  policy.prune_window = 50;
  const Son s = son_of("assist", {{11, 1}, {20, 2}}, 0, 5);

  record_outcome(ledger, s, Outcome::failure, 3, policy);  // before the SoC exists
  record_outcome(ledger, s, Outcome::success, 5, policy);
  const PermanentifyResult grown = maybe_permanentify(ledger, h, policy, 5);
  ASSERT_EQ(grown.created.size(), 1u);

  record_outcome(ledger, s, Outcome::failure, 10, policy);
  EXPECT_TRUE(maybe_prune(ledger, grown.holarchy, policy, 10).removed.empty());

  record_outcome(ledger, s, Outcome::failure, 70, policy);  // 10 is outside (20, 70]
  EXPECT_TRUE(maybe_prune(ledger, grown.holarchy, policy, 70).removed.empty());

  record_outcome(ledger, s, Outcome::failure, 80, policy);
  const PruneResult pruned = maybe_prune(ledger, grown.holarchy, policy, 80);
  ASSERT_EQ(pruned.removed.size(), 1u);
  EXPECT_EQ(pruned.removed[0].failures, 2u);
  EXPECT_EQ(pruned.holarchy, h);
}

TEST(Evolution, InstitutionalSocsAreNeverPruned) {
  const Holarchy h = build_holarchy(testing::two_districts());
  ExperienceLedger ledger;
  EvolutionPolicy policy;
  policy.prune_failure_threshold = 1;
  for (Tick t = 1; t <= 5; ++t)
    record_outcome(ledger, son_of("x", {{10, 0}, {11, 1}}, t - 1, t), Outcome::failure, t, policy);
  EXPECT_TRUE(maybe_prune(ledger, h, policy, 5).removed.empty());
}

}  // namespace
}  // namespace fso
