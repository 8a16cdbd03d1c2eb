#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "montyhall/exact_engine.hpp"
#include "montyhall/rng.hpp"
#include "test_util.hpp"

using namespace monty;

namespace {

double entry_mass(const JointDistribution& joint, Door c, Door p,
                  const DoorSet& opened, Door f) {
  double mass = 0.0;
  for (const auto& e : joint.entries)
    if (e.car == c && e.pick == p && e.opened == opened && e.final_door == f)
      mass += e.mass;
  return mass;
}

GameModel classic_stay() {
  GameModel model = make_preset("classic-symmetric");
  model.player.final_choice = always_stay_rule(model.config);
  return model;
}

}  // namespace

TEST_CASE("classic joint masses follow the product rule") {
  const JointDistribution joint = joint_distribution(make_preset("classic-symmetric"));
  // car 1, pick 1, host opens 2, switch to 3: 1/3 * 1/3 * 1/2 * 1
  CHECK(entry_mass(joint, 1, 1, DoorSet({2}), 3) ==
        doctest::Approx(1.0 / 18.0).epsilon(1e-15));
  // forced host: car 2, pick 1 -> open 3, switch lands on 2
  CHECK(entry_mass(joint, 2, 1, DoorSet({3}), 2) ==
        doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(joint.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("joint marginals reproduce the inputs") {
  const GameModel model = make_preset("fixed-pick");
  const JointDistribution joint = joint_distribution(model);
  std::vector<double> pick_marginal(3, 0.0), car_marginal(3, 0.0);
  for (const auto& e : joint.entries) {
    pick_marginal[e.pick - 1] += e.mass;
    car_marginal[e.car - 1] += e.mass;
  }
  CHECK(pick_marginal[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pick_marginal[1] == 0.0);
  CHECK(pick_marginal[2] == 0.0);
  for (int i = 0; i < 3; ++i)
    CHECK(car_marginal[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("joint support avoids the pick, the car, and opened finals") {
  Rng rng(99);
  for (int i = 0; i < 50; ++i) {
    const JointDistribution joint =
        joint_distribution(testutil::random_model(rng));
    for (const auto& e : joint.entries) {
      CHECK_FALSE(e.opened.contains(e.pick));
      CHECK_FALSE(e.opened.contains(e.car));
      CHECK_FALSE(e.opened.contains(e.final_door));
    }
  }
}

TEST_CASE("unconditional win probability: switch 2/3, stay 1/3") {
  CHECK(unconditional_win_prob(make_preset("classic-symmetric")) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(unconditional_win_prob(classic_stay()) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("complement identity: switcher wins iff stayer loses") {
  Rng rng(4242);
  for (int i = 0; i < 20; ++i) {
    // same team strategy and pick, opposite policies
    GameModel switcher = make_preset("host-biased", {.q = rng.next_unit()});
    switcher.player.pick = {testutil::random_weights(rng, 3)};
    GameModel stayer = switcher;
    stayer.player.final_choice = always_stay_rule(stayer.config);
    CHECK(unconditional_win_prob(switcher) + unconditional_win_prob(stayer) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hundred doors: switching wins 99/100") {
  const GameModel model = make_preset("hundred-doors");
  // complement identity: switching wins exactly when the pick missed
  double pick_hits_car = 0.0;
  for (Door d = 1; d <= 100; ++d)
    pick_hits_car +=
        model.team.car_placement.prob(d) * model.player.pick.prob(d);
  CHECK(1.0 - pick_hits_car == doctest::Approx(0.99).epsilon(1e-13));
  CHECK(unconditional_win_prob(model) == doctest::Approx(0.99).epsilon(1e-13));
}

TEST_CASE("classic conditional at p=1, O={3} is 2/3") {
  const ConditionalReport report =
      conditional_win_prob(make_preset("classic-symmetric"), 1, DoorSet({3}));
  CHECK(report.reachable);
  CHECK(report.win_prob == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(report.observation_prob == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  REQUIRE(report.posterior.weights.size() == 3);
  CHECK(report.posterior.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(report.posterior.weights[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(report.posterior.weights[2] == 0.0);
}

TEST_CASE("biased host conditionals follow 1/(1+q)") {
  for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CAPTURE(q);
    const GameModel model = make_preset("host-biased", {.q = q});
    const ConditionalReport at3 = conditional_win_prob(model, 1, DoorSet({3}));
    CHECK(at3.win_prob == doctest::Approx(1.0 / (1.0 + q)).epsilon(1e-12));
    const auto posterior = posterior_car_distribution(model, 1, DoorSet({3}));
    CHECK(posterior.weights[0] == doctest::Approx(q / (1.0 + q)).epsilon(1e-12));
    CHECK(posterior.weights[1] == doctest::Approx(1.0 / (1.0 + q)).epsilon(1e-12));
    CHECK(posterior.weights[2] == 0.0);
    // the mirror observation
    const ConditionalReport at2 = conditional_win_prob(model, 1, DoorSet({2}));
    CHECK(at2.win_prob == doctest::Approx(1.0 / (2.0 - q)).epsilon(1e-12));
  }
}

TEST_CASE("deterministic policy: win prob is the posterior mass on its target") {
  for (double q : {0.0, 0.3, 0.7}) {
    const GameModel model = make_preset("host-biased", {.q = q});
    for (Door p = 1; p <= 3; ++p) {
      for (const auto& opened : player_observation_sets(model.config, p)) {
        const ConditionalReport report = conditional_win_prob(model, p, opened);
        if (!report.reachable) continue;
        const FinalDistribution final = model.final_distribution(p, opened);
        REQUIRE(final.size() == 1);  // always-switch is deterministic
        CHECK(report.win_prob ==
              doctest::Approx(report.posterior.prob(final[0].first))
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("unreachable observations are flagged, not computed") {
  const GameModel model = make_preset("fixed-pick");
  const ConditionalReport report = conditional_win_prob(model, 2, DoorSet({3}));
  CHECK_FALSE(report.reachable);
  CHECK(std::isnan(report.win_prob));
  CHECK(report.posterior.weights.empty());
  CHECK_THROWS_AS(posterior_car_distribution(model, 2, DoorSet({3})),
                  UnreachableObservation);
}

TEST_CASE("illegal observations are rejected up front") {
  const GameModel model = make_preset("classic-symmetric");
  CHECK_THROWS_AS(conditional_win_prob(model, 1, DoorSet({1})), InvalidArgument);
  CHECK_THROWS_AS(conditional_win_prob(model, 1, DoorSet({2, 3})), InvalidArgument);
  CHECK_THROWS_AS(conditional_win_prob(model, 4, DoorSet({3})), InvalidArgument);
  CHECK_THROWS_AS(conditional_win_prob(model, 1, DoorSet({9})), InvalidArgument);
}

TEST_CASE("posterior puts no mass on opened doors") {
  Rng rng(555);
  for (int i = 0; i < 40; ++i) {
    const GameModel model = testutil::random_model(rng);
    const JointDistribution joint = joint_distribution(model);
    for (const auto& row : symmetry_conditionals(joint).rows) {
      const auto posterior =
          posterior_car_distribution(joint, row.pick, row.opened);
      for (Door d : row.opened.doors()) CHECK(posterior.weights[d - 1] == 0.0);
      double total = 0.0;
      for (double w : posterior.weights) total += w;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("odds-form Bayes reproduces the 1/2 : 1 : 0 posterior") {
  const auto posterior = bayes_posterior_from_odds({1, 1, 1}, {0.5, 1, 0});
  REQUIRE(posterior.size() == 3);
  CHECK(posterior[0] == 1.0 / 3.0);
  CHECK(posterior[1] == 2.0 / 3.0);
  CHECK(posterior[2] == 0.0);
}

TEST_CASE("odds-form Bayes: identity likelihood returns the prior") {
  const auto posterior = bayes_posterior_from_odds({0.2, 0.3, 0.5}, {7, 7, 7});
  CHECK(posterior[0] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(posterior[1] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(posterior[2] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("odds-form Bayes is scale invariant") {
  const auto base = bayes_posterior_from_odds({2, 2, 2}, {1, 2, 0});
  CHECK(base[0] == 1.0 / 3.0);
  CHECK(base[1] == 2.0 / 3.0);
  CHECK(base[2] == 0.0);
  Rng rng(31415);
  for (int i = 0; i < 50; ++i) {
    const double alpha = 0.01 + 10 * rng.next_unit();
    const double beta = 0.01 + 10 * rng.next_unit();
    std::vector<double> prior{0.5, 1.5, 1.0}, lik{0.25, 1.0, 0.5};
    const auto reference = bayes_posterior_from_odds(prior, lik);
    for (double& x : prior) x *= alpha;
    for (double& x : lik) x *= beta;
    const auto scaled = bayes_posterior_from_odds(prior, lik);
    for (size_t j = 0; j < reference.size(); ++j)
      CHECK(scaled[j] == doctest::Approx(reference[j]).epsilon(1e-12));
  }
}

TEST_CASE("odds-form Bayes error paths") {
  CHECK_THROWS_AS(bayes_posterior_from_odds({1, 1}, {1, 1, 1}), InvalidArgument);
  CHECK_THROWS_WITH_AS(bayes_posterior_from_odds({1, 0}, {0, 1}),
                       "zero posterior mass", InvalidArgument);
  CHECK_THROWS_AS(bayes_posterior_from_odds({-1, 1}, {1, 1}), InvalidArgument);
}

TEST_CASE("symmetric classic model: six equal conditionals") {
  const SymmetryTable table = symmetry_conditionals(make_preset("classic-symmetric"));
  REQUIRE(table.rows.size() == 6);
  for (const auto& row : table.rows) {
    CHECK(row.win_prob == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(row.observation_prob == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  }
  for (size_t i = 1; i < table.rows.size(); ++i)
    CHECK(std::abs(table.rows[i].win_prob - table.rows[0].win_prob) <= 1e-12);
  CHECK(table.weighted_average ==
        doctest::Approx(table.unconditional).epsilon(1e-10));
}

TEST_CASE("fully biased host: conditionals 1/2 and 1 average to 2/3") {
  GameModel model = make_preset("host-biased", {.q = 1.0});
  model.player.pick = DoorDistribution::point(3, 1);
  const SymmetryTable table = symmetry_conditionals(model);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].opened == DoorSet({2}));
  CHECK(table.rows[0].win_prob == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(table.rows[1].opened == DoorSet({3}));
  CHECK(table.rows[1].win_prob == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(table.weighted_average == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("law of total probability holds on random models") {
  Rng rng(2718);
  for (int i = 0; i < 100; ++i) {
    const JointDistribution joint =
        joint_distribution(testutil::random_model(rng));
    const SymmetryTable table = symmetry_conditionals(joint);
    CHECK(table.weighted_average ==
          doctest::Approx(table.unconditional).epsilon(1e-10));
    double obs_total = 0.0;
    for (const auto& row : table.rows) obs_total += row.observation_prob;
    CHECK(obs_total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("posterior agrees with the odds-form route on random models") {
  Rng rng(1618);
  for (int i = 0; i < 60; ++i) {
    const GameModel model = testutil::random_model(rng);
    const JointDistribution joint = joint_distribution(model);
    for (const auto& row : symmetry_conditionals(joint).rows) {
      // prior: car placement; likelihood: open rule at (c, pick)
      std::vector<double> prior(model.config.n_doors), lik(model.config.n_doors);
      for (Door c = 1; c <= model.config.n_doors; ++c) {
        prior[c - 1] = model.team.car_placement.prob(c);
        lik[c - 1] = 0.0;
        if (row.opened.contains(c)) continue;
        for (const auto& [opened, prob] : model.open_distribution(c, row.pick))
          if (opened == row.opened) lik[c - 1] = prob;
      }
      const auto via_odds = bayes_posterior_from_odds(prior, lik);
      const auto via_joint = posterior_car_distribution(joint, row.pick, row.opened);
      for (int d = 0; d < model.config.n_doors; ++d)
        CHECK(via_joint.weights[d] ==
              doctest::Approx(via_odds[d]).epsilon(1e-10));
    }
  }
}

TEST_CASE("door relabeling carries conditionals along") {
  const GameModel model = make_preset("host-biased", {.q = 0.8});
  const std::vector<Door> perm{3, 1, 2};  // door d -> perm[d-1]
  const GameModel relabeled = testutil::relabel_model(model, perm);
  CHECK(validate_model(relabeled).ok());
  CHECK(unconditional_win_prob(relabeled) ==
        doctest::Approx(unconditional_win_prob(model)).epsilon(1e-12));
  const auto before = conditional_win_prob(model, 1, DoorSet({3}));
  const auto after = conditional_win_prob(relabeled, perm[0], DoorSet({perm[2]}));
  CHECK(after.win_prob == doctest::Approx(before.win_prob).epsilon(1e-12));
}

TEST_CASE("joint table cap refuses oversized default rules") {
  GameModel model;
  model.config = {30, 14};  // C(28,14) subsets per diagonal cell
  model.team.car_placement = DoorDistribution::uniform(30);
  model.player.pick = DoorDistribution::uniform(30);
  CHECK_THROWS_AS(joint_distribution(model), CapExceeded);
}
