#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "montyhall/doors.hpp"
#include "montyhall/errors.hpp"

namespace monty {

inline constexpr double kInputTolerance = 1e-12;    // on supplied distributions
inline constexpr double kDerivedTolerance = 1e-9;   // on derived quantities
inline constexpr double kDefaultEnumerationCap = 1e6;

// N doors, of which the host opens k goat doors. k <= N-2 keeps the host
// able to avoid both car and pick while leaving a door to switch to.
struct GameConfig {
  int n_doors = 3;
  int k_opened = 1;

  bool valid() const {
    return n_doors >= 3 && k_opened >= 1 && k_opened <= n_doors - 2;
  }
};

// A probability distribution over door labels 1..N; weights[d-1] = Pr(d).
struct DoorDistribution {
  std::vector<double> weights;

  int n_doors() const { return static_cast<int>(weights.size()); }
  double prob(Door d) const { return weights[d - 1]; }

  static DoorDistribution uniform(int n);
  static DoorDistribution point(int n, Door d);
};

// Distribution cells are sorted ascending by outcome so that iteration,
// inverse-CDF sampling, and serialization share one canonical order.
using OpenDistribution = std::vector<std::pair<DoorSet, double>>;
using FinalDistribution = std::vector<std::pair<Door, double>>;

// The quiz team's side: where the car goes (law of C) and how the host
// picks the opened set given car and pick (law of Q). Cells absent from
// open_rule default to uniform over the legal k-subsets, mirroring the
// model file format.
struct TeamStrategy {
  DoorDistribution car_placement;
  std::map<std::pair<Door, Door>, OpenDistribution> open_rule;
};

// The player's side: the initial pick (law of P) and the final-choice rule
// given pick and opened set. Absent cells default to uniform over the
// unopened doors (staying allowed).
struct PlayerStrategy {
  DoorDistribution pick;
  std::map<std::pair<Door, DoorSet>, FinalDistribution> final_choice;
};

// Full parameterized game. The car location and the pick are independent
// by construction: only their marginals are stored.
struct GameModel {
  GameConfig config;
  TeamStrategy team;
  PlayerStrategy player;

  // Law of the opened set given car c and pick p (explicit cell or the
  // uniform default), ascending by set.
  OpenDistribution open_distribution(Door c, Door p) const;

  // Law of the final door given pick p and opened set O, ascending by door.
  FinalDistribution final_distribution(Door p, const DoorSet& opened) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every invariant (config ranges, normalization within 1e-12,
// support constraints). Reports all violations; never throws.
ValidationReport validate_model(const GameModel& model);

// ---------------------------------------------------------------------------
// Presets

enum class PresetName { kClassicSymmetric, kHostBiased, kHundredDoors, kFixedPick };

struct PresetParams {
  double q = 0.5;      // host-biased: probability of opening the higher door
  int n_doors = 100;   // hundred-doors: N (k = N-2)
};

// Accepts "classic-symmetric" (alias "classic"), "host-biased",
// "hundred-doors", "fixed-pick". Throws InvalidArgument on unknown names
// or q outside [0,1].
GameModel make_preset(const std::string& name, const PresetParams& params = {});
GameModel make_preset(PresetName name, const PresetParams& params = {});

struct PresetInfo {
  std::string name;
  std::string parameters;
  std::string description;
};
std::vector<PresetInfo> list_presets();

// Final-choice policies as explicit rule cells over every legal (p, O).
// "Switch" distributes uniformly over the unopened non-pick doors; for
// k = N-2 that is the single remaining door. "Stay" keeps the pick.
std::map<std::pair<Door, DoorSet>, FinalDistribution> always_switch_rule(
    const GameConfig& config);
std::map<std::pair<Door, DoorSet>, FinalDistribution> always_stay_rule(
    const GameConfig& config);

// ---------------------------------------------------------------------------
// Pure strategies (the matrix-game reduction)

// A complete deterministic player plan: a pick plus a final door for every
// possible opened set. final_by_set is aligned with
// player_observation_sets(config, pick), ascending.
struct PurePlayerStrategy {
  Door pick = 1;
  std::vector<Door> final_by_set;

  std::string describe(const GameConfig& config) const;
};

// A complete deterministic team plan: a car door plus an opened set for
// every pick; opens_by_pick[p-1] is the host's response to pick p.
struct PureTeamStrategy {
  Door car = 1;
  std::vector<DoorSet> opens_by_pick;

  std::string describe(const GameConfig& config) const;
};

// The canonical ascending list of k-subsets of {1..N} \ {pick}.
std::vector<DoorSet> player_observation_sets(const GameConfig& config, Door pick);

// Closed-form strategy-space sizes (as doubles; they feed cap checks).
double player_pure_count(const GameConfig& config);
double team_pure_count(const GameConfig& config);

// Exhaustive duplicate-free enumerations in lexicographic encoding order.
// Throw CapExceeded (carrying the count) when the space exceeds `cap`.
std::vector<PurePlayerStrategy> enumerate_player_pure(
    const GameConfig& config, double cap = kDefaultEnumerationCap);
std::vector<PureTeamStrategy> enumerate_team_pure(
    const GameConfig& config, double cap = kDefaultEnumerationCap);

// Degenerate behavioral embeddings (used by tests and the solver bridge).
PlayerStrategy to_behavioral(const GameConfig& config, const PurePlayerStrategy& s);
TeamStrategy to_behavioral(const GameConfig& config, const PureTeamStrategy& s);

}  // namespace monty
