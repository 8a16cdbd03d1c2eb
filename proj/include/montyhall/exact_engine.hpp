#pragma once

#include <vector>

#include "montyhall/game_model.hpp"

namespace monty {

// One atom of the exact joint law of (C, P, O, F).
struct JointEntry {
  Door car = 0;
  Door pick = 0;
  DoorSet opened;
  Door final_door = 0;
  double mass = 0.0;
};

// Exhaustive table of positive-mass outcomes, factorized as
// car(c) * pick(p) * open_rule(O|c,p) * final_choice(f|p,O).
struct JointDistribution {
  GameConfig config;
  std::vector<JointEntry> entries;

  double total_mass() const;
};

// Builds the full joint table. Validates the model first (InvalidArgument
// on violations) and refuses tables whose size would exceed max_entries
// (CapExceeded), which can happen for models that lean on the uniform
// default over a combinatorially large set space.
JointDistribution joint_distribution(const GameModel& model,
                                     double max_entries = 1e7);

// Pr(F = C): the probability the player's final door hides the car.
double unconditional_win_prob(const JointDistribution& joint);
double unconditional_win_prob(const GameModel& model);

struct ConditionalReport {
  Door pick = 0;
  DoorSet opened;
  bool reachable = false;
  double observation_prob = 0.0;  // Pr(P = pick, O = opened)
  double win_prob = 0.0;          // Pr(F = C | P = pick, O = opened)
  DoorDistribution posterior;     // Pr(C = . | P = pick, O = opened)
};

// Conditional win probability and car posterior at one observation.
// Unreachable observations come back with reachable=false and no numbers.
// Throws InvalidArgument when the observation is not legal for the config
// (wrong set size, pick inside the opened set, door out of range).
ConditionalReport conditional_win_prob(const JointDistribution& joint, Door pick,
                                       const DoorSet& opened);
ConditionalReport conditional_win_prob(const GameModel& model, Door pick,
                                       const DoorSet& opened);

// The car posterior alone; throws UnreachableObservation on zero-probability
// observations instead of flagging.
DoorDistribution posterior_car_distribution(const JointDistribution& joint,
                                            Door pick, const DoorSet& opened);
DoorDistribution posterior_car_distribution(const GameModel& model, Door pick,
                                            const DoorSet& opened);

// Normalized componentwise product of prior odds and likelihoods.
// Throws InvalidArgument on length mismatch, negative entries, or an
// all-zero product ("zero posterior mass").
std::vector<double> bayes_posterior_from_odds(
    const std::vector<double>& prior_odds, const std::vector<double>& likelihoods);

// Every reachable observation with its probability and conditional win
// probability; their weighted average equals the unconditional value by
// the law of total probability.
struct SymmetryRow {
  Door pick = 0;
  DoorSet opened;
  double observation_prob = 0.0;
  double win_prob = 0.0;
};

struct SymmetryTable {
  std::vector<SymmetryRow> rows;  // ascending by (pick, opened)
  double weighted_average = 0.0;
  double unconditional = 0.0;
};

SymmetryTable symmetry_conditionals(const JointDistribution& joint);
SymmetryTable symmetry_conditionals(const GameModel& model);

}  // namespace monty
