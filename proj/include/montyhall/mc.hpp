#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "montyhall/game_model.hpp"

namespace monty {

struct ObservationTally {
  uint64_t plays = 0;
  uint64_t wins = 0;
};

struct SimResult {
  uint64_t n_plays = 0;
  uint64_t wins = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  uint64_t seed = 0;
  std::string generator;  // kGeneratorId
  int shards = 1;
  std::vector<uint64_t> shard_seeds;  // derived substream seeds (shards > 1)
  std::map<std::pair<Door, DoorSet>, ObservationTally> tallies;
};

// Samples n_plays games from the model's factorization. shards == 1 is the
// serial reference path: (model, n_plays, seed) fixes every output bit.
// shards > 1 runs independent substreams (seeded by shard_seed(seed, i))
// under OpenMP and merges tallies in shard order, so a sharded run is
// equally reproducible for a fixed shard count, independent of thread
// count; it just draws a different sample than the serial path.
SimResult simulate(const GameModel& model, uint64_t n_plays, uint64_t seed,
                   int shards = 1);

struct ObservationComparison {
  Door pick = 0;
  DoorSet opened;
  uint64_t plays = 0;
  uint64_t wins = 0;
  double empirical = 0.0;
  double exact = 0.0;
  double z = 0.0;
  bool low_sample = false;  // too few plays for the normal approximation
  bool flagged = false;     // |z| > 4 with a trustworthy z
};

struct ComparisonReport {
  SimResult sim;
  double exact_unconditional = 0.0;
  double z_overall = 0.0;
  bool overall_low_sample = false;
  bool overall_flagged = false;
  std::vector<ObservationComparison> observations;

  bool any_flagged() const;
};

// Simulates, then scores the overall estimate against the exact engine's
// unconditional probability and each observation tally against its exact
// conditional, flagging |z| > 4. Standard errors use the exact probability;
// degenerate cases (p in {0,1}, tiny cells) are marked low_sample instead
// of dividing by zero.
ComparisonReport compare_exact(const GameModel& model, uint64_t n_plays,
                               uint64_t seed, int shards = 1);

}  // namespace monty
