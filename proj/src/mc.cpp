#include "montyhall/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "montyhall/errors.hpp"
#include "montyhall/exact_engine.hpp"
#include "montyhall/rng.hpp"

namespace monty {

namespace {

// Model compiled to cumulative tables so a play is four inverse-CDF walks.
// Outcomes are laid out in ascending door / set order.
class CompiledSampler {
 public:
  explicit CompiledSampler(const GameModel& model) : n_(model.config.n_doors) {
    ValidationReport validation = validate_model(model);
    if (!validation.ok())
      throw InvalidArgument("invalid model: " + validation.violations.front());

    car_ = compact_cumulative(model.team.car_placement.weights);
    pick_ = compact_cumulative(model.player.pick.weights);

    open_cells_.resize(static_cast<size_t>(n_) * n_);
    for (Door c = 1; c <= n_; ++c) {
      if (model.team.car_placement.prob(c) == 0.0) continue;
      for (Door p = 1; p <= n_; ++p) {
        if (model.player.pick.prob(p) == 0.0) continue;
        OpenCell& cell = open_cells_[cell_index(c, p)];
        double running = 0.0;
        for (const auto& [opened, prob] : model.open_distribution(c, p)) {
          if (prob == 0.0) continue;
          running += prob;
          cell.cum.push_back(running);
          cell.obs_id.push_back(observation_id(p, opened, model));
        }
      }
    }
  }

  struct Play {
    Door car, pick, final_door;
    int obs_id;
    bool win;
  };

  Play sample(Rng& rng) const {
    Play play;
    play.car = car_.door[pick_index(car_.cum, rng.next_unit())];
    play.pick = pick_.door[pick_index(pick_.cum, rng.next_unit())];
    const OpenCell& open_cell = open_cells_[cell_index(play.car, play.pick)];
    play.obs_id = open_cell.obs_id[pick_index(open_cell.cum, rng.next_unit())];
    const Observation& obs = observations_[play.obs_id];
    const FinalCell& final_cell = final_cells_[play.obs_id];
    play.final_door = final_cell.door[pick_index(final_cell.cum, rng.next_unit())];
    play.win = (play.final_door == play.car);

    // support constraints hold for every sampled play
    if (obs.opened.contains(play.car) || obs.opened.contains(play.pick) ||
        obs.opened.contains(play.final_door))
      throw std::logic_error("sampled play violates support constraints");
    return play;
  }

  int observation_count() const { return static_cast<int>(observations_.size()); }
  Door observation_pick(int id) const { return observations_[id].pick; }
  const DoorSet& observation_set(int id) const { return observations_[id].opened; }

 private:
  struct Observation {
    Door pick;
    DoorSet opened;
  };
  struct OpenCell {
    std::vector<double> cum;
    std::vector<int> obs_id;
  };
  struct FinalCell {
    std::vector<double> cum;
    std::vector<Door> door;
  };

  struct DoorTable {
    std::vector<double> cum;
    std::vector<Door> door;
  };

  // zero-weight doors are dropped so the rounded-down tail of the running
  // sum can only select a positive-mass outcome
  static DoorTable compact_cumulative(const std::vector<double>& w) {
    DoorTable table;
    double running = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 0.0) continue;
      running += w[i];
      table.cum.push_back(running);
      table.door.push_back(static_cast<Door>(i + 1));
    }
    return table;
  }

  static int pick_index(const std::vector<double>& cum, double u) {
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;  // guard the < 1 tail of a rounded-down sum
    return static_cast<int>(it - cum.begin());
  }

  size_t cell_index(Door c, Door p) const {
    return static_cast<size_t>(c - 1) * n_ + (p - 1);
  }

  int observation_id(Door p, const DoorSet& opened, const GameModel& model) {
    auto [it, inserted] =
        obs_lookup_.try_emplace(std::make_pair(p, opened),
                                static_cast<int>(observations_.size()));
    if (inserted) {
      observations_.push_back({p, opened});
      FinalCell cell;
      double running = 0.0;
      for (const auto& [f, prob] : model.final_distribution(p, opened)) {
        if (prob == 0.0) continue;
        running += prob;
        cell.cum.push_back(running);
        cell.door.push_back(f);
      }
      final_cells_.push_back(std::move(cell));
    }
    return it->second;
  }

  int n_;
  DoorTable car_, pick_;
  std::vector<OpenCell> open_cells_;
  std::vector<Observation> observations_;
  std::vector<FinalCell> final_cells_;
  std::map<std::pair<Door, DoorSet>, int> obs_lookup_;
};

struct ShardAccum {
  uint64_t wins = 0;
  std::vector<ObservationTally> by_obs;
};

ShardAccum run_shard(const CompiledSampler& sampler, uint64_t plays,
                     uint64_t seed) {
  ShardAccum acc;
  acc.by_obs.resize(sampler.observation_count());
  Rng rng(seed);
  for (uint64_t t = 0; t < plays; ++t) {
    const auto play = sampler.sample(rng);
    acc.wins += play.win;
    acc.by_obs[play.obs_id].plays++;
    acc.by_obs[play.obs_id].wins += play.win;
  }
  return acc;
}

}  // namespace

SimResult simulate(const GameModel& model, uint64_t n_plays, uint64_t seed,
                   int shards) {
  if (n_plays < 1) throw InvalidArgument("n_plays must be >= 1");
  if (shards < 1) throw InvalidArgument("shards must be >= 1");
  const CompiledSampler sampler(model);

  SimResult result;
  result.n_plays = n_plays;
  result.seed = seed;
  result.generator = kGeneratorId;
  result.shards = shards;

  std::vector<ObservationTally> merged(sampler.observation_count());
  if (shards == 1) {
    ShardAccum acc = run_shard(sampler, n_plays, seed);
    result.wins = acc.wins;
    merged = std::move(acc.by_obs);
  } else {
    std::vector<ShardAccum> accs(shards);
    std::vector<uint64_t> seeds(shards);
    std::vector<uint64_t> counts(shards);
    for (int s = 0; s < shards; ++s) {
      seeds[s] = shard_seed(seed, s);
      counts[s] = n_plays / shards +
                  (static_cast<uint64_t>(s) < n_plays % shards ? 1 : 0);
    }
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < shards; ++s)
      accs[s] = run_shard(sampler, counts[s], seeds[s]);

    for (int s = 0; s < shards; ++s) {  // merge in shard order
      result.wins += accs[s].wins;
      for (size_t i = 0; i < merged.size(); ++i) {
        merged[i].plays += accs[s].by_obs[i].plays;
        merged[i].wins += accs[s].by_obs[i].wins;
      }
    }
    result.shard_seeds = std::move(seeds);
  }

  result.estimate = static_cast<double>(result.wins) / n_plays;
  result.std_error =
      std::sqrt(result.estimate * (1.0 - result.estimate) / n_plays);
  for (int id = 0; id < sampler.observation_count(); ++id) {
    if (merged[id].plays == 0) continue;
    result.tallies.emplace(
        std::make_pair(sampler.observation_pick(id), sampler.observation_set(id)),
        merged[id]);
  }
  return result;
}

namespace {

// z-score with the exact probability in the denominator; returns false when
// the normal approximation has no business being applied.
bool z_score(double empirical, double exact, uint64_t plays, double& z) {
  const double variance_scale = exact * (1.0 - exact);
  if (plays == 0) return false;
  if (variance_scale * static_cast<double>(plays) < 9.0) {
    z = (empirical == exact) ? 0.0 : std::numeric_limits<double>::infinity();
    return false;
  }
  z = (empirical - exact) / std::sqrt(variance_scale / plays);
  return true;
}

}  // namespace

bool ComparisonReport::any_flagged() const {
  if (overall_flagged) return true;
  for (const auto& o : observations)
    if (o.flagged) return true;
  return false;
}

ComparisonReport compare_exact(const GameModel& model, uint64_t n_plays,
                               uint64_t seed, int shards) {
  ComparisonReport report;
  report.sim = simulate(model, n_plays, seed, shards);

  const JointDistribution joint = joint_distribution(model);
  const SymmetryTable exact_table = symmetry_conditionals(joint);
  report.exact_unconditional = exact_table.unconditional;

  report.overall_low_sample = !z_score(report.sim.estimate,
                                       report.exact_unconditional, n_plays,
                                       report.z_overall);
  report.overall_flagged =
      !report.overall_low_sample && std::abs(report.z_overall) > 4.0;

  std::map<std::pair<Door, DoorSet>, double> exact_by_obs;
  for (const auto& row : exact_table.rows)
    exact_by_obs.emplace(std::make_pair(row.pick, row.opened), row.win_prob);

  for (const auto& [key, tally] : report.sim.tallies) {
    ObservationComparison cmp;
    cmp.pick = key.first;
    cmp.opened = key.second;
    cmp.plays = tally.plays;
    cmp.wins = tally.wins;
    cmp.empirical = static_cast<double>(tally.wins) / tally.plays;
    cmp.exact = exact_by_obs.at(key);
    cmp.low_sample = !z_score(cmp.empirical, cmp.exact, cmp.plays, cmp.z);
    cmp.flagged = !cmp.low_sample && std::abs(cmp.z) > 4.0;
    report.observations.push_back(std::move(cmp));
  }
  return report;
}

}  // namespace monty
