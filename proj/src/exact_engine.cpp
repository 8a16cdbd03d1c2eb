#include "montyhall/exact_engine.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "montyhall/errors.hpp"

namespace monty {

double JointDistribution::total_mass() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.mass;
  return s;
}

namespace {

// Upper bound on the joint table size without materializing default cells.
double estimate_entries(const GameModel& model) {
  const int n = model.config.n_doors;
  const int k = model.config.k_opened;
  double total = 0.0;
  for (Door c = 1; c <= n; ++c) {
    if (model.team.car_placement.prob(c) == 0.0) continue;
    for (Door p = 1; p <= n; ++p) {
      if (model.player.pick.prob(p) == 0.0) continue;
      auto it = model.team.open_rule.find({c, p});
      const double open_cells = (it != model.team.open_rule.end())
                                    ? static_cast<double>(it->second.size())
                                    : binomial(c == p ? n - 1 : n - 2, k);
      total += open_cells * (n - k);
    }
  }
  return total;
}

void check_observation(const GameConfig& config, Door pick, const DoorSet& opened) {
  if (pick < 1 || pick > config.n_doors)
    throw InvalidArgument("pick " + std::to_string(pick) + " out of range");
  if (opened.size() != config.k_opened)
    throw InvalidArgument("observation opens " + std::to_string(opened.size()) +
                          " doors, config expects " +
                          std::to_string(config.k_opened));
  if (opened.contains(pick))
    throw InvalidArgument("observation opens the picked door " +
                          std::to_string(pick));
  for (Door d : opened.doors())
    if (d < 1 || d > config.n_doors)
      throw InvalidArgument("observation opens door " + std::to_string(d) +
                            " out of range");
}

struct ObservationAccum {
  double obs_mass = 0.0;
  double win_mass = 0.0;
  std::vector<double> car_mass;
};

using ObservationMap = std::map<std::pair<Door, DoorSet>, ObservationAccum>;

ObservationMap accumulate_observations(const JointDistribution& joint) {
  ObservationMap acc;
  for (const auto& e : joint.entries) {
    auto& cell = acc[{e.pick, e.opened}];
    if (cell.car_mass.empty()) cell.car_mass.resize(joint.config.n_doors, 0.0);
    cell.obs_mass += e.mass;
    cell.car_mass[e.car - 1] += e.mass;
    if (e.final_door == e.car) cell.win_mass += e.mass;
  }
  return acc;
}

ConditionalReport report_from_accum(const GameConfig& config, Door pick,
                                    const DoorSet& opened,
                                    const ObservationAccum* cell) {
  ConditionalReport report;
  report.pick = pick;
  report.opened = opened;
  if (cell == nullptr || cell->obs_mass <= 0.0) {
    report.reachable = false;
    report.win_prob = std::nan("");
    return report;
  }
  report.reachable = true;
  report.observation_prob = cell->obs_mass;
  report.win_prob = cell->win_mass / cell->obs_mass;
  report.posterior.weights.resize(config.n_doors);
  for (int i = 0; i < config.n_doors; ++i)
    report.posterior.weights[i] = cell->car_mass[i] / cell->obs_mass;
  return report;
}

}  // namespace

JointDistribution joint_distribution(const GameModel& model, double max_entries) {
  ValidationReport validation = validate_model(model);
  if (!validation.ok()) {
    std::string what = "invalid model:";
    for (const auto& v : validation.violations) what += "\n  " + v;
    throw InvalidArgument(what);
  }
  const double bound = estimate_entries(model);
  if (bound > max_entries) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "joint table needs up to %.6g entries, exceeding cap %.6g",
                  bound, max_entries);
    throw CapExceeded(buf, bound);
  }

  JointDistribution joint;
  joint.config = model.config;
  const int n = model.config.n_doors;
  for (Door c = 1; c <= n; ++c) {
    const double pc = model.team.car_placement.prob(c);
    if (pc == 0.0) continue;
    for (Door p = 1; p <= n; ++p) {
      const double pp = model.player.pick.prob(p);
      if (pp == 0.0) continue;
      for (const auto& [opened, po] : model.open_distribution(c, p)) {
        if (po == 0.0) continue;
        for (const auto& [f, pf] : model.final_distribution(p, opened)) {
          if (pf == 0.0) continue;
          joint.entries.push_back({c, p, opened, f, pc * pp * po * pf});
        }
      }
    }
  }
  return joint;
}

double unconditional_win_prob(const JointDistribution& joint) {
  double win = 0.0;
  for (const auto& e : joint.entries)
    if (e.final_door == e.car) win += e.mass;
  return win;
}

double unconditional_win_prob(const GameModel& model) {
  return unconditional_win_prob(joint_distribution(model));
}

ConditionalReport conditional_win_prob(const JointDistribution& joint, Door pick,
                                       const DoorSet& opened) {
  check_observation(joint.config, pick, opened);
  ObservationAccum cell;
  bool seen = false;
  for (const auto& e : joint.entries) {
    if (e.pick != pick || e.opened != opened) continue;
    if (!seen) {
      cell.car_mass.resize(joint.config.n_doors, 0.0);
      seen = true;
    }
    cell.obs_mass += e.mass;
    cell.car_mass[e.car - 1] += e.mass;
    if (e.final_door == e.car) cell.win_mass += e.mass;
  }
  return report_from_accum(joint.config, pick, opened, seen ? &cell : nullptr);
}

ConditionalReport conditional_win_prob(const GameModel& model, Door pick,
                                       const DoorSet& opened) {
  return conditional_win_prob(joint_distribution(model), pick, opened);
}

DoorDistribution posterior_car_distribution(const JointDistribution& joint,
                                            Door pick, const DoorSet& opened) {
  ConditionalReport report = conditional_win_prob(joint, pick, opened);
  if (!report.reachable)
    throw UnreachableObservation("unreachable observation (p=" +
                                 std::to_string(pick) + ", O={" +
                                 opened.to_string() + "})");
  return report.posterior;
}

DoorDistribution posterior_car_distribution(const GameModel& model, Door pick,
                                            const DoorSet& opened) {
  return posterior_car_distribution(joint_distribution(model), pick, opened);
}

std::vector<double> bayes_posterior_from_odds(
    const std::vector<double>& prior_odds,
    const std::vector<double>& likelihoods) {
  if (prior_odds.size() != likelihoods.size())
    throw InvalidArgument("prior odds and likelihoods have different lengths");
  std::vector<double> posterior(prior_odds.size());
  double total = 0.0;
  for (size_t i = 0; i < prior_odds.size(); ++i) {
    if (prior_odds[i] < 0.0 || likelihoods[i] < 0.0)
      throw InvalidArgument("odds and likelihoods must be non-negative");
    posterior[i] = prior_odds[i] * likelihoods[i];
    total += posterior[i];
  }
  if (total <= 0.0) throw InvalidArgument("zero posterior mass");
  for (double& x : posterior) x /= total;
  return posterior;
}

SymmetryTable symmetry_conditionals(const JointDistribution& joint) {
  SymmetryTable table;
  const ObservationMap acc = accumulate_observations(joint);
  double weighted = 0.0;
  for (const auto& [key, cell] : acc) {
    if (cell.obs_mass <= 0.0) continue;
    SymmetryRow row;
    row.pick = key.first;
    row.opened = key.second;
    row.observation_prob = cell.obs_mass;
    row.win_prob = cell.win_mass / cell.obs_mass;
    weighted += cell.win_mass;
    table.rows.push_back(std::move(row));
  }
  table.weighted_average = weighted;  // sum of Pr(p,O) * Pr(win | p,O)
  table.unconditional = unconditional_win_prob(joint);
  return table;
}

SymmetryTable symmetry_conditionals(const GameModel& model) {
  return symmetry_conditionals(joint_distribution(model));
}

}  // namespace monty
