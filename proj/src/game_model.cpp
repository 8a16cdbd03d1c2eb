#include "montyhall/game_model.hpp"

#include <cmath>
#include <cstdio>

namespace monty {

namespace {

std::string cell_name(Door c, Door p) {
  return "(c=" + std::to_string(c) + ",p=" + std::to_string(p) + ")";
}

std::string obs_name(Door p, const DoorSet& opened) {
  return "(p=" + std::to_string(p) + ",O={" + opened.to_string() + "})";
}

double sum_weights(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w) s += x;
  return s;
}

}  // namespace

DoorDistribution DoorDistribution::uniform(int n) {
  return {std::vector<double>(n, 1.0 / n)};
}

DoorDistribution DoorDistribution::point(int n, Door d) {
  std::vector<double> w(n, 0.0);
  w[d - 1] = 1.0;
  return {std::move(w)};
}

OpenDistribution GameModel::open_distribution(Door c, Door p) const {
  auto it = team.open_rule.find({c, p});
  if (it != team.open_rule.end()) return it->second;
  auto sets = k_subsets(doors_excluding(config.n_doors, {c, p}), config.k_opened);
  OpenDistribution dist;
  dist.reserve(sets.size());
  const double mass = 1.0 / static_cast<double>(sets.size());
  for (auto& s : sets) dist.emplace_back(std::move(s), mass);
  return dist;
}

FinalDistribution GameModel::final_distribution(Door p, const DoorSet& opened) const {
  auto it = player.final_choice.find({p, opened});
  if (it != player.final_choice.end()) return it->second;
  FinalDistribution dist;
  const int legal = config.n_doors - opened.size();
  for (Door f = 1; f <= config.n_doors; ++f) {
    if (!opened.contains(f)) dist.emplace_back(f, 1.0 / legal);
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_door_distribution(const std::string& label, const DoorDistribution& d,
                             int n, std::vector<std::string>& out) {
  if (d.n_doors() != n) {
    out.push_back(label + " has " + std::to_string(d.n_doors()) +
                  " weights, config has " + std::to_string(n) + " doors");
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (d.weights[i] < 0.0)
      out.push_back(label + " weight for door " + std::to_string(i + 1) +
                    " is negative");
  }
  const double s = sum_weights(d.weights);
  if (std::abs(s - 1.0) > kInputTolerance) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", s);
    out.push_back(label + " weights sum to " + buf + ", not 1 (normalization error)");
  }
}

}  // namespace

ValidationReport validate_model(const GameModel& model) {
  ValidationReport report;
  auto& out = report.violations;
  const int n = model.config.n_doors;
  const int k = model.config.k_opened;

  if (!model.config.valid()) {
    out.push_back("config: need N >= 3 and 1 <= k <= N-2, got N=" +
                  std::to_string(n) + ", k=" + std::to_string(k));
    return report;
  }

  check_door_distribution("car_placement", model.team.car_placement, n, out);
  check_door_distribution("pick", model.player.pick, n, out);

  for (const auto& [key, dist] : model.team.open_rule) {
    const auto [c, p] = key;
    if (c < 1 || c > n || p < 1 || p > n) {
      out.push_back("open_rule key " + cell_name(c, p) + " out of range");
      continue;
    }
    double sum = 0.0;
    for (size_t i = 0; i < dist.size(); ++i) {
      const auto& [opened, prob] = dist[i];
      if (prob < 0.0)
        out.push_back("open_rule " + cell_name(c, p) + " has a negative probability");
      sum += prob;
      // support constraints bind only where mass sits
      if (prob > 0.0) {
        if (opened.size() != k)
          out.push_back("open_rule " + cell_name(c, p) + " opens " +
                        std::to_string(opened.size()) + " doors, expected " +
                        std::to_string(k));
        if (opened.contains(c))
          out.push_back("host reveals car at " + cell_name(c, p) + " (O={" +
                        opened.to_string() + "})");
        if (opened.contains(p))
          out.push_back("host opens the picked door at " + cell_name(c, p) +
                        " (O={" + opened.to_string() + "})");
      }
      for (Door d : opened.doors())
        if (d < 1 || d > n)
          out.push_back("open_rule " + cell_name(c, p) + " opens door " +
                        std::to_string(d) + " out of range");
      if (i > 0 && !(dist[i - 1].first < opened))
        out.push_back("open_rule " + cell_name(c, p) +
                      " cell is not in ascending set order");
    }
    if (std::abs(sum - 1.0) > kInputTolerance) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", sum);
      out.push_back("open_rule " + cell_name(c, p) + " sums to " + buf +
                    ", not 1 (normalization error)");
    }
  }

  for (const auto& [key, dist] : model.player.final_choice) {
    const auto& [p, opened] = key;
    const std::string where = obs_name(p, opened);
    if (p < 1 || p > n) {
      out.push_back("final_choice key " + where + " out of range");
      continue;
    }
    if (opened.size() != k || opened.contains(p))
      out.push_back("final_choice key " + where + " is not a legal observation");
    double sum = 0.0;
    for (size_t i = 0; i < dist.size(); ++i) {
      const auto& [f, prob] = dist[i];
      if (prob < 0.0)
        out.push_back("final_choice " + where + " has a negative probability");
      sum += prob;
      if (f < 1 || f > n)
        out.push_back("final_choice " + where + " targets door " +
                      std::to_string(f) + " out of range");
      else if (prob > 0.0 && opened.contains(f))
        out.push_back("final choice lands on an opened door at " + where);
      if (i > 0 && !(dist[i - 1].first < f))
        out.push_back("final_choice " + where + " cell is not in ascending door order");
    }
    if (std::abs(sum - 1.0) > kInputTolerance) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", sum);
      out.push_back("final_choice " + where + " sums to " + buf +
                    ", not 1 (normalization error)");
    }
  }

  return report;
}

// ---------------------------------------------------------------------------
// Presets

std::map<std::pair<Door, DoorSet>, FinalDistribution> always_switch_rule(
    const GameConfig& config) {
  std::map<std::pair<Door, DoorSet>, FinalDistribution> rule;
  for (Door p = 1; p <= config.n_doors; ++p) {
    for (const auto& opened : player_observation_sets(config, p)) {
      FinalDistribution dist;
      const int targets = config.n_doors - config.k_opened - 1;
      for (Door f = 1; f <= config.n_doors; ++f) {
        if (f != p && !opened.contains(f)) dist.emplace_back(f, 1.0 / targets);
      }
      rule.emplace(std::make_pair(p, opened), std::move(dist));
    }
  }
  return rule;
}

std::map<std::pair<Door, DoorSet>, FinalDistribution> always_stay_rule(
    const GameConfig& config) {
  std::map<std::pair<Door, DoorSet>, FinalDistribution> rule;
  for (Door p = 1; p <= config.n_doors; ++p) {
    for (const auto& opened : player_observation_sets(config, p)) {
      rule.emplace(std::make_pair(p, opened), FinalDistribution{{p, 1.0}});
    }
  }
  return rule;
}

namespace {

// Explicit tie-break cells for N=3: when c == p the host chooses between
// the two other doors, opening the higher-numbered one with probability q.
std::map<std::pair<Door, Door>, OpenDistribution> three_door_tiebreak(double q) {
  std::map<std::pair<Door, Door>, OpenDistribution> rule;
  for (Door c = 1; c <= 3; ++c) {
    auto options = doors_excluding(3, {c});
    OpenDistribution dist;
    dist.emplace_back(DoorSet({options[0]}), 1.0 - q);  // lower-numbered door
    dist.emplace_back(DoorSet({options[1]}), q);        // higher-numbered door
    rule.emplace(std::make_pair(c, c), std::move(dist));
  }
  return rule;
}

GameModel classic_with_tiebreak(double q) {
  GameModel model;
  model.config = {3, 1};
  model.team.car_placement = DoorDistribution::uniform(3);
  model.team.open_rule = three_door_tiebreak(q);
  model.player.pick = DoorDistribution::uniform(3);
  model.player.final_choice = always_switch_rule(model.config);
  return model;
}

}  // namespace

GameModel make_preset(PresetName name, const PresetParams& params) {
  switch (name) {
    case PresetName::kClassicSymmetric:
      return classic_with_tiebreak(0.5);
    case PresetName::kHostBiased: {
      if (params.q < 0.0 || params.q > 1.0)
        throw InvalidArgument("host-biased preset needs q in [0,1], got " +
                              std::to_string(params.q));
      return classic_with_tiebreak(params.q);
    }
    case PresetName::kHundredDoors: {
      const int n = params.n_doors;
      if (n < 3)
        throw InvalidArgument("hundred-doors preset needs N >= 3, got " +
                              std::to_string(n));
      // the switch rule materializes N*(N-1) cells holding (N-2)-door sets
      if (n > 200)
        throw InvalidArgument("hundred-doors preset supports N <= 200, got " +
                              std::to_string(n));
      GameModel model;
      model.config = {n, n - 2};
      model.team.car_placement = DoorDistribution::uniform(n);
      model.player.pick = DoorDistribution::uniform(n);
      model.player.final_choice = always_switch_rule(model.config);
      return model;  // open_rule empty: the uniform default is the rule
    }
    case PresetName::kFixedPick: {
      GameModel model = classic_with_tiebreak(0.5);
      model.player.pick = DoorDistribution::point(3, 1);
      return model;
    }
  }
  throw InvalidArgument("unknown preset");
}

GameModel make_preset(const std::string& name, const PresetParams& params) {
  if (name == "classic-symmetric" || name == "classic")
    return make_preset(PresetName::kClassicSymmetric, params);
  if (name == "host-biased") return make_preset(PresetName::kHostBiased, params);
  if (name == "hundred-doors")
    return make_preset(PresetName::kHundredDoors, params);
  if (name == "fixed-pick") return make_preset(PresetName::kFixedPick, params);
  throw InvalidArgument("unknown preset \"" + name +
                        "\" (try: classic-symmetric, host-biased, hundred-doors, "
                        "fixed-pick)");
}

std::vector<PresetInfo> list_presets() {
  return {
      {"classic-symmetric", "",
       "N=3, k=1; uniform car and pick, fair tie-break, always switch"},
      {"host-biased", "q in [0,1] (default 0.5)",
       "classic, but on a tie the host opens the higher-numbered door with "
       "probability q"},
      {"hundred-doors", "N >= 3 (default 100)",
       "N doors, host opens N-2; uniform car, pick and tie-break; always switch"},
      {"fixed-pick", "", "classic with the pick fixed at door 1"},
  };
}

// ---------------------------------------------------------------------------
// Pure strategies

std::vector<DoorSet> player_observation_sets(const GameConfig& config, Door pick) {
  return k_subsets(doors_excluding(config.n_doors, {pick}), config.k_opened);
}

double player_pure_count(const GameConfig& config) {
  const int n = config.n_doors;
  const int k = config.k_opened;
  return n * std::pow(static_cast<double>(n - k), binomial(n - 1, k));
}

double team_pure_count(const GameConfig& config) {
  const int n = config.n_doors;
  const int k = config.k_opened;
  return n * binomial(n - 1, k) * std::pow(binomial(n - 2, k), n - 1);
}

namespace {

void check_cap(const char* side, double count, double cap) {
  if (count > cap) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%s pure-strategy space has %.6g strategies, exceeding the "
                  "enumeration cap %.6g",
                  side, count, cap);
    throw CapExceeded(buf, count);
  }
}

}  // namespace

std::vector<PurePlayerStrategy> enumerate_player_pure(const GameConfig& config,
                                                      double cap) {
  if (!config.valid()) throw InvalidArgument("invalid game config");
  check_cap("player", player_pure_count(config), cap);

  std::vector<PurePlayerStrategy> out;
  out.reserve(static_cast<size_t>(player_pure_count(config)));
  for (Door p = 1; p <= config.n_doors; ++p) {
    const auto sets = player_observation_sets(config, p);
    // legal finals per observation, ascending
    std::vector<std::vector<Door>> options(sets.size());
    for (size_t i = 0; i < sets.size(); ++i) {
      for (Door f = 1; f <= config.n_doors; ++f)
        if (!sets[i].contains(f)) options[i].push_back(f);
    }
    // odometer over the per-observation choices, last digit fastest
    std::vector<size_t> digit(sets.size(), 0);
    while (true) {
      PurePlayerStrategy s;
      s.pick = p;
      s.final_by_set.resize(sets.size());
      for (size_t i = 0; i < sets.size(); ++i)
        s.final_by_set[i] = options[i][digit[i]];
      out.push_back(std::move(s));

      int i = static_cast<int>(sets.size()) - 1;
      while (i >= 0 && digit[i] + 1 == options[i].size()) digit[i--] = 0;
      if (i < 0) break;
      ++digit[i];
    }
  }
  return out;
}

std::vector<PureTeamStrategy> enumerate_team_pure(const GameConfig& config,
                                                  double cap) {
  if (!config.valid()) throw InvalidArgument("invalid game config");
  check_cap("team", team_pure_count(config), cap);

  std::vector<PureTeamStrategy> out;
  out.reserve(static_cast<size_t>(team_pure_count(config)));
  for (Door c = 1; c <= config.n_doors; ++c) {
    std::vector<std::vector<DoorSet>> options(config.n_doors);
    for (Door p = 1; p <= config.n_doors; ++p)
      options[p - 1] =
          k_subsets(doors_excluding(config.n_doors, {c, p}), config.k_opened);

    std::vector<size_t> digit(config.n_doors, 0);
    while (true) {
      PureTeamStrategy s;
      s.car = c;
      s.opens_by_pick.resize(config.n_doors);
      for (int i = 0; i < config.n_doors; ++i)
        s.opens_by_pick[i] = options[i][digit[i]];
      out.push_back(std::move(s));

      int i = config.n_doors - 1;
      while (i >= 0 && digit[i] + 1 == options[i].size()) digit[i--] = 0;
      if (i < 0) break;
      ++digit[i];
    }
  }
  return out;
}

std::string PurePlayerStrategy::describe(const GameConfig& config) const {
  std::string out = "pick " + std::to_string(pick);
  const auto sets = player_observation_sets(config, pick);
  for (size_t i = 0; i < sets.size(); ++i) {
    out += "; {" + sets[i].to_string() + "}->" + std::to_string(final_by_set[i]);
  }
  return out;
}

std::string PureTeamStrategy::describe(const GameConfig& config) const {
  std::string out = "car " + std::to_string(car);
  for (Door p = 1; p <= config.n_doors; ++p) {
    out += "; p=" + std::to_string(p) + " opens {" +
           opens_by_pick[p - 1].to_string() + "}";
  }
  return out;
}

PlayerStrategy to_behavioral(const GameConfig& config, const PurePlayerStrategy& s) {
  PlayerStrategy out;
  out.pick = DoorDistribution::point(config.n_doors, s.pick);
  const auto sets = player_observation_sets(config, s.pick);
  for (size_t i = 0; i < sets.size(); ++i) {
    out.final_choice.emplace(std::make_pair(s.pick, sets[i]),
                             FinalDistribution{{s.final_by_set[i], 1.0}});
  }
  return out;
}

TeamStrategy to_behavioral(const GameConfig& config, const PureTeamStrategy& s) {
  TeamStrategy out;
  out.car_placement = DoorDistribution::point(config.n_doors, s.car);
  for (Door p = 1; p <= config.n_doors; ++p) {
    out.open_rule.emplace(std::make_pair(s.car, p),
                          OpenDistribution{{s.opens_by_pick[p - 1], 1.0}});
  }
  return out;
}

}  // namespace monty
