#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "montyhall/game_model.hpp"
#include "montyhall/rng.hpp"

namespace monty::testutil {

// --------------------------------------------------------------------------
// Independent brute-force oracles for the pure-strategy spaces. These use
// bitmask subset enumeration and string encodings on purpose: they share no
// code with the library's enumerators.

inline std::vector<std::vector<int>> bitmask_k_subsets(int n, int k,
                                                       const std::set<int>& excluded) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> doors;
    bool bad = false;
    for (int d = 1; d <= n; ++d) {
      if (mask & (1 << (d - 1))) {
        doors.push_back(d);
        bad |= excluded.count(d) > 0;
      }
    }
    if (!bad) out.push_back(doors);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string encode_set(const std::vector<int>& doors) {
  std::string s = "{";
  for (int d : doors) s += std::to_string(d) + ";";
  return s + "}";
}

// Every (pick, observation -> final) plan, encoded as a string.
inline std::set<std::string> brute_force_player_plans(int n, int k) {
  std::set<std::string> plans;
  for (int p = 1; p <= n; ++p) {
    const auto sets = bitmask_k_subsets(n, k, {p});
    std::vector<std::vector<int>> finals(sets.size());
    for (size_t i = 0; i < sets.size(); ++i)
      for (int f = 1; f <= n; ++f)
        if (!std::binary_search(sets[i].begin(), sets[i].end(), f))
          finals[i].push_back(f);

    std::vector<size_t> choice(sets.size(), 0);
    while (true) {
      std::string enc = "p" + std::to_string(p);
      for (size_t i = 0; i < sets.size(); ++i)
        enc += encode_set(sets[i]) + "->" + std::to_string(finals[i][choice[i]]);
      plans.insert(enc);
      size_t i = 0;
      while (i < sets.size() && choice[i] + 1 == finals[i].size()) choice[i++] = 0;
      if (i == sets.size()) break;
      ++choice[i];
    }
    if (sets.empty()) plans.insert("p" + std::to_string(p));
  }
  return plans;
}

// Every (car, pick -> opened set) plan, encoded as a string.
inline std::set<std::string> brute_force_team_plans(int n, int k) {
  std::set<std::string> plans;
  for (int c = 1; c <= n; ++c) {
    std::vector<std::vector<std::vector<int>>> options(n);
    for (int p = 1; p <= n; ++p)
      options[p - 1] = bitmask_k_subsets(n, k, {c, p});

    std::vector<size_t> choice(n, 0);
    while (true) {
      std::string enc = "c" + std::to_string(c);
      for (int p = 1; p <= n; ++p) enc += encode_set(options[p - 1][choice[p - 1]]);
      plans.insert(enc);
      int i = 0;
      while (i < n && choice[i] + 1 == options[i].size()) choice[i++] = 0;
      if (i == n) break;
      ++choice[i];
    }
  }
  return plans;
}

inline std::string encode_library_player(const GameConfig& config,
                                         const PurePlayerStrategy& s) {
  std::string enc = "p" + std::to_string(s.pick);
  const auto sets = player_observation_sets(config, s.pick);
  for (size_t i = 0; i < sets.size(); ++i)
    enc += encode_set(sets[i].doors()) + "->" + std::to_string(s.final_by_set[i]);
  return enc;
}

inline std::string encode_library_team(const GameConfig& config,
                                       const PureTeamStrategy& s) {
  std::string enc = "c" + std::to_string(s.car);
  for (int p = 1; p <= config.n_doors; ++p)
    enc += encode_set(s.opens_by_pick[p - 1].doors());
  return enc;
}

// --------------------------------------------------------------------------
// Random valid models for property and fuzz tests.

inline std::vector<double> random_weights(Rng& rng, int n) {
  std::vector<double> w(n);
  if (rng.next_unit() < 0.15) {  // degenerate
    w.assign(n, 0.0);
    w[static_cast<size_t>(rng.next_unit() * n) % n] = 1.0;
    return w;
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    w[i] = (u < 0.25) ? 0.0 : u;  // some zero weights
    total += w[i];
  }
  if (total == 0.0) {
    w[0] = 1.0;
    return w;
  }
  for (double& x : w) x /= total;
  // push rounding residue into the largest weight so the sum is exact
  double sum = 0.0;
  for (double x : w) sum += x;
  auto largest = std::max_element(w.begin(), w.end());
  *largest += 1.0 - sum;
  return w;
}

inline GameModel random_model(Rng& rng, int n_min = 3, int n_max = 5) {
  GameModel model;
  const int n = n_min + static_cast<int>(rng.next_unit() * (n_max - n_min + 1));
  const int k = 1 + static_cast<int>(rng.next_unit() * (n - 2));
  model.config = {std::min(n, n_max), std::min(k, n - 2)};

  model.team.car_placement = {random_weights(rng, model.config.n_doors)};
  model.player.pick = {random_weights(rng, model.config.n_doors)};

  for (Door c = 1; c <= model.config.n_doors; ++c) {
    for (Door p = 1; p <= model.config.n_doors; ++p) {
      if (rng.next_unit() < 0.4) continue;  // keep the uniform default
      auto sets = k_subsets(doors_excluding(model.config.n_doors, {c, p}),
                            model.config.k_opened);
      auto w = random_weights(rng, static_cast<int>(sets.size()));
      OpenDistribution dist;
      for (size_t i = 0; i < sets.size(); ++i) dist.emplace_back(sets[i], w[i]);
      model.team.open_rule.emplace(std::make_pair(c, p), std::move(dist));
    }
  }

  for (Door p = 1; p <= model.config.n_doors; ++p) {
    for (const auto& opened : player_observation_sets(model.config, p)) {
      if (rng.next_unit() < 0.4) continue;
      std::vector<Door> legal;
      for (Door f = 1; f <= model.config.n_doors; ++f)
        if (!opened.contains(f)) legal.push_back(f);
      auto w = random_weights(rng, static_cast<int>(legal.size()));
      FinalDistribution dist;
      for (size_t i = 0; i < legal.size(); ++i) dist.emplace_back(legal[i], w[i]);
      model.player.final_choice.emplace(std::make_pair(p, opened), std::move(dist));
    }
  }
  return model;
}

// --------------------------------------------------------------------------
// Door relabeling (perm[d-1] is the new label of door d). Test-only: used to
// exercise the renumbering-invariance of symmetric models.

inline DoorSet relabel(const DoorSet& s, const std::vector<Door>& perm) {
  std::vector<Door> doors;
  for (Door d : s.doors()) doors.push_back(perm[d - 1]);
  return DoorSet(doors);
}

inline GameModel relabel_model(const GameModel& model,
                               const std::vector<Door>& perm) {
  GameModel out;
  out.config = model.config;
  const int n = model.config.n_doors;
  out.team.car_placement.weights.resize(n);
  out.player.pick.weights.resize(n);
  for (Door d = 1; d <= n; ++d) {
    out.team.car_placement.weights[perm[d - 1] - 1] =
        model.team.car_placement.prob(d);
    out.player.pick.weights[perm[d - 1] - 1] = model.player.pick.prob(d);
  }
  for (const auto& [key, dist] : model.team.open_rule) {
    OpenDistribution mapped;
    for (const auto& [opened, prob] : dist)
      mapped.emplace_back(relabel(opened, perm), prob);
    std::sort(mapped.begin(), mapped.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.team.open_rule.emplace(
        std::make_pair(perm[key.first - 1], perm[key.second - 1]),
        std::move(mapped));
  }
  for (const auto& [key, dist] : model.player.final_choice) {
    FinalDistribution mapped;
    for (const auto& [f, prob] : dist) mapped.emplace_back(perm[f - 1], prob);
    std::sort(mapped.begin(), mapped.end());
    out.player.final_choice.emplace(
        std::make_pair(perm[key.first - 1], relabel(key.second, perm)),
        std::move(mapped));
  }
  return out;
}

}  // namespace monty::testutil
