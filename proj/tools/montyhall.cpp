// montyhall: exact analysis, game solving, bias sweeps, simulation and an
// interactive play loop for the parameterized three-doors game.
//
// Exit codes: 0 success, 2 usage or model validation, 3 unreachable
// observation, 4 solver failure or enumeration cap, 5 statistical flag.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "montyhall/errors.hpp"
#include "montyhall/exact_engine.hpp"
#include "montyhall/game_model.hpp"
#include "montyhall/mc.hpp"
#include "montyhall/model_io.hpp"
#include "montyhall/rng.hpp"
#include "montyhall/version.hpp"
#include "montyhall/zerosum.hpp"

using json = nlohmann::json;
using namespace monty;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitUnreachable = 3;
constexpr int kExitSolver = 4;
constexpr int kExitFlagged = 5;

std::string fmt9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

uint64_t resolve_seed(std::optional<uint64_t> flag_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv("MONTY_SEED")) {
    char* end = nullptr;
    const uint64_t seed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw InvalidArgument(std::string("MONTY_SEED is not an integer: ") + env);
    return seed;
  }
  std::random_device rd;
  return (static_cast<uint64_t>(rd()) << 32) ^ rd();
}

// ---------------------------------------------------------------------------
// Model source flags shared by analyze / simulate

struct ModelFlags {
  std::string preset;
  std::string model_file;
  std::optional<double> q;
  std::optional<int> doors;
  std::string policy;  // "", "switch", "stay"
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  auto* preset = cmd->add_option("--preset", flags.preset,
                                 "preset name (see `montyhall presets`)");
  auto* file = cmd->add_option("--model", flags.model_file,
                               "model JSON file (schemas/model.schema.json)");
  preset->excludes(file);
  cmd->add_option("--q", flags.q, "host tie-break bias for --preset host-biased");
  cmd->add_option("--doors", flags.doors, "door count for --preset hundred-doors");
  cmd->add_option("--policy", flags.policy,
                  "override the final-choice policy: switch or stay")
      ->check(CLI::IsMember({"switch", "stay"}));
}

// Resolves flags to a model and a params block that replays without the
// original file or preset registry.
json model_params_from_flags(const ModelFlags& flags) {
  json params = json::object();
  GameModel model;
  if (!flags.model_file.empty()) {
    model = load_model_file(flags.model_file);
    params["model_source"] = flags.model_file;
  } else {
    const std::string name = flags.preset.empty() ? "classic-symmetric" : flags.preset;
    PresetParams preset_params;
    if (flags.q) preset_params.q = *flags.q;
    if (flags.doors) preset_params.n_doors = *flags.doors;
    model = make_preset(name, preset_params);
    params["model_source"] = "preset:" + name;
  }
  if (flags.policy == "switch")
    model.player.final_choice = always_switch_rule(model.config);
  else if (flags.policy == "stay")
    model.player.final_choice = always_stay_rule(model.config);

  const ValidationReport report = validate_model(model);
  if (!report.ok()) {
    std::string what = "invalid model:";
    for (const auto& v : report.violations) what += "\n  " + v;
    throw InvalidArgument(what);
  }
  params["model"] = model_to_json(model);
  return params;
}

GameModel model_from_params(const json& params) {
  return model_from_json(params.at("model"));
}

// ---------------------------------------------------------------------------
// analyze

json run_analyze(const json& params) {
  const GameModel model = model_from_params(params);
  const JointDistribution joint = joint_distribution(model);

  json out;
  out["schema"] = "montyhall.analyze";
  out["schema_version"] = 1;
  out["model_source"] = params.value("model_source", "inline");
  out["n_doors"] = model.config.n_doors;
  out["k_opened"] = model.config.k_opened;
  out["unconditional_win_prob"] = unconditional_win_prob(joint);

  if (params.contains("observe")) {
    const auto [pick, opened] =
        parse_observation(params["observe"].get<std::string>());
    const ConditionalReport report = conditional_win_prob(joint, pick, opened);
    if (!report.reachable)
      throw UnreachableObservation("unreachable observation (p=" +
                                   std::to_string(pick) + ", O={" +
                                   opened.to_string() + "})");
    json obs;
    obs["pick"] = report.pick;
    obs["opened"] = report.opened.to_string();
    obs["reachable"] = true;
    obs["observation_prob"] = report.observation_prob;
    obs["win_prob"] = report.win_prob;
    obs["posterior"] = report.posterior.weights;
    out["observation"] = obs;
  }

  if (params.value("all_observations", false)) {
    const SymmetryTable table = symmetry_conditionals(joint);
    json rows = json::array();
    for (const auto& row : table.rows) {
      rows.push_back({{"pick", row.pick},
                      {"opened", row.opened.to_string()},
                      {"observation_prob", row.observation_prob},
                      {"win_prob", row.win_prob}});
    }
    out["symmetry_table"] = {{"rows", rows},
                             {"weighted_average", table.weighted_average},
                             {"unconditional", table.unconditional}};
  }
  return out;
}

void print_analyze_table(const json& out) {
  std::printf("model: %s (N=%d, k=%d)\n",
              out["model_source"].get<std::string>().c_str(),
              out["n_doors"].get<int>(), out["k_opened"].get<int>());
  std::printf("unconditional win probability: %s\n",
              fmt9(out["unconditional_win_prob"].get<double>()).c_str());
  if (out.contains("observation")) {
    const auto& obs = out["observation"];
    std::printf("observation p=%d, O={%s}:\n", obs["pick"].get<int>(),
                obs["opened"].get<std::string>().c_str());
    std::printf("  observation probability:     %s\n",
                fmt9(obs["observation_prob"].get<double>()).c_str());
    std::printf("  conditional win probability: %s\n",
                fmt9(obs["win_prob"].get<double>()).c_str());
    std::printf("  posterior car distribution: ");
    int door = 1;
    for (const auto& w : obs["posterior"])
      std::printf(" door %d: %s", door++, fmt9(w.get<double>()).c_str());
    std::printf("\n");
  }
  if (out.contains("symmetry_table")) {
    std::printf("%-6s %-10s %-16s %s\n", "pick", "opened", "Pr(p,O)",
                "win prob | (p,O)");
    for (const auto& row : out["symmetry_table"]["rows"]) {
      const std::string opened = "{" + row["opened"].get<std::string>() + "}";
      std::printf("%-6d %-10s %-16s %s\n", row["pick"].get<int>(), opened.c_str(),
                  fmt9(row["observation_prob"].get<double>()).c_str(),
                  fmt9(row["win_prob"].get<double>()).c_str());
    }
    std::printf("weighted average: %s (unconditional %s)\n",
                fmt9(out["symmetry_table"]["weighted_average"].get<double>()).c_str(),
                fmt9(out["symmetry_table"]["unconditional"].get<double>()).c_str());
  }
}

void print_analyze_csv(const json& out) {
  if (out.contains("symmetry_table")) {
    std::printf("pick,opened,observation_prob,win_prob\n");
    for (const auto& row : out["symmetry_table"]["rows"])
      std::printf("%d,%s,%.17g,%.17g\n", row["pick"].get<int>(),
                  row["opened"].get<std::string>().c_str(),
                  row["observation_prob"].get<double>(),
                  row["win_prob"].get<double>());
    return;
  }
  std::printf("key,value\n");
  std::printf("unconditional_win_prob,%.17g\n",
              out["unconditional_win_prob"].get<double>());
  if (out.contains("observation")) {
    const auto& obs = out["observation"];
    std::printf("observation,\"p=%d,O=%s\"\n", obs["pick"].get<int>(),
                obs["opened"].get<std::string>().c_str());
    std::printf("observation_prob,%.17g\n", obs["observation_prob"].get<double>());
    std::printf("conditional_win_prob,%.17g\n", obs["win_prob"].get<double>());
    int door = 1;
    for (const auto& w : obs["posterior"])
      std::printf("posterior_door_%d,%.17g\n", door++, w.get<double>());
  }
}

// ---------------------------------------------------------------------------
// solve

json run_solve(const json& params) {
  const GameConfig config{params.at("doors").get<int>(),
                          params.at("open").get<int>()};
  if (!config.valid())
    throw InvalidArgument("need N >= 3 and 1 <= k <= N-2, got N=" +
                          std::to_string(config.n_doors) + ", k=" +
                          std::to_string(config.k_opened));
  const double tol = params.value("tol", 1e-9);
  const double cap = params.value("cap", kDefaultEnumerationCap);
  if (tol <= 0.0) throw InvalidArgument("tolerance must be positive");

  const PayoffMatrix matrix = build_payoff_matrix(config, cap);
  const SolveResult result = solve_minimax(matrix, tol);

  // mass the optimal mix puts on plans that ever stay
  double stay_mass = 0.0, switch_mass = 0.0;
  for (int i = 0; i < matrix.rows(); ++i) {
    const auto& s = matrix.row_strategies[i];
    bool ever_stays = false;
    for (Door f : s.final_by_set) ever_stays |= (f == s.pick);
    (ever_stays ? stay_mass : switch_mass) += result.player_optimal.weights[i];
  }
  const std::string recommendation =
      stay_mass <= 1e-9 ? "switch" : (switch_mass <= 1e-9 ? "stay" : "mixed");

  json out;
  out["schema"] = "montyhall.solve";
  out["schema_version"] = 1;
  out["n_doors"] = config.n_doors;
  out["k_opened"] = config.k_opened;
  out["rows"] = matrix.rows();
  out["cols"] = matrix.cols();
  out["value"] = result.value;
  out["duality_gap"] = result.duality_gap;
  out["tol"] = tol;
  out["player_security"] =
      security_level(matrix, result.player_optimal, Side::kPlayer);
  out["team_security"] = security_level(matrix, result.team_optimal, Side::kTeam);
  out["recommendation"] = recommendation;
  out["stay_mass"] = stay_mass;

  json player = json::array();
  for (int i = 0; i < matrix.rows(); ++i) {
    if (result.player_optimal.weights[i] <= 1e-12) continue;
    player.push_back({{"index", i},
                      {"weight", result.player_optimal.weights[i]},
                      {"strategy", matrix.row_strategies[i].describe(config)}});
  }
  json team = json::array();
  for (int j = 0; j < matrix.cols(); ++j) {
    if (result.team_optimal.weights[j] <= 1e-12) continue;
    team.push_back({{"index", j},
                    {"weight", result.team_optimal.weights[j]},
                    {"strategy", matrix.col_strategies[j].describe(config)}});
  }
  out["player_optimal"] = player;
  out["team_optimal"] = team;
  return out;
}

void print_solve_table(const json& out) {
  std::printf("payoff matrix: %d x %d (N=%d, k=%d)\n", out["rows"].get<int>(),
              out["cols"].get<int>(), out["n_doors"].get<int>(),
              out["k_opened"].get<int>());
  std::printf("game value: %s\n", fmt9(out["value"].get<double>()).c_str());
  std::printf("duality gap: %.3e (tol %.3e)\n", out["duality_gap"].get<double>(),
              out["tol"].get<double>());
  std::printf("security levels: player %s, team %s\n",
              fmt9(out["player_security"].get<double>()).c_str(),
              fmt9(out["team_security"].get<double>()).c_str());
  std::printf("player optimal strategy:\n");
  for (const auto& row : out["player_optimal"])
    std::printf("  %-12s %s\n", fmt9(row["weight"].get<double>()).c_str(),
                row["strategy"].get<std::string>().c_str());
  std::printf("team optimal strategy:\n");
  for (const auto& row : out["team_optimal"])
    std::printf("  %-12s %s\n", fmt9(row["weight"].get<double>()).c_str(),
                row["strategy"].get<std::string>().c_str());
  std::printf("recommendation: %s\n",
              out["recommendation"].get<std::string>().c_str());
}

void print_solve_csv(const json& out) {
  std::printf("key,value\n");
  for (const char* key : {"rows", "cols"})
    std::printf("%s,%d\n", key, out[key].get<int>());
  for (const char* key :
       {"value", "duality_gap", "player_security", "team_security"})
    std::printf("%s,%.17g\n", key, out[key].get<double>());
  std::printf("recommendation,%s\n",
              out["recommendation"].get<std::string>().c_str());
  for (const char* side : {"player_optimal", "team_optimal"})
    for (const auto& row : out[side])
      std::printf("%s,%d,%.17g,\"%s\"\n", side, row["index"].get<int>(),
                  row["weight"].get<double>(),
                  row["strategy"].get<std::string>().c_str());
}

// ---------------------------------------------------------------------------
// simulate

json run_simulate(const json& params) {
  const GameModel model = model_from_params(params);
  const ComparisonReport report =
      compare_exact(model, params.at("n").get<uint64_t>(),
                    params.at("seed").get<uint64_t>(), params.value("shards", 1));

  json out;
  out["schema"] = "montyhall.simulate";
  out["schema_version"] = 1;
  out["model_source"] = params.value("model_source", "inline");
  out["n_plays"] = report.sim.n_plays;
  out["wins"] = report.sim.wins;
  out["estimate"] = report.sim.estimate;
  out["std_error"] = report.sim.std_error;
  out["seed"] = report.sim.seed;
  out["generator"] = report.sim.generator;
  out["shards"] = report.sim.shards;
  if (!report.sim.shard_seeds.empty()) out["shard_seeds"] = report.sim.shard_seeds;
  out["exact_unconditional"] = report.exact_unconditional;
  out["z_overall"] = report.overall_low_sample ? json() : json(report.z_overall);
  out["overall_low_sample"] = report.overall_low_sample;
  out["overall_flagged"] = report.overall_flagged;
  out["any_flagged"] = report.any_flagged();

  json observations = json::array();
  for (const auto& obs : report.observations) {
    observations.push_back({{"pick", obs.pick},
                            {"opened", obs.opened.to_string()},
                            {"plays", obs.plays},
                            {"wins", obs.wins},
                            {"empirical", obs.empirical},
                            {"exact", obs.exact},
                            {"z", obs.low_sample ? json() : json(obs.z)},
                            {"low_sample", obs.low_sample},
                            {"flagged", obs.flagged}});
  }
  out["observations"] = observations;
  return out;
}

void print_simulate_table(const json& out) {
  std::printf("model: %s\n", out["model_source"].get<std::string>().c_str());
  std::printf("plays: %llu   wins: %llu   seed: %llu   shards: %d\n",
              static_cast<unsigned long long>(out["n_plays"].get<uint64_t>()),
              static_cast<unsigned long long>(out["wins"].get<uint64_t>()),
              static_cast<unsigned long long>(out["seed"].get<uint64_t>()),
              out["shards"].get<int>());
  std::printf("generator: %s\n", out["generator"].get<std::string>().c_str());
  std::printf("estimate: %s +- %s   exact: %s\n",
              fmt9(out["estimate"].get<double>()).c_str(),
              fmt9(out["std_error"].get<double>()).c_str(),
              fmt9(out["exact_unconditional"].get<double>()).c_str());
  if (out["z_overall"].is_null())
    std::printf("overall z: n/a (low sample)\n");
  else
    std::printf("overall z: %s%s\n", fmt9(out["z_overall"].get<double>()).c_str(),
                out["overall_flagged"].get<bool>() ? "  ** FLAGGED **" : "");
  std::printf("%-6s %-10s %-10s %-10s %-14s %-14s %s\n", "pick", "opened",
              "plays", "wins", "empirical", "exact", "z");
  for (const auto& obs : out["observations"]) {
    const std::string z =
        obs["z"].is_null() ? "low-sample" : fmt9(obs["z"].get<double>());
    const std::string opened = "{" + obs["opened"].get<std::string>() + "}";
    std::printf("%-6d %-10s %-10llu %-10llu %-14s %-14s %s%s\n",
                obs["pick"].get<int>(), opened.c_str(),
                static_cast<unsigned long long>(obs["plays"].get<uint64_t>()),
                static_cast<unsigned long long>(obs["wins"].get<uint64_t>()),
                fmt9(obs["empirical"].get<double>()).c_str(),
                fmt9(obs["exact"].get<double>()).c_str(), z.c_str(),
                obs["flagged"].get<bool>() ? "  ** FLAGGED **" : "");
  }
}

void print_simulate_csv(const json& out) {
  std::printf("pick,opened,plays,wins,empirical,exact,z,flagged\n");
  for (const auto& obs : out["observations"]) {
    const std::string z = obs["z"].is_null() ? "" : fmt9(obs["z"].get<double>());
    std::printf("%d,%s,%llu,%llu,%.17g,%.17g,%s,%d\n", obs["pick"].get<int>(),
                obs["opened"].get<std::string>().c_str(),
                static_cast<unsigned long long>(obs["plays"].get<uint64_t>()),
                static_cast<unsigned long long>(obs["wins"].get<uint64_t>()),
                obs["empirical"].get<double>(), obs["exact"].get<double>(),
                z.c_str(), obs["flagged"].get<bool>() ? 1 : 0);
  }
}

// ---------------------------------------------------------------------------
// sweep

json run_sweep(const json& params) {
  const double from = params.at("q_from").get<double>();
  const double to = params.at("q_to").get<double>();
  const int steps = params.at("steps").get<int>();
  if (steps < 1) throw InvalidArgument("steps must be >= 1");
  if (steps == 1 && from != to)
    throw InvalidArgument("steps=1 needs q-from == q-to");
  std::vector<double> grid;
  for (int i = 0; i < steps; ++i)
    grid.push_back(steps == 1 ? from : from + (to - from) * i / (steps - 1));

  const SweepTable table = conditional_lower_bound_sweep(grid);

  json out;
  out["schema"] = "montyhall.sweep";
  out["schema_version"] = 1;
  out["global_min"] = table.global_min;
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"q", row.q},
                    {"cond_open_2", row.cond_open_low},
                    {"cond_open_3", row.cond_open_high},
                    {"minimum", row.minimum},
                    {"closed_form_1_over_1_plus_q", row.closed_form_high}});
  }
  out["rows"] = rows;
  return out;
}

void print_sweep_table(const json& out) {
  std::printf("%-10s %-14s %-14s %-14s %s\n", "q", "win|O={2}", "win|O={3}",
              "min", "1/(1+q)");
  for (const auto& row : out["rows"])
    std::printf("%-10s %-14s %-14s %-14s %s\n",
                fmt9(row["q"].get<double>()).c_str(),
                fmt9(row["cond_open_2"].get<double>()).c_str(),
                fmt9(row["cond_open_3"].get<double>()).c_str(),
                fmt9(row["minimum"].get<double>()).c_str(),
                fmt9(row["closed_form_1_over_1_plus_q"].get<double>()).c_str());
  std::printf("global minimum: %s\n", fmt9(out["global_min"].get<double>()).c_str());
}

void print_sweep_csv(const json& out) {
  std::printf("q,cond_open_2,cond_open_3,minimum,closed_form_1_over_1_plus_q\n");
  for (const auto& row : out["rows"])
    std::printf("%.17g,%.17g,%.17g,%.17g,%.17g\n", row["q"].get<double>(),
                row["cond_open_2"].get<double>(),
                row["cond_open_3"].get<double>(), row["minimum"].get<double>(),
                row["closed_form_1_over_1_plus_q"].get<double>());
}

// ---------------------------------------------------------------------------
// presets

json run_presets(const json&) {
  json out;
  out["schema"] = "montyhall.presets";
  out["schema_version"] = 1;
  json rows = json::array();
  for (const auto& info : list_presets())
    rows.push_back({{"name", info.name},
                    {"parameters", info.parameters},
                    {"description", info.description}});
  out["presets"] = rows;
  return out;
}

void print_presets_table(const json& out) {
  for (const auto& row : out["presets"]) {
    const std::string params = row["parameters"].get<std::string>();
    std::printf("%-18s %s%s%s\n", row["name"].get<std::string>().c_str(),
                row["description"].get<std::string>().c_str(),
                params.empty() ? "" : "; parameters: ", params.c_str());
  }
}

void print_presets_csv(const json& out) {
  std::printf("name,parameters,description\n");
  for (const auto& row : out["presets"])
    std::printf("%s,\"%s\",\"%s\"\n", row["name"].get<std::string>().c_str(),
                row["parameters"].get<std::string>().c_str(),
                row["description"].get<std::string>().c_str());
}

// ---------------------------------------------------------------------------
// record / replay

void write_record(const std::string& path, const std::string& command,
                  const json& params, const json& outputs,
                  const std::string& started_at) {
  json record;
  record["schema"] = "montyhall.run_record";
  record["schema_version"] = 1;
  record["tool_version"] = kToolVersion;
  record["command"] = command;
  record["parameters"] = params;
  record["outputs"] = outputs;
  record["started_at"] = started_at;
  record["finished_at"] = timestamp_utc();
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write record file " + path);
  out << record.dump(2) << "\n";
}

json dispatch(const std::string& command, const json& params) {
  if (command == "analyze") return run_analyze(params);
  if (command == "solve") return run_solve(params);
  if (command == "simulate") return run_simulate(params);
  if (command == "sweep") return run_sweep(params);
  if (command == "presets") return run_presets(params);
  throw InvalidArgument("record holds unknown command \"" + command + "\"");
}

int run_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open record file " + path);
  json record;
  try {
    in >> record;
  } catch (const json::exception& e) {
    throw InvalidArgument("record file is not valid JSON: " +
                          std::string(e.what()));
  }
  if (!record.contains("command") || !record.contains("parameters") ||
      !record.contains("outputs"))
    throw InvalidArgument("record file misses command/parameters/outputs");

  const json replayed =
      dispatch(record["command"].get<std::string>(), record["parameters"]);
  if (replayed == record["outputs"]) {
    std::printf("replay OK: %s reproduced bit-exactly\n",
                record["command"].get<std::string>().c_str());
    return 0;
  }
  std::fprintf(stderr, "replay MISMATCH for %s\n",
               record["command"].get<std::string>().c_str());
  std::fprintf(stderr, "recorded: %s\n", record["outputs"].dump().c_str());
  std::fprintf(stderr, "replayed: %s\n", replayed.dump().c_str());
  return 1;
}

// ---------------------------------------------------------------------------
// play

struct PlayTally {
  uint64_t plays = 0;
  uint64_t wins = 0;
};

int run_play(std::optional<uint64_t> seed_flag, double host_bias,
             const std::string& format) {
  const uint64_t seed = resolve_seed(seed_flag);
  Rng rng(seed);
  PlayTally stay, flip;
  std::string line;
  uint64_t round = 0;

  std::printf("Three doors, one car, %s host (seed %llu). Ctrl-D or q ends the "
              "session.\n",
              host_bias == 0.5 ? "fair" : "biased",
              static_cast<unsigned long long>(seed));
  while (true) {
    ++round;
    Door pick = 0;
    bool quit = false;
    while (pick == 0) {
      std::printf("round %llu - pick a door (1-3), or q to quit: ",
                  static_cast<unsigned long long>(round));
      std::fflush(stdout);
      if (!std::getline(std::cin, line)) {
        quit = true;
        break;
      }
      if (line == "q" || line == "quit") {
        quit = true;
        break;
      }
      if (line == "1" || line == "2" || line == "3")
        pick = line[0] - '0';
      else
        std::printf("please enter 1, 2 or 3\n");
    }
    if (quit) break;

    const Door car = 1 + static_cast<Door>(rng.next_unit() * 3.0);
    Door opened;
    if (car == pick) {
      const auto options = doors_excluding(3, {car});
      opened = rng.next_unit() < host_bias ? options[1] : options[0];
    } else {
      opened = doors_excluding(3, {car, pick}).front();
    }
    const Door other = doors_excluding(3, {pick, opened}).front();

    bool switched = false;
    bool answered = false;
    while (!answered) {
      std::printf("the host opens door %d, revealing a goat. [s]tay with door "
                  "%d or s[w]itch to door %d? ",
                  opened, pick, other);
      std::fflush(stdout);
      if (!std::getline(std::cin, line)) {
        quit = true;
        break;
      }
      if (line == "s" || line == "stay") {
        switched = false;
        answered = true;
      } else if (line == "w" || line == "switch") {
        switched = true;
        answered = true;
      } else {
        std::printf("please answer s or w\n");
      }
    }
    if (quit) break;

    const Door final_door = switched ? other : pick;
    const bool win = (final_door == car);
    PlayTally& tally = switched ? flip : stay;
    tally.plays++;
    tally.wins += win;
    std::printf("the car was behind door %d - you %s.\n", car,
                win ? "WIN" : "lose");
    std::printf("running tally: switch %llu/%llu (exact 0.666666667), stay "
                "%llu/%llu (exact 0.333333333)\n",
                static_cast<unsigned long long>(flip.wins),
                static_cast<unsigned long long>(flip.plays),
                static_cast<unsigned long long>(stay.wins),
                static_cast<unsigned long long>(stay.plays));
  }

  if (format == "json") {
    json out;
    out["schema"] = "montyhall.play";
    out["schema_version"] = 1;
    out["seed"] = seed;
    out["plays"] = stay.plays + flip.plays;
    out["stay"] = {{"plays", stay.plays}, {"wins", stay.wins}};
    out["switch"] = {{"plays", flip.plays}, {"wins", flip.wins}};
    out["exact_stay"] = 1.0 / 3.0;
    out["exact_switch"] = 2.0 / 3.0;
    std::printf("%s\n", out.dump(2).c_str());
  } else if (format == "csv") {
    std::printf("decision,plays,wins,exact\n");
    std::printf("switch,%llu,%llu,%.17g\n",
                static_cast<unsigned long long>(flip.plays),
                static_cast<unsigned long long>(flip.wins), 2.0 / 3.0);
    std::printf("stay,%llu,%llu,%.17g\n",
                static_cast<unsigned long long>(stay.plays),
                static_cast<unsigned long long>(stay.wins), 1.0 / 3.0);
  } else {
    std::printf("session summary (seed %llu): %llu plays - switch %llu/%llu, "
                "stay %llu/%llu; exact win probabilities: switch 0.666666667, "
                "stay 0.333333333\n",
                static_cast<unsigned long long>(seed),
                static_cast<unsigned long long>(stay.plays + flip.plays),
                static_cast<unsigned long long>(flip.wins),
                static_cast<unsigned long long>(flip.plays),
                static_cast<unsigned long long>(stay.wins),
                static_cast<unsigned long long>(stay.plays));
  }
  return 0;
}

// ---------------------------------------------------------------------------

void emit(const json& out, const std::string& format,
          void (*table)(const json&), void (*csv)(const json&)) {
  if (format == "json")
    std::printf("%s\n", out.dump(2).c_str());
  else if (format == "csv")
    csv(out);
  else
    table(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact probabilities, minimax solving and seeded simulation "
               "for the parameterized three-doors game"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  const auto format_check = CLI::IsMember({"table", "json", "csv"});

  // analyze
  auto* analyze =
      app.add_subcommand("analyze", "exact win probabilities and posteriors");
  ModelFlags analyze_model;
  add_model_flags(analyze, analyze_model);
  std::string observe;
  bool all_observations = false;
  std::string analyze_format = "table", analyze_record;
  analyze->add_option("--observe", observe,
                      "observation p=<door>,O=<door[+door...]>");
  analyze->add_flag("--all-observations", all_observations,
                    "print every reachable observation and the weighted average");
  analyze->add_option("--format", analyze_format)->check(format_check);
  analyze->add_option("--record", analyze_record,
                      "write a run record to this file");

  // solve
  auto* solve =
      app.add_subcommand("solve", "minimax value and optimal strategies");
  int solve_doors = 3, solve_open = 1;
  double solve_tol = 1e-9, solve_cap = kDefaultEnumerationCap;
  std::string solve_format = "table", solve_record;
  solve->add_option("--doors", solve_doors, "number of doors N")->required();
  solve->add_option("--open", solve_open, "doors the host opens k")->required();
  solve->add_option("--tol", solve_tol, "duality gap tolerance");
  solve->add_option("--cap", solve_cap, "enumeration cap");
  solve->add_option("--format", solve_format)->check(format_check);
  solve->add_option("--record", solve_record);

  // simulate
  auto* simulate =
      app.add_subcommand("simulate", "seeded Monte Carlo vs the exact engine");
  ModelFlags sim_model;
  add_model_flags(simulate, sim_model);
  uint64_t sim_n = 0;
  std::optional<uint64_t> sim_seed;
  int sim_shards = 1;
  std::string sim_format = "table", sim_record;
  simulate->add_option("-n,--plays", sim_n, "number of plays")->required();
  simulate->add_option("--seed", sim_seed,
                       "rng seed (default: MONTY_SEED or random)");
  simulate->add_option("--shards", sim_shards,
                       "parallel substreams (default 1: serial reference)");
  simulate->add_option("--format", sim_format)->check(format_check);
  simulate->add_option("--record", sim_record);

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "host-bias sweep of the conditional lower bound");
  double q_from = 0.0, q_to = 1.0;
  int sweep_steps = 101;
  std::string sweep_format = "table", sweep_record;
  sweep->add_option("--q-from", q_from, "grid start (default 0)");
  sweep->add_option("--q-to", q_to, "grid end (default 1)");
  sweep->add_option("--steps", sweep_steps, "grid points (default 101)");
  sweep->add_option("--format", sweep_format)->check(format_check);
  sweep->add_option("--record", sweep_record);

  // play
  auto* play = app.add_subcommand("play", "interactive seeded play loop");
  std::optional<uint64_t> play_seed;
  double play_bias = 0.5;
  std::string play_format = "table";
  play->add_option("--seed", play_seed,
                   "rng seed (default: MONTY_SEED or random)");
  play->add_option("--host-bias", play_bias, "host tie-break bias q in [0,1]");
  play->add_option("--format", play_format)->check(format_check);

  // presets
  auto* presets = app.add_subcommand("presets", "list model presets");
  std::string presets_format = "table";
  presets->add_option("--format", presets_format)->check(format_check);

  // replay
  auto* replay =
      app.add_subcommand("replay", "re-run a recorded command and compare");
  std::string replay_file;
  replay->add_option("record", replay_file, "run record file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const std::string started_at = timestamp_utc();

    if (analyze->parsed()) {
      json params = model_params_from_flags(analyze_model);
      if (!observe.empty()) params["observe"] = observe;
      if (all_observations) params["all_observations"] = true;
      const json out = run_analyze(params);
      emit(out, analyze_format, print_analyze_table, print_analyze_csv);
      if (!analyze_record.empty())
        write_record(analyze_record, "analyze", params, out, started_at);
      return 0;
    }

    if (solve->parsed()) {
      json params{{"doors", solve_doors},
                  {"open", solve_open},
                  {"tol", solve_tol},
                  {"cap", solve_cap}};
      const json out = run_solve(params);
      emit(out, solve_format, print_solve_table, print_solve_csv);
      if (!solve_record.empty())
        write_record(solve_record, "solve", params, out, started_at);
      return 0;
    }

    if (simulate->parsed()) {
      if (sim_n < 1) throw InvalidArgument("need at least one play (-n >= 1)");
      if (sim_shards < 1) throw InvalidArgument("--shards must be >= 1");
      json params = model_params_from_flags(sim_model);
      params["n"] = sim_n;
      params["seed"] = resolve_seed(sim_seed);
      params["shards"] = sim_shards;
      const json out = run_simulate(params);
      emit(out, sim_format, print_simulate_table, print_simulate_csv);
      if (!sim_record.empty())
        write_record(sim_record, "simulate", params, out, started_at);
      return out["any_flagged"].get<bool>() ? kExitFlagged : 0;
    }

    if (sweep->parsed()) {
      json params{{"q_from", q_from}, {"q_to", q_to}, {"steps", sweep_steps}};
      const json out = run_sweep(params);
      emit(out, sweep_format, print_sweep_table, print_sweep_csv);
      if (!sweep_record.empty())
        write_record(sweep_record, "sweep", params, out, started_at);
      return 0;
    }

    if (play->parsed()) {
      if (play_bias < 0.0 || play_bias > 1.0)
        throw InvalidArgument("--host-bias must lie in [0,1]");
      return run_play(play_seed, play_bias, play_format);
    }

    if (presets->parsed()) {
      const json out = run_presets(json::object());
      emit(out, presets_format, print_presets_table, print_presets_csv);
      return 0;
    }

    if (replay->parsed()) return run_replay(replay_file);
  } catch (const UnreachableObservation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUnreachable;
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  } catch (const SolverFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
