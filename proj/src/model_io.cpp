#include "montyhall/model_io.hpp"

#include <algorithm>
#include <fstream>

#include "montyhall/errors.hpp"

namespace monty {

using nlohmann::json;

namespace {

Door parse_door(const std::string& text) {
  size_t pos = 0;
  int door = 0;
  try {
    door = std::stoi(text, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("expected a door number, got \"" + text + "\"");
  }
  if (pos != text.size() || door < 1)
    throw InvalidArgument("expected a door number, got \"" + text + "\"");
  return door;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts;
}

std::vector<double> parse_weights(const json& j, const char* field, int n) {
  if (!j.is_array())
    throw InvalidArgument(std::string(field) + " must be an array of weights");
  if (static_cast<int>(j.size()) != n)
    throw InvalidArgument(std::string(field) + " has " +
                          std::to_string(j.size()) + " entries, expected " +
                          std::to_string(n));
  std::vector<double> w;
  for (const auto& x : j) {
    if (!x.is_number())
      throw InvalidArgument(std::string(field) + " entries must be numbers");
    w.push_back(x.get<double>());
  }
  return w;
}

}  // namespace

DoorSet parse_door_set(const std::string& text) {
  if (text.empty()) throw InvalidArgument("empty door set");
  std::vector<Door> doors;
  for (const auto& part : split(text, '+')) doors.push_back(parse_door(part));
  DoorSet set(doors);
  if (set.size() != static_cast<int>(doors.size()))
    throw InvalidArgument("door set \"" + text + "\" repeats a door");
  return set;
}

std::pair<Door, DoorSet> parse_observation(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2 || parts[0].rfind("p=", 0) != 0 ||
      parts[1].rfind("O=", 0) != 0)
    throw InvalidArgument("observation must look like p=<door>,O=<door[+door...]>, got \"" +
                          text + "\"");
  return {parse_door(parts[0].substr(2)), parse_door_set(parts[1].substr(2))};
}

json model_to_json(const GameModel& model) {
  json j;
  j["n_doors"] = model.config.n_doors;
  j["k_opened"] = model.config.k_opened;
  j["car_placement"] = model.team.car_placement.weights;
  j["pick"] = model.player.pick.weights;

  json open_rule = json::object();
  for (const auto& [key, dist] : model.team.open_rule) {
    json cell = json::object();
    for (const auto& [opened, prob] : dist) cell[opened.to_string()] = prob;
    open_rule[std::to_string(key.first) + "," + std::to_string(key.second)] = cell;
  }
  if (!open_rule.empty()) j["open_rule"] = open_rule;

  json final_choice = json::object();
  for (const auto& [key, dist] : model.player.final_choice) {
    json cell = json::object();
    for (const auto& [door, prob] : dist) cell[std::to_string(door)] = prob;
    final_choice[std::to_string(key.first) + "|" + key.second.to_string()] = cell;
  }
  if (!final_choice.empty()) j["final_choice"] = final_choice;
  return j;
}

GameModel model_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("model document must be an object");
  static const char* known[] = {"n_doors",  "k_opened",    "car_placement",
                                "pick",     "open_rule",   "final_choice"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok |= (key == k);
    if (!ok) throw InvalidArgument("unknown model field \"" + key + "\"");
  }
  if (!j.contains("n_doors") || !j.contains("k_opened"))
    throw InvalidArgument("model needs n_doors and k_opened");
  if (!j["n_doors"].is_number_integer() || !j["k_opened"].is_number_integer())
    throw InvalidArgument("n_doors and k_opened must be integers");

  GameModel model;
  model.config.n_doors = j["n_doors"].get<int>();
  model.config.k_opened = j["k_opened"].get<int>();
  const int n = model.config.n_doors;
  if (!model.config.valid())
    throw InvalidArgument("config: need N >= 3 and 1 <= k <= N-2, got N=" +
                          std::to_string(n) + ", k=" +
                          std::to_string(model.config.k_opened));

  model.team.car_placement = j.contains("car_placement")
                                 ? DoorDistribution{parse_weights(
                                       j["car_placement"], "car_placement", n)}
                                 : DoorDistribution::uniform(n);
  model.player.pick = j.contains("pick")
                          ? DoorDistribution{parse_weights(j["pick"], "pick", n)}
                          : DoorDistribution::uniform(n);

  if (j.contains("open_rule")) {
    if (!j["open_rule"].is_object())
      throw InvalidArgument("open_rule must be an object keyed by \"c,p\"");
    for (const auto& [key, cell] : j["open_rule"].items()) {
      const auto parts = split(key, ',');
      if (parts.size() != 2)
        throw InvalidArgument("open_rule key \"" + key + "\" must be \"c,p\"");
      const Door c = parse_door(parts[0]);
      const Door p = parse_door(parts[1]);
      if (!cell.is_object())
        throw InvalidArgument("open_rule cell \"" + key +
                              "\" must map door sets to probabilities");
      OpenDistribution dist;
      for (const auto& [set_text, prob] : cell.items()) {
        if (!prob.is_number())
          throw InvalidArgument("open_rule cell \"" + key +
                                "\" has a non-numeric probability");
        dist.emplace_back(parse_door_set(set_text), prob.get<double>());
      }
      std::sort(dist.begin(), dist.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      model.team.open_rule.emplace(std::make_pair(c, p), std::move(dist));
    }
  }

  if (j.contains("final_choice")) {
    if (!j["final_choice"].is_object())
      throw InvalidArgument("final_choice must be an object keyed by \"p|O\"");
    for (const auto& [key, cell] : j["final_choice"].items()) {
      const auto parts = split(key, '|');
      if (parts.size() != 2)
        throw InvalidArgument("final_choice key \"" + key + "\" must be \"p|O\"");
      const Door p = parse_door(parts[0]);
      DoorSet opened = parse_door_set(parts[1]);
      if (!cell.is_object())
        throw InvalidArgument("final_choice cell \"" + key +
                              "\" must map doors to probabilities");
      FinalDistribution dist;
      for (const auto& [door_text, prob] : cell.items()) {
        if (!prob.is_number())
          throw InvalidArgument("final_choice cell \"" + key +
                                "\" has a non-numeric probability");
        dist.emplace_back(parse_door(door_text), prob.get<double>());
      }
      std::sort(dist.begin(), dist.end());
      model.player.final_choice.emplace(std::make_pair(p, std::move(opened)),
                                        std::move(dist));
    }
  }
  return model;
}

GameModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open model file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("model file " + path + " is not valid JSON: " +
                          e.what());
  }
  return model_from_json(j);
}

void save_model_file(const GameModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write model file " + path);
  out << model_to_json(model).dump(2) << "\n";
}

}  // namespace monty
