#pragma once

#include <string>

#include <json.hpp>

#include "montyhall/game_model.hpp"

namespace monty {

// Model file format (schemas/model.schema.json): n_doors and k_opened are
// required; car_placement and pick default to uniform; open_rule maps
// "c,p" keys to {door-set: probability} objects; final_choice maps "p|O"
// keys to {door: probability}; door sets are written "2" or "2+4". Cells
// absent from either rule fall back to uniform over the legal support.
nlohmann::json model_to_json(const GameModel& model);
GameModel model_from_json(const nlohmann::json& j);

GameModel load_model_file(const std::string& path);
void save_model_file(const GameModel& model, const std::string& path);

// "2+3" -> DoorSet{2,3}. Throws InvalidArgument on malformed input.
DoorSet parse_door_set(const std::string& text);

// "p=1,O=3" or "p=2,O=1+4" -> (pick, opened set).
std::pair<Door, DoorSet> parse_observation(const std::string& text);

}  // namespace monty
