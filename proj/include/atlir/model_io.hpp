#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "atlir/icgs.hpp"

namespace atlir {

/// Reads a model document:
///
///   {"agents": [...], "actions": {agent: [...]}, "states": [...],
///    "initial": [...], "labels": {prop: [state...]},
///    "obs": {agent: {state: token}}, "protocol": {agent: {state: [action...]}},
///    "transitions": [{"from": s, "actions": {agent: action}, "to": t}]}
///
/// Malformed JSON and structural problems throw ParseError; well-formedness
/// problems throw ModelError. States missing from "obs" are only
/// indistinguishable from themselves.
Icgs load_model(std::string_view text);
Icgs load_model_file(const std::filesystem::path& path);

/// Canonical document: keys and lists sorted, two-space indentation.
std::string save_model(const Icgs& model);
void save_model_file(const Icgs& model, const std::filesystem::path& path);

}  // namespace atlir
