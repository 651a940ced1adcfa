#pragma once

#include <string>

#include "json.hpp"
#include "ocsyn/automaton.hpp"
#include "ocsyn/regular_word.hpp"
#include "ocsyn/synthesis.hpp"

namespace ocsyn {

/// Automaton schema:
///   {"actions": [..], "states": [..], "initial": [..], "final": [..],
///    "steps": [{"from": s, "label": [..], "to": s}, ..],
///    "limits": [{"from": [s, ..], "to": s}, ..],
///    "level": {s: n, ..}}            (level optional)
/// States are referenced by name everywhere. from_json throws
/// std::invalid_argument naming the offending field.
nlohmann::json automaton_to_json(const ordinal_automaton& a);
ordinal_automaton automaton_from_json(const nlohmann::json& j);

/// Word schema: {"letter": [..]} | {"any": true} | {"concat": [..]} |
/// {"omega": t}.
nlohmann::json word_to_json(const regular_word& w);
regular_word word_from_json(const nlohmann::json& j);

/// Plant schema: {"automaton": {..}, "observable": [..],
/// "controllable": [..], "level": k}.
nlohmann::json plant_to_json(const plant_spec& s);
plant_spec plant_from_json(const nlohmann::json& j);

/// Parses a JSON document, rewrapping syntax errors (which carry byte
/// positions) as std::invalid_argument tagged with the source name.
nlohmann::json parse_json_text(const std::string& text,
                               const std::string& source_name);

}  // namespace ocsyn
