#include "ocsyn/json_io.hpp"

#include <stdexcept>

namespace ocsyn {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* name) {
  if (!j.is_object())
    throw std::invalid_argument("expected a JSON object around field '" +
                                std::string(name) + "'");
  const auto it = j.find(name);
  if (it == j.end())
    throw std::invalid_argument("missing field '" + std::string(name) + "'");
  return *it;
}

std::vector<std::string> string_list(const json& j, const char* name) {
  if (!j.is_array())
    throw std::invalid_argument("field '" + std::string(name) +
                                "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string())
      throw std::invalid_argument("field '" + std::string(name) +
                                  "' must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

letter letter_from(const json& j, const char* name) {
  const auto list = string_list(j, name);
  return letter(list.begin(), list.end());
}

}  // namespace

json automaton_to_json(const ordinal_automaton& a) {
  json j;
  j["actions"] = a.actions();
  j["states"] = a.state_names();
  json initial = json::array();
  for (state_id s : a.initial().elements()) initial.push_back(a.state_name(s));
  j["initial"] = std::move(initial);
  json final_list = json::array();
  for (state_id s : a.final_states().elements())
    final_list.push_back(a.state_name(s));
  j["final"] = std::move(final_list);
  json steps = json::array();
  for (const auto& e : a.steps()) {
    json step;
    step["from"] = a.state_name(e.from);
    step["label"] = std::vector<std::string>(e.label.begin(), e.label.end());
    step["to"] = a.state_name(e.to);
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  json limits = json::array();
  for (const auto& e : a.limits()) {
    json lim;
    json from = json::array();
    for (state_id s : e.sources.elements()) from.push_back(a.state_name(s));
    lim["from"] = std::move(from);
    lim["to"] = a.state_name(e.target);
    limits.push_back(std::move(lim));
  }
  j["limits"] = std::move(limits);
  if (a.has_level()) {
    json level;
    for (state_id s = 0; s < a.state_count(); ++s)
      level[a.state_name(s)] = a.level_of(s);
    j["level"] = std::move(level);
  }
  return j;
}

ordinal_automaton automaton_from_json(const json& j) {
  ordinal_automaton::builder b(string_list(field(j, "actions"), "actions"));
  for (auto& name : string_list(field(j, "states"), "states"))
    b.add_state(std::move(name));
  for (const auto& name : string_list(field(j, "initial"), "initial"))
    b.mark_initial(b.state(name));
  for (const auto& name : string_list(field(j, "final"), "final"))
    b.mark_final(b.state(name));
  const json& steps = field(j, "steps");
  if (!steps.is_array())
    throw std::invalid_argument("field 'steps' must be an array");
  for (const auto& e : steps) {
    const json& from = field(e, "from");
    const json& to = field(e, "to");
    if (!from.is_string() || !to.is_string())
      throw std::invalid_argument("step endpoints must be state names");
    b.add_step(b.state(from.get<std::string>()),
               letter_from(field(e, "label"), "label"),
               b.state(to.get<std::string>()));
  }
  const json& limits = field(j, "limits");
  if (!limits.is_array())
    throw std::invalid_argument("field 'limits' must be an array");
  for (const auto& e : limits) {
    state_set sources;
    for (const auto& name : string_list(field(e, "from"), "from"))
      sources.insert(b.state(name));
    const json& to = field(e, "to");
    if (!to.is_string())
      throw std::invalid_argument("limit target must be a state name");
    b.add_limit(sources, b.state(to.get<std::string>()));
  }
  if (j.contains("level")) {
    const json& level = j.at("level");
    if (!level.is_object())
      throw std::invalid_argument(
          "field 'level' must map state names to numbers");
    for (const auto& [name, value] : level.items()) {
      if (!value.is_number_unsigned())
        throw std::invalid_argument("level of state '" + name +
                                    "' must be a nonnegative integer");
      b.set_level(b.state(name), value.get<std::uint64_t>());
    }
  }
  return b.build();
}

json word_to_json(const regular_word& w) {
  switch (w.node_kind()) {
    case regular_word::kind::single: {
      json j;
      j["letter"] = std::vector<std::string>(w.node_letter().begin(),
                                             w.node_letter().end());
      return j;
    }
    case regular_word::kind::any: {
      json j;
      j["any"] = true;
      return j;
    }
    case regular_word::kind::concat: {
      json parts = json::array();
      for (const auto& p : w.parts()) parts.push_back(word_to_json(p));
      json j;
      j["concat"] = std::move(parts);
      return j;
    }
    case regular_word::kind::omega: {
      json j;
      j["omega"] = word_to_json(w.body());
      return j;
    }
  }
  throw std::logic_error("unreachable");
}

regular_word word_from_json(const json& j) {
  if (!j.is_object())
    throw std::invalid_argument("a word term must be a JSON object");
  if (j.contains("letter"))
    return regular_word::single(letter_from(j.at("letter"), "letter"));
  if (j.contains("any")) {
    if (!j.at("any").is_boolean() || !j.at("any").get<bool>())
      throw std::invalid_argument("field 'any' must be true");
    return regular_word::any();
  }
  if (j.contains("concat")) {
    const json& parts = j.at("concat");
    if (!parts.is_array() || parts.empty())
      throw std::invalid_argument(
          "field 'concat' must be a nonempty array of word terms");
    std::vector<regular_word> out;
    for (const auto& p : parts) out.push_back(word_from_json(p));
    return regular_word::concat(std::move(out));
  }
  if (j.contains("omega")) return regular_word::omega(word_from_json(j.at("omega")));
  throw std::invalid_argument(
      "a word term needs one of 'letter', 'any', 'concat', 'omega'");
}

json plant_to_json(const plant_spec& s) {
  json j;
  j["automaton"] = automaton_to_json(s.plant);
  j["observable"] = s.observable;
  j["controllable"] = s.controllable;
  j["level"] = s.level;
  return j;
}

plant_spec plant_from_json(const json& j) {
  plant_spec s;
  s.plant = automaton_from_json(field(j, "automaton"));
  s.observable = string_list(field(j, "observable"), "observable");
  s.controllable = string_list(field(j, "controllable"), "controllable");
  const json& level = field(j, "level");
  if (!level.is_number_unsigned())
    throw std::invalid_argument("field 'level' must be a nonnegative integer");
  s.level = level.get<std::uint64_t>();
  return s;
}

json parse_json_text(const std::string& text, const std::string& source_name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(source_name + ": " + e.what());
  }
}

}  // namespace ocsyn
