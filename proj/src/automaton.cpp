#include "ocsyn/automaton.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ocsyn {

namespace {

void check_capacity(state_id s) {
  if (s >= state_set::capacity)
    throw std::length_error("state index exceeds the supported capacity");
}

}  // namespace

void state_set::insert(state_id s) {
  check_capacity(s);
  words_[s / 64] |= std::uint64_t(1) << (s % 64);
}

void state_set::erase(state_id s) {
  check_capacity(s);
  words_[s / 64] &= ~(std::uint64_t(1) << (s % 64));
}

bool state_set::contains(state_id s) const {
  if (s >= capacity) return false;
  return (words_[s / 64] >> (s % 64)) & 1;
}

bool state_set::empty() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

std::size_t state_set::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool state_set::is_subset_of(const state_set& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool state_set::intersects(const state_set& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

std::vector<state_id> state_set::elements() const {
  std::vector<state_id> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      const int b = std::countr_zero(w);
      out.push_back(static_cast<state_id>(i * 64 + b));
      w &= w - 1;
    }
  }
  return out;
}

state_set& state_set::operator|=(const state_set& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

state_set& state_set::operator&=(const state_set& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

state_set state_set::of(std::initializer_list<state_id> states) {
  state_set out;
  for (state_id s : states) out.insert(s);
  return out;
}

const std::string& ordinal_automaton::state_name(state_id s) const {
  if (s >= state_names_.size())
    throw std::out_of_range("state index out of range");
  return state_names_[s];
}

std::optional<state_id> ordinal_automaton::state_index(
    std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t ordinal_automaton::level_of(state_id s) const {
  if (level_.empty()) throw std::invalid_argument("automaton has no level map");
  if (s >= level_.size()) throw std::out_of_range("state index out of range");
  return level_[s];
}

const std::vector<std::pair<state_id, state_id>>&
ordinal_automaton::steps_with_letter(const letter& a) const {
  static const std::vector<std::pair<state_id, state_id>> none;
  auto it = by_letter_.find(a);
  return it == by_letter_.end() ? none : it->second;
}

std::vector<state_id> ordinal_automaton::successors(state_id from,
                                                    const letter& a) const {
  std::vector<state_id> out;
  for (const auto& [f, t] : steps_with_letter(a))
    if (f == from) out.push_back(t);
  return out;
}

const std::vector<state_id>& ordinal_automaton::limit_targets_of(
    const state_set& sources) const {
  static const std::vector<state_id> none;
  auto it = limits_by_source_.find(sources);
  return it == limits_by_source_.end() ? none : it->second;
}

std::string ordinal_automaton::describe_states(const state_set& set) const {
  std::string out = "{";
  bool first = true;
  for (state_id s : set.elements()) {
    if (!first) out += ',';
    first = false;
    out += state_name(s);
  }
  out += '}';
  return out;
}

ordinal_automaton::builder::builder(std::vector<std::string> actions) {
  std::sort(actions.begin(), actions.end());
  if (std::adjacent_find(actions.begin(), actions.end()) != actions.end())
    throw std::invalid_argument("duplicate action name");
  a_.actions_ = std::move(actions);
}

state_id ordinal_automaton::builder::add_state(std::string name) {
  if (a_.index_.count(name))
    throw std::invalid_argument("duplicate state name '" + name + "'");
  const auto id = static_cast<state_id>(a_.state_names_.size());
  check_capacity(id);
  a_.index_.emplace(name, id);
  a_.state_names_.push_back(std::move(name));
  return id;
}

state_id ordinal_automaton::builder::state(std::string_view name) const {
  auto it = a_.index_.find(name);
  if (it == a_.index_.end())
    throw std::invalid_argument("unknown state name '" + std::string(name) +
                                "'");
  return it->second;
}

void ordinal_automaton::builder::add_step(state_id from, const letter& label,
                                          state_id to) {
  if (from >= a_.state_names_.size() || to >= a_.state_names_.size())
    throw std::invalid_argument("step endpoint is not a state");
  for (const auto& act : label)
    if (!std::binary_search(a_.actions_.begin(), a_.actions_.end(), act))
      throw std::invalid_argument("step label uses unknown action '" + act +
                                  "'");
  a_.steps_.push_back({from, label, to});
}

void ordinal_automaton::builder::add_limit(const state_set& sources,
                                           state_id target) {
  if (sources.empty())
    throw std::invalid_argument("limit transition with empty source set");
  if (target >= a_.state_names_.size())
    throw std::invalid_argument("limit target is not a state");
  for (state_id s : sources.elements())
    if (s >= a_.state_names_.size())
      throw std::invalid_argument("limit source is not a state");
  a_.limits_.push_back({sources, target});
}

void ordinal_automaton::builder::mark_initial(state_id s) {
  if (s >= a_.state_names_.size())
    throw std::invalid_argument("initial state is not a state");
  a_.initial_.insert(s);
}

void ordinal_automaton::builder::mark_final(state_id s) {
  if (s >= a_.state_names_.size())
    throw std::invalid_argument("final state is not a state");
  a_.final_.insert(s);
}

void ordinal_automaton::builder::set_level(state_id s, std::uint64_t level) {
  if (s >= a_.state_names_.size())
    throw std::invalid_argument("leveled state is not a state");
  pending_level_[s] = level;
}

ordinal_automaton ordinal_automaton::builder::build() {
  if (!pending_level_.empty()) {
    if (pending_level_.size() != a_.state_names_.size())
      throw std::invalid_argument(
          "level map must cover every state or be absent");
    a_.level_.resize(a_.state_names_.size());
    for (const auto& [s, l] : pending_level_) a_.level_[s] = l;
  }
  std::sort(a_.steps_.begin(), a_.steps_.end());
  a_.steps_.erase(std::unique(a_.steps_.begin(), a_.steps_.end()),
                  a_.steps_.end());
  std::sort(a_.limits_.begin(), a_.limits_.end());
  a_.limits_.erase(std::unique(a_.limits_.begin(), a_.limits_.end()),
                   a_.limits_.end());
  for (const auto& e : a_.steps_) {
    auto& bucket = a_.by_letter_[e.label];
    bucket.emplace_back(e.from, e.to);
  }
  for (const auto& [label, pairs] : a_.by_letter_)
    a_.step_letters_.push_back(label);
  for (const auto& e : a_.limits_)
    a_.limits_by_source_[e.sources].push_back(e.target);
  return std::move(a_);
}

std::vector<std::string> validate_level_diagnostics(const ordinal_automaton& a,
                                                    std::uint64_t k) {
  if (!a.has_level())
    throw std::invalid_argument("automaton has no level map");
  std::vector<std::string> out;
  for (state_id q : a.final_states().elements())
    if (a.level_of(q) != k)
      out.push_back("final state " + a.state_name(q) + " has level " +
                    std::to_string(a.level_of(q)) + ", expected " +
                    std::to_string(k));
  for (const auto& e : a.steps()) {
    if (a.level_of(e.to) != 0)
      out.push_back("step target " + a.state_name(e.to) +
                    " has nonzero level " + std::to_string(a.level_of(e.to)));
    if (a.level_of(e.from) >= k)
      out.push_back("step source " + a.state_name(e.from) + " has level " +
                    std::to_string(a.level_of(e.from)) + ", expected below " +
                    std::to_string(k));
  }
  for (const auto& e : a.limits()) {
    const std::uint64_t lt = a.level_of(e.target);
    if (lt < 1) {
      out.push_back("limit target " + a.state_name(e.target) +
                    " has level 0");
      continue;
    }
    bool step_below = false;
    for (state_id p : e.sources.elements()) {
      if (a.level_of(p) >= lt)
        out.push_back("limit source " + a.state_name(p) + " has level " +
                      std::to_string(a.level_of(p)) +
                      ", not below its target " + a.state_name(e.target) +
                      " at level " + std::to_string(lt));
      if (a.level_of(p) == lt - 1) step_below = true;
    }
    if (!step_below)
      out.push_back("no source of the limit into " + a.state_name(e.target) +
                    " sits at level " + std::to_string(lt - 1));
  }
  return out;
}

bool validate_level(const ordinal_automaton& a, std::uint64_t k) {
  return validate_level_diagnostics(a, k).empty();
}

}  // namespace ocsyn
