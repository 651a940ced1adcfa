#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocsyn/regular_word.hpp"

namespace ocsyn {

using state_id = std::uint32_t;

/// A set of automaton states as a fixed-width bitset.  Comparison is an
/// arbitrary strict total order, usable as a map key.
class state_set {
 public:
  static constexpr std::size_t capacity = 256;

  void insert(state_id s);
  void erase(state_id s);
  bool contains(state_id s) const;
  bool empty() const;
  std::size_t size() const;
  bool is_subset_of(const state_set& other) const;
  bool intersects(const state_set& other) const;
  std::vector<state_id> elements() const;

  state_set& operator|=(const state_set& other);
  state_set& operator&=(const state_set& other);
  friend state_set operator|(state_set a, const state_set& b) { return a |= b; }
  friend state_set operator&(state_set a, const state_set& b) { return a &= b; }
  friend auto operator<=>(const state_set&, const state_set&) = default;

  static state_set of(std::initializer_list<state_id> states);
  template <typename Range>
  static state_set of_range(const Range& states) {
    state_set out;
    for (state_id s : states) out.insert(s);
    return out;
  }

 private:
  std::array<std::uint64_t, 4> words_{};
};

struct step_edge {
  state_id from = 0;
  letter label;
  state_id to = 0;
  friend auto operator<=>(const step_edge&, const step_edge&) = default;
};

struct limit_edge {
  state_set sources;
  state_id target = 0;
  friend auto operator<=>(const limit_edge&, const limit_edge&) = default;
};

/// An automaton over words of ordinal length: step transitions consume one
/// letter each, limit transitions fire at limit positions on the exact set of
/// states visited cofinally often below the position.
class ordinal_automaton {
 public:
  class builder;

  std::size_t state_count() const { return state_names_.size(); }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::string& state_name(state_id s) const;
  std::optional<state_id> state_index(std::string_view name) const;

  const std::vector<std::string>& actions() const { return actions_; }
  const std::vector<step_edge>& steps() const { return steps_; }
  const std::vector<limit_edge>& limits() const { return limits_; }
  const state_set& initial() const { return initial_; }
  const state_set& final_states() const { return final_; }

  bool has_level() const { return !level_.empty(); }
  std::uint64_t level_of(state_id s) const;

  /// Distinct letters labeling at least one step transition, in sorted order.
  const std::vector<letter>& step_letters() const { return step_letters_; }
  /// Step transitions labeled by a specific letter, as (from, to) pairs.
  const std::vector<std::pair<state_id, state_id>>& steps_with_letter(
      const letter& a) const;
  /// Step successors of one state under one letter.
  std::vector<state_id> successors(state_id from, const letter& a) const;
  /// Limit targets whose source set equals `sources` exactly.
  const std::vector<state_id>& limit_targets_of(const state_set& sources) const;

  std::string describe_states(const state_set& set) const;

 private:
  friend class builder;
  std::vector<std::string> state_names_;
  std::map<std::string, state_id, std::less<>> index_;
  std::vector<std::string> actions_;
  std::vector<step_edge> steps_;
  std::vector<limit_edge> limits_;
  state_set initial_;
  state_set final_;
  std::vector<std::uint64_t> level_;  // empty when absent
  std::vector<letter> step_letters_;
  std::map<letter, std::vector<std::pair<state_id, state_id>>> by_letter_;
  std::map<state_set, std::vector<state_id>> limits_by_source_;
};

/// Incremental construction; build() freezes and indexes the automaton.
class ordinal_automaton::builder {
 public:
  explicit builder(std::vector<std::string> actions);

  state_id add_state(std::string name);
  state_id state(std::string_view name) const;
  void add_step(state_id from, const letter& label, state_id to);
  void add_limit(const state_set& sources, state_id target);
  void mark_initial(state_id s);
  void mark_final(state_id s);
  void set_level(state_id s, std::uint64_t level);

  ordinal_automaton build();

 private:
  ordinal_automaton a_;
  std::map<state_id, std::uint64_t> pending_level_;
};

/// Checks the level conditions for sequences of length w^k: final states sit
/// at level k, step transitions enter level 0 from below k, and every limit
/// transition climbs to its target level from sources strictly below it, one
/// of which sits directly underneath.  Returns the violations; empty means
/// valid.  Throws std::invalid_argument when the automaton has no level map.
std::vector<std::string> validate_level_diagnostics(const ordinal_automaton& a,
                                                    std::uint64_t k);
bool validate_level(const ordinal_automaton& a, std::uint64_t k);

}  // namespace ocsyn
