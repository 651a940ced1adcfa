#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ocsyn/automaton.hpp"
#include "ocsyn/summary.hpp"

namespace ocsyn {

/// The split of the action set into observability and controllability tiers;
/// controllable actions are observable.
struct action_partition {
  std::vector<std::string> all;
  std::vector<std::string> observable;
  std::vector<std::string> controllable;

  /// Sorts, deduplicates and checks controllable <= observable <= all;
  /// throws std::invalid_argument on a violation.
  static action_partition make(std::vector<std::string> all,
                               std::vector<std::string> observable,
                               std::vector<std::string> controllable);

  /// Observable uncontrollable actions: what the environment reveals.
  std::vector<std::string> observable_uncontrollable() const;
  /// Unobservable actions: all minus observable.
  std::vector<std::string> unobservable() const;
};

/// The alphabet of one game round: every subset of the observable actions,
/// indexed by bitmask over the sorted action list.
struct round_alphabet {
  std::vector<std::string> observable;
  std::vector<letter> letters;

  std::size_t size() const { return letters.size(); }
  std::size_t index_of(const letter& a) const;

  static round_alphabet make(const std::vector<std::string>& observable);
};

/// One state of the round automaton: the plant state reached at a block
/// boundary and the visit set of the block that led there.
struct win_pair {
  state_id q = 0;
  state_set visited;
  friend auto operator<=>(const win_pair&, const win_pair&) = default;
};

/// Nondeterministic automaton over round letters whose runs are the abstract
/// plays, accepting exactly the plays the environment wins.  A transition
/// fuses one plant step (restricted to its observable part) with one summary
/// block.  A run is accepting iff the union of the recurring pairs' states,
/// first components included, is the source set of a limit transition into a
/// final plant state; those source sets are the candidates.
struct win_automaton {
  round_alphabet alphabet;
  std::vector<win_pair> pairs;
  std::vector<std::string> pair_names;
  std::vector<std::vector<std::vector<std::uint32_t>>> next;  // [state][letter]
  std::vector<std::uint32_t> initial;
  std::vector<state_set> candidates;
  std::size_t plant_states = 0;

  /// The recurring-set acceptance predicate on a set of pair states.
  bool accepts_recurring(const std::vector<std::uint32_t>& recurring) const;
};

/// Nondeterministic Buchi automaton over round letters.
struct buchi_automaton {
  round_alphabet alphabet;
  std::vector<std::string> state_names;
  std::vector<std::vector<std::vector<std::uint32_t>>> next;  // [state][letter]
  std::vector<std::uint32_t> initial;
  std::vector<bool> accepting;

  std::size_t state_count() const { return state_names.size(); }
};

/// Deterministic complete Rabin automaton: a pair j accepts a run that
/// eventually avoids e_states[j] and returns to f_states[j] forever often.
struct rabin_automaton {
  round_alphabet alphabet;
  std::vector<std::string> state_names;
  std::vector<std::vector<std::uint32_t>> next;  // [state][letter] -> state
  std::uint32_t initial = 0;
  struct pair_sets {
    std::vector<bool> e_states;
    std::vector<bool> f_states;
  };
  std::vector<pair_sets> pairs;

  std::size_t state_count() const { return state_names.size(); }
};

/// Deterministic complete parity automaton; a run is accepting iff the
/// maximum priority visited infinitely often is odd.
struct parity_automaton {
  round_alphabet alphabet;
  std::vector<std::string> state_names;
  std::vector<std::vector<std::uint32_t>> next;  // [state][letter] -> state
  std::uint32_t initial = 0;
  std::vector<std::uint64_t> priority;

  std::size_t state_count() const { return state_names.size(); }
};

/// Builds the round automaton of a leveled plant: states are reachable
/// (state, visit-set) pairs, one transition per plant step whose observable
/// restriction is the round letter, chained with one block summary.
/// `summary` must be the level-(k-1) relation of the same plant, where k is
/// the plant's level; the plant must validate at that level and its action
/// set must equal the partition's full set.
win_automaton build_awin(const ordinal_automaton& plant,
                         const action_partition& parts,
                         const summary_relation& summary);

/// Removes the recurring-set acceptance by guessing a candidate and checking
/// it round-robin: phase one simulates the round automaton, phase two pins a
/// candidate, rejects transitions leaving it, and raises the accepting flag
/// each time the round-robin pointer wraps.  Language is preserved.
buchi_automaton muller_to_buchi(const win_automaton& w);

/// Classical tree determinization to a deterministic complete Rabin
/// automaton; one Rabin pair per tree node name that is ever flagged.
rabin_automaton safra(const buchi_automaton& b);

/// Appearance-record conversion to a deterministic parity automaton: states
/// carry a permutation of the Rabin pair indices, avoidance hits move their
/// indices to the front, and the priority reads the deepest hit position,
/// even for avoidance sets and odd for return sets.
parity_automaton iar(const rabin_automaton& rb);

}  // namespace ocsyn
