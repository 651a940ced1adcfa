#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ocsyn/constructions.hpp"
#include "ocsyn/parity_game.hpp"

namespace ocsyn {

/// The control problem input: the physical system automaton, the observable
/// and controllable action names, and the sequence level k of the combined
/// behavior (runs have length w^k).
struct plant_spec {
  ordinal_automaton plant;
  std::vector<std::string> observable;
  std::vector<std::string> controllable;
  std::uint64_t level = 0;
};

struct synthesis_stats {
  std::size_t product_states = 0;
  std::size_t win_pairs = 0;
  std::size_t buchi_states = 0;
  std::size_t rabin_states = 0;
  std::size_t rabin_pairs = 0;
  std::size_t parity_states = 0;
  std::size_t game_vertices = 0;
};

struct synthesis_result {
  bool controller_exists = false;
  std::optional<ordinal_automaton> controller;
  bool verified = false;
  bool obs_ok = false;
  bool unc_ok = false;
  /// Nonempty iff a controller was emitted but failed a follow-up check.
  std::string diagnostic;
  synthesis_stats stats;
};

/// Runs the whole pipeline: multiply plant and negated specification,
/// summarize one environment block, build the round automaton of the plays
/// the environment wins, determinize it down to parity, solve the resulting
/// game, and either extract a finite-state controller or report that none
/// exists.  An extracted controller is rechecked independently; failures are
/// reported in the result, never silently dropped.
synthesis_result synthesize(const plant_spec& s,
                            const ordinal_automaton& neg_spec);

/// True iff the controller speaks only observable letters and every plain
/// state carries the mandated empty-letter self loop.
bool check_obs(const ordinal_automaton& controller,
               const action_partition& parts);

/// True iff at every plain state, each observable uncontrollable subset can
/// be executed: some outgoing letter restricted to uncontrollable actions
/// equals it.
bool check_unc(const ordinal_automaton& controller,
               const action_partition& parts);

/// Independent correctness check: the controller, stretched to level k and
/// multiplied with plant times negated specification, accepts no word of
/// length w^k.
bool verify(const ordinal_automaton& controller, const plant_spec& s,
            const ordinal_automaton& neg_spec);

}  // namespace ocsyn
