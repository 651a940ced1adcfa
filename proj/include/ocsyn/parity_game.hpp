#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocsyn/win_pipeline.hpp"

namespace ocsyn {

/// A finite two-player game: the controller player wins a play iff the
/// maximum priority seen infinitely often is even; a player who must move
/// from a vertex with no successors loses there.
struct parity_game {
  struct vertex {
    bool cont_owned = false;
    std::uint64_t priority = 0;
    std::vector<std::uint32_t> succ;
    std::string name;
  };
  std::vector<vertex> vertices;
  std::uint32_t initial = 0;
};

struct game_solution {
  std::vector<bool> cont_wins;
  /// The winner's move at each vertex its owner wins; empty at vertices the
  /// owner loses and at stuck vertices.
  std::vector<std::optional<std::uint32_t>> strategy;
};

/// Zielonka's recursion with positional strategies for both players.
game_solution solve(const parity_game& g);

/// The synthesis arena over a deterministic parity automaton: one
/// environment vertex per automaton state (priority shifted up by two), one
/// controller vertex per (state, observation) with priority zero.  The
/// environment picks an observable uncontrollable subset, the controller
/// answers with a controllable subset, and the automaton reads their union.
struct synthesis_game {
  parity_game game;
  std::vector<std::uint32_t> env_vertex;  // automaton state -> vertex id
  struct cont_vertex_info {
    std::uint32_t source_state = 0;
    letter observation;
    /// Successor vertex -> the full round letter to emit for it; when
    /// several controllable choices reach one successor, the largest choice
    /// (by size, then lexicographically) is kept.
    std::map<std::uint32_t, letter> emit;
  };
  std::vector<std::optional<cont_vertex_info>> cont_info;  // per vertex id
};

synthesis_game build_game(const parity_automaton& d,
                          const action_partition& parts);

}  // namespace ocsyn
