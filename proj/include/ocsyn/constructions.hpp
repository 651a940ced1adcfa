#pragma once

#include "ocsyn/automaton.hpp"

namespace ocsyn {

/// Synchronous product over the union alphabet: a joint step carries the
/// union of two component letters that agree on the shared actions, a joint
/// limit is any source set of pairs whose two projections are exactly the
/// source sets of one component limit each.  States are restricted to the
/// ones reachable by saturating steps and limits from the initial pairs.
/// Initial and final sets are the componentwise products; the level map is
/// the componentwise maximum and is present iff both inputs carry one.
ordinal_automaton product(const ordinal_automaton& a1,
                          const ordinal_automaton& a2);

/// Stretches a level-1 automaton to read words of length w^k: level-0 copies
/// idle under every letter between the positions that are multiples of
/// w^(k-1), copy k-1 performs the original steps, and limits climb the copy
/// levels, with the original limits firing at the top.  Requires k >= 2 and
/// a valid level-1 input.
ordinal_automaton lift(const ordinal_automaton& c, std::uint64_t k);

}  // namespace ocsyn
