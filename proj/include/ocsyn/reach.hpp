#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>

#include "ocsyn/automaton.hpp"

namespace ocsyn {

/// One path summary: a path from `from` to `to` whose set of states visited
/// at positions strictly before the end is exactly `visited`.  The start
/// position counts as visited; the end position does not.
struct reach_triple {
  state_id from = 0;
  state_set visited;
  state_id to = 0;
  friend auto operator<=>(const reach_triple&, const reach_triple&) = default;
};

using reach_relation = std::set<reach_triple>;

/// Joins two path summaries end to start; requires a.to == b.from.
reach_triple compose(const reach_triple& a, const reach_triple& b);

/// All pairwise joins of matching summaries.
reach_relation compose(const reach_relation& a, const reach_relation& b);

/// The wildcard word of length w^k: k-fold omega power of the wildcard
/// letter; k = 0 gives the single wildcard letter.
regular_word any_omega_power(std::uint64_t k);

/// Computes path summaries of an automaton along word expressions, one
/// relation per expression, memoized by the expression text.  A shared engine
/// serializes its calls; distinct engines are independent.
class reach_engine {
 public:
  explicit reach_engine(const ordinal_automaton& a) : a_(a) {}

  const ordinal_automaton& automaton() const { return a_; }

  /// The relation of all (from, visited, to) summaries of paths labeled by an
  /// instance of w.  The wildcard expands over the letters that actually
  /// label step transitions.
  const reach_relation& reach(const regular_word& w);

  /// True iff some summary of w runs from an initial to a final state.
  bool membership(const regular_word& w);

  /// True iff the automaton accepts no word of length w^k.  Requires k >= 1.
  bool empty_at_length(std::uint64_t k);

 private:
  const reach_relation& reach_locked(const regular_word& w);
  reach_relation compute(const regular_word& w);

  const ordinal_automaton& a_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<reach_relation>> memo_;
};

}  // namespace ocsyn
