#include "ocsyn/reach.hpp"

#include <stdexcept>
#include <vector>

namespace ocsyn {

reach_triple compose(const reach_triple& a, const reach_triple& b) {
  if (a.to != b.from)
    throw std::invalid_argument("compose requires matching endpoints");
  return {a.from, a.visited | b.visited, b.to};
}

reach_relation compose(const reach_relation& a, const reach_relation& b) {
  reach_relation out;
  for (const auto& x : a)
    for (const auto& y : b)
      if (x.to == y.from) out.insert(compose(x, y));
  return out;
}

regular_word any_omega_power(std::uint64_t k) {
  regular_word w = regular_word::any();
  for (std::uint64_t i = 0; i < k; ++i) w = regular_word::omega(w);
  return w;
}

namespace {

/// Closes a relation under composition to a fixpoint.
reach_relation semigroup_closure(const reach_relation& base) {
  reach_relation all = base;
  std::vector<reach_triple> work(base.begin(), base.end());
  while (!work.empty()) {
    const reach_triple t = work.back();
    work.pop_back();
    std::vector<reach_triple> added;
    for (const auto& u : all) {
      if (t.to == u.from) {
        auto c = compose(t, u);
        if (!all.count(c)) added.push_back(c);
      }
      if (u.to == t.from) {
        auto c = compose(u, t);
        if (!all.count(c)) added.push_back(c);
      }
    }
    for (const auto& c : added)
      if (all.insert(c).second) work.push_back(c);
  }
  return all;
}

}  // namespace

const reach_relation& reach_engine::reach(const regular_word& w) {
  std::lock_guard<std::mutex> lock(mu_);
  return reach_locked(w);
}

const reach_relation& reach_engine::reach_locked(const regular_word& w) {
  auto it = memo_.find(w.text());
  if (it != memo_.end()) return *it->second;
  auto r = std::make_unique<reach_relation>(compute(w));
  auto [pos, inserted] = memo_.emplace(w.text(), std::move(r));
  return *pos->second;
}

reach_relation reach_engine::compute(const regular_word& w) {
  switch (w.node_kind()) {
    case regular_word::kind::single: {
      reach_relation out;
      for (const auto& [from, to] : a_.steps_with_letter(w.node_letter()))
        out.insert({from, state_set::of({from}), to});
      return out;
    }
    case regular_word::kind::any: {
      reach_relation out;
      for (const auto& e : a_.steps())
        out.insert({e.from, state_set::of({e.from}), e.to});
      return out;
    }
    case regular_word::kind::concat: {
      const auto& parts = w.parts();
      reach_relation out = reach_locked(parts.front());
      for (std::size_t i = 1; i < parts.size(); ++i)
        out = compose(out, reach_locked(parts[i]));
      return out;
    }
    case regular_word::kind::omega: {
      const reach_relation closure = semigroup_closure(reach_locked(w.body()));
      reach_relation out;
      for (const auto& loop : closure) {
        if (loop.from != loop.to) continue;
        if (compose(loop, loop) != loop) continue;
        const auto& targets = a_.limit_targets_of(loop.visited);
        if (targets.empty()) continue;
        // Period alone: the loop state is the first position, so the visit
        // set is the loop's own.
        for (state_id target : targets)
          out.insert({loop.from, loop.visited, target});
        for (const auto& prefix : closure) {
          if (prefix.to != loop.from) continue;
          for (state_id target : targets)
            out.insert({prefix.from, prefix.visited | loop.visited, target});
        }
      }
      return out;
    }
  }
  throw std::logic_error("unreachable word kind");
}

bool reach_engine::membership(const regular_word& w) {
  const reach_relation& r = reach(w);
  for (const auto& t : r)
    if (a_.initial().contains(t.from) && a_.final_states().contains(t.to))
      return true;
  return false;
}

bool reach_engine::empty_at_length(std::uint64_t k) {
  if (k == 0)
    throw std::invalid_argument("emptiness is defined for lengths w^k, k >= 1");
  return !membership(any_omega_power(k));
}

}  // namespace ocsyn
