#include "ocsyn/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ocsyn {

namespace {

letter restrict_to(const letter& a, const std::vector<std::string>& acts) {
  letter out;
  for (const auto& x : a)
    if (std::binary_search(acts.begin(), acts.end(), x)) out.insert(x);
  return out;
}

letter union_of(const letter& a, const letter& b) {
  letter out = a;
  out.insert(b.begin(), b.end());
  return out;
}

using state_pair = std::pair<state_id, state_id>;

struct joint_step {
  state_pair from;
  letter label;
  state_pair to;
};

std::set<state_id> sources_of(const limit_edge& e) {
  auto v = e.sources.elements();
  return {v.begin(), v.end()};
}

}  // namespace

ordinal_automaton product(const ordinal_automaton& a1,
                          const ordinal_automaton& a2) {
  std::vector<std::string> acts = a1.actions();
  acts.insert(acts.end(), a2.actions().begin(), a2.actions().end());
  std::sort(acts.begin(), acts.end());
  acts.erase(std::unique(acts.begin(), acts.end()), acts.end());

  // A joint step exists for each pair of component steps whose labels agree
  // on the shared actions; its label is their union.
  std::vector<joint_step> joint;
  for (const auto& e1 : a1.steps())
    for (const auto& e2 : a2.steps())
      if (restrict_to(e1.label, a2.actions()) ==
          restrict_to(e2.label, a1.actions()))
        joint.push_back({{e1.from, e2.from},
                         union_of(e1.label, e2.label),
                         {e1.to, e2.to}});

  std::set<state_pair> reachable;
  for (state_id q1 : a1.initial().elements())
    for (state_id q2 : a2.initial().elements())
      reachable.insert({q1, q2});

  const auto limit_pool = [&](const limit_edge& l1, const limit_edge& l2) {
    std::vector<state_pair> pool;
    for (state_id p1 : l1.sources.elements())
      for (state_id p2 : l2.sources.elements())
        if (reachable.count({p1, p2})) pool.push_back({p1, p2});
    return pool;
  };
  const auto projections_cover = [](const std::vector<state_pair>& pool,
                                    const limit_edge& l1,
                                    const limit_edge& l2) {
    std::set<state_id> proj1, proj2;
    for (const auto& [p1, p2] : pool) {
      proj1.insert(p1);
      proj2.insert(p2);
    }
    return proj1 == sources_of(l1) && proj2 == sources_of(l2);
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& s : joint)
      if (reachable.count(s.from) && reachable.insert(s.to).second)
        changed = true;
    for (const auto& l1 : a1.limits())
      for (const auto& l2 : a2.limits()) {
        const auto pool = limit_pool(l1, l2);
        if (projections_cover(pool, l1, l2) &&
            reachable.insert({l1.target, l2.target}).second)
          changed = true;
      }
  }

  ordinal_automaton::builder b(acts);
  std::map<state_pair, state_id> ids;
  for (const auto& [q1, q2] : reachable)
    ids[{q1, q2}] = b.add_state("(" + a1.state_name(q1) + "," +
                                a2.state_name(q2) + ")");

  for (const auto& s : joint)
    if (reachable.count(s.from) && reachable.count(s.to))
      b.add_step(ids.at(s.from), s.label, ids.at(s.to));

  for (const auto& l1 : a1.limits())
    for (const auto& l2 : a2.limits()) {
      const auto pool = limit_pool(l1, l2);
      if (!projections_cover(pool, l1, l2)) continue;
      if (pool.size() > 20)
        throw std::length_error("product limit source pool too large");
      const std::set<state_id> want1 = sources_of(l1);
      const std::set<state_id> want2 = sources_of(l2);
      const state_id target = ids.at({l1.target, l2.target});
      for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << pool.size());
           ++mask) {
        std::set<state_id> proj1, proj2;
        state_set sources;
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (mask >> i & 1) {
            proj1.insert(pool[i].first);
            proj2.insert(pool[i].second);
            sources.insert(ids.at(pool[i]));
          }
        if (proj1 == want1 && proj2 == want2) b.add_limit(sources, target);
      }
    }

  for (state_id q1 : a1.initial().elements())
    for (state_id q2 : a2.initial().elements())
      b.mark_initial(ids.at({q1, q2}));
  for (state_id q1 : a1.final_states().elements())
    for (state_id q2 : a2.final_states().elements())
      if (auto it = ids.find({q1, q2}); it != ids.end())
        b.mark_final(it->second);

  if (a1.has_level() && a2.has_level())
    for (const auto& [pair, id] : ids)
      b.set_level(id,
                  std::max(a1.level_of(pair.first), a2.level_of(pair.second)));

  return b.build();
}

ordinal_automaton lift(const ordinal_automaton& c, std::uint64_t k) {
  if (k < 2) throw std::invalid_argument("lift requires k >= 2");
  auto diags = validate_level_diagnostics(c, 1);
  if (!diags.empty())
    throw std::invalid_argument("lift input is not a valid level-1 automaton: " +
                                diags.front());
  if (c.actions().size() > 12)
    throw std::length_error("lift would enumerate too many letters");

  std::vector<letter> all_letters;
  const auto& acts = c.actions();
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << acts.size());
       ++mask) {
    letter a;
    for (std::size_t i = 0; i < acts.size(); ++i)
      if (mask >> i & 1) a.insert(acts[i]);
    all_letters.push_back(std::move(a));
  }

  const std::size_t n = c.state_count();
  ordinal_automaton::builder b(acts);
  std::vector<std::vector<state_id>> at(k + 1, std::vector<state_id>(n));
  for (std::uint64_t i = 0; i <= k; ++i)
    for (state_id q = 0; q < n; ++q) {
      at[i][q] = b.add_state("(" + std::to_string(i) + "," + c.state_name(q) +
                             ")");
      b.set_level(at[i][q], i);
    }

  for (state_id q : c.initial().elements()) b.mark_initial(at[k - 1][q]);
  for (state_id q : c.final_states().elements()) b.mark_final(at[k][q]);

  for (const auto& e : c.steps())
    b.add_step(at[k - 1][e.from], e.label, at[0][e.to]);
  for (std::uint64_t i = 0; i + 2 <= k; ++i)
    for (state_id q = 0; q < n; ++q) {
      if (c.final_states().contains(q)) continue;
      for (const auto& a : all_letters) b.add_step(at[i][q], a, at[0][q]);
    }

  for (state_id q = 0; q < n; ++q)
    for (std::uint64_t i = 1; i < k; ++i) {
      state_set sources;
      for (std::uint64_t j = 0; j < i; ++j) sources.insert(at[j][q]);
      b.add_limit(sources, at[i][q]);
    }
  for (const auto& e : c.limits()) {
    state_set sources;
    for (state_id q : e.sources.elements())
      for (std::uint64_t j = 0; j < k; ++j) sources.insert(at[j][q]);
    b.add_limit(sources, at[k][e.target]);
  }

  return b.build();
}

}  // namespace ocsyn
