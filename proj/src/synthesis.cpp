#include "ocsyn/synthesis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "ocsyn/reach.hpp"
#include "ocsyn/summary.hpp"

namespace ocsyn {

namespace {

action_partition partition_for(const ordinal_automaton& combined,
                               const plant_spec& s) {
  return action_partition::make(combined.actions(), s.observable,
                                s.controllable);
}

std::vector<state_id> plain_states(const ordinal_automaton& c) {
  std::vector<state_id> out;
  for (state_id q = 0; q < c.state_count(); ++q)
    if (!c.has_level() || c.level_of(q) == 0) out.push_back(q);
  return out;
}

/// Strongly connected components of the controller step graph, one sorted
/// component per entry.
std::vector<std::vector<state_id>> step_sccs(
    const std::vector<state_id>& nodes,
    const std::map<state_id, std::set<state_id>>& edges) {
  std::vector<std::vector<state_id>> components;
  std::map<state_id, int> index, low;
  std::vector<state_id> stack;
  std::set<state_id> on_stack;
  int counter = 0;

  struct frame {
    state_id v;
    std::vector<state_id> succ;
    std::size_t next = 0;
  };
  for (state_id root : nodes) {
    if (index.count(root)) continue;
    std::vector<frame> call;
    const auto push = [&](state_id v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack.insert(v);
      frame f;
      f.v = v;
      if (auto it = edges.find(v); it != edges.end())
        f.succ.assign(it->second.begin(), it->second.end());
      call.push_back(std::move(f));
    };
    push(root);
    while (!call.empty()) {
      frame& f = call.back();
      if (f.next < f.succ.size()) {
        const state_id u = f.succ[f.next++];
        if (!index.count(u)) {
          push(u);
        } else if (on_stack.count(u)) {
          low[f.v] = std::min(low[f.v], index[u]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<state_id> comp;
          for (;;) {
            const state_id w = stack.back();
            stack.pop_back();
            on_stack.erase(w);
            comp.push_back(w);
            if (w == f.v) break;
          }
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
        const state_id done = f.v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[done]);
      }
    }
  }
  return components;
}

}  // namespace

synthesis_result synthesize(const plant_spec& s,
                            const ordinal_automaton& neg_spec) {
  if (s.level < 2)
    throw std::invalid_argument("synthesis requires level k >= 2");
  const ordinal_automaton combined = product(s.plant, neg_spec);
  if (!combined.has_level())
    throw std::invalid_argument(
        "plant and negated specification must both carry level maps");
  auto diags = validate_level_diagnostics(combined, s.level);
  if (!diags.empty())
    throw std::invalid_argument(
        "plant times negated specification is not valid at level " +
        std::to_string(s.level) + ": " + diags.front());
  const action_partition parts = partition_for(combined, s);

  synthesis_result res;
  res.stats.product_states = combined.state_count();

  reach_engine engine(combined);
  const summary_relation blocks = summarize(engine, s.level - 1);
  const win_automaton w = build_awin(combined, parts, blocks);
  res.stats.win_pairs = w.pairs.size();
  const buchi_automaton b = muller_to_buchi(w);
  res.stats.buchi_states = b.state_count();
  const rabin_automaton rb = safra(b);
  res.stats.rabin_states = rb.state_count();
  res.stats.rabin_pairs = rb.pairs.size();
  const parity_automaton d = iar(rb);
  res.stats.parity_states = d.state_count();
  const synthesis_game sg = build_game(d, parts);
  res.stats.game_vertices = sg.game.vertices.size();
  const game_solution sol = solve(sg.game);

  if (!sol.cont_wins[sg.game.initial]) {
    res.controller_exists = false;
    return res;
  }
  res.controller_exists = true;

  // Walk the winning region: every environment move is answered by the
  // solved strategy; reachable environment vertices become the states.
  std::vector<std::uint32_t> order;
  std::map<std::uint32_t, std::uint32_t> state_of;
  order.push_back(sg.game.initial);
  state_of[sg.game.initial] = 0;
  struct move {
    std::uint32_t from;
    letter label;
    std::uint32_t to;
  };
  std::vector<move> moves;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::uint32_t ev = order[i];
    for (std::uint32_t cv : sg.game.vertices[ev].succ) {
      if (!sol.cont_wins[cv] || !sol.strategy[cv])
        throw std::logic_error(
            "winning region is not closed under environment moves");
      const std::uint32_t target = *sol.strategy[cv];
      if (!state_of.count(target)) {
        state_of[target] = static_cast<std::uint32_t>(order.size());
        order.push_back(target);
      }
      moves.push_back(
          {state_of.at(ev), sg.cont_info[cv]->emit.at(target),
           state_of.at(target)});
    }
  }

  ordinal_automaton::builder cb(parts.observable);
  std::vector<state_id> cstates;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const state_id q = cb.add_state("d" + std::to_string(i));
    cb.set_level(q, 0);
    cstates.push_back(q);
  }
  const state_id acc = cb.add_state("acc");
  cb.set_level(acc, 1);
  cb.mark_initial(cstates[0]);
  cb.mark_final(acc);

  std::map<state_id, std::set<state_id>> graph;
  for (const auto& m : moves) {
    cb.add_step(cstates[m.from], m.label, cstates[m.to]);
    graph[cstates[m.from]].insert(cstates[m.to]);
  }
  for (const state_id q : cstates) {
    cb.add_step(q, letter{}, q);
    graph[q].insert(q);
  }
  for (const auto& comp : step_sccs(cstates, graph)) {
    if (comp.size() > 16)
      throw std::length_error("controller recurrence component too large");
    for (std::uint64_t mask = 1;
         mask < (std::uint64_t(1) << comp.size()); ++mask) {
      state_set sources;
      for (std::size_t i = 0; i < comp.size(); ++i)
        if (mask >> i & 1) sources.insert(comp[i]);
      cb.add_limit(sources, acc);
    }
  }
  res.controller = cb.build();

  res.obs_ok = check_obs(*res.controller, parts);
  res.unc_ok = check_unc(*res.controller, parts);
  res.verified = verify(*res.controller, s, neg_spec);
  if (!res.verified)
    res.diagnostic =
        "controller failed the independent emptiness check after the "
        "mandated empty-letter self loops were added";
  else if (!res.obs_ok || !res.unc_ok)
    res.diagnostic = "controller violates an interface condition";
  return res;
}

bool check_obs(const ordinal_automaton& controller,
               const action_partition& parts) {
  for (const auto& e : controller.steps())
    for (const auto& act : e.label)
      if (!std::binary_search(parts.observable.begin(), parts.observable.end(),
                              act))
        return false;
  for (const state_id q : plain_states(controller)) {
    const auto succ = controller.successors(q, letter{});
    if (std::find(succ.begin(), succ.end(), q) == succ.end()) return false;
  }
  return true;
}

bool check_unc(const ordinal_automaton& controller,
               const action_partition& parts) {
  const auto obs_unc = parts.observable_uncontrollable();
  if (obs_unc.size() > 10)
    throw std::length_error("too many uncontrollable observations");
  for (const state_id q : plain_states(controller)) {
    for (std::uint64_t mask = 0;
         mask < (std::uint64_t(1) << obs_unc.size()); ++mask) {
      letter want;
      for (std::size_t i = 0; i < obs_unc.size(); ++i)
        if (mask >> i & 1) want.insert(obs_unc[i]);
      bool found = false;
      for (const auto& e : controller.steps()) {
        if (e.from != q) continue;
        letter unc_part;
        for (const auto& act : e.label)
          if (!std::binary_search(parts.controllable.begin(),
                                  parts.controllable.end(), act))
            unc_part.insert(act);
        if (unc_part == want) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

bool verify(const ordinal_automaton& controller, const plant_spec& s,
            const ordinal_automaton& neg_spec) {
  const ordinal_automaton combined = product(s.plant, neg_spec);
  const ordinal_automaton stretched = lift(controller, s.level);
  const ordinal_automaton checked = product(stretched, combined);
  reach_engine engine(checked);
  return engine.empty_at_length(s.level);
}

}  // namespace ocsyn
