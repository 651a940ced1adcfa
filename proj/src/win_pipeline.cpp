#include "ocsyn/win_pipeline.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

namespace ocsyn {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

action_partition action_partition::make(std::vector<std::string> all,
                                        std::vector<std::string> observable,
                                        std::vector<std::string> controllable) {
  action_partition p;
  p.all = sorted_unique(std::move(all));
  p.observable = sorted_unique(std::move(observable));
  p.controllable = sorted_unique(std::move(controllable));
  if (!std::includes(p.observable.begin(), p.observable.end(),
                     p.controllable.begin(), p.controllable.end()))
    throw std::invalid_argument(
        "every controllable action must be observable");
  if (!std::includes(p.all.begin(), p.all.end(), p.observable.begin(),
                     p.observable.end()))
    throw std::invalid_argument("every observable action must be an action");
  return p;
}

std::vector<std::string> action_partition::observable_uncontrollable() const {
  std::vector<std::string> out;
  std::set_difference(observable.begin(), observable.end(),
                      controllable.begin(), controllable.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<std::string> action_partition::unobservable() const {
  std::vector<std::string> out;
  std::set_difference(all.begin(), all.end(), observable.begin(),
                      observable.end(), std::back_inserter(out));
  return out;
}

round_alphabet round_alphabet::make(const std::vector<std::string>& observable) {
  auto acts = sorted_unique(observable);
  if (acts.size() > 10)
    throw std::length_error("round alphabet would enumerate too many letters");
  round_alphabet out;
  out.observable = acts;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << acts.size());
       ++mask) {
    letter a;
    for (std::size_t i = 0; i < acts.size(); ++i)
      if (mask >> i & 1) a.insert(acts[i]);
    out.letters.push_back(std::move(a));
  }
  return out;
}

std::size_t round_alphabet::index_of(const letter& a) const {
  std::uint64_t mask = 0;
  for (const auto& act : a) {
    auto it = std::lower_bound(observable.begin(), observable.end(), act);
    if (it == observable.end() || *it != act)
      throw std::invalid_argument("letter uses a non-observable action '" +
                                  act + "'");
    mask |= std::uint64_t(1) << (it - observable.begin());
  }
  return mask;
}

bool win_automaton::accepts_recurring(
    const std::vector<std::uint32_t>& recurring) const {
  if (recurring.empty()) return false;
  state_set cof;
  for (std::uint32_t s : recurring) {
    cof.insert(pairs[s].q);
    cof |= pairs[s].visited;
  }
  for (const auto& c : candidates)
    if (c == cof) return true;
  return false;
}

win_automaton build_awin(const ordinal_automaton& plant,
                         const action_partition& parts,
                         const summary_relation& summary) {
  const std::uint64_t k = summary.level + 1;
  auto diags = validate_level_diagnostics(plant, k);
  if (!diags.empty())
    throw std::invalid_argument("plant is not valid at its level: " +
                                diags.front());
  if (plant.actions() != parts.all)
    throw std::invalid_argument(
        "action partition does not match the plant action set");

  win_automaton w;
  w.alphabet = round_alphabet::make(parts.observable);
  w.plant_states = plant.state_count();

  for (const auto& e : plant.limits())
    if (plant.final_states().contains(e.target)) {
      if (std::find(w.candidates.begin(), w.candidates.end(), e.sources) ==
          w.candidates.end())
        w.candidates.push_back(e.sources);
    }
  std::sort(w.candidates.begin(), w.candidates.end());

  // One fused move: plant step restricted to its observable part, then one
  // summary block from the step target.
  std::vector<std::vector<const reach_triple*>> blocks(plant.state_count());
  for (const auto& t : summary.triples) blocks[t.from].push_back(&t);

  std::map<win_pair, std::uint32_t> ids;
  const auto intern = [&](const win_pair& p) {
    auto it = ids.find(p);
    if (it != ids.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(w.pairs.size());
    ids.emplace(p, id);
    w.pairs.push_back(p);
    w.pair_names.push_back("(" + plant.state_name(p.q) + "," +
                           plant.describe_states(p.visited) + ")");
    return id;
  };

  for (state_id q0 : plant.initial().elements())
    w.initial.push_back(intern({q0, state_set::of({q0})}));

  for (std::uint32_t s = 0; s < w.pairs.size(); ++s) {
    const state_id q = w.pairs[s].q;
    std::vector<std::set<std::uint32_t>> out(w.alphabet.size());
    for (const auto& e : plant.steps()) {
      if (e.from != q) continue;
      letter a;
      for (const auto& act : e.label)
        if (std::binary_search(parts.observable.begin(),
                               parts.observable.end(), act))
          a.insert(act);
      const std::size_t ai = w.alphabet.index_of(a);
      for (const reach_triple* t : blocks[e.to])
        out[ai].insert(intern({t->to, t->visited}));
    }
    std::vector<std::vector<std::uint32_t>> row;
    for (const auto& targets : out)
      row.emplace_back(targets.begin(), targets.end());
    w.next.push_back(std::move(row));
  }
  return w;
}

buchi_automaton muller_to_buchi(const win_automaton& w) {
  buchi_automaton b;
  b.alphabet = w.alphabet;
  const std::size_t nl = w.alphabet.size();

  std::vector<std::vector<state_id>> cand_elems;
  for (const auto& c : w.candidates) cand_elems.push_back(c.elements());

  // The plant states a pair contributes to any recurring union.
  std::vector<state_set> touches(w.pairs.size());
  for (std::size_t i = 0; i < w.pairs.size(); ++i) {
    touches[i] = w.pairs[i].visited;
    touches[i].insert(w.pairs[i].q);
  }

  struct phase2 {
    std::uint32_t pair;
    std::uint32_t cand;
    std::uint32_t ptr;
    bool wrapped;
    auto operator<=>(const phase2&) const = default;
  };

  // Phase-one states reuse the pair indices; phase-two states follow.
  for (std::size_t i = 0; i < w.pairs.size(); ++i) {
    b.state_names.push_back(w.pair_names[i]);
    b.accepting.push_back(false);
    b.next.emplace_back(nl);
  }
  std::map<phase2, std::uint32_t> ids;
  std::vector<phase2> todo;
  const auto intern = [&](const phase2& p) {
    auto it = ids.find(p);
    if (it != ids.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(b.state_names.size());
    ids.emplace(p, id);
    b.state_names.push_back(w.pair_names[p.pair] + "|C" +
                            std::to_string(p.cand) + "@" +
                            std::to_string(p.ptr) + (p.wrapped ? "!" : ""));
    b.accepting.push_back(p.wrapped);
    b.next.emplace_back(nl);
    todo.push_back(p);
    return id;
  };

  const auto advance = [&](std::uint32_t cand, std::uint32_t ptr,
                           std::uint32_t target_pair) {
    const auto& elems = cand_elems[cand];
    bool wrapped = false;
    if (touches[target_pair].contains(elems[ptr])) {
      if (++ptr == elems.size()) {
        ptr = 0;
        wrapped = true;
      }
    }
    return phase2{target_pair, cand, ptr, wrapped};
  };

  b.initial = w.initial;
  for (std::uint32_t s = 0; s < w.pairs.size(); ++s)
    for (std::size_t ai = 0; ai < nl; ++ai) {
      std::vector<std::uint32_t> targets;
      for (std::uint32_t t : w.next[s][ai]) {
        targets.push_back(t);
        for (std::uint32_t ci = 0; ci < w.candidates.size(); ++ci)
          if (touches[t].is_subset_of(w.candidates[ci]))
            targets.push_back(intern(advance(ci, 0, t)));
      }
      b.next[s][ai] = std::move(targets);
    }
  while (!todo.empty()) {
    const phase2 p = todo.back();
    todo.pop_back();
    const std::uint32_t sid = ids.at(p);
    for (std::size_t ai = 0; ai < nl; ++ai) {
      std::vector<std::uint32_t> targets;
      for (std::uint32_t t : w.next[p.pair][ai])
        if (touches[t].is_subset_of(w.candidates[p.cand]))
          targets.push_back(intern(advance(p.cand, p.ptr, t)));
      b.next[sid][ai] = std::move(targets);
    }
  }
  for (auto& row : b.next)
    for (auto& targets : row) {
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()),
                    targets.end());
    }
  return b;
}

namespace {

struct safra_node {
  int name = 0;
  std::set<std::uint32_t> label;
  bool marked = false;
  std::vector<safra_node> children;
};

using safra_tree = std::optional<safra_node>;

void unmark(safra_node& v) {
  v.marked = false;
  for (auto& c : v.children) unmark(c);
}

void collect_names(const safra_node& v, std::set<int>& names) {
  names.insert(v.name);
  for (const auto& c : v.children) collect_names(c, names);
}

int fresh_name(std::set<int>& used) {
  int n = 1;
  while (used.count(n)) ++n;
  used.insert(n);
  return n;
}

void spawn(safra_node& v, const std::vector<bool>& accepting,
           std::set<int>& used) {
  std::set<std::uint32_t> hit;
  for (std::uint32_t q : v.label)
    if (accepting[q]) hit.insert(q);
  const std::size_t original = v.children.size();
  if (!hit.empty()) {
    safra_node child;
    child.name = fresh_name(used);
    child.label = std::move(hit);
    v.children.push_back(std::move(child));
  }
  for (std::size_t i = 0; i < original; ++i)
    spawn(v.children[i], accepting, used);
}

void powerset(safra_node& v, const buchi_automaton& b, std::size_t ai) {
  std::set<std::uint32_t> image;
  for (std::uint32_t q : v.label)
    image.insert(b.next[q][ai].begin(), b.next[q][ai].end());
  v.label = std::move(image);
  for (auto& c : v.children) powerset(c, b, ai);
}

void remove_states(safra_node& v, const std::set<std::uint32_t>& gone) {
  for (std::uint32_t q : gone) v.label.erase(q);
  for (auto& c : v.children) remove_states(c, gone);
}

void horizontal(safra_node& v) {
  std::set<std::uint32_t> seen;
  for (auto& c : v.children) {
    std::set<std::uint32_t> dup;
    for (std::uint32_t q : c.label)
      if (seen.count(q)) dup.insert(q);
    if (!dup.empty()) remove_states(c, dup);
    seen.insert(c.label.begin(), c.label.end());
    horizontal(c);
  }
}

void drop_empty(safra_node& v) {
  std::vector<safra_node> kept;
  for (auto& c : v.children) {
    if (c.label.empty()) continue;
    drop_empty(c);
    kept.push_back(std::move(c));
  }
  v.children = std::move(kept);
}

void vertical(safra_node& v) {
  if (!v.children.empty()) {
    std::set<std::uint32_t> sum;
    for (const auto& c : v.children)
      sum.insert(c.label.begin(), c.label.end());
    if (sum == v.label) {
      v.children.clear();
      v.marked = true;
      return;
    }
  }
  for (auto& c : v.children) vertical(c);
}

safra_tree safra_step(const safra_tree& tree, const buchi_automaton& b,
                      std::size_t ai) {
  if (!tree) return std::nullopt;
  safra_node root = *tree;
  unmark(root);
  std::set<int> used;
  collect_names(root, used);
  spawn(root, b.accepting, used);
  powerset(root, b, ai);
  horizontal(root);
  if (root.label.empty()) return std::nullopt;
  drop_empty(root);
  vertical(root);
  return root;
}

std::string serialize(const safra_node& v) {
  std::string out = std::to_string(v.name) + ":{";
  bool first = true;
  for (std::uint32_t q : v.label) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(q);
  }
  out += '}';
  if (v.marked) out += '!';
  if (!v.children.empty()) {
    out += '[';
    for (std::size_t i = 0; i < v.children.size(); ++i) {
      if (i) out += ' ';
      out += serialize(v.children[i]);
    }
    out += ']';
  }
  return out;
}

std::string serialize(const safra_tree& t) {
  return t ? serialize(*t) : "empty";
}

bool tree_has_name(const safra_node& v, int name) {
  if (v.name == name) return true;
  for (const auto& c : v.children)
    if (tree_has_name(c, name)) return true;
  return false;
}

bool tree_marks_name(const safra_node& v, int name) {
  if (v.name == name && v.marked) return true;
  for (const auto& c : v.children)
    if (tree_marks_name(c, name)) return true;
  return false;
}

}  // namespace

rabin_automaton safra(const buchi_automaton& b) {
  rabin_automaton rb;
  rb.alphabet = b.alphabet;
  const std::size_t nl = b.alphabet.size();

  safra_tree start;
  if (!b.initial.empty()) {
    safra_node root;
    root.name = 1;
    root.label.insert(b.initial.begin(), b.initial.end());
    start = std::move(root);
  }

  std::vector<safra_tree> trees;
  std::map<std::string, std::uint32_t> ids;
  const auto intern = [&](safra_tree t) {
    std::string key = serialize(t);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(trees.size());
    ids.emplace(std::move(key), id);
    trees.push_back(std::move(t));
    return id;
  };

  rb.initial = intern(std::move(start));
  for (std::uint32_t s = 0; s < trees.size(); ++s) {
    rb.next.emplace_back();
    for (std::size_t ai = 0; ai < nl; ++ai) {
      const safra_tree t = safra_step(trees[s], b, ai);
      rb.next[s].push_back(intern(t));
    }
  }
  for (const auto& t : trees) rb.state_names.push_back(serialize(t));

  std::set<int> names;
  for (const auto& t : trees)
    if (t) collect_names(*t, names);
  for (int name : names) {
    rabin_automaton::pair_sets p;
    p.e_states.resize(trees.size());
    p.f_states.resize(trees.size());
    bool any_mark = false;
    for (std::uint32_t s = 0; s < trees.size(); ++s) {
      p.e_states[s] = !trees[s] || !tree_has_name(*trees[s], name);
      p.f_states[s] = trees[s] && tree_marks_name(*trees[s], name);
      any_mark = any_mark || p.f_states[s];
    }
    // A pair whose return set is empty can never accept.
    if (any_mark) rb.pairs.push_back(std::move(p));
  }
  return rb;
}

parity_automaton iar(const rabin_automaton& rb) {
  const std::size_t r = rb.pairs.size();
  if (r > 8)
    throw std::length_error("too many appearance-record indices");

  parity_automaton d;
  d.alphabet = rb.alphabet;
  const std::size_t nl = rb.alphabet.size();

  using perm = std::vector<std::uint8_t>;
  std::map<std::pair<std::uint32_t, perm>, std::uint32_t> ids;
  std::vector<std::pair<std::uint32_t, perm>> keys;

  const auto priority_of = [&](std::uint32_t q, const perm& pi) {
    std::uint64_t e = 0, f = 0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
      const auto j = pi[i];
      if (rb.pairs[j].e_states[q]) e = i + 1;
      if (rb.pairs[j].f_states[q]) f = i + 1;
    }
    std::uint64_t p = 2 * e;
    if (f > 0) p = std::max(p, 2 * f - 1);
    return p;
  };

  const auto intern = [&](std::uint32_t q, perm pi) {
    auto key = std::make_pair(q, pi);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(d.state_names.size());
    std::string name = rb.state_names[q] + "|[";
    for (std::size_t i = 0; i < pi.size(); ++i) {
      if (i) name += ',';
      name += std::to_string(pi[i]);
    }
    name += ']';
    d.state_names.push_back(std::move(name));
    d.priority.push_back(priority_of(q, pi));
    ids.emplace(std::move(key), id);
    keys.emplace_back(q, std::move(pi));
    return id;
  };

  perm identity(r);
  for (std::size_t i = 0; i < r; ++i) identity[i] = static_cast<std::uint8_t>(i);
  d.initial = intern(rb.initial, identity);

  for (std::uint32_t sid = 0; sid < keys.size(); ++sid) {
    const auto [q, pi] = keys[sid];
    perm moved, rest;
    for (auto j : pi)
      (rb.pairs[j].e_states[q] ? moved : rest).push_back(j);
    perm succ_pi = moved;
    succ_pi.insert(succ_pi.end(), rest.begin(), rest.end());
    std::vector<std::uint32_t> row;
    for (std::size_t ai = 0; ai < nl; ++ai)
      row.push_back(intern(rb.next[q][ai], succ_pi));
    d.next.push_back(std::move(row));
  }
  return d;
}

}  // namespace ocsyn
