#include "ocsyn/parity_game.hpp"

#include <algorithm>
#include <stdexcept>

namespace ocsyn {

namespace {

/// Solver working copy: the two extra vertices are losing sinks that stuck
/// vertices are routed to, keeping every vertex movable.
struct arena {
  std::vector<std::vector<std::uint32_t>> succ;
  std::vector<std::vector<std::uint32_t>> pred;
  std::vector<bool> cont_owned;
  std::vector<std::uint64_t> prio;
  std::vector<std::optional<std::uint32_t>> strat;

  std::size_t size() const { return succ.size(); }

  /// Attractor of `base` for one player inside `alive`; records the pulling
  /// move for that player's vertices outside the base, choosing the least
  /// successor already attracted.
  std::vector<char> attract(bool for_cont, const std::vector<char>& alive,
                            std::vector<char> base) {
    std::vector<std::uint32_t> work;
    std::vector<std::uint32_t> open(size(), 0);
    for (std::uint32_t v = 0; v < size(); ++v) {
      if (!alive[v]) continue;
      if (base[v]) work.push_back(v);
      for (std::uint32_t u : succ[v])
        if (alive[u]) ++open[v];
    }
    for (std::size_t i = 0; i < work.size(); ++i) {
      const std::uint32_t a = work[i];
      for (std::uint32_t v : pred[a]) {
        if (!alive[v] || base[v]) continue;
        if (cont_owned[v] == for_cont) {
          base[v] = 1;
          for (std::uint32_t u : succ[v])
            if (alive[u] && base[u]) {
              strat[v] = u;
              break;
            }
          work.push_back(v);
        } else if (--open[v] == 0) {
          base[v] = 1;
          work.push_back(v);
        }
      }
    }
    return base;
  }

  /// Winning regions inside `alive`; fills `strat` for the winner of each
  /// vertex it owns.
  void zielonka(const std::vector<char>& alive, std::vector<char>& win_cont,
                std::vector<char>& win_env) {
    win_cont.assign(size(), 0);
    win_env.assign(size(), 0);
    bool any = false;
    std::uint64_t top = 0;
    for (std::uint32_t v = 0; v < size(); ++v)
      if (alive[v]) {
        top = any ? std::max(top, prio[v]) : prio[v];
        any = true;
      }
    if (!any) return;

    const bool cont_turn = top % 2 == 0;
    std::vector<char> base(size(), 0);
    for (std::uint32_t v = 0; v < size(); ++v)
      if (alive[v] && prio[v] == top) base[v] = 1;
    const std::vector<char> head = attract(cont_turn, alive, base);

    std::vector<char> rest(size(), 0);
    for (std::uint32_t v = 0; v < size(); ++v)
      rest[v] = alive[v] && !head[v];
    std::vector<char> sub_cont, sub_env;
    zielonka(rest, sub_cont, sub_env);

    const std::vector<char>& opponent_sub = cont_turn ? sub_env : sub_cont;
    if (std::find(opponent_sub.begin(), opponent_sub.end(), 1) ==
        opponent_sub.end()) {
      // The whole subgame is won by the top player, so the full region is:
      // plays either settle in the subgame or revisit the top priority
      // forever.  Top-priority vertices may move anywhere alive.
      auto& mine = cont_turn ? win_cont : win_env;
      mine = alive;
      for (std::uint32_t v = 0; v < size(); ++v)
        if (alive[v] && prio[v] == top && cont_owned[v] == cont_turn)
          for (std::uint32_t u : succ[v]) {
            if (!alive[u]) continue;
            strat[v] = u;
            break;
          }
      return;
    }

    const std::vector<char> trap = attract(!cont_turn, alive, opponent_sub);
    std::vector<char> rest2(size(), 0);
    for (std::uint32_t v = 0; v < size(); ++v)
      rest2[v] = alive[v] && !trap[v];
    std::vector<char> cont2, env2;
    zielonka(rest2, cont2, env2);
    win_cont = cont2;
    win_env = env2;
    auto& theirs = cont_turn ? win_env : win_cont;
    for (std::uint32_t v = 0; v < size(); ++v)
      if (trap[v]) theirs[v] = 1;
  }
};

}  // namespace

game_solution solve(const parity_game& g) {
  const std::size_t n = g.vertices.size();
  arena a;
  const std::uint32_t sink_cont_wins = static_cast<std::uint32_t>(n);
  const std::uint32_t sink_env_wins = static_cast<std::uint32_t>(n + 1);
  a.succ.resize(n + 2);
  a.pred.resize(n + 2);
  a.cont_owned.resize(n + 2);
  a.prio.resize(n + 2);
  a.strat.resize(n + 2);
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto& vx = g.vertices[v];
    a.cont_owned[v] = vx.cont_owned;
    a.prio[v] = vx.priority;
    auto s = vx.succ;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (std::uint32_t u : s)
      if (u >= n) throw std::invalid_argument("edge target out of range");
    if (s.empty()) s.push_back(vx.cont_owned ? sink_env_wins : sink_cont_wins);
    a.succ[v] = std::move(s);
  }
  a.cont_owned[sink_cont_wins] = true;
  a.prio[sink_cont_wins] = 0;
  a.succ[sink_cont_wins] = {sink_cont_wins};
  a.cont_owned[sink_env_wins] = false;
  a.prio[sink_env_wins] = 1;
  a.succ[sink_env_wins] = {sink_env_wins};
  for (std::uint32_t v = 0; v < a.size(); ++v)
    for (std::uint32_t u : a.succ[v]) a.pred[u].push_back(v);

  std::vector<char> alive(a.size(), 1);
  std::vector<char> win_cont, win_env;
  a.zielonka(alive, win_cont, win_env);

  game_solution out;
  out.cont_wins.resize(n);
  out.strategy.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    out.cont_wins[v] = win_cont[v];
    const bool owner_wins = g.vertices[v].cont_owned == out.cont_wins[v];
    if (owner_wins && a.strat[v] && *a.strat[v] < n)
      out.strategy[v] = a.strat[v];
  }
  return out;
}

synthesis_game build_game(const parity_automaton& d,
                          const action_partition& parts) {
  const auto obs_unc = parts.observable_uncontrollable();
  const auto& ctrl = parts.controllable;
  if (obs_unc.size() > 10 || ctrl.size() > 10)
    throw std::length_error("game would enumerate too many move subsets");

  const auto subsets = [](const std::vector<std::string>& acts) {
    std::vector<letter> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << acts.size());
         ++mask) {
      letter a;
      for (std::size_t i = 0; i < acts.size(); ++i)
        if (mask >> i & 1) a.insert(acts[i]);
      out.push_back(std::move(a));
    }
    return out;
  };
  const std::vector<letter> observations = subsets(obs_unc);
  const std::vector<letter> commands = subsets(ctrl);

  // A command is preferred when it grants more actions; ties break toward
  // the lexicographically larger set so the choice is reproducible.
  const auto prefer = [](const letter& a, const letter& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a > b;
  };

  synthesis_game sg;
  auto& game = sg.game;
  for (std::uint32_t q = 0; q < d.state_count(); ++q) {
    parity_game::vertex v;
    v.cont_owned = false;
    v.priority = d.priority[q] + 2;
    v.name = "e" + std::to_string(q);
    sg.env_vertex.push_back(static_cast<std::uint32_t>(game.vertices.size()));
    game.vertices.push_back(std::move(v));
  }
  sg.cont_info.resize(game.vertices.size());
  for (std::uint32_t q = 0; q < d.state_count(); ++q)
    for (const letter& o : observations) {
      parity_game::vertex v;
      v.cont_owned = true;
      v.priority = 0;
      v.name = "c" + std::to_string(q) + "|" + format(o);
      synthesis_game::cont_vertex_info info;
      info.source_state = q;
      info.observation = o;
      for (const letter& c : commands) {
        letter round = o;
        round.insert(c.begin(), c.end());
        const std::uint32_t target =
            sg.env_vertex[d.next[q][d.alphabet.index_of(round)]];
        v.succ.push_back(target);
        auto it = info.emit.find(target);
        if (it == info.emit.end())
          info.emit.emplace(target, round);
        else if (prefer(round, it->second))
          it->second = round;
      }
      std::sort(v.succ.begin(), v.succ.end());
      v.succ.erase(std::unique(v.succ.begin(), v.succ.end()), v.succ.end());
      const auto id = static_cast<std::uint32_t>(game.vertices.size());
      game.vertices[sg.env_vertex[q]].succ.push_back(id);
      game.vertices.push_back(std::move(v));
      sg.cont_info.push_back(std::move(info));
    }
  game.initial = sg.env_vertex[d.initial];
  return sg;
}

}  // namespace ocsyn
