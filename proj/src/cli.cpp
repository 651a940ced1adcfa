#include "ocsyn/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "ocsyn/fo_logic.hpp"
#include "ocsyn/json_io.hpp"
#include "ocsyn/reach.hpp"
#include "ocsyn/summary.hpp"
#include "ocsyn/synthesis.hpp"
#include "ocsyn/win_pipeline.hpp"

namespace ocsyn {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json(const std::string& path) {
  return parse_json_text(read_file(path), path);
}

void emit(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + out_path);
  out << text;
}

json letters_to_json(const round_alphabet& alphabet) {
  json out = json::array();
  for (const auto& a : alphabet.letters)
    out.push_back(std::vector<std::string>(a.begin(), a.end()));
  return out;
}

json summary_to_json(const ordinal_automaton& a, const summary_relation& r) {
  json triples = json::array();
  for (const auto& t : r.triples) {
    json e;
    e["from"] = a.state_name(t.from);
    json visited = json::array();
    for (state_id s : t.visited.elements()) visited.push_back(a.state_name(s));
    e["visited"] = std::move(visited);
    e["to"] = a.state_name(t.to);
    triples.push_back(std::move(e));
  }
  json out;
  out["level"] = r.level;
  out["triples"] = std::move(triples);
  return out;
}

json win_to_json(const ordinal_automaton& plant, const win_automaton& w) {
  json out;
  out["letters"] = letters_to_json(w.alphabet);
  json pairs = json::array();
  for (std::size_t i = 0; i < w.pairs.size(); ++i) {
    json p;
    p["name"] = w.pair_names[i];
    p["state"] = plant.state_name(w.pairs[i].q);
    json visited = json::array();
    for (state_id s : w.pairs[i].visited.elements())
      visited.push_back(plant.state_name(s));
    p["visited"] = std::move(visited);
    pairs.push_back(std::move(p));
  }
  out["pairs"] = std::move(pairs);
  out["initial"] = w.initial;
  out["next"] = w.next;
  json candidates = json::array();
  for (const auto& c : w.candidates) {
    json names = json::array();
    for (state_id s : c.elements()) names.push_back(plant.state_name(s));
    candidates.push_back(std::move(names));
  }
  out["candidates"] = std::move(candidates);
  return out;
}

json buchi_to_json(const buchi_automaton& b) {
  json out;
  out["letters"] = letters_to_json(b.alphabet);
  out["states"] = b.state_names;
  out["initial"] = b.initial;
  json accepting = json::array();
  for (std::size_t s = 0; s < b.accepting.size(); ++s)
    if (b.accepting[s]) accepting.push_back(s);
  out["accepting"] = std::move(accepting);
  out["next"] = b.next;
  return out;
}

json rabin_to_json(const rabin_automaton& rb) {
  json out;
  out["letters"] = letters_to_json(rb.alphabet);
  out["states"] = rb.state_names;
  out["initial"] = rb.initial;
  out["next"] = rb.next;
  json pairs = json::array();
  for (const auto& p : rb.pairs) {
    json avoid = json::array(), revisit = json::array();
    for (std::size_t s = 0; s < p.e_states.size(); ++s) {
      if (p.e_states[s]) avoid.push_back(s);
      if (p.f_states[s]) revisit.push_back(s);
    }
    json e;
    e["avoid"] = std::move(avoid);
    e["revisit"] = std::move(revisit);
    pairs.push_back(std::move(e));
  }
  out["pairs"] = std::move(pairs);
  return out;
}

json parity_to_json(const parity_automaton& d) {
  json out;
  out["letters"] = letters_to_json(d.alphabet);
  out["states"] = d.state_names;
  out["initial"] = d.initial;
  out["next"] = d.next;
  out["priority"] = d.priority;
  return out;
}

/// Runs a deterministic automaton over u v^w and returns the set of states
/// visited infinitely often.
std::vector<std::uint32_t> det_recurring(
    const std::vector<std::vector<std::uint32_t>>& next, std::uint32_t initial,
    const std::vector<std::size_t>& u, const std::vector<std::size_t>& v) {
  std::uint32_t s = initial;
  for (std::size_t a : u) s = next[s][a];
  std::vector<std::int64_t> seen_at(next.size(), -1);
  std::vector<std::uint32_t> boundary;
  while (seen_at[s] < 0) {
    seen_at[s] = static_cast<std::int64_t>(boundary.size());
    boundary.push_back(s);
    for (std::size_t a : v) s = next[s][a];
  }
  std::set<std::uint32_t> rec;
  for (std::size_t i = static_cast<std::size_t>(seen_at[s]);
       i < boundary.size(); ++i) {
    std::uint32_t q = boundary[i];
    for (std::size_t a : v) {
      rec.insert(q);
      q = next[q][a];
    }
    rec.insert(q);
  }
  return {rec.begin(), rec.end()};
}

bool rabin_accepts_lasso(const rabin_automaton& rb,
                         const std::vector<std::size_t>& u,
                         const std::vector<std::size_t>& v) {
  const auto rec = det_recurring(rb.next, rb.initial, u, v);
  for (const auto& p : rb.pairs) {
    bool hits_e = false, hits_f = false;
    for (std::uint32_t q : rec) {
      hits_e = hits_e || p.e_states[q];
      hits_f = hits_f || p.f_states[q];
    }
    if (!hits_e && hits_f) return true;
  }
  return false;
}

bool parity_accepts_lasso(const parity_automaton& d,
                          const std::vector<std::size_t>& u,
                          const std::vector<std::size_t>& v) {
  const auto rec = det_recurring(d.next, d.initial, u, v);
  std::uint64_t top = 0;
  for (std::uint32_t q : rec) top = std::max(top, d.priority[q]);
  return top % 2 == 1;
}

bool buchi_accepts_lasso(const buchi_automaton& b,
                         const std::vector<std::size_t>& u,
                         const std::vector<std::size_t>& v) {
  const std::size_t n = b.state_count();
  std::vector<char> after_u(n, 0);
  for (std::uint32_t s : b.initial) after_u[s] = 1;
  for (std::size_t a : u) {
    std::vector<char> nxt(n, 0);
    for (std::size_t s = 0; s < n; ++s)
      if (after_u[s])
        for (std::uint32_t t : b.next[s][a]) nxt[t] = 1;
    after_u = std::move(nxt);
  }
  // One v block: can s reach t, and can it do so touching an accepting state.
  std::vector<std::vector<char>> block(n), block_acc(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<char> cur(n, 0), cur_acc(n, 0);
    cur[s] = 1;
    cur_acc[s] = b.accepting[s] ? 1 : 0;
    for (std::size_t a : v) {
      std::vector<char> nxt(n, 0), nxt_acc(n, 0);
      for (std::size_t q = 0; q < n; ++q) {
        if (!cur[q]) continue;
        for (std::uint32_t t : b.next[q][a]) {
          nxt[t] = 1;
          if (cur_acc[q] || b.accepting[t]) nxt_acc[t] = 1;
        }
      }
      cur = std::move(nxt);
      cur_acc = std::move(nxt_acc);
    }
    block[s] = std::move(cur);
    block_acc[s] = std::move(cur_acc);
  }
  // States reachable at block boundaries after u.
  std::vector<char> reach = after_u;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s)
      if (reach[s])
        for (std::size_t t = 0; t < n; ++t)
          if (block[s][t] && !reach[t]) {
            reach[t] = 1;
            changed = true;
          }
  }
  // Accepting cycle of blocks from some reachable boundary state.
  for (std::size_t s = 0; s < n; ++s) {
    if (!reach[s]) continue;
    std::vector<char> seen(n, 0), seen_acc(n, 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t t = 0; t < n; ++t) {
          const bool via_start = q == s;
          const bool q_seen = via_start || seen[q];
          if (!q_seen || !block[q][t]) continue;
          const bool acc =
              (via_start ? false : seen_acc[q]) || block_acc[q][t];
          if (!seen[t] || (acc && !seen_acc[t])) {
            seen[t] = 1;
            if (acc) seen_acc[t] = 1;
            changed = true;
          }
        }
      }
    }
    if (seen_acc[s]) return true;
  }
  return false;
}

struct stage_chain {
  ordinal_automaton combined;
  action_partition parts;
  win_automaton win;

  stage_chain(const plant_spec& s, const ordinal_automaton& neg_spec)
      : combined(product(s.plant, neg_spec)),
        parts(action_partition::make(combined.actions(), s.observable,
                                     s.controllable)) {
    const auto diags = validate_level_diagnostics(combined, s.level);
    if (!diags.empty())
      throw std::invalid_argument(
          "plant times negated specification is not valid at level " +
          std::to_string(s.level) + ": " + diags.front());
    reach_engine engine(combined);
    win = build_awin(combined, parts, summarize(engine, s.level - 1));
  }
};

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{
      "Controller synthesis for systems running over transfinite time"};
  app.require_subcommand(1);
  int code = 0;
  std::string out_path;
  app.add_option("--out", out_path, "write the JSON report here, not stdout");

  std::string automaton_path, left_path, right_path, plant_path, negspec_path;
  std::string controller_path, word_text, formula_text, stage = "parity";
  std::uint64_t level = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;

  auto* validate = app.add_subcommand(
      "validate", "check the level conditions of an automaton");
  validate->add_option("--automaton", automaton_path, "automaton JSON file")
      ->required();
  validate->add_option("--level", level, "sequence level k")->required();
  validate->callback([&] {
    const auto a = automaton_from_json(load_json(automaton_path));
    const auto violations = validate_level_diagnostics(a, level);
    json report;
    report["valid"] = violations.empty();
    report["violations"] = violations;
    emit(report, out_path);
    code = violations.empty() ? 0 : 1;
  });

  auto* product_cmd =
      app.add_subcommand("product", "multiply two automata");
  product_cmd->add_option("--left", left_path, "automaton JSON file")
      ->required();
  product_cmd->add_option("--right", right_path, "automaton JSON file")
      ->required();
  product_cmd->callback([&] {
    const auto a = automaton_from_json(load_json(left_path));
    const auto b = automaton_from_json(load_json(right_path));
    emit(automaton_to_json(product(a, b)), out_path);
  });

  auto* lift_cmd = app.add_subcommand(
      "lift", "stretch a level-1 automaton to read level-k sequences");
  lift_cmd->add_option("--automaton", automaton_path, "automaton JSON file")
      ->required();
  lift_cmd->add_option("--level", level, "target level k (at least 2)")
      ->required();
  lift_cmd->callback([&] {
    const auto c = automaton_from_json(load_json(automaton_path));
    emit(automaton_to_json(lift(c, level)), out_path);
  });

  auto* summarize_cmd = app.add_subcommand(
      "summarize", "path summaries along the wildcard word of length w^i");
  summarize_cmd
      ->add_option("--automaton", automaton_path, "automaton JSON file")
      ->required();
  summarize_cmd->add_option("--level", level, "summary level i")->required();
  summarize_cmd->callback([&] {
    const auto a = automaton_from_json(load_json(automaton_path));
    reach_engine engine(a);
    emit(summary_to_json(a, summarize(engine, level)), out_path);
  });

  auto* membership_cmd = app.add_subcommand(
      "membership", "does the automaton accept an instance of the word");
  membership_cmd
      ->add_option("--automaton", automaton_path, "automaton JSON file")
      ->required();
  membership_cmd
      ->add_option("--word", word_text,
                   "word term, e.g. '(omega (concat (omega {a}) {b}))'")
      ->required();
  membership_cmd->callback([&] {
    const auto a = automaton_from_json(load_json(automaton_path));
    reach_engine engine(a);
    json report;
    report["member"] = engine.membership(parse_word(word_text));
    emit(report, out_path);
  });

  const auto add_problem_inputs = [&](CLI::App* sub) {
    sub->add_option("--plant", plant_path,
                    "plant JSON file (automaton, observable, controllable, "
                    "level)")
        ->required();
    sub->add_option("--negspec", negspec_path,
                    "automaton JSON file accepting the violating behaviors")
        ->required();
  };

  auto* awin_cmd = app.add_subcommand(
      "awin", "round automaton of the plays the environment wins");
  add_problem_inputs(awin_cmd);
  awin_cmd->callback([&] {
    const auto s = plant_from_json(load_json(plant_path));
    const auto neg = automaton_from_json(load_json(negspec_path));
    stage_chain chain(s, neg);
    emit(win_to_json(chain.combined, chain.win), out_path);
  });

  auto* det_cmd = app.add_subcommand(
      "determinize", "run the determinization chain and dump one stage");
  add_problem_inputs(det_cmd);
  det_cmd->add_option("--stage", stage, "awin | buchi | rabin | parity")
      ->check(CLI::IsMember({"awin", "buchi", "rabin", "parity"}));
  det_cmd->add_option("--samples", samples,
                      "cross-check this many random lasso words across the "
                      "buchi, rabin and parity stages");
  det_cmd->add_option("--seed", seed, "seed for --samples");
  det_cmd->callback([&] {
    const auto s = plant_from_json(load_json(plant_path));
    const auto neg = automaton_from_json(load_json(negspec_path));
    stage_chain chain(s, neg);
    if (stage == "awin") {
      emit(win_to_json(chain.combined, chain.win), out_path);
      return;
    }
    const buchi_automaton b = muller_to_buchi(chain.win);
    if (stage == "buchi") {
      emit(buchi_to_json(b), out_path);
      return;
    }
    const rabin_automaton rb = safra(b);
    if (samples > 0) {
      const parity_automaton d = iar(rb);
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> letter_of(
          0, b.alphabet.size() - 1);
      std::uniform_int_distribution<std::size_t> len_u(0, 6), len_v(1, 6);
      std::uint64_t mismatches = 0;
      for (std::uint64_t i = 0; i < samples; ++i) {
        std::vector<std::size_t> u(len_u(rng)), v(len_v(rng));
        for (auto& a : u) a = letter_of(rng);
        for (auto& a : v) a = letter_of(rng);
        const bool vb = buchi_accepts_lasso(b, u, v);
        const bool vr = rabin_accepts_lasso(rb, u, v);
        const bool vd = parity_accepts_lasso(d, u, v);
        if (vb != vr || vr != vd) ++mismatches;
      }
      json report;
      report["samples"] = samples;
      report["mismatches"] = mismatches;
      emit(report, out_path);
      code = mismatches == 0 ? 0 : 1;
      return;
    }
    if (stage == "rabin") {
      emit(rabin_to_json(rb), out_path);
      return;
    }
    emit(parity_to_json(iar(rb)), out_path);
  });

  auto* game_cmd =
      app.add_subcommand("game", "build and solve the synthesis game");
  add_problem_inputs(game_cmd);
  game_cmd->callback([&] {
    const auto s = plant_from_json(load_json(plant_path));
    const auto neg = automaton_from_json(load_json(negspec_path));
    stage_chain chain(s, neg);
    const synthesis_game sg = build_game(iar(safra(muller_to_buchi(chain.win))),
                                         chain.parts);
    const game_solution sol = solve(sg.game);
    json vertices = json::array();
    for (const auto& v : sg.game.vertices) {
      json e;
      e["name"] = v.name;
      e["owner"] = v.cont_owned ? "controller" : "environment";
      e["priority"] = v.priority;
      e["succ"] = v.succ;
      vertices.push_back(std::move(e));
    }
    json report;
    report["vertices"] = std::move(vertices);
    report["initial"] = sg.game.initial;
    report["controller_wins"] = sol.cont_wins;
    json strategy = json::array();
    for (const auto& m : sol.strategy)
      strategy.push_back(m ? json(*m) : json(nullptr));
    report["strategy"] = std::move(strategy);
    emit(report, out_path);
  });

  auto* synth_cmd = app.add_subcommand(
      "synthesize", "solve the control problem end to end");
  add_problem_inputs(synth_cmd);
  synth_cmd->callback([&] {
    const auto s = plant_from_json(load_json(plant_path));
    const auto neg = automaton_from_json(load_json(negspec_path));
    const synthesis_result res = synthesize(s, neg);
    json report;
    report["controller_exists"] = res.controller_exists;
    report["controller"] =
        res.controller ? automaton_to_json(*res.controller) : json(nullptr);
    report["verified"] = res.verified;
    report["obs_ok"] = res.obs_ok;
    report["unc_ok"] = res.unc_ok;
    report["diagnostic"] = res.diagnostic;
    json stats;
    stats["product_states"] = res.stats.product_states;
    stats["win_pairs"] = res.stats.win_pairs;
    stats["buchi_states"] = res.stats.buchi_states;
    stats["rabin_states"] = res.stats.rabin_states;
    stats["rabin_pairs"] = res.stats.rabin_pairs;
    stats["parity_states"] = res.stats.parity_states;
    stats["game_vertices"] = res.stats.game_vertices;
    report["stats"] = std::move(stats);
    emit(report, out_path);
    code = res.controller_exists ? 0 : 2;
  });

  auto* verify_cmd = app.add_subcommand(
      "verify", "independently check a controller against the problem");
  add_problem_inputs(verify_cmd);
  verify_cmd
      ->add_option("--controller", controller_path, "automaton JSON file")
      ->required();
  verify_cmd->callback([&] {
    const auto s = plant_from_json(load_json(plant_path));
    const auto neg = automaton_from_json(load_json(negspec_path));
    const auto c = automaton_from_json(load_json(controller_path));
    json report;
    report["verified"] = verify(c, s, neg);
    emit(report, out_path);
  });

  auto* fo_cmd = app.add_subcommand(
      "translate-fo", "translate a temporal formula to first-order form");
  fo_cmd
      ->add_option("--formula", formula_text,
                   "prefix form, e.g. '(U w^2 (p) (q))'")
      ->required();
  fo_cmd->callback([&] {
    const ltl_formula f = parse_ltl(formula_text);
    json report;
    report["ltl"] = f.text();
    report["fo"] = ltl_to_fo(f, "x0").text();
    emit(report, out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace ocsyn
