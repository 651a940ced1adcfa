#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ocsyn/ordinal.hpp"

namespace ocsyn {

/// Temporal formulas over transfinite positions: atomic propositions,
/// negation, conjunction, a step operator jumping a fixed ordinal ahead,
/// and an until operator bounded by an ordinal or left unbounded.
class ltl_formula {
 public:
  enum class kind { prop, negation, conjunction, next, until };

  static ltl_formula prop(std::string name);
  static ltl_formula negation(ltl_formula f);
  static ltl_formula conjunction(ltl_formula lhs, ltl_formula rhs);
  static ltl_formula next(ordinal step, ltl_formula f);
  static ltl_formula until(until_bound bound, ltl_formula lhs,
                           ltl_formula rhs);

  kind node_kind() const;
  const std::string& prop_name() const;
  const ltl_formula& lhs() const;
  const ltl_formula& rhs() const;
  const ordinal& step() const;
  const until_bound& bound() const;

  /// Prefix text, e.g. "(U w (p) (q))"; parse_ltl round-trips it.
  std::string text() const;

 private:
  struct node;
  explicit ltl_formula(std::shared_ptr<const node> n) : node_(std::move(n)) {}
  std::shared_ptr<const node> node_;
};

/// Parses the prefix syntax: (p) | (not f) | (and f f) | (X ord f) |
/// (U bound f f), where ord uses the ordinal text form and bound is an
/// ordinal or w^w. Throws parse_error on malformed input.
ltl_formula parse_ltl(std::string_view text);

/// First-order formulas over a linear order with unary predicates.
/// Atoms are x < y, x = y, and p(x); the connectives are negation,
/// conjunction, disjunction, implication, and the two quantifiers.
class fo_formula {
 public:
  enum class kind {
    less,
    equal,
    pred,
    negation,
    conjunction,
    disjunction,
    implication,
    exists,
    forall
  };

  static fo_formula less(std::string x, std::string y);
  static fo_formula equal(std::string x, std::string y);
  static fo_formula pred(std::string name, std::string x);
  static fo_formula negation(fo_formula f);
  static fo_formula conjunction(fo_formula lhs, fo_formula rhs);
  static fo_formula disjunction(fo_formula lhs, fo_formula rhs);
  static fo_formula implication(fo_formula lhs, fo_formula rhs);
  static fo_formula exists(std::string var, fo_formula body);
  static fo_formula forall(std::string var, fo_formula body);

  kind node_kind() const;
  const std::string& left_var() const;   // less/equal
  const std::string& right_var() const;  // less/equal
  const std::string& pred_name() const;
  const std::string& pred_var() const;
  const fo_formula& lhs() const;  // binary connectives; also negation child
  const fo_formula& rhs() const;
  const std::string& bound_var() const;  // quantifiers
  const fo_formula& body() const;

  std::string text() const;
  std::set<std::string> free_variables() const;
  std::size_t node_count() const;

  const void* identity() const;  // stable per shared subterm, for memo keys

 private:
  struct node;
  explicit fo_formula(std::shared_ptr<const node> n) : node_(std::move(n)) {}
  std::shared_ptr<const node> node_;
};

/// Hands out distinct variable names ("z1", "z2", ...) so generated
/// formulas never capture a variable bound further out.
class variable_supply {
 public:
  std::string fresh();

 private:
  std::uint64_t counter_ = 0;
};

/// Formula with free variables x and y expressing y = x + beta using only
/// the order. Zero gives equality; one gives the least strict successor;
/// larger values peel one leading-term unit at a time, each unit expressed
/// as the least upper bound of the next-lower power's steps.
fo_formula defplus(const ordinal& beta, const std::string& x,
                   const std::string& y, variable_supply& vars);

/// Compositional translation of a temporal formula to a first-order one
/// whose single free variable is the evaluation position.
fo_formula ltl_to_fo(const ltl_formula& f, const std::string& x0);

/// Finite evaluation domain: ordinals below w^k whose normal-form
/// coefficients are all below the bound, in ascending order. Universal
/// quantifiers are restricted to the interior (coefficients at most
/// bound-2): boundary elements have truncated successors, and letting a
/// universal claim range over them would falsify every limit-step formula
/// on the finite approximation. Existentials range over the full domain.
struct fo_domain {
  std::uint32_t k = 0;
  std::uint64_t coefficient_bound = 0;
  std::vector<ordinal> elements;
  std::vector<char> universal;  // parallel to elements

  static fo_domain make(std::uint32_t k, std::uint64_t coefficient_bound);
  bool contains(const ordinal& a) const;
  std::size_t index_of(const ordinal& a) const;  // throws std::domain_error
};

/// Evaluates formulas over one domain and predicate interpretation.
/// Caches subformula truth values across calls, keyed by subterm identity,
/// so sweeping a formula over many valuations stays cheap.
class fo_evaluator {
 public:
  fo_evaluator(fo_domain domain,
               std::map<std::string, std::set<ordinal>> predicates);

  /// Tarskian truth under the valuation. Throws std::domain_error if a
  /// valuation or predicate ordinal lies outside the domain, and
  /// std::invalid_argument if the formula has a free variable the
  /// valuation misses.
  bool eval(const fo_formula& f,
            const std::map<std::string, ordinal>& valuation);

  const fo_domain& domain() const { return domain_; }

 private:
  struct memo_entry {
    std::vector<std::string> free_vars;
    std::vector<std::uint8_t> table;  // 0 unknown, 1 false, 2 true
  };
  bool eval_node(const fo_formula& f,
                 std::vector<std::pair<std::string, std::size_t>>& env);
  const std::vector<std::string>& free_of(const fo_formula& f);

  fo_domain domain_;
  std::map<std::string, std::vector<char>> predicates_;
  std::map<const void*, memo_entry> memo_;
  std::map<const void*, std::vector<std::string>> free_cache_;
};

/// One-shot convenience wrapper around fo_evaluator.
bool eval_fo(const fo_formula& f, std::uint32_t k,
             std::uint64_t coefficient_bound,
             const std::map<std::string, ordinal>& valuation,
             const std::map<std::string, std::set<ordinal>>& predicates);

}  // namespace ocsyn
