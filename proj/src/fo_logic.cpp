#include "ocsyn/fo_logic.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ocsyn {

struct ltl_formula::node {
  kind k;
  std::string name;
  std::vector<ltl_formula> sub;
  ordinal step;
  until_bound bound = until_bound::finite(ordinal::natural(0));
};

ltl_formula ltl_formula::prop(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty proposition name");
  auto n = std::make_shared<node>();
  n->k = kind::prop;
  n->name = std::move(name);
  return ltl_formula(std::move(n));
}

ltl_formula ltl_formula::negation(ltl_formula f) {
  auto n = std::make_shared<node>();
  n->k = kind::negation;
  n->sub.push_back(std::move(f));
  return ltl_formula(std::move(n));
}

ltl_formula ltl_formula::conjunction(ltl_formula lhs, ltl_formula rhs) {
  auto n = std::make_shared<node>();
  n->k = kind::conjunction;
  n->sub.push_back(std::move(lhs));
  n->sub.push_back(std::move(rhs));
  return ltl_formula(std::move(n));
}

ltl_formula ltl_formula::next(ordinal step, ltl_formula f) {
  auto n = std::make_shared<node>();
  n->k = kind::next;
  n->step = std::move(step);
  n->sub.push_back(std::move(f));
  return ltl_formula(std::move(n));
}

ltl_formula ltl_formula::until(until_bound bound, ltl_formula lhs,
                               ltl_formula rhs) {
  auto n = std::make_shared<node>();
  n->k = kind::until;
  n->bound = std::move(bound);
  n->sub.push_back(std::move(lhs));
  n->sub.push_back(std::move(rhs));
  return ltl_formula(std::move(n));
}

ltl_formula::kind ltl_formula::node_kind() const { return node_->k; }

const std::string& ltl_formula::prop_name() const {
  if (node_->k != kind::prop) throw std::logic_error("not a proposition");
  return node_->name;
}

const ltl_formula& ltl_formula::lhs() const {
  if (node_->sub.empty()) throw std::logic_error("no subformula");
  return node_->sub.front();
}

const ltl_formula& ltl_formula::rhs() const {
  if (node_->sub.size() < 2) throw std::logic_error("no right subformula");
  return node_->sub[1];
}

const ordinal& ltl_formula::step() const {
  if (node_->k != kind::next) throw std::logic_error("not a step formula");
  return node_->step;
}

const until_bound& ltl_formula::bound() const {
  if (node_->k != kind::until) throw std::logic_error("not an until formula");
  return node_->bound;
}

std::string ltl_formula::text() const {
  switch (node_->k) {
    case kind::prop:
      return "(" + node_->name + ")";
    case kind::negation:
      return "(not " + lhs().text() + ")";
    case kind::conjunction:
      return "(and " + lhs().text() + " " + rhs().text() + ")";
    case kind::next:
      return "(X " + format(node_->step) + " " + lhs().text() + ")";
    case kind::until:
      return "(U " + format(node_->bound) + " " + lhs().text() + " " +
             rhs().text() + ")";
  }
  throw std::logic_error("unreachable");
}

namespace {

struct token_stream {
  std::vector<std::string> tokens;
  std::size_t pos = 0;

  explicit token_stream(std::string_view text) {
    std::string cur;
    const auto flush = [&] {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    };
    for (char c : text) {
      if (c == '(' || c == ')') {
        flush();
        tokens.push_back(std::string(1, c));
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else {
        cur.push_back(c);
      }
    }
    flush();
  }

  const std::string& peek() const {
    if (pos >= tokens.size()) throw parse_error("unexpected end of formula");
    return tokens[pos];
  }
  std::string take() {
    if (pos >= tokens.size()) throw parse_error("unexpected end of formula");
    return tokens[pos++];
  }
  void expect(const std::string& t) {
    if (take() != t) throw parse_error("expected '" + t + "'");
  }
  bool done() const { return pos == tokens.size(); }
};

ltl_formula parse_ltl_term(token_stream& ts) {
  ts.expect("(");
  const std::string head = ts.take();
  if (head == "(" || head == ")")
    throw parse_error("expected an operator or proposition name");
  if (head == "not") {
    ltl_formula f = parse_ltl_term(ts);
    ts.expect(")");
    return ltl_formula::negation(std::move(f));
  }
  if (head == "and") {
    ltl_formula a = parse_ltl_term(ts);
    ltl_formula b = parse_ltl_term(ts);
    ts.expect(")");
    return ltl_formula::conjunction(std::move(a), std::move(b));
  }
  if (head == "X") {
    ordinal step = parse_ordinal(ts.take());
    ltl_formula f = parse_ltl_term(ts);
    ts.expect(")");
    return ltl_formula::next(std::move(step), std::move(f));
  }
  if (head == "U") {
    until_bound bound = parse_until_bound(ts.take());
    ltl_formula a = parse_ltl_term(ts);
    ltl_formula b = parse_ltl_term(ts);
    ts.expect(")");
    return ltl_formula::until(std::move(bound), std::move(a), std::move(b));
  }
  ts.expect(")");
  return ltl_formula::prop(head);
}

}  // namespace

ltl_formula parse_ltl(std::string_view text) {
  token_stream ts(text);
  ltl_formula f = parse_ltl_term(ts);
  if (!ts.done()) throw parse_error("trailing input after formula");
  return f;
}

struct fo_formula::node {
  kind k;
  std::string a;  // left variable / predicate name / bound variable
  std::string b;  // right variable / predicate argument
  std::vector<fo_formula> sub;
};

fo_formula fo_formula::less(std::string x, std::string y) {
  auto n = std::make_shared<node>();
  n->k = kind::less;
  n->a = std::move(x);
  n->b = std::move(y);
  return fo_formula(std::move(n));
}

fo_formula fo_formula::equal(std::string x, std::string y) {
  auto n = std::make_shared<node>();
  n->k = kind::equal;
  n->a = std::move(x);
  n->b = std::move(y);
  return fo_formula(std::move(n));
}

fo_formula fo_formula::pred(std::string name, std::string x) {
  auto n = std::make_shared<node>();
  n->k = kind::pred;
  n->a = std::move(name);
  n->b = std::move(x);
  return fo_formula(std::move(n));
}

fo_formula fo_formula::negation(fo_formula f) {
  auto n = std::make_shared<node>();
  n->k = kind::negation;
  n->sub.push_back(std::move(f));
  return fo_formula(std::move(n));
}

fo_formula fo_formula::conjunction(fo_formula lhs, fo_formula rhs) {
  auto n = std::make_shared<node>();
  n->k = kind::conjunction;
  n->sub.push_back(std::move(lhs));
  n->sub.push_back(std::move(rhs));
  return fo_formula(std::move(n));
}

fo_formula fo_formula::disjunction(fo_formula lhs, fo_formula rhs) {
  auto n = std::make_shared<node>();
  n->k = kind::disjunction;
  n->sub.push_back(std::move(lhs));
  n->sub.push_back(std::move(rhs));
  return fo_formula(std::move(n));
}

fo_formula fo_formula::implication(fo_formula lhs, fo_formula rhs) {
  auto n = std::make_shared<node>();
  n->k = kind::implication;
  n->sub.push_back(std::move(lhs));
  n->sub.push_back(std::move(rhs));
  return fo_formula(std::move(n));
}

fo_formula fo_formula::exists(std::string var, fo_formula body) {
  auto n = std::make_shared<node>();
  n->k = kind::exists;
  n->a = std::move(var);
  n->sub.push_back(std::move(body));
  return fo_formula(std::move(n));
}

fo_formula fo_formula::forall(std::string var, fo_formula body) {
  auto n = std::make_shared<node>();
  n->k = kind::forall;
  n->a = std::move(var);
  n->sub.push_back(std::move(body));
  return fo_formula(std::move(n));
}

fo_formula::kind fo_formula::node_kind() const { return node_->k; }

const std::string& fo_formula::left_var() const {
  if (node_->k != kind::less && node_->k != kind::equal)
    throw std::logic_error("not a comparison");
  return node_->a;
}

const std::string& fo_formula::right_var() const {
  if (node_->k != kind::less && node_->k != kind::equal)
    throw std::logic_error("not a comparison");
  return node_->b;
}

const std::string& fo_formula::pred_name() const {
  if (node_->k != kind::pred) throw std::logic_error("not a predicate atom");
  return node_->a;
}

const std::string& fo_formula::pred_var() const {
  if (node_->k != kind::pred) throw std::logic_error("not a predicate atom");
  return node_->b;
}

const fo_formula& fo_formula::lhs() const {
  if (node_->sub.empty()) throw std::logic_error("no subformula");
  return node_->sub.front();
}

const fo_formula& fo_formula::rhs() const {
  if (node_->sub.size() < 2) throw std::logic_error("no right subformula");
  return node_->sub[1];
}

const std::string& fo_formula::bound_var() const {
  if (node_->k != kind::exists && node_->k != kind::forall)
    throw std::logic_error("not a quantifier");
  return node_->a;
}

const fo_formula& fo_formula::body() const {
  if (node_->k != kind::exists && node_->k != kind::forall)
    throw std::logic_error("not a quantifier");
  return node_->sub.front();
}

std::string fo_formula::text() const {
  switch (node_->k) {
    case kind::less:
      return "(" + node_->a + " < " + node_->b + ")";
    case kind::equal:
      return "(" + node_->a + " = " + node_->b + ")";
    case kind::pred:
      return node_->a + "(" + node_->b + ")";
    case kind::negation:
      return "(not " + lhs().text() + ")";
    case kind::conjunction:
      return "(" + lhs().text() + " and " + rhs().text() + ")";
    case kind::disjunction:
      return "(" + lhs().text() + " or " + rhs().text() + ")";
    case kind::implication:
      return "(" + lhs().text() + " -> " + rhs().text() + ")";
    case kind::exists:
      return "(exists " + node_->a + " " + body().text() + ")";
    case kind::forall:
      return "(forall " + node_->a + " " + body().text() + ")";
  }
  throw std::logic_error("unreachable");
}

std::set<std::string> fo_formula::free_variables() const {
  std::set<std::string> out;
  switch (node_->k) {
    case kind::less:
    case kind::equal:
      out.insert(node_->a);
      out.insert(node_->b);
      break;
    case kind::pred:
      out.insert(node_->b);
      break;
    case kind::exists:
    case kind::forall:
      out = body().free_variables();
      out.erase(node_->a);
      break;
    default:
      for (const auto& s : node_->sub) {
        auto f = s.free_variables();
        out.insert(f.begin(), f.end());
      }
  }
  return out;
}

std::size_t fo_formula::node_count() const {
  std::size_t n = 1;
  for (const auto& s : node_->sub) n += s.node_count();
  return n;
}

const void* fo_formula::identity() const { return node_.get(); }

std::string variable_supply::fresh() { return "z" + std::to_string(++counter_); }

namespace {

fo_formula at_most(const std::string& a, const std::string& b) {
  return fo_formula::negation(fo_formula::less(b, a));
}

/// Formula for y = x + w^k. k = 0 is the least strict successor; k >= 1
/// says y is the least bound closed under w^(k-1) steps from [x, y).
fo_formula plus_power(std::uint64_t k, const std::string& x,
                      const std::string& y, variable_supply& vars) {
  if (k == 0) {
    const std::string z = vars.fresh();
    return fo_formula::conjunction(
        fo_formula::less(x, y),
        fo_formula::forall(z, fo_formula::implication(fo_formula::less(x, z),
                                                      at_most(y, z))));
  }
  const auto closed_below = [&](const std::string& from,
                                const std::string& bound) {
    const std::string z = vars.fresh();
    const std::string zs = vars.fresh();
    return fo_formula::forall(
        z, fo_formula::implication(
               fo_formula::conjunction(at_most(from, z),
                                       fo_formula::less(z, bound)),
               fo_formula::exists(
                   zs, fo_formula::conjunction(plus_power(k - 1, z, zs, vars),
                                               fo_formula::less(zs, bound)))));
  };
  const std::string yp = vars.fresh();
  return fo_formula::conjunction(
      fo_formula::conjunction(fo_formula::less(x, y), closed_below(x, y)),
      fo_formula::forall(
          yp, fo_formula::implication(
                  fo_formula::conjunction(fo_formula::less(x, yp),
                                          closed_below(x, yp)),
                  at_most(y, yp))));
}

}  // namespace

fo_formula defplus(const ordinal& beta, const std::string& x,
                   const std::string& y, variable_supply& vars) {
  if (beta.is_zero()) return fo_formula::equal(x, y);
  if (beta.is_natural() && beta.natural_value() == 1)
    return plus_power(0, x, y, vars);
  // Peel one unit of the leading term: y = (x + w^e) + rest.
  const ordinal_term lead = beta.leading();
  std::vector<ordinal_term> rest(beta.terms().begin(), beta.terms().end());
  if (rest.front().coefficient == 1)
    rest.erase(rest.begin());
  else
    rest.front().coefficient -= 1;
  const std::string z = vars.fresh();
  return fo_formula::exists(
      z, fo_formula::conjunction(plus_power(lead.exponent, x, z, vars),
                                 defplus(ordinal::from_terms(rest), z, y,
                                         vars)));
}

namespace {

fo_formula translate(const ltl_formula& f, const std::string& x,
                     variable_supply& vars) {
  switch (f.node_kind()) {
    case ltl_formula::kind::prop:
      return fo_formula::pred(f.prop_name(), x);
    case ltl_formula::kind::negation:
      return fo_formula::negation(translate(f.lhs(), x, vars));
    case ltl_formula::kind::conjunction:
      return fo_formula::conjunction(translate(f.lhs(), x, vars),
                                     translate(f.rhs(), x, vars));
    case ltl_formula::kind::next: {
      const std::string y = vars.fresh();
      return fo_formula::exists(
          y, fo_formula::conjunction(defplus(f.step(), x, y, vars),
                                     translate(f.lhs(), y, vars)));
    }
    case ltl_formula::kind::until: {
      const std::string y = vars.fresh();
      const auto guarded_prefix = [&](const std::string& witness) {
        const std::string z = vars.fresh();
        return fo_formula::forall(
            z, fo_formula::implication(
                   fo_formula::conjunction(at_most(x, z),
                                           fo_formula::less(z, witness)),
                   translate(f.lhs(), z, vars)));
      };
      if (f.bound().is_omega_omega()) {
        return fo_formula::exists(
            y, fo_formula::conjunction(
                   fo_formula::conjunction(at_most(x, y),
                                           translate(f.rhs(), y, vars)),
                   guarded_prefix(y)));
      }
      const std::string yp = vars.fresh();
      return fo_formula::exists(
          y, fo_formula::exists(
                 yp, fo_formula::conjunction(
                         fo_formula::conjunction(
                             fo_formula::conjunction(
                                 defplus(f.bound().finite_value(), x, yp,
                                         vars),
                                 fo_formula::conjunction(
                                     at_most(x, y), fo_formula::less(y, yp))),
                             translate(f.rhs(), y, vars)),
                         guarded_prefix(y))));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

fo_formula ltl_to_fo(const ltl_formula& f, const std::string& x0) {
  variable_supply vars;
  return translate(f, x0, vars);
}

fo_domain fo_domain::make(std::uint32_t k, std::uint64_t coefficient_bound) {
  if (coefficient_bound == 0)
    throw std::invalid_argument("coefficient bound must be positive");
  fo_domain d;
  d.k = k;
  d.coefficient_bound = coefficient_bound;
  // Odometer over coefficient tuples, most significant exponent first;
  // tuple order coincides with ordinal order.
  std::vector<std::uint64_t> coeff(k, 0);
  for (;;) {
    std::vector<ordinal_term> terms;
    for (std::uint32_t i = 0; i < k; ++i)
      if (coeff[i] > 0) terms.push_back({k - 1 - i, coeff[i]});
    d.elements.push_back(ordinal::from_terms(terms));
    bool interior = true;
    for (std::uint32_t i = 0; i < k; ++i)
      if (coeff[i] + 1 >= coefficient_bound) interior = false;
    d.universal.push_back(interior ? 1 : 0);
    std::uint32_t pos = k;
    while (pos > 0 && coeff[pos - 1] + 1 == coefficient_bound)
      coeff[--pos] = 0;
    if (pos == 0) break;
    ++coeff[pos - 1];
  }
  return d;
}

bool fo_domain::contains(const ordinal& a) const {
  return std::binary_search(elements.begin(), elements.end(), a);
}

std::size_t fo_domain::index_of(const ordinal& a) const {
  const auto it = std::lower_bound(elements.begin(), elements.end(), a);
  if (it == elements.end() || *it != a)
    throw std::domain_error("ordinal outside the evaluation domain: " +
                            format(a));
  return static_cast<std::size_t>(it - elements.begin());
}

fo_evaluator::fo_evaluator(fo_domain domain,
                           std::map<std::string, std::set<ordinal>> predicates)
    : domain_(std::move(domain)) {
  for (const auto& [name, set] : predicates) {
    std::vector<char> table(domain_.elements.size(), 0);
    for (const auto& a : set) table[domain_.index_of(a)] = 1;
    predicates_.emplace(name, std::move(table));
  }
}

const std::vector<std::string>& fo_evaluator::free_of(const fo_formula& f) {
  auto it = free_cache_.find(f.identity());
  if (it == free_cache_.end()) {
    const auto fs = f.free_variables();
    it = free_cache_
             .emplace(f.identity(),
                      std::vector<std::string>(fs.begin(), fs.end()))
             .first;
  }
  return it->second;
}

bool fo_evaluator::eval(const fo_formula& f,
                        const std::map<std::string, ordinal>& valuation) {
  std::vector<std::pair<std::string, std::size_t>> env;
  for (const auto& v : free_of(f)) {
    const auto it = valuation.find(v);
    if (it == valuation.end())
      throw std::invalid_argument("no value for free variable " + v);
    env.emplace_back(v, domain_.index_of(it->second));
  }
  return eval_node(f, env);
}

bool fo_evaluator::eval_node(
    const fo_formula& f,
    std::vector<std::pair<std::string, std::size_t>>& env) {
  const auto lookup = [&](const std::string& v) -> std::size_t {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == v) return it->second;
    throw std::invalid_argument("unbound variable " + v);
  };
  switch (f.node_kind()) {
    case fo_formula::kind::less:
      return lookup(f.left_var()) < lookup(f.right_var());
    case fo_formula::kind::equal:
      return lookup(f.left_var()) == lookup(f.right_var());
    case fo_formula::kind::pred: {
      const auto it = predicates_.find(f.pred_name());
      if (it == predicates_.end()) return false;
      return it->second[lookup(f.pred_var())] != 0;
    }
    case fo_formula::kind::negation:
      return !eval_node(f.lhs(), env);
    case fo_formula::kind::conjunction:
      return eval_node(f.lhs(), env) && eval_node(f.rhs(), env);
    case fo_formula::kind::disjunction:
      return eval_node(f.lhs(), env) || eval_node(f.rhs(), env);
    case fo_formula::kind::implication:
      return !eval_node(f.lhs(), env) || eval_node(f.rhs(), env);
    case fo_formula::kind::exists:
    case fo_formula::kind::forall:
      break;
  }

  const std::size_t n = domain_.elements.size();
  const auto& free = free_of(f);
  std::uint8_t* slot = nullptr;
  if (free.size() <= 2) {
    auto [it, fresh] = memo_.try_emplace(f.identity());
    memo_entry& entry = it->second;
    if (fresh) {
      entry.free_vars = free;
      std::size_t size = 1;
      for (std::size_t i = 0; i < free.size(); ++i) size *= n;
      entry.table.assign(size, 0);
    }
    std::size_t key = 0;
    for (const auto& v : entry.free_vars) key = key * n + lookup(v);
    slot = &entry.table[key];
    if (*slot != 0) return *slot == 2;
  }

  const bool is_exists = f.node_kind() == fo_formula::kind::exists;
  bool result = !is_exists;
  env.emplace_back(f.bound_var(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_exists && !domain_.universal[i]) continue;
    env.back().second = i;
    const bool b = eval_node(f.body(), env);
    if (b == is_exists) {
      result = is_exists;
      break;
    }
  }
  env.pop_back();
  if (slot) *slot = result ? 2 : 1;
  return result;
}

bool eval_fo(const fo_formula& f, std::uint32_t k,
             std::uint64_t coefficient_bound,
             const std::map<std::string, ordinal>& valuation,
             const std::map<std::string, std::set<ordinal>>& predicates) {
  fo_evaluator ev(fo_domain::make(k, coefficient_bound), predicates);
  return ev.eval(f, valuation);
}

}  // namespace ocsyn
