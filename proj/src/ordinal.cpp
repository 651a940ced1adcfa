#include "ocsyn/ordinal.hpp"

#include <charconv>
#include <limits>

namespace ocsyn {

namespace {

std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("ordinal coefficient overflow");
  return r;
}

std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("ordinal coefficient overflow");
  return r;
}

std::uint64_t parse_nat(std::string_view text, std::string_view where) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw parse_error("bad natural number '" + std::string(text) + "' in " +
                      std::string(where));
  return value;
}

}  // namespace

ordinal ordinal::natural(std::uint64_t n) {
  ordinal o;
  if (n > 0) o.terms_.push_back({0, n});
  return o;
}

ordinal ordinal::omega() { return omega_power(1); }

ordinal ordinal::omega_power(std::uint64_t k) {
  ordinal o;
  o.terms_.push_back({k, 1});
  return o;
}

ordinal ordinal::from_terms(std::vector<ordinal_term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0)
      throw std::invalid_argument("ordinal term with zero coefficient");
    if (i > 0 && terms[i - 1].exponent <= terms[i].exponent)
      throw std::invalid_argument("ordinal exponents must strictly decrease");
  }
  ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

bool ordinal::is_limit() const {
  return !terms_.empty() && terms_.back().exponent >= 1;
}

const ordinal_term& ordinal::leading() const {
  if (terms_.empty()) throw std::logic_error("leading term of 0");
  return terms_.front();
}

bool ordinal::is_natural() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0);
}

std::uint64_t ordinal::natural_value() const {
  if (!is_natural()) throw std::logic_error("ordinal is not a natural number");
  return terms_.empty() ? 0 : terms_[0].coefficient;
}

ordinal add(const ordinal& a, const ordinal& b) {
  if (b.is_zero()) return a;
  const std::uint64_t eb = b.leading().exponent;
  std::vector<ordinal_term> out;
  std::uint64_t boundary = 0;  // coefficient of a at exponent eb, if present
  for (const auto& t : a.terms()) {
    if (t.exponent > eb)
      out.push_back(t);
    else if (t.exponent == eb)
      boundary = t.coefficient;
    // terms below eb are absorbed
  }
  auto bt = b.terms();
  bt.front().coefficient = checked_add_u64(bt.front().coefficient, boundary);
  out.insert(out.end(), bt.begin(), bt.end());
  return ordinal::from_terms(std::move(out));
}

ordinal nat_scale(const ordinal& a, std::uint64_t n) {
  if (n == 0 || a.is_zero()) return ordinal();
  // a + a merges the leading monomial and absorbs the tail of the left copy,
  // so a*n scales only the leading coefficient.
  auto terms = a.terms();
  terms.front().coefficient = checked_mul_u64(terms.front().coefficient, n);
  return ordinal::from_terms(std::move(terms));
}

ordinal left_subtract(const ordinal& a, const ordinal& b) {
  if (a > b) throw std::invalid_argument("left_subtract requires a <= b");
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t i = 0;
  while (i < ta.size() && i < tb.size() && ta[i] == tb[i]) ++i;
  if (i == ta.size()) {
    // a is a prefix of b: the answer is the remaining terms of b.
    return ordinal::from_terms({tb.begin() + i, tb.end()});
  }
  // First difference: b's term is strictly larger here.
  std::vector<ordinal_term> out;
  const auto& da = ta[i];
  const auto& db = tb[i];
  if (db.exponent > da.exponent) {
    out.assign(tb.begin() + i, tb.end());
  } else {
    // equal exponents, db.coefficient > da.coefficient
    out.push_back({db.exponent, db.coefficient - da.coefficient});
    out.insert(out.end(), tb.begin() + i + 1, tb.end());
  }
  return ordinal::from_terms(std::move(out));
}

std::string format(const ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) out += '+';
    first = false;
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
    } else if (t.exponent == 1) {
      out += "w*" + std::to_string(t.coefficient);
    } else {
      out += "w^" + std::to_string(t.exponent) + "*" +
             std::to_string(t.coefficient);
    }
  }
  return out;
}

ordinal parse_ordinal(std::string_view text) {
  if (text.empty()) throw parse_error("empty ordinal");
  if (text == "0") return ordinal();
  std::vector<ordinal_term> terms;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t plus = text.find('+', pos);
    std::string_view tok = text.substr(
        pos, plus == std::string_view::npos ? std::string_view::npos
                                            : plus - pos);
    if (tok.empty()) throw parse_error("empty term in ordinal '" +
                                       std::string(text) + "'");
    ordinal_term term{0, 1};
    if (tok.front() == 'w') {
      term.exponent = 1;
      std::string_view rest = tok.substr(1);
      if (!rest.empty() && rest.front() == '^') {
        std::size_t star = rest.find('*');
        term.exponent = parse_nat(rest.substr(1, star == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : star - 1),
                                  "exponent");
        rest = star == std::string_view::npos ? std::string_view()
                                              : rest.substr(star);
      }
      if (!rest.empty()) {
        if (rest.front() != '*')
          throw parse_error("bad ordinal term '" + std::string(tok) + "'");
        term.coefficient = parse_nat(rest.substr(1), "coefficient");
      }
    } else {
      term.coefficient = parse_nat(tok, "coefficient");
    }
    if (term.coefficient == 0)
      throw parse_error("zero coefficient in ordinal '" + std::string(text) +
                        "'");
    terms.push_back(term);
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  try {
    return ordinal::from_terms(std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw parse_error("non-canonical ordinal '" + std::string(text) + "': " +
                      e.what());
  }
}

const ordinal& until_bound::finite_value() const {
  if (omega_omega_)
    throw std::logic_error("finite_value of the w^w bound");
  return finite_;
}

std::string format(const until_bound& b) {
  return b.is_omega_omega() ? "w^w" : format(b.finite_value());
}

until_bound parse_until_bound(std::string_view text) {
  if (text == "w^w") return until_bound::omega_omega();
  return until_bound::finite(parse_ordinal(text));
}

}  // namespace ocsyn
