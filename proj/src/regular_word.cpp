#include "ocsyn/regular_word.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace ocsyn {

struct regular_word::node {
  kind k;
  letter a;                       // kind::single
  std::vector<regular_word> sub;  // concat children, or the omega body
  ordinal len;
  std::string text;
};

regular_word regular_word::single(letter a) {
  auto n = std::make_shared<node>();
  n->k = kind::single;
  n->a = std::move(a);
  n->len = ordinal::natural(1);
  n->text = format(n->a);
  return regular_word(std::move(n));
}

regular_word regular_word::any() {
  auto n = std::make_shared<node>();
  n->k = kind::any;
  n->len = ordinal::natural(1);
  n->text = "any";
  return regular_word(std::move(n));
}

regular_word regular_word::concat(std::vector<regular_word> parts) {
  if (parts.empty())
    throw std::invalid_argument("concat of zero words is not representable");
  auto n = std::make_shared<node>();
  n->k = kind::concat;
  n->text = "(concat";
  for (const auto& p : parts) {
    n->len = add(n->len, p.length());
    n->text += ' ';
    n->text += p.text();
  }
  n->text += ')';
  n->sub = std::move(parts);
  return regular_word(std::move(n));
}

regular_word regular_word::omega(regular_word body) {
  auto n = std::make_shared<node>();
  n->k = kind::omega;
  n->len = ordinal::omega_power(body.length().leading().exponent + 1);
  n->text = "(omega " + body.text() + ")";
  n->sub.push_back(std::move(body));
  return regular_word(std::move(n));
}

regular_word::kind regular_word::node_kind() const { return node_->k; }

const letter& regular_word::node_letter() const {
  if (node_->k != kind::single)
    throw std::logic_error("node_letter on a non-letter word node");
  return node_->a;
}

const std::vector<regular_word>& regular_word::parts() const {
  if (node_->k != kind::concat)
    throw std::logic_error("parts on a non-concat word node");
  return node_->sub;
}

const regular_word& regular_word::body() const {
  if (node_->k != kind::omega)
    throw std::logic_error("body on a non-omega word node");
  return node_->sub.front();
}

const ordinal& regular_word::length() const { return node_->len; }

const std::string& regular_word::text() const { return node_->text; }

namespace {

letter_or_any letter_at_rec(const regular_word& w, ordinal pos) {
  switch (w.node_kind()) {
    case regular_word::kind::single:
      return w.node_letter();
    case regular_word::kind::any:
      return any_letter{};
    case regular_word::kind::concat: {
      for (const auto& part : w.parts()) {
        if (pos < part.length()) return letter_at_rec(part, pos);
        pos = left_subtract(part.length(), pos);
      }
      break;
    }
    case regular_word::kind::omega: {
      const regular_word& body = w.body();
      const ordinal& lam = body.length();
      // pos < w^(e+1), so its monomial at the body's leading exponent e gives
      // the block index up to division by the leading coefficient.
      const std::uint64_t e = lam.leading().exponent;
      std::uint64_t d = 0;
      for (const auto& t : pos.terms())
        if (t.exponent == e) d = t.coefficient;
      std::uint64_t m = d / lam.leading().coefficient;
      if (m > 0 && nat_scale(lam, m) > pos) --m;  // block m starts after pos
      const ordinal base = nat_scale(lam, m);
      const ordinal rem = left_subtract(base, pos);
      if (!(rem < lam))
        throw std::logic_error("block division escaped the body length");
      return letter_at_rec(body, rem);
    }
  }
  throw std::logic_error("position escaped word bounds");
}

}  // namespace

letter_or_any letter_at(const regular_word& w, const ordinal& pos) {
  if (!(pos < w.length()))
    throw std::out_of_range("letter_at position " + format(pos) +
                            " is not below the word length " +
                            format(w.length()));
  return letter_at_rec(w, pos);
}

std::string format(const letter& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& act : a) {
    if (!first) out += ',';
    first = false;
    out += act;
  }
  out += '}';
  return out;
}

namespace {

struct word_cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  char peek() {
    skip_space();
    if (pos >= text.size()) throw parse_error("unexpected end of word");
    return text[pos];
  }
  std::string symbol() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           text[pos] != '{' && text[pos] != '}' && text[pos] != ',' &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) throw parse_error("expected a name in word text");
    return std::string(text.substr(start, pos - start));
  }
  void expect(char c) {
    if (peek() != c)
      throw parse_error(std::string("expected '") + c + "' in word text");
    ++pos;
  }
  bool done() {
    skip_space();
    return pos == text.size();
  }
};

regular_word parse_word_term(word_cursor& cur) {
  const char c = cur.peek();
  if (c == '{') {
    cur.expect('{');
    letter a;
    if (cur.peek() != '}') {
      a.insert(cur.symbol());
      while (cur.peek() == ',') {
        cur.expect(',');
        a.insert(cur.symbol());
      }
    }
    cur.expect('}');
    return regular_word::single(std::move(a));
  }
  if (c == '(') {
    cur.expect('(');
    const std::string head = cur.symbol();
    if (head == "concat") {
      std::vector<regular_word> parts;
      while (cur.peek() != ')') parts.push_back(parse_word_term(cur));
      cur.expect(')');
      if (parts.empty()) throw parse_error("concat needs at least one part");
      return regular_word::concat(std::move(parts));
    }
    if (head == "omega") {
      regular_word body = parse_word_term(cur);
      cur.expect(')');
      return regular_word::omega(std::move(body));
    }
    throw parse_error("unknown word operator '" + head + "'");
  }
  const std::string head = cur.symbol();
  if (head == "any") return regular_word::any();
  throw parse_error("unknown word form '" + head + "'");
}

}  // namespace

regular_word parse_word(std::string_view text) {
  word_cursor cur{text};
  regular_word w = parse_word_term(cur);
  if (!cur.done()) throw parse_error("trailing input after word");
  return w;
}

}  // namespace ocsyn
