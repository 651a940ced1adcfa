#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ocsyn/ordinal.hpp"

namespace ocsyn {

/// A letter of the alphabet: a finite set of action names.
using letter = std::set<std::string>;

/// Wildcard standing for a nondeterministic choice among all letters.
struct any_letter {
  friend bool operator==(const any_letter&, const any_letter&) = default;
};

using letter_or_any = std::variant<letter, any_letter>;

/// A finite expression denoting one word of ordinal length below w^w:
/// a single letter, the wildcard, a nonempty concatenation, or an w-power.
/// Immutable; copies share structure.
class regular_word {
 public:
  enum class kind { single, any, concat, omega };

  static regular_word single(letter a);
  static regular_word any();
  /// Throws std::invalid_argument when parts is empty.
  static regular_word concat(std::vector<regular_word> parts);
  static regular_word omega(regular_word body);

  kind node_kind() const;
  /// The letter of a kind::single node.
  const letter& node_letter() const;
  /// The children of a kind::concat node.
  const std::vector<regular_word>& parts() const;
  /// The repeated body of a kind::omega node.
  const regular_word& body() const;

  /// Word length: 1 for single and any, the left-to-right ordinal sum for
  /// concat, and w^(e+1) for the w-power of a body of leading monomial w^e.
  const ordinal& length() const;

  /// Stable text form, e.g. "(omega (concat {a} any))"; also the memo key.
  const std::string& text() const;

  friend bool operator==(const regular_word& a, const regular_word& b) {
    return a.node_ == b.node_ || a.text() == b.text();
  }

 private:
  struct node;
  explicit regular_word(std::shared_ptr<const node> n) : node_(std::move(n)) {}
  std::shared_ptr<const node> node_;
};

/// The letter at 0-based position pos; throws std::out_of_range unless
/// pos < length(w).
letter_or_any letter_at(const regular_word& w, const ordinal& pos);

/// Sorted brace form, e.g. "{lift-up,stop}"; the empty letter is "{}".
std::string format(const letter& a);

/// Parses the text form produced by regular_word::text():
/// any | {a,b} | (concat t t ...) | (omega t). Throws parse_error.
regular_word parse_word(std::string_view text);

}  // namespace ocsyn
