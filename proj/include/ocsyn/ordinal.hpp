#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ocsyn {

/// Raised when a textual ordinal, word, formula or JSON input is malformed.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// One monomial w^exponent * coefficient of a Cantor normal form.
struct ordinal_term {
  std::uint64_t exponent = 0;
  std::uint64_t coefficient = 0;
  friend auto operator<=>(const ordinal_term&, const ordinal_term&) = default;
};

/// An ordinal below w^w in Cantor normal form: a finite sum of monomials
/// w^k*n with strictly decreasing exponents and coefficients >= 1.  The empty
/// sum is 0.  Values are immutable; equality is term-list equality, and the
/// default lexicographic order on term lists is exactly the ordinal order.
class ordinal {
 public:
  ordinal() = default;

  static ordinal natural(std::uint64_t n);
  static ordinal omega();
  /// The monomial w^k (so omega_power(0) is 1).
  static ordinal omega_power(std::uint64_t k);
  /// Builds from explicit terms; throws std::invalid_argument unless the
  /// exponents strictly decrease and every coefficient is >= 1.
  static ordinal from_terms(std::vector<ordinal_term> terms);

  const std::vector<ordinal_term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True iff nonzero and not a successor, i.e. the last term has exponent >= 1.
  bool is_limit() const;
  /// Leading term; throws std::logic_error on 0.
  const ordinal_term& leading() const;
  /// The finite value when the ordinal is a natural number.
  bool is_natural() const;
  std::uint64_t natural_value() const;

  friend std::strong_ordering operator<=>(const ordinal& a, const ordinal& b) {
    return a.terms_ <=> b.terms_;
  }
  friend bool operator==(const ordinal& a, const ordinal& b) = default;

 private:
  std::vector<ordinal_term> terms_;
};

/// Ordinal sum: drops the terms of `a` below the leading exponent of `b` and
/// merges the boundary monomial.
ordinal add(const ordinal& a, const ordinal& b);

/// `a` added to itself `n` times; n = 0 gives 0.
ordinal nat_scale(const ordinal& a, std::uint64_t n);

/// The unique c with a + c = b; requires a <= b.
ordinal left_subtract(const ordinal& a, const ordinal& b);

/// Canonical text form, e.g. "w^2*3+w*1+4"; 0 prints as "0".
std::string format(const ordinal& a);

/// Parses the canonical text form; rejects non-canonical term orders.
ordinal parse_ordinal(std::string_view text);

/// An Until subscript: either a finite ordinal (< w^w) or the marker w^w.
/// w^w never occurs as an ordinal value; arithmetic is closed below it.
class until_bound {
 public:
  static until_bound omega_omega() { return until_bound(true, ordinal()); }
  static until_bound finite(ordinal b) { return until_bound(false, std::move(b)); }

  bool is_omega_omega() const { return omega_omega_; }
  const ordinal& finite_value() const;

  friend bool operator==(const until_bound&, const until_bound&) = default;

 private:
  until_bound(bool oo, ordinal b) : omega_omega_(oo), finite_(std::move(b)) {}
  bool omega_omega_;
  ordinal finite_;
};

std::string format(const until_bound& b);
until_bound parse_until_bound(std::string_view text);

}  // namespace ocsyn
