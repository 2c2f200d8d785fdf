#ifndef INVREL_SIGMA_HPP
#define INVREL_SIGMA_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invrel/word.hpp"

namespace invrel {

/// sigma_t(a) with a a canonical primitive word, t >= 1.
struct SigmaSymbol {
  int t = 1;
  Word arg;

  /// Symbols are compared by argument first, then t.
  friend std::strong_ordering operator<=>(const SigmaSymbol& a, const SigmaSymbol& b) {
    if (auto c = a.arg <=> b.arg; c != 0) return c;
    return a.t <=> b.t;
  }
  friend bool operator==(const SigmaSymbol&, const SigmaSymbol&) = default;

  /// `s2(x1 x2)`
  std::string to_string() const;
};

/// Returns nullopt for t = 0 (the unity). Throws for t < 0, the unity word,
/// or a non-primitive word.
std::optional<SigmaSymbol> make_symbol(int t, const Word& w, Flavor flavor = Flavor::Involutive);

/// Commutative monomial: nondecreasing list of symbols.
using SigmaMonomial = std::vector<SigmaSymbol>;

std::string to_string(const SigmaMonomial& m);
std::vector<int> mdeg(const SigmaMonomial& m, int d);

/// Element of the free commutative ring on sigma symbols.
template <class F>
class SigmaPoly {
 public:
  using Coeff = typename F::value_type;

  explicit SigmaPoly(F field) : field_(std::move(field)) {}
  static SigmaPoly constant(const F& field, const Coeff& c);
  static SigmaPoly symbol(const F& field, int t, const Word& w, Flavor flavor = Flavor::Involutive);
  static SigmaPoly monomial(const F& field, SigmaMonomial m, const Coeff& c);

  const F& field() const { return field_; }
  const std::map<SigmaMonomial, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  SigmaPoly& operator+=(const SigmaPoly& o);
  SigmaPoly& operator-=(const SigmaPoly& o);
  friend SigmaPoly operator+(SigmaPoly a, const SigmaPoly& b) { return a += b; }
  friend SigmaPoly operator-(SigmaPoly a, const SigmaPoly& b) { return a -= b; }
  friend SigmaPoly operator*(const SigmaPoly& a, const SigmaPoly& b) { return a.mul(b); }
  SigmaPoly scale(const Coeff& c) const;

  /// Sum of the terms of multidegree exactly delta.
  SigmaPoly component(const std::vector<int>& delta) const;
  /// Distinct multidegrees present, sorted.
  std::vector<std::vector<int>> multidegrees(int d) const;

  friend bool operator==(const SigmaPoly& a, const SigmaPoly& b) {
    if (!(a.field_ == b.field_) || a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j)
      if (!(i->first == j->first) || !a.field_.equal(i->second, j->second)) return false;
    return true;
  }

  /// `s1(x1)^2 - 3*s2(x1 x2)`; zero prints as `0`.
  std::string to_string() const;
  /// Parses the rendering above; integer coefficients only.
  static SigmaPoly parse(const F& field, std::string_view text, Flavor flavor = Flavor::Involutive);

 private:
  SigmaPoly mul(const SigmaPoly& o) const;
  void add_term(const SigmaMonomial& m, const Coeff& c);

  F field_;
  std::map<SigmaMonomial, Coeff> terms_;
};

extern template class SigmaPoly<Rationals>;
extern template class SigmaPoly<PrimeField>;

}  // namespace invrel

#endif  // INVREL_SIGMA_HPP
