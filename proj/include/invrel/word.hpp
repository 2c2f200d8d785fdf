#ifndef INVREL_WORD_HPP
#define INVREL_WORD_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "invrel/matrix.hpp"

namespace invrel {

/// Letter codes: x_k is 2(k-1), x_k^T is 2(k-1)+1, so the involution flips
/// the low bit. The same coding is reused for quiver arrows.
using LetterCode = std::uint8_t;

struct Letter {
  int k = 1;
  bool transposed = false;

  LetterCode code() const;
  static Letter decode(LetterCode c) { return {c / 2 + 1, (c & 1) != 0}; }
  Letter involute() const { return {k, !transposed}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

inline constexpr int kMaxLetterIndex = 60;

/// Element of <X>^#: a sequence of letter codes; the empty sequence is the unity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<LetterCode> codes) : codes_(std::move(codes)) {}
  static Word from_letters(const std::vector<Letter>& letters);
  static Word letter(int k, bool transposed = false) { return Word({Letter{k, transposed}.code()}); }

  const std::vector<LetterCode>& codes() const { return codes_; }
  std::size_t size() const { return codes_.size(); }
  bool is_unity() const { return codes_.empty(); }
  Letter at(std::size_t i) const { return Letter::decode(codes_[i]); }

  /// a^T: reversed, each transpose flag flipped.
  Word involute() const;
  Word rotate(std::size_t shift) const;
  /// Drops transpose marks (the GL reading a^T = a).
  Word strip_transposes() const;
  Word operator*(const Word& o) const;

  /// Not a proper power u^m, m >= 2. The unity is not primitive.
  bool is_primitive() const;

  /// Per-k letter counts, x_k and x_k^T together, k = 1..d.
  std::vector<int> mdeg(int d) const;
  int max_index() const;

  /// Length first, then lexicographic on codes.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.codes_.size() != b.codes_.size()) return a.codes_.size() <=> b.codes_.size();
    return a.codes_ <=> b.codes_;
  }
  friend bool operator==(const Word&, const Word&) = default;

  /// `x1 x2' x3`; the unity prints as `1`.
  std::string to_string() const;
  static Word parse(std::string_view text);

  template <typename H>
  friend H AbslHashValue(H h, const Word& w) {
    return H::combine_contiguous(std::move(h), w.codes_.data(), w.codes_.size());
  }

 private:
  std::vector<LetterCode> codes_;
};

/// How ~ acts: GL identifies a with a^T by forgetting transposes, O and Sp
/// use rotations of a and a^T.
enum class Flavor { Plain, Involutive };
inline Flavor flavor_of(Group g) { return g == Group::GL ? Flavor::Plain : Flavor::Involutive; }

/// Least word among rotations of w (and of w^T for Involutive).
Word canonical_class(const Word& w, Flavor flavor = Flavor::Involutive);
/// Least rotation only.
Word least_rotation(const Word& w);

/// X_w for a letter word: transposed letters become X^T (O), X* (Sp), X (GL).
template <class F>
Mat<F> realize(const Word& w, Group g, const F& field, int n);

/// Linear combination of words with unity allowed.
template <class F>
class WordSum {
 public:
  using Coeff = typename F::value_type;

  explicit WordSum(F field) : field_(std::move(field)) {}
  static WordSum of(const F& field, const Word& w);

  const F& field() const { return field_; }
  const std::map<Word, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Single word with coefficient 1.
  bool is_word() const;

  WordSum& add(const Word& w, const Coeff& c);
  WordSum involute() const;
  /// Largest letter index used.
  int max_index() const;
  bool has_unity() const { return terms_.count(Word{}) > 0; }

  /// `x1 x2 + 2*x1'`; words with coefficient 1 print bare.
  std::string to_string() const;
  static WordSum parse(const F& field, std::string_view text);

 private:
  F field_;
  std::map<Word, Coeff> terms_;
};

template <class F>
Mat<F> realize(const WordSum<F>& s, Group g, int n);

extern template class WordSum<Rationals>;
extern template class WordSum<PrimeField>;

}  // namespace invrel

#endif  // INVREL_WORD_HPP
