#ifndef INVREL_QUIVER_HPP
#define INVREL_QUIVER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "invrel/word.hpp"

namespace invrel {

/// An arrow runs from its tail to its head; a path a_1...a_s needs
/// tail(a_i) = head(a_{i+1}). Arrow codes share the letter coding, so the
/// transpose of arrow c is c ^ 1, and transposing a path swaps the two vertices.
struct Arrow {
  LetterCode code;
  std::string label;
  int head;
  int tail;
};

/// Q: x loop at 1, x^T loop at 2, y, y^T from 2 to 1, z, z^T from 1 to 2.
/// G_y: x_k, x_k^T from 2 to 1 and y from 1 to 2 (y^T = -y is formal).
/// G_z: as G_y with z, z^T in place of y.
class Quiver {
 public:
  enum class Kind { Q, Gy, Gz };

  static Quiver q();
  static Quiver g_y(int d);
  static Quiver g_z(int d);

  Kind kind() const { return kind_; }
  int d() const { return d_; }
  const std::string& name() const { return name_; }
  /// All arrows, including formal ones (y^T in G_y) that never start a path.
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(LetterCode c) const;
  bool is_formal(LetterCode c) const;

  /// The x-arrow slot count of mdeg (1 for Q, d for G_y / G_z) plus the
  /// connecting arrows: Q -> (x, y, z); G -> (x_1..x_d, y or z).
  std::vector<int> mdeg(const Word& path) const;

  bool is_path(const Word& w) const;
  int head(const Word& path) const;
  int tail(const Word& path) const;
  bool is_closed(const Word& path) const { return is_path(path) && head(path) == tail(path); }

  std::string render(const Word& path) const;
  Word parse(std::string_view text) const;

  /// One least-word representative per ~-class of closed paths with
  /// mdeg <= bound componentwise, in word order. Formal arrows are not used.
  std::vector<Word> closed_path_classes(const std::vector<int>& bound, bool primitive_only = false) const;

  /// All paths (not classes) with head h, tail t and length in [1, max_len].
  std::vector<Word> paths_between(int h, int t, int max_len) const;

 private:
  Kind kind_ = Kind::Q;
  int d_ = 1;
  std::string name_;
  std::vector<Arrow> arrows_;
  std::vector<int> slot_;  // mdeg slot per code
};

/// Default enumeration cap for Q closed paths.
inline const std::vector<int> kDefaultPathCap = {6, 4, 4};

enum class RelationType { Sigma, Rho };
std::string to_string(RelationType t);
RelationType parse_relation_type(std::string_view text);

struct RelationFactor {
  int k;
  Word path;  // closed path of Q
  friend bool operator==(const RelationFactor&, const RelationFactor&) = default;
};

struct RelationTerm {
  int sign;  // +1 or -1
  std::vector<RelationFactor> factors;
};

/// sigma_{t,r}(x, y, z) or rho_{t,r}(x, y, z) as a signed sum of products of
/// sigma_k(e) over primitive closed paths of Q.
struct RelationExpr {
  RelationType type = RelationType::Sigma;
  int t = 0;
  int r = 0;
  std::vector<RelationTerm> terms;

  /// Every path class occurring, in word order.
  std::vector<Word> paths() const;
  /// {type, t, r, terms: [{sign, factors: [{k, path}]}]}
  std::string to_json() const;
};

RelationExpr build_relation(RelationType type, int t, int r, const std::vector<int>& cap = kDefaultPathCap);
inline RelationExpr build_sigma_tr(int t, int r) { return build_relation(RelationType::Sigma, t, r); }
inline RelationExpr build_rho_tr(int t, int r) { return build_relation(RelationType::Rho, t, r); }

/// The substitution x -> a, y -> b, z -> c realized as matrices; transposed
/// arrows take the group's transpose of the image.
template <class F>
struct ArrowImages {
  std::vector<Mat<F>> by_code;  // x, x^T, y, y^T, z, z^T

  static ArrowImages make(const Mat<F>& x, const Mat<F>& y, const Mat<F>& z, TransposeKind kind);
};

template <class F>
ArrowImages<F> realize_triple(const WordSum<F>& a, const WordSum<F>& b, const WordSum<F>& c, Group g, int n);

/// X_e for a closed path of Q under the substitution.
template <class F>
Mat<F> path_matrix(const Word& path, const ArrowImages<F>& images);

template <class F>
struct SubstitutedTerm {
  int sign;
  std::vector<std::pair<int, Mat<F>>> factors;
};

/// Each path factor replaced by its matrix; sigma evaluation happens later.
template <class F>
std::vector<SubstitutedTerm<F>> substitute_triple(const RelationExpr& e, const ArrowImages<F>& images);

/// Triples (a, b, c) of paths of G_y or G_z with a closed at 1, b from 2 to 1
/// (head 1, tail 2), c from 1 to 2, each of length at most the given bound.
struct PathTriple {
  Word a, b, c;
};
std::vector<PathTriple> admissible_triples(const Quiver& g, int max_a, int max_b, int max_c);

}  // namespace invrel

#endif  // INVREL_QUIVER_HPP
