#ifndef INVREL_POLY_HPP
#define INVREL_POLY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>
#include <boost/container/small_vector.hpp>

#include "invrel/field.hpp"

namespace invrel {

/// Variable families of the coordinate rings: x_ij(k) entries of the generic
/// matrices X_k, y_ij (i<j) of the generic skew-symmetric Y, z_ij of Z.
enum class Family : std::uint8_t { X = 0, Y = 1, Z = 2 };

/// Packed variable id. The integer order is (family, k, i, j) lexicographic,
/// which is the global variable order.
using VarCode = std::uint16_t;

struct Variable {
  Family family = Family::X;
  int i = 1;
  int j = 1;
  int k = 0;  // matrix index, X family only

  static Variable x(int i, int j, int k) { return {Family::X, i, j, k}; }
  static Variable y(int i, int j) { return {Family::Y, i, j, 0}; }
  static Variable z(int i, int j) { return {Family::Z, i, j, 0}; }

  VarCode code() const;
  static Variable decode(VarCode c);
  std::string to_string() const;

  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Largest matrix size the variable packing supports.
inline constexpr int kMaxMatrixSize = 16;
/// Largest X index the variable packing supports.
inline constexpr int kMaxMatrixIndex = 63;

/// A monomial stored as its nondecreasing list of variable codes
/// (x^2 y is {x, x, y}); the length is the total degree.
class Monomial {
 public:
  using Storage = boost::container::small_vector<VarCode, 12>;

  Monomial() = default;
  explicit Monomial(VarCode v) : vars_{v} {}
  explicit Monomial(Storage vars);

  std::size_t degree() const { return vars_.size(); }
  const Storage& vars() const { return vars_; }
  bool is_one() const { return vars_.empty(); }

  Monomial operator*(const Monomial& other) const;

  /// Runs of (variable, exponent).
  std::vector<std::pair<VarCode, int>> exponents() const;

  std::string to_string() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.vars_ == b.vars_; }

  template <typename H>
  friend H AbslHashValue(H h, const Monomial& m) {
    return H::combine_contiguous(std::move(h), m.vars_.data(), m.vars_.size());
  }

 private:
  Storage vars_;
};

/// Term order used for storage and printing: higher total degree first, then
/// graded-lexicographic (larger exponent of an earlier variable first).
bool term_order_before(const Monomial& a, const Monomial& b);

enum class Unassigned { Error, Keep };

/// Sparse multivariate polynomial over F. Terms are kept sorted in term order
/// with no zero coefficients, so equality is term-list equality.
template <class F>
class Poly {
 public:
  using Coeff = typename F::value_type;
  struct Term {
    Monomial mono;
    Coeff coeff;
  };
  using Assignment = absl::flat_hash_map<VarCode, Poly>;

  explicit Poly(F field) : field_(std::move(field)) {}

  static Poly constant(const F& field, Coeff c);
  static Poly from_int(const F& field, long v) { return constant(field, field.from_int(v)); }
  static Poly variable(const F& field, const Variable& v);
  /// Builds from unsorted, possibly repeated terms.
  static Poly from_terms(const F& field, std::vector<Term> terms);

  const F& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Coeff constant_value() const;
  std::size_t degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

  /// Per-k total degree in the X family, for k = 1..d; throws if f is not
  /// multihomogeneous in the X variables.
  std::vector<int> multidegree(int d) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) { return a.mul(b); }
  Poly& operator*=(const Poly& o) { return *this = mul(o); }
  Poly scale(const Coeff& c) const;
  Poly pow(int e) const;

  Poly substitute(const Assignment& assignment, Unassigned mode = Unassigned::Error) const;

  friend bool operator==(const Poly& a, const Poly& b) {
    if (!(a.field_ == b.field_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !a.field_.equal(a.terms_[i].coeff, b.terms_[i].coeff))
        return false;
    return true;
  }

  std::string to_string() const;

 private:
  Poly mul(const Poly& o) const;
  void check_field(const Poly& o) const {
    if (!(field_ == o.field_)) throw Error("mixed-field operands");
  }
  Poly combine(const Poly& o, bool subtract) const;

  F field_;
  std::vector<Term> terms_;
};

extern template class Poly<Rationals>;
extern template class Poly<PrimeField>;

}  // namespace invrel

#endif  // INVREL_POLY_HPP
