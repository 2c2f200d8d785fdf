#ifndef INVREL_MATRIX_HPP
#define INVREL_MATRIX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "invrel/poly.hpp"

namespace invrel {

enum class Group { GL, O, Sp };

std::string to_string(Group g);
Group parse_group(std::string_view text);

enum class TransposeKind { Ordinary, Symplectic };

/// Square matrix with polynomial entries (dense; sparsity lives in entries).
template <class F>
class Mat {
 public:
  Mat(F field, int n);

  static Mat identity(const F& field, int n);
  /// Row-major integer entries.
  static Mat from_ints(const F& field, int n, const std::vector<long>& entries);

  const F& field() const { return field_; }
  int size() const { return n_; }
  Poly<F>& at(int i, int j) { return entries_[static_cast<std::size_t>(i * n_ + j)]; }
  const Poly<F>& at(int i, int j) const { return entries_[static_cast<std::size_t>(i * n_ + j)]; }

  bool is_constant() const;
  bool is_zero() const;
  /// Sum of the term counts of all entries.
  std::size_t term_count() const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const Mat& a, const Mat& b) { return a.mul(b); }
  Mat operator-() const;
  Mat scale(const typename F::value_type& c) const;
  Mat scale(const Poly<F>& c) const;

  Poly<F> trace() const;

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.n_ == b.n_ && a.field_ == b.field_ && a.entries_ == b.entries_;
  }

  std::string to_string() const;

 private:
  Mat mul(const Mat& o) const;
  void check(const Mat& o) const;

  F field_;
  int n_;
  std::vector<Poly<F>> entries_;
};

/// X(k) = (x_ij(k)); Y skew with y_ij above the diagonal; Z = (z_ij).
template <class F>
Mat<F> generic_x(const F& field, int n, int k);
template <class F>
Mat<F> generic_y(const F& field, int n);
template <class F>
Mat<F> generic_z(const F& field, int n);

/// J = [[0, E], [-E, 0]] with E the n/2 identity.
template <class F>
Mat<F> standard_j(const F& field, int n);

/// Ordinary transpose, or the symplectic transpose A* = -J A^T J.
template <class F>
Mat<F> transpose(const Mat<F>& a, TransposeKind kind = TransposeKind::Ordinary);

/// sigma_0..sigma_m of the characteristic polynomial,
/// det(lambda E - A) = sum_t (-1)^t lambda^(n-t) sigma_t(A), with
/// m = min(n, max_t). Division-free (Berkowitz), so valid over any
/// commutative coefficient ring; coefficients of degree above max_t are
/// never formed.
template <class F>
std::vector<Poly<F>> sigma_coeffs(const Mat<F>& a, int max_t = -1);

/// Dense matrix of field elements for exact elimination.
template <class F>
class Dense {
 public:
  using value_type = typename F::value_type;

  Dense(F field, int rows, int cols);
  static Dense from_mat(const Mat<F>& m);  // entries must be constants
  Mat<F> to_mat() const;                   // square only

  const F& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  value_type& at(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const value_type& at(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<int> rref();
  int rank() const;
  /// Basis of {v : A v = 0}, one vector per free column.
  std::vector<std::vector<value_type>> nullspace() const;
  /// Throws if singular or not square.
  Dense inverse() const;

 private:
  F field_;
  int rows_, cols_;
  std::vector<value_type> a_;
};

/// B with B J B^T = C for constant skew-symmetric C of even size.
template <class F>
Mat<F> skew_congruence_witness(const Mat<F>& c);

/// Seeded random element of Sp(n) (product of symplectic transvections) or
/// O(n) (product of reflections) over GF(p); deterministic in the seed.
Mat<PrimeField> sample_group_element(Group g, const PrimeField& field, int n, std::uint64_t seed);

/// Inverse of a constant matrix by exact elimination.
template <class F>
Mat<F> inverse(const Mat<F>& m);

extern template class Mat<Rationals>;
extern template class Mat<PrimeField>;
extern template class Dense<Rationals>;
extern template class Dense<PrimeField>;

}  // namespace invrel

#endif  // INVREL_MATRIX_HPP
