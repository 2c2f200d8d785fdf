#ifndef INVREL_FIELD_HPP
#define INVREL_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace invrel {

/// Raised for violated preconditions (bad arguments, mixed fields, etc).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request that is well formed but beyond a size cap.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Runtime description of a coefficient field: the rationals or GF(p), p odd.
struct FieldSpec {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint32_t p);

  /// Accepts "q", "Q", "gf:<p>", "gf<p>".
  static FieldSpec parse(std::string_view text);

  bool is_prime() const { return kind == Kind::PrimeField; }
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime_number(std::uint64_t n);

/// The field of rational numbers; elements are GMP rationals in lowest terms.
class Rationals {
 public:
  using value_type = mpq_class;

  FieldSpec spec() const { return FieldSpec::rationals(); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const { return v; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw Error("inverse of zero");
    return 1 / a;
  }
  void add_to(value_type& acc, const value_type& a) const { acc += a; }
  void add_mul_to(value_type& acc, const value_type& a, const value_type& b) const { acc += a * b; }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  std::string to_string(const value_type& a) const { return a.get_str(); }

  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

/// GF(p) for an odd prime p < 2^31; elements are canonical residues 0..p-1.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const {
    long r = v % static_cast<long>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }

  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const;
  void add_to(value_type& acc, value_type a) const { acc = add(acc, a); }
  void add_mul_to(value_type& acc, value_type a, value_type b) const { acc = add(acc, mul(a, b)); }

  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  bool equal(value_type a, value_type b) const { return a == b; }
  std::string to_string(value_type a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// A field element bundled with its field; arithmetic checks operands agree.
template <class F>
class Scalar {
 public:
  using value_type = typename F::value_type;

  Scalar(F field, value_type v) : field_(std::move(field)), v_(std::move(v)) {}
  static Scalar from_int(const F& field, long v) { return Scalar(field, field.from_int(v)); }

  const F& field() const { return field_; }
  const value_type& value() const { return v_; }
  bool is_zero() const { return field_.is_zero(v_); }

  Scalar inverse() const { return Scalar(field_, field_.inv(v_)); }
  Scalar operator-() const { return Scalar(field_, field_.neg(v_)); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check(b);
    return Scalar(a.field_, a.field_.add(a.v_, b.v_));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    a.check(b);
    return Scalar(a.field_, a.field_.sub(a.v_, b.v_));
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check(b);
    return Scalar(a.field_, a.field_.mul(a.v_, b.v_));
  }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.field_.equal(a.v_, b.v_);
  }

  std::string to_string() const { return field_.to_string(v_); }

 private:
  void check(const Scalar& other) const {
    if (!(field_ == other.field_)) throw Error("mixed-field operands");
  }

  F field_;
  value_type v_;
};

/// Calls fn with a Rationals or PrimeField object matching spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_prime()) return fn(PrimeField(spec.p));
  return fn(Rationals{});
}

}  // namespace invrel

#endif  // INVREL_FIELD_HPP
