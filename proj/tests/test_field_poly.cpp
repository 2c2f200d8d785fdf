#include <doctest.h>

#include <random>

#include "invrel/poly.hpp"

using namespace invrel;

namespace {

using PQ = Poly<Rationals>;
using P7 = Poly<PrimeField>;

template <class F>
Poly<F> random_poly(const F& f, std::mt19937_64& rng, int terms = 4) {
  std::uniform_int_distribution<int> coef(-4, 4), idx(1, 2), fam(0, 2), deg(0, 2);
  std::vector<typename Poly<F>::Term> ts;
  for (int t = 0; t < terms; ++t) {
    Poly<F> m = Poly<F>::from_int(f, coef(rng));
    int dg = deg(rng);
    for (int e = 0; e < dg; ++e) {
      int family = fam(rng);
      Variable v = family == 0 ? Variable::x(idx(rng), idx(rng), idx(rng))
                   : family == 1 ? Variable::y(1, 2)
                                 : Variable::z(idx(rng), idx(rng));
      m *= Poly<F>::variable(f, v);
    }
    for (const auto& term : m.terms()) ts.push_back(term);
  }
  return Poly<F>::from_terms(f, ts);
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField g7(7), g5(5);
  CHECK(g7.add(3, 5) == 1);
  CHECK(g5.inv(2) == 3);
  CHECK(g7.from_int(-1) == 6);
  CHECK_THROWS_AS(g7.inv(0), Error);
  CHECK_THROWS_AS(PrimeField(2), Error);
  CHECK_THROWS_AS(PrimeField(9), Error);
  auto a = Scalar<PrimeField>::from_int(g7, 3);
  auto b = Scalar<PrimeField>::from_int(g5, 3);
  CHECK_THROWS_AS(a + b, Error);
}

TEST_CASE("rational arithmetic") {
  Rationals q;
  mpq_class a(2, 3), b(3, 4);
  CHECK(q.mul(a, b) == mpq_class(1, 2));
  CHECK(q.to_string(q.mul(a, b)) == "1/2");
  CHECK_THROWS_AS(q.inv(0), Error);
}

TEST_CASE("field spec parsing") {
  CHECK(FieldSpec::parse("q").kind == FieldSpec::Kind::Rationals);
  CHECK(FieldSpec::parse("gf:7").p == 7);
  CHECK(FieldSpec::parse("gf7").p == 7);
  CHECK_THROWS_AS(FieldSpec::parse("gf:8"), Error);
  CHECK_THROWS_AS(FieldSpec::parse("r"), Error);
}

TEST_CASE("variable packing follows the family, k, i, j order") {
  Variable a = Variable::x(2, 1, 1), b = Variable::x(1, 1, 2), c = Variable::y(1, 2), d = Variable::z(1, 1);
  CHECK(a.code() < b.code());
  CHECK(b.code() < c.code());
  CHECK(c.code() < d.code());
  CHECK(Variable::decode(b.code()) == b);
  CHECK(Variable::x(1, 2, 3).to_string() == "x[1][2](3)");
  CHECK_THROWS_AS(Variable::y(2, 1).code(), Error);
  CHECK_THROWS_AS(Variable::x(1, 1, 0).code(), Error);
}

TEST_CASE("basic polynomial identities") {
  Rationals q;
  PQ x = PQ::variable(q, Variable::x(1, 1, 1));
  PQ y = PQ::variable(q, Variable::y(1, 2));
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x + (-x)).is_zero());
  CHECK((x + PQ::from_int(q, -1) * x).to_string() == "0");

  PrimeField g3(3);
  P7 x3 = P7::variable(g3, Variable::x(1, 1, 1));
  CHECK((P7::from_int(g3, 3) * x3).is_zero());
}

TEST_CASE("printing is in graded lex order") {
  Rationals q;
  PQ a = PQ::variable(q, Variable::x(1, 1, 1));
  PQ b = PQ::variable(q, Variable::x(1, 2, 1));
  PQ f = b + a * a.scale(3) - PQ::from_int(q, 2) + a * b;
  CHECK(f.to_string() == "3*x[1][1](1)^2 + x[1][1](1)*x[1][2](1) + x[1][2](1) - 2");
  CHECK(f.degree() == 2);
}

TEST_CASE("mixed fields are rejected") {
  Rationals q;
  PrimeField g7(7);
  PQ a = PQ::from_int(q, 1);
  P7 b = P7::from_int(g7, 1);
  P7 c = P7::from_int(PrimeField(5), 1);
  CHECK_THROWS_AS(b + c, Error);
  CHECK_THROWS_AS(b * c, Error);
  (void)a;
}

TEST_CASE("ring axioms on random inputs") {
  std::mt19937_64 rng(11);
  PrimeField g7(7);
  Rationals q;
  for (int rep = 0; rep < 30; ++rep) {
    auto f = random_poly(q, rng), g = random_poly(q, rng), h = random_poly(q, rng);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f * g == g * f);
    auto a = random_poly(g7, rng), b = random_poly(g7, rng), c = random_poly(g7, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("reduction mod p commutes with arithmetic") {
  std::mt19937_64 rng(5);
  Rationals q;
  PrimeField g7(7);
  auto reduce = [&](const PQ& f) {
    std::vector<P7::Term> ts;
    for (const auto& t : f.terms()) {
      mpz_class num = t.coeff.get_num() % 7;
      mpz_class den = t.coeff.get_den() % 7;
      auto v = g7.mul(g7.from_int(num.get_si()), g7.inv(g7.from_int(den.get_si())));
      ts.push_back({t.mono, v});
    }
    return P7::from_terms(g7, ts);
  };
  for (int rep = 0; rep < 20; ++rep) {
    auto f = random_poly(q, rng), g = random_poly(q, rng);
    CHECK(reduce(f * g) == reduce(f) * reduce(g));
    CHECK(reduce(f + g) == reduce(f) + reduce(g));
  }
}

TEST_CASE("multidegree") {
  Rationals q;
  PQ a = PQ::variable(q, Variable::x(1, 1, 1)), b = PQ::variable(q, Variable::x(1, 2, 2));
  PQ f = a * a * b + a * b * PQ::variable(q, Variable::x(2, 2, 1));
  CHECK(f.multidegree(2) == std::vector<int>{2, 1});
  CHECK_THROWS_AS((a + b).multidegree(2), Error);
}

TEST_CASE("substitution") {
  Rationals q;
  PQ y12 = PQ::variable(q, Variable::y(1, 2));
  PQ z12 = PQ::variable(q, Variable::z(1, 2)), z21 = PQ::variable(q, Variable::z(2, 1));
  PQ::Assignment as;
  as.emplace(Variable::y(1, 2).code(), z12 - z21);
  CHECK(y12.substitute(as) == z12 - z21);

  PQ x = PQ::variable(q, Variable::x(1, 1, 1));
  PQ::Assignment zero;
  zero.emplace(Variable::x(1, 1, 1).code(), PQ(q));
  CHECK((x * x).substitute(zero).is_zero());
  CHECK_THROWS_AS(y12.substitute(zero), Error);
  CHECK(y12.substitute(zero, Unassigned::Keep) == y12);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 15; ++rep) {
    auto f = random_poly(q, rng), g = random_poly(q, rng);
    PQ::Assignment as2;
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        for (int k = 1; k <= 2; ++k) as2.emplace(Variable::x(i, j, k).code(), random_poly(q, rng, 2));
        as2.emplace(Variable::z(i, j).code(), random_poly(q, rng, 2));
      }
    as2.emplace(Variable::y(1, 2).code(), random_poly(q, rng, 2));
    CHECK((f * g).substitute(as2) == f.substitute(as2) * g.substitute(as2));
    CHECK((f + g).substitute(as2) == f.substitute(as2) + g.substitute(as2));
  }
}
