#include <doctest.h>

#include "invrel/iso.hpp"
#include "oracles.hpp"

using namespace invrel;

namespace {

GeneratorExpr g(const char* s) { return GeneratorExpr::parse(s); }

}  // namespace

TEST_CASE("generator expressions") {
  CHECK(g("s2(X1 Y X2' Y)").algebra() == Algebra::I);
  CHECK(g("-s1(X1' ZJZ')").algebra() == Algebra::IPrime);
  CHECK(g("s3(X1 X2* X1)").algebra() == Algebra::Sp);
  CHECK_FALSE(g("s1(X1 Z)").algebra().has_value());
  CHECK_FALSE(g("s1(X1 Y Y)").algebra().has_value());
  CHECK_FALSE(g("s1(X1* Y)").algebra().has_value());
  CHECK(g("-s2(X1 ZJZ' X2' ZJZ')").to_string() == "-s2(X1 ZJZ' X2' ZJZ')");
  CHECK(g("3*s1(X1)").coeff == 3);
  CHECK_THROWS_AS(g("s1()"), Error);
  CHECK_THROWS_AS(g("s1(W)"), Error);
  CHECK_THROWS_AS(g("t1(X1)"), Error);
}

TEST_CASE("Psi on small generators") {
  Rationals q;
  auto x1 = generic_x(q, 2, 1);
  // X1 J (-J) = X1
  CHECK(psi(g("s1(X1 Y)"), q, 2) == x1.trace());
  // (X1 J)^T (-J) = J X1^T J = -X1^*
  CHECK(psi(g("s1(X1' Y)"), q, 2) == -transpose(x1, TransposeKind::Symplectic).trace());
  CHECK(psi(g("s1(X1' Y)"), q, 2) == -x1.trace());  // X^* is the adjugate at n = 2
  CHECK(psi_generator(g("s1(X1' Y)")) == g("-s1(X1*)"));
  CHECK(psi_generator(g("s2(X1' Y X2 Y)")) == g("s2(X1* X2)"));
  CHECK_THROWS_AS(psi(g("s1(X1)"), q, 2), Error);
  // the symbolic rewrite agrees with literal substitution
  for (const auto& gen : i_generators(4, 2, 2))
    if (gen.t <= 2) CHECK(evaluate(psi_generator(gen), q, 4) == psi(gen, q, 4));
}

TEST_CASE("Psi images are Sp-invariant") {
  PrimeField f(7);
  for (const char* s : {"s1(X1' Y)", "s2(X1 Y X2' Y)", "s1(X1 Y X1' Y X2 Y)"}) {
    auto p = psi(g(s), f, 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(act(p, sample_group_element(Group::Sp, f, 2, seed), 2) == p);
  }
  auto p4 = psi(g("s2(X1' Y X2 Y)"), f, 4);
  for (std::uint64_t seed = 0; seed < 3; ++seed) CHECK(act(p4, sample_group_element(Group::Sp, f, 4, seed), 2) == p4);
}

TEST_CASE("mu and theta") {
  Rationals q;
  CHECK(mu(g("s1(X1)")) == g("s1(X1 ZJZ')"));
  CHECK(mu(g("s1(X1*)")) == g("-s1(X1' ZJZ')"));
  CHECK(mu(g("s2(X1* X2)")) == g("s2(X1' ZJZ' X2 ZJZ')"));
  CHECK(mu(g("s2(X1 X2)")) == g("s2(X1 ZJZ' X2 ZJZ')"));
  CHECK(theta(g("s1(X1 ZJZ')")) == g("s1(X1 Y)"));
  CHECK(theta(g("s2(X1 ZJZ' X2' ZJZ')")) == g("s2(X1 Y X2' Y)"));
  CHECK_THROWS_AS(theta(g("s1(X1 Z)")), Error);
  CHECK_THROWS_AS(mu(g("s1(X1 Y)")), Error);
  // rotation and sign bookkeeping against literal substitution
  for (const char* s : {"s1(X1)", "s1(X1*)", "s2(X1 X2*)", "s1(X1* X2* X1)", "s2(X2*)"})
    CHECK(evaluate(mu(g(s)), q, 2) == mu_literal(g(s), q, 2));
  // (Z^T X Z J)^* = -Z^T X^T Z J by direct matrix algebra
  auto z = generic_z(q, 2), j = standard_j(q, 2), x = generic_x(q, 2, 1);
  CHECK(transpose(transpose(z) * x * z * j, TransposeKind::Symplectic) == -(transpose(z) * transpose(x) * z * j));
}

TEST_CASE("composite identities at n = 2") {
  int count = 0;
  for (const auto& r : verify_composites(FieldSpec::rationals(), 2, 2, 3, true)) {
    CAPTURE(r.generator);
    CAPTURE(r.detail);
    CHECK(r.pass);
    ++count;
  }
  CHECK(count == static_cast<int>(sp_generators(2, 2, 3).size() + i_generators(2, 2, 3).size()));
  Rationals q;
  auto f = g("s2(X1 X2*)");
  CHECK(psi(theta(mu(f)), q, 2) == evaluate(f, q, 2));
  CHECK(theta(mu(psi_generator(g("s2(X1' Y X2 Y)")))) == g("s2(X1' Y X2 Y)"));
}

TEST_CASE("Psi theta mu identity detects a wrong sign") {
  // dropping the sign of mu on a starred letter breaks Psi theta mu = id for odd t
  Rationals q;
  auto f = g("s1(X1 X2*)");
  auto m = mu(f);
  m.coeff = -m.coeff;
  CHECK_FALSE(psi(theta(m), q, 2) == evaluate(f, q, 2));
}

TEST_CASE("skew congruence witness and theta") {
  PrimeField f(7);
  std::vector<GeneratorExpr> gens;
  for (const auto& i : i_generators(2, 2, 2)) gens.push_back(mu(psi_generator(i)));
  auto r2 = skew_witness_check(f, 2, 20, 9, gens);
  CHECK(r2.samples == 20);
  CHECK(r2.congruence_failures == 0);
  CHECK(r2.substitution_failures == 0);
  std::vector<GeneratorExpr> short4;
  for (const auto& i : i_generators(4, 2, 1)) short4.push_back(mu(psi_generator(i)));
  auto r4 = skew_witness_check(f, 4, 10, 10, short4);
  CHECK(r4.congruence_failures == 0);
  CHECK(r4.substitution_failures == 0);
}

TEST_CASE("theta is well defined on colliding values") {
  PrimeField f(7);
  auto rep = theta_collision_check(f, 2, 2, 2);
  CHECK(rep.expressions > 0);
  CHECK(rep.collisions > 0);
  CHECK(rep.violations == 0);
}
