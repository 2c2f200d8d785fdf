#include <doctest.h>

#include <set>

#include "invrel/eval.hpp"
#include "invrel/sigma.hpp"
#include "oracles.hpp"

using namespace invrel;

namespace {

Word w(const char* s) { return Word::parse(s); }

}  // namespace

TEST_CASE("word parsing and rendering") {
  CHECK(w("x1 x2'").to_string() == "x1 x2'");
  CHECK(w("x1 x2T") == w("x1 x2'"));
  CHECK(w("1").is_unity());
  CHECK(Word{}.to_string() == "1");
  CHECK(w("x3 x1").max_index() == 3);
  CHECK(w("x1 x2' x1").mdeg(3) == std::vector<int>{2, 1, 0});
  CHECK_THROWS_AS(w("y1"), Error);
  CHECK_THROWS_AS(w("x0"), Error);
}

TEST_CASE("involution") {
  CHECK(w("x1 x2'").involute() == w("x2 x1'"));
  CHECK(w("x1 x2 x3'").involute().involute() == w("x1 x2 x3'"));
  CHECK(Word{}.involute().is_unity());
}

TEST_CASE("primitivity") {
  CHECK(w("x1").is_primitive());
  CHECK(w("x1 x2").is_primitive());
  CHECK_FALSE(w("x1 x1").is_primitive());
  CHECK_FALSE(w("x1 x2 x1 x2").is_primitive());
  CHECK(w("x1 x2 x1").is_primitive());
  CHECK_FALSE(Word{}.is_primitive());
  // x1 x1' is primitive even though both letters carry index 1
  CHECK(w("x1 x1'").is_primitive());
}

TEST_CASE("canonical classes") {
  CHECK(canonical_class(w("x2 x1")) == w("x1 x2"));
  CHECK(canonical_class(w("x1'")) == w("x1"));
  CHECK(canonical_class(w("x2' x1'")) == w("x1 x2"));
  CHECK(canonical_class(w("x1 x2'"), Flavor::Plain) == w("x1 x2"));
  CHECK(canonical_class(w("x2 x1'")) == canonical_class(w("x1 x2'")));
  CHECK(least_rotation(w("x2 x1 x1")) == w("x1 x1 x2"));
}

TEST_CASE("canonical form agrees with orbit closure") {
  // Group words of length <= 4 into classes by explicit orbit closure and
  // compare with the classes induced by canonical_class.
  for (Flavor fl : {Flavor::Involutive, Flavor::Plain}) {
    auto words = all_words(2, 4, fl == Flavor::Involutive);
    std::set<Word> seen;
    std::set<Word> reps;
    std::size_t orbits = 0;
    for (const auto& x : words) {
      if (seen.count(x)) continue;
      ++orbits;
      auto orbit = oracle::orbit(x, fl == Flavor::Involutive);
      for (const auto& o : orbit) {
        seen.insert(o);
        CHECK(canonical_class(o, fl) == canonical_class(x, fl));
      }
      CHECK(canonical_class(x, fl) == *orbit.begin());
      reps.insert(canonical_class(x, fl));
    }
    CHECK(reps.size() == orbits);
  }
}

TEST_CASE("word sums") {
  PrimeField f(7);
  auto s = WordSum<PrimeField>::parse(f, "x1 x2 - 2*x1' + 1");
  CHECK(s.terms().size() == 3);
  CHECK(s.has_unity());
  CHECK(s.max_index() == 2);
  CHECK(WordSum<PrimeField>::parse(f, s.to_string()).to_string() == s.to_string());
  CHECK(WordSum<PrimeField>::of(f, w("x1")).is_word());
  CHECK_FALSE(s.is_word());
  auto t = WordSum<PrimeField>::parse(f, "x1 - x1");
  CHECK(t.is_zero());
}

TEST_CASE("word realization per group") {
  Rationals q;
  auto x1 = generic_x(q, 2, 1);
  auto x2 = generic_x(q, 2, 2);
  CHECK(realize(w("x1 x2'"), Group::O, q, 2) == x1 * transpose(x2));
  CHECK(realize(w("x1 x2'"), Group::Sp, q, 2) == x1 * transpose(x2, TransposeKind::Symplectic));
  CHECK(realize(w("x1 x2'"), Group::GL, q, 2) == x1 * x2);
  CHECK(realize(Word{}, Group::O, q, 3) == Mat<Rationals>::identity(q, 3));
  // a = x1 + x2 realizes as the sum of realizations
  auto s = WordSum<Rationals>::parse(q, "x1 + 3*x2' x1");
  CHECK(realize(s, Group::O, 2) == x1 + (transpose(x2) * x1).scale(mpq_class(3)));
}

TEST_CASE("sigma symbols") {
  CHECK_FALSE(make_symbol(0, w("x1")).has_value());
  CHECK(make_symbol(2, w("x2 x1"))->to_string() == "s2(x1 x2)");
  CHECK_THROWS_AS(make_symbol(1, w("x1 x1")), Error);
  CHECK_THROWS_AS(make_symbol(1, Word{}), Error);
  CHECK_THROWS_AS(make_symbol(-1, w("x1")), Error);
  // well defined on classes
  CHECK(*make_symbol(3, w("x1 x2' x3")) == *make_symbol(3, w("x3' x2 x1'")));
  CHECK(*make_symbol(3, w("x1 x2' x3")) == *make_symbol(3, w("x2' x3 x1")));
}

TEST_CASE("sigma ring arithmetic and grading") {
  PrimeField f(7);
  using SP = SigmaPoly<PrimeField>;
  auto a = SP::symbol(f, 1, w("x1"));
  CHECK((a * a).to_string() == "s1(x1)^2");
  CHECK((a - a).is_zero());
  CHECK((a + a.scale(f.from_int(-1))).is_zero());
  auto b = SP::symbol(f, 2, w("x1 x2"));
  auto ab = a * b;
  CHECK(mdeg(ab.terms().begin()->first, 2) == std::vector<int>{3, 2});
  auto g = a + SP::symbol(f, 1, w("x2"));
  CHECK(g.component({1, 0}) == a);
  CHECK(g.component({4, 4}).is_zero());
  SP sum(f), h = g * g + ab;
  for (const auto& delta : h.multidegrees(2)) sum += h.component(delta);
  CHECK(sum == h);
  CHECK(SP::parse(f, "s1(x1)^2 - 3*s2(x2 x1)") == a * a - b.scale(f.from_int(3)));
  CHECK(SP::parse(f, (g * g).to_string()) == g * g);
  CHECK(SP(f).to_string() == "0");
}

TEST_CASE("grading is additive on random products") {
  PrimeField f(7);
  std::mt19937_64 rng(5);
  auto classes = primitive_classes(2, 3, Group::O);
  auto random_poly = [&]() {
    SigmaPoly<PrimeField> p(f);
    for (int i = 0; i < 3; ++i) {
      const auto& c = classes[rng() % classes.size()];
      p += SigmaPoly<PrimeField>::symbol(f, 1 + static_cast<int>(rng() % 3), c)
               .scale(f.from_int(1 + static_cast<long>(rng() % 6)));
    }
    return p;
  };
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_poly(), r = random_poly();
    auto pr = p * r;
    for (const auto& [m, c] : pr.terms()) {
      auto dm = mdeg(m, 2);
      bool found = false;
      for (const auto& [m1, c1] : p.terms())
        for (const auto& [m2, c2] : r.terms()) {
          auto d1 = mdeg(m1, 2), d2 = mdeg(m2, 2);
          if (d1[0] + d2[0] == dm[0] && d1[1] + d2[1] == dm[1]) found = true;
        }
      CHECK(found);
    }
  }
}
