#include "invrel/iso.hpp"

#include <cctype>
#include <map>
#include <set>

namespace invrel {

std::string to_string(Algebra a) {
  switch (a) {
    case Algebra::Sp: return "sp";
    case Algebra::I: return "I";
    case Algebra::IPrime: return "I'";
  }
  return "?";
}

namespace {

using K = IsoFactor::Kind;

// pattern A_1 S A_2 S ... A_r S with A_i in {X_k, X_k^T}
bool alternating(const std::vector<IsoFactor>& f, K slot) {
  if (f.empty() || f.size() % 2) return false;
  for (std::size_t i = 0; i < f.size(); i += 2)
    if ((f[i].kind != K::X && f[i].kind != K::XT) || f[i + 1].kind != slot) return false;
  return true;
}

int sign_power(int t, int m) { return (t * m) % 2 ? -1 : 1; }

Algebra expect(const GeneratorExpr& g, Algebra a, const char* map) {
  auto got = g.algebra();
  if (!got || *got != a)
    throw Error(std::string(map) + " expects a generator of " + to_string(a) + ", got '" + g.to_string() + "'");
  return a;
}

template <class F>
struct Generic {
  const F& field;
  int n;
  std::map<int, Mat<F>> xs;
  std::optional<Mat<F>> y, z, j;

  const Mat<F>& x(int k) {
    auto it = xs.find(k);
    if (it == xs.end()) it = xs.emplace(k, generic_x(field, n, k)).first;
    return it->second;
  }
  const Mat<F>& get_y() {
    if (!y) y = generic_y(field, n);
    return *y;
  }
  const Mat<F>& get_z() {
    if (!z) z = generic_z(field, n);
    return *z;
  }
  const Mat<F>& get_j() {
    if (!j) j = standard_j(field, n);
    return *j;
  }
};

template <class F>
Poly<F> sigma_of_product(const std::vector<Mat<F>>& ms, int t, int coeff, const F& field, int n) {
  if (t > n) return Poly<F>(field);
  Mat<F> prod = ms.at(0);
  for (std::size_t i = 1; i < ms.size(); ++i) prod = prod * ms[i];
  Poly<F> s = sigma_coeffs(prod, t)[static_cast<std::size_t>(t)];
  return coeff == 1 ? s : s.scale(field.from_int(coeff));
}

}  // namespace

std::optional<Algebra> GeneratorExpr::algebra() const {
  if (factors.empty() || t < 1) return std::nullopt;
  bool sp = true;
  for (const auto& f : factors) sp = sp && (f.kind == K::X || f.kind == K::XStar);
  if (sp) return Algebra::Sp;
  if (alternating(factors, K::Y)) return Algebra::I;
  if (alternating(factors, K::ZJZT)) return Algebra::IPrime;
  return std::nullopt;
}

std::string GeneratorExpr::to_string() const {
  std::string out = coeff == 1 ? "" : coeff == -1 ? "-" : std::to_string(coeff) + "*";
  out += "s" + std::to_string(t) + "(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += ' ';
    const auto& f = factors[i];
    switch (f.kind) {
      case K::X: out += "X" + std::to_string(f.k); break;
      case K::XT: out += "X" + std::to_string(f.k) + "'"; break;
      case K::XStar: out += "X" + std::to_string(f.k) + "*"; break;
      case K::Y: out += "Y"; break;
      case K::ZJZT: out += "ZJZ'"; break;
      case K::Z: out += "Z"; break;
      case K::ZT: out += "Z'"; break;
      case K::J: out += "J"; break;
    }
  }
  return out + ")";
}

GeneratorExpr GeneratorExpr::parse(std::string_view text) {
  auto fail = [&](const std::string& why) -> GeneratorExpr {
    throw Error("cannot parse generator '" + std::string(text) + "': " + why);
  };
  GeneratorExpr g;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i < text.size() && text[i] == '-') {
    g.coeff = -1;
    ++i;
  } else if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j >= text.size() || text[j] != '*') return fail("expected '*' after the coefficient");
    g.coeff = std::stoi(std::string(text.substr(i, j - i)));
    i = j + 1;
  }
  skip();
  if (i >= text.size() || text[i] != 's') return fail("expected s<t>(...)");
  std::size_t open = text.find('(', i), close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    return fail("unbalanced parentheses");
  try {
    g.t = std::stoi(std::string(text.substr(i + 1, open - i - 1)));
  } catch (const std::exception&) {
    return fail("bad t");
  }
  std::string body(text.substr(open + 1, close - open - 1));
  std::size_t p = 0;
  while (p < body.size()) {
    while (p < body.size() && body[p] == ' ') ++p;
    if (p >= body.size()) break;
    std::size_t q = body.find(' ', p);
    std::string tok = body.substr(p, q == std::string::npos ? std::string::npos : q - p);
    p = q == std::string::npos ? body.size() : q;
    IsoFactor f;
    if (tok == "Y") f.kind = K::Y;
    else if (tok == "ZJZ'" || tok == "ZJZT") f.kind = K::ZJZT;
    else if (tok == "Z") f.kind = K::Z;
    else if (tok == "Z'" || tok == "ZT") f.kind = K::ZT;
    else if (tok == "J") f.kind = K::J;
    else if (tok.size() >= 2 && tok[0] == 'X') {
      std::size_t e = 1;
      while (e < tok.size() && std::isdigit(static_cast<unsigned char>(tok[e]))) ++e;
      if (e == 1) return fail("letter index missing in '" + tok + "'");
      f.k = std::stoi(tok.substr(1, e - 1));
      std::string mark = tok.substr(e);
      if (mark.empty()) f.kind = K::X;
      else if (mark == "'" || mark == "T") f.kind = K::XT;
      else if (mark == "*") f.kind = K::XStar;
      else return fail("bad mark in '" + tok + "'");
      if (f.k < 1 || f.k > kMaxLetterIndex) return fail("index out of range in '" + tok + "'");
    } else {
      return fail("unknown factor '" + tok + "'");
    }
    g.factors.push_back(f);
  }
  if (g.factors.empty()) return fail("empty product");
  return g;
}

template <class F>
Poly<F> evaluate(const GeneratorExpr& g, const F& field, int n) {
  Generic<F> gen{field, n, {}, {}, {}, {}};
  std::vector<Mat<F>> ms;
  for (const auto& f : g.factors) {
    switch (f.kind) {
      case K::X: ms.push_back(gen.x(f.k)); break;
      case K::XT: ms.push_back(transpose(gen.x(f.k))); break;
      case K::XStar: ms.push_back(transpose(gen.x(f.k), TransposeKind::Symplectic)); break;
      case K::Y: ms.push_back(gen.get_y()); break;
      case K::ZJZT: ms.push_back(gen.get_z() * gen.get_j() * transpose(gen.get_z())); break;
      case K::Z: ms.push_back(gen.get_z()); break;
      case K::ZT: ms.push_back(transpose(gen.get_z())); break;
      case K::J: ms.push_back(gen.get_j()); break;
    }
  }
  return sigma_of_product(ms, g.t, g.coeff, field, n);
}

template <class F>
Poly<F> psi(const GeneratorExpr& g, const F& field, int n) {
  expect(g, Algebra::I, "Psi");
  Generic<F> gen{field, n, {}, {}, {}, {}};
  std::vector<Mat<F>> ms;
  for (const auto& f : g.factors) {
    if (f.kind == K::Y) {
      ms.push_back(-gen.get_j());
      continue;
    }
    Mat<F> xj = gen.x(f.k) * gen.get_j();
    ms.push_back(f.kind == K::XT ? transpose(xj) : xj);
  }
  return sigma_of_product(ms, g.t, g.coeff, field, n);
}

GeneratorExpr psi_generator(const GeneratorExpr& g) {
  expect(g, Algebra::I, "Psi");
  GeneratorExpr out;
  out.t = g.t;
  int m = 0;
  // X J (-J) = X and (X J)^T (-J) = J X^T J = -X^*
  for (std::size_t i = 0; i < g.factors.size(); i += 2) {
    const auto& a = g.factors[i];
    if (a.kind == K::XT) ++m;
    out.factors.push_back({a.kind == K::XT ? K::XStar : K::X, a.k});
  }
  out.coeff = g.coeff * sign_power(g.t, m);
  return out;
}

GeneratorExpr mu(const GeneratorExpr& f) {
  expect(f, Algebra::Sp, "mu");
  GeneratorExpr out;
  out.t = f.t;
  int m = 0;
  // Z^T B_1 Z J ... Z^T B_r Z J, rotated: B_1 ZJZ^T ... B_r ZJZ^T
  for (const auto& a : f.factors) {
    if (a.kind == K::XStar) ++m;
    out.factors.push_back({a.kind == K::XStar ? K::XT : K::X, a.k});
    out.factors.push_back({K::ZJZT, 0});
  }
  out.coeff = f.coeff * sign_power(f.t, m);
  return out;
}

template <class F>
Poly<F> mu_literal(const GeneratorExpr& f, const F& field, int n) {
  expect(f, Algebra::Sp, "mu");
  Generic<F> gen{field, n, {}, {}, {}, {}};
  Mat<F> zt = transpose(gen.get_z());
  Mat<F> zj = gen.get_z() * gen.get_j();
  std::vector<Mat<F>> ms;
  for (const auto& a : f.factors) {
    Mat<F> img = zt * gen.x(a.k) * zj;
    ms.push_back(a.kind == K::XStar ? transpose(img, TransposeKind::Symplectic) : img);
  }
  return sigma_of_product(ms, f.t, f.coeff, field, n);
}

GeneratorExpr theta(const GeneratorExpr& g) {
  expect(g, Algebra::IPrime, "theta");
  GeneratorExpr out = g;
  for (auto& f : out.factors)
    if (f.kind == K::ZJZT) f.kind = K::Y;
  return out;
}

std::vector<GeneratorExpr> sp_generators(int n, int d, int max_len) {
  std::vector<GeneratorExpr> out;
  for (const auto& w : primitive_classes(d, max_len, Group::Sp))
    for (int t = 1; t <= n; ++t) {
      GeneratorExpr g;
      g.t = t;
      for (std::size_t i = 0; i < w.size(); ++i)
        g.factors.push_back({w.at(i).transposed ? K::XStar : K::X, w.at(i).k});
      out.push_back(g);
    }
  return out;
}

std::vector<GeneratorExpr> i_generators(int n, int d, int max_len) {
  std::set<Word> seqs;
  for (const auto& w : all_words(d, max_len, true))
    if (w.is_primitive()) seqs.insert(least_rotation(w));
  std::vector<GeneratorExpr> out;
  for (const auto& w : seqs)
    for (int t = 1; t <= n; ++t) {
      GeneratorExpr g;
      g.t = t;
      for (std::size_t i = 0; i < w.size(); ++i) {
        g.factors.push_back({w.at(i).transposed ? K::XT : K::X, w.at(i).k});
        g.factors.push_back({K::Y, 0});
      }
      out.push_back(g);
    }
  return out;
}

std::vector<CompositeResult> verify_composites(const FieldSpec& spec, int n, int d, int max_len, bool literal,
                                               const std::function<void(const CompositeResult&)>& emit) {
  if (n < 2 || n % 2) throw Error("the isomorphisms need even n >= 2");
  if (d < 1 || d > kMaxLetterIndex || max_len < 1) throw Error("bad generator bounds");
  std::vector<CompositeResult> out;
  with_field(spec, [&](const auto& field) {
    auto push = [&](const char* id, const GeneratorExpr& g, std::string failed) {
      CompositeResult r{id, g.to_string(), n, d, failed.empty(), std::move(failed)};
      if (emit) emit(r);
      out.push_back(std::move(r));
    };
    for (const auto& f : sp_generators(n, d, max_len)) {
      GeneratorExpr m = mu(f);
      std::string failed;
      if (literal && !(evaluate(m, field, n) == mu_literal(f, field, n))) failed = "mu";
      if (failed.empty() && !(psi(theta(m), field, n) == evaluate(f, field, n))) failed = "composite";
      push("psi_theta_mu", f, failed);
    }
    for (const auto& g : i_generators(n, d, max_len)) {
      GeneratorExpr s = psi_generator(g);
      std::string failed;
      if (!(evaluate(s, field, n) == psi(g, field, n))) failed = "psi";
      GeneratorExpr m = mu(s);
      if (failed.empty() && literal && !(evaluate(m, field, n) == mu_literal(s, field, n))) failed = "mu";
      GeneratorExpr back = theta(m);
      if (failed.empty() && !(back == g || evaluate(back, field, n) == evaluate(g, field, n))) failed = "composite";
      push("theta_mu_psi", g, failed);
    }
    return 0;
  });
  return out;
}

Mat<PrimeField> random_skew(const PrimeField& field, int n, std::mt19937_64& rng) {
  Mat<PrimeField> c(field, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto v = static_cast<long>(rng() % field.modulus());
      c.at(i, j) = Poly<PrimeField>::from_int(field, v);
      c.at(j, i) = -c.at(i, j);
    }
  return c;
}

WitnessReport skew_witness_check(const PrimeField& field, int n, int samples, std::uint64_t seed,
                                 const std::vector<GeneratorExpr>& gens) {
  std::mt19937_64 rng(seed);
  Mat<PrimeField> j = standard_j(field, n);
  std::vector<std::pair<Poly<PrimeField>, Poly<PrimeField>>> values;
  for (const auto& g : gens) values.emplace_back(evaluate(g, field, n), evaluate(theta(g), field, n));
  WitnessReport rep;
  for (int s = 0; s < samples; ++s) {
    Mat<PrimeField> c = random_skew(field, n, rng);
    Mat<PrimeField> b = skew_congruence_witness(c);
    ++rep.samples;
    if (!(b * j * transpose(b) == c)) ++rep.congruence_failures;
    Poly<PrimeField>::Assignment zs, ys;
    for (int r = 0; r < n; ++r)
      for (int q = 0; q < n; ++q) {
        zs.emplace(Variable::z(r + 1, q + 1).code(), b.at(r, q));
        if (r < q) ys.emplace(Variable::y(r + 1, q + 1).code(), c.at(r, q));
      }
    for (const auto& [lhs, rhs] : values)
      if (!(lhs.substitute(zs, Unassigned::Keep) == rhs.substitute(ys, Unassigned::Keep))) {
        ++rep.substitution_failures;
        break;
      }
  }
  return rep;
}

CollisionReport theta_collision_check(const PrimeField& field, int n, int d, int max_len) {
  std::vector<GeneratorExpr> exprs;
  for (const auto& g : i_generators(n, d, max_len)) {
    GeneratorExpr p = g;
    for (auto& f : p.factors)
      if (f.kind == K::Y) f.kind = K::ZJZT;
    exprs.push_back(p);
    p.coeff = -1;
    exprs.push_back(p);
  }
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < exprs.size(); ++i) groups[evaluate(exprs[i], field, n).to_string()].push_back(i);
  CollisionReport rep;
  rep.expressions = static_cast<int>(exprs.size());
  for (const auto& [value, members] : groups) {
    if (members.size() < 2) continue;
    Poly<PrimeField> first = evaluate(theta(exprs[members[0]]), field, n);
    for (std::size_t i = 1; i < members.size(); ++i) {
      ++rep.collisions;
      if (!(evaluate(theta(exprs[members[i]]), field, n) == first)) ++rep.violations;
    }
  }
  return rep;
}

#define INVREL_INSTANTIATE(F)                                          \
  template Poly<F> evaluate(const GeneratorExpr&, const F&, int);      \
  template Poly<F> psi(const GeneratorExpr&, const F&, int);           \
  template Poly<F> mu_literal(const GeneratorExpr&, const F&, int);

INVREL_INSTANTIATE(Rationals)
INVREL_INSTANTIATE(PrimeField)

#undef INVREL_INSTANTIATE

}  // namespace invrel
