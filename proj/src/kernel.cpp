#include "invrel/kernel.hpp"

#include <cstdio>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <type_traits>

#include <absl/container/flat_hash_map.h>

namespace invrel {

namespace {

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

bool fits(const std::vector<int>& a, const std::vector<int>& bound) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > bound[i]) return false;
  return true;
}

template <class F>
struct Coordinates {
  absl::flat_hash_map<Monomial, int> index;
  std::vector<Monomial> order;

  int of(const Monomial& m) {
    auto [it, fresh] = index.try_emplace(m, static_cast<int>(order.size()));
    if (fresh) order.push_back(m);
    return it->second;
  }
};

}  // namespace

std::string to_string(SpanScheme s) { return s == SpanScheme::Words ? "words" : "combinations"; }

std::vector<std::vector<int>> multidegrees_up_to(int d, int max_deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(d), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == d) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, max_deg);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int ta = total(a), tb = total(b);
    if (ta != tb) return ta < tb;
    return a > b;
  });
  return out;
}

ComponentBasis component_basis(const std::vector<int>& delta, Group g) {
  const int d = static_cast<int>(delta.size());
  const int deg = total(delta);
  if (d < 1) throw Error("multidegree needs at least one slot");
  for (int v : delta)
    if (v < 0) throw Error("negative multidegree");
  if (deg > kMaxComponentDegree)
    throw Infeasible("component degree " + std::to_string(deg) + " exceeds the cap " + std::to_string(kMaxComponentDegree));
  ComponentBasis out{delta, {}};
  std::set<Word> classes;
  if (deg > 0)
    for (const auto& w : all_words(d, deg, g != Group::GL))
      if (w.is_primitive() && fits(w.mdeg(d), delta)) classes.insert(canonical_class(w, flavor_of(g)));
  std::vector<std::pair<SigmaSymbol, std::vector<int>>> symbols;
  for (const auto& w : classes) {
    auto m = w.mdeg(d);
    for (int t = 1;; ++t) {
      std::vector<int> tm(m);
      for (auto& v : tm) v *= t;
      if (!fits(tm, delta)) break;
      symbols.push_back({SigmaSymbol{t, w}, tm});
    }
  }
  std::sort(symbols.begin(), symbols.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SigmaMonomial cur;
  std::vector<int> rest = delta;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (total(rest) == 0) {
      out.basis.push_back(cur);
      return;
    }
    if (i == symbols.size()) return;
    self(self, i + 1);
    const auto& [sym, m] = symbols[i];
    int used = 0;
    while (true) {
      bool ok = true;
      for (std::size_t s = 0; s < m.size(); ++s) ok = ok && m[s] <= rest[s];
      if (!ok) break;
      for (std::size_t s = 0; s < m.size(); ++s) rest[s] -= m[s];
      cur.push_back(sym);
      ++used;
      self(self, i + 1);
    }
    for (int u = 0; u < used; ++u) {
      cur.pop_back();
      for (std::size_t s = 0; s < m.size(); ++s) rest[s] += m[s];
    }
  };
  rec(rec, 0);
  std::sort(out.basis.begin(), out.basis.end());
  return out;
}

std::string basis_hash(const ComponentBasis& b) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& m : b.basis) {
    for (char ch : to_string(m) + "|") {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <class F>
KernelLab<F>::KernelLab(F field, Group g, int n, int d) : field_(std::move(field)), group_(g), n_(n), d_(d) {
  EvalContext{g, n, d, field_.spec()}.validate();
  if (g != Group::GL) small_.emplace(field_, g, n);
}

template <class F>
const ComponentBasis& KernelLab<F>::basis(const std::vector<int>& delta) {
  if (static_cast<int>(delta.size()) != d_) throw Error("multidegree must have d = " + std::to_string(d_) + " slots");
  auto it = bases_.find(delta);
  if (it == bases_.end()) it = bases_.emplace(delta, component_basis(delta, group_)).first;
  return it->second;
}

template <class F>
const std::vector<Poly<F>>& KernelLab<F>::symbol_values(const Word& w, int big_n) {
  auto key = std::make_pair(big_n, w);
  auto it = sigma_.find(key);
  if (it == sigma_.end())
    it = sigma_.emplace(key, sigma_coeffs(realize(w, group_, field_, big_n), std::min(big_n, kMaxComponentDegree)))
             .first;
  return it->second;
}

template <class F>
Poly<F> KernelLab<F>::phi(const SigmaMonomial& m, int big_n) {
  Poly<F> out = Poly<F>::constant(field_, field_.one());
  for (const auto& s : m) {
    if (s.t > big_n) return Poly<F>(field_);
    out *= symbol_values(s.arg, big_n)[static_cast<std::size_t>(s.t)];
  }
  return out;
}

template <class F>
const KernelComponent<F>& KernelLab<F>::kernel(const std::vector<int>& delta) {
  auto it = kernels_.find(delta);
  if (it != kernels_.end()) return it->second;
  const auto& b = basis(delta).basis;
  KernelComponent<F> kc;
  kc.basis_size = static_cast<int>(b.size());
  if (!b.empty()) {
    Coordinates<F> coords;
    std::vector<Poly<F>> images;
    for (const auto& m : b) {
      images.push_back(phi(m, n_));
      for (const auto& term : images.back().terms()) coords.of(term.mono);
    }
    Dense<F> a(field_, std::max<int>(1, static_cast<int>(coords.order.size())), kc.basis_size);
    for (int j = 0; j < kc.basis_size; ++j)
      for (const auto& term : images[static_cast<std::size_t>(j)].terms()) a.at(coords.of(term.mono), j) = term.coeff;
    for (const auto& v : a.nullspace()) {
      SigmaPoly<F> p(field_);
      for (int j = 0; j < kc.basis_size; ++j)
        if (!field_.is_zero(v[static_cast<std::size_t>(j)]))
          p += SigmaPoly<F>::monomial(field_, b[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(j)]);
      kc.kernel.push_back(std::move(p));
    }
    kc.dimension = static_cast<int>(kc.kernel.size());
  }
  return kernels_.emplace(delta, std::move(kc)).first->second;
}

template <class F>
std::vector<typename KernelLab<F>::Generator> KernelLab<F>::generators(const std::vector<int>& delta,
                                                                        SpanScheme scheme) {
  std::vector<WordSum<F>> args;
  std::vector<Word> words = all_words(d_, 2, group_ != Group::GL);
  for (const auto& w : words) args.push_back(WordSum<F>::of(field_, w));
  if (scheme == SpanScheme::Combinations) {
    std::vector<typename F::value_type> lambdas;
    if constexpr (std::is_same_v<F, PrimeField>) {
      for (std::uint32_t l = 1; l < field_.modulus(); ++l) lambdas.push_back(field_.from_int(l));
    } else {
      lambdas = {field_.from_int(1), field_.from_int(-1), field_.from_int(2)};
    }
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        if (words[i].mdeg(d_) != words[j].mdeg(d_)) continue;
        for (const auto& l : lambdas) {
          WordSum<F> s = WordSum<F>::of(field_, words[i]);
          s.add(words[j], l);
          args.push_back(std::move(s));
        }
      }
  }
  auto mdeg_of = [&](const WordSum<F>& s) {
    return s.terms().empty() ? std::vector<int>(static_cast<std::size_t>(d_), 0) : s.terms().begin()->first.mdeg(d_);
  };
  auto scaled = [](std::vector<int> v, int k) {
    for (auto& x : v) x *= k;
    return v;
  };
  auto plus = [](std::vector<int> a, const std::vector<int>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };
  std::vector<Generator> out;
  const int deg = total(delta);
  WordSum<F> none(field_);
  if (group_ == Group::GL) {
    for (const auto& a : args)
      for (int t = n_ + 1; t * total(mdeg_of(a)) <= deg; ++t) {
        auto m = scaled(mdeg_of(a), t);
        if (fits(m, delta))
          out.push_back({"s" + std::to_string(t) + "(" + a.to_string() + ")", m, RelationType::Sigma, t, 0, a, none,
                         none});
      }
    return out;
  }
  RelationType type = group_ == Group::Sp ? RelationType::Rho : RelationType::Sigma;
  std::vector<WordSum<F>> cs = {WordSum<F>::of(field_, Word{})};
  cs.insert(cs.end(), args.begin(), args.end());
  for (int t = 0; t <= kDefaultPathCap[0] && t <= deg; ++t)
    for (int r = 0; r <= kDefaultPathCap[1] && t + r <= deg; ++r) {
      if (t + 2 * r <= n_) continue;
      std::vector<const WordSum<F>*> as = {&none}, bs = {&none}, cl = {&none};
      if (t > 0) {
        as.clear();
        for (const auto& a : args) as.push_back(&a);
      }
      if (r > 0) {
        bs.clear();
        cl.clear();
        for (const auto& b : args) bs.push_back(&b);
        for (const auto& c : cs) cl.push_back(&c);
      }
      for (const auto* a : as)
        for (const auto* b : bs)
          for (const auto* c : cl) {
            auto m = plus(scaled(mdeg_of(*a), t), scaled(plus(mdeg_of(*b), mdeg_of(*c)), r));
            if (!fits(m, delta)) continue;
            std::string label = to_string(type) + "_{" + std::to_string(t) + "," + std::to_string(r) + "}(" +
                                (t ? a->to_string() : "-") + "; " + (r ? b->to_string() : "-") + "; " +
                                (r ? c->to_string() : "-") + ")";
            out.push_back({label, m, type, t, r, *a, *b, *c});
          }
    }
  return out;
}

template <class F>
Poly<F> KernelLab<F>::phi_n(const Generator& gen) {
  if (group_ == Group::GL) {
    if (gen.t > n_) return Poly<F>(field_);
    return sigma_coeffs(realize(gen.a, Group::GL, n_), gen.t)[static_cast<std::size_t>(gen.t)];
  }
  auto key = std::make_pair(gen.t, gen.r);
  auto it = relations_.find(key);
  if (it == relations_.end()) it = relations_.emplace(key, build_relation(gen.type, gen.t, gen.r)).first;
  return small_->evaluate(it->second, gen.a, gen.b, gen.c, n_ <= 2 ? Route::Direct : Route::Factored);
}

template <class F>
typename KernelLab<F>::Point KernelLab<F>::random_point(int big_n, std::mt19937_64& rng) const {
  Point p;
  p.x.emplace_back(field_, big_n);
  for (int k = 1; k <= d_; ++k) {
    Mat<F> m(field_, big_n);
    for (int i = 0; i < big_n; ++i)
      for (int j = 0; j < big_n; ++j) {
        long v;
        if constexpr (std::is_same_v<F, PrimeField>)
          v = static_cast<long>(rng() % field_.modulus());
        else
          v = static_cast<long>(rng() % 19) - 9;
        m.at(i, j) = Poly<F>::from_int(field_, v);
      }
    p.x.push_back(std::move(m));
  }
  return p;
}

template <class F>
Mat<F> KernelLab<F>::realize_at(const WordSum<F>& s, const Point& p) const {
  const int big_n = p.x[0].size();
  Mat<F> out(field_, big_n);
  for (const auto& [w, c] : s.terms()) {
    Mat<F> m = Mat<F>::identity(field_, big_n);
    for (std::size_t i = 0; i < w.size(); ++i) {
      Letter l = w.at(i);
      const Mat<F>& x = p.x.at(static_cast<std::size_t>(l.k));
      if (!l.transposed || group_ == Group::GL)
        m = m * x;
      else
        m = m * transpose(x, group_ == Group::Sp ? TransposeKind::Symplectic : TransposeKind::Ordinary);
    }
    out += field_.is_one(c) ? m : m.scale(c);
  }
  return out;
}

template <class F>
typename KernelLab<F>::Value KernelLab<F>::at_point(const SigmaMonomial& m, Point& p) const {
  const int big_n = p.x[0].size();
  Value out = field_.one();
  for (const auto& s : m) {
    if (s.t > big_n) return field_.zero();
    auto it = p.sigma.find(s.arg);
    if (it == p.sigma.end())
      it = p.sigma
               .emplace(s.arg, sigma_coeffs(realize_at(WordSum<F>::of(field_, s.arg), p),
                                            std::min(big_n, kMaxComponentDegree)))
               .first;
    out = field_.mul(out, it->second[static_cast<std::size_t>(s.t)].constant_value());
  }
  return out;
}

template <class F>
typename KernelLab<F>::Value KernelLab<F>::at_point(const Generator& gen, Point& p) {
  const int big_n = p.x[0].size();
  if (group_ == Group::GL) {
    if (gen.t > big_n) return field_.zero();
    return sigma_coeffs(realize_at(gen.a, p), gen.t)[static_cast<std::size_t>(gen.t)].constant_value();
  }
  auto key = std::make_pair(gen.t, gen.r);
  auto it = relations_.find(key);
  if (it == relations_.end()) it = relations_.emplace(key, build_relation(gen.type, gen.t, gen.r)).first;
  auto images = ArrowImages<F>::make(realize_at(gen.a, p), realize_at(gen.b, p), realize_at(gen.c, p),
                                     group_ == Group::Sp ? TransposeKind::Symplectic : TransposeKind::Ordinary);
  return eval_relation(it->second, images, big_n).constant_value();
}

template <class F>
SpanReport KernelLab<F>::span(const std::vector<int>& delta, SpanScheme scheme) {
  const auto& b = basis(delta).basis;
  const auto& kc = kernel(delta);
  SpanReport rep;
  rep.delta = delta;
  rep.scheme = scheme;
  rep.basis_size = kc.basis_size;
  rep.kernel_dim = kc.dimension;
  const int bsz = rep.basis_size;
  if (bsz == 0) return rep;

  // seeded by the component so reports repeat exactly
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  for (int v : delta) seed = seed * 1000003u + static_cast<std::uint64_t>(v);
  std::mt19937_64 rng(seed);

  const int deg = total(delta);
  const int step = group_ == Group::Sp ? 2 : 1;
  int big_n = std::max(n_, deg);
  if (group_ == Group::Sp && big_n % 2) ++big_n;
  std::vector<Point> points;
  std::vector<int> pivots;
  auto values = [&]() {
    Dense<F> v(field_, bsz, static_cast<int>(points.size()));
    for (std::size_t q = 0; q < points.size(); ++q)
      for (int i = 0; i < bsz; ++i) v.at(i, static_cast<int>(q)) = at_point(b[static_cast<std::size_t>(i)], points[q]);
    return v;
  };
  std::optional<Dense<F>> full;
  for (;;) {
    if (big_n > 2 * deg + 2 || big_n > kMaxMatrixSize)
      throw Infeasible("no injective phi_N found for the component (N <= " + std::to_string(big_n - step) + ")");
    points.clear();
    for (int q = 0; q < bsz + 4; ++q) points.push_back(random_point(big_n, rng));
    for (int round = 0; round < 3; ++round) {
      full.emplace(values());
      Dense<F> red = *full;
      pivots = red.rref();
      if (static_cast<int>(pivots.size()) == bsz) break;
      for (int q = 0; q < bsz + 4; ++q) points.push_back(random_point(big_n, rng));
    }
    if (static_cast<int>(pivots.size()) == bsz) break;
    big_n += step;
  }
  rep.phi_size = big_n;
  rep.points = static_cast<int>(points.size());
  const int npts = rep.points;
  Dense<F> s(field_, bsz, bsz);
  for (int i = 0; i < bsz; ++i)
    for (int j = 0; j < bsz; ++j) s.at(i, j) = full->at(i, pivots[static_cast<std::size_t>(j)]);
  Dense<F> s_inv = s.inverse();

  std::vector<Poly<F>> small;
  for (const auto& m : b) small.push_back(phi(m, n_));

  std::vector<std::vector<Value>> found;
  for (const auto& gen : generators(delta, scheme)) {
    ++rep.generators;
    if (!phi_n(gen).is_zero()) ++rep.outside_kernel;
    std::vector<Value> g(static_cast<std::size_t>(npts));
    bool zero = true;
    for (int q = 0; q < npts; ++q) {
      g[static_cast<std::size_t>(q)] = at_point(gen, points[static_cast<std::size_t>(q)]);
      zero = zero && field_.is_zero(g[static_cast<std::size_t>(q)]);
    }
    std::vector<int> rest(delta);
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= gen.mdeg[i];
    for (const auto& cof : basis(rest).basis) {
      ++rep.products;
      std::vector<Value> v(static_cast<std::size_t>(npts), field_.zero());
      if (!zero)
        for (int q = 0; q < npts; ++q)
          v[static_cast<std::size_t>(q)] =
              field_.mul(g[static_cast<std::size_t>(q)], at_point(cof, points[static_cast<std::size_t>(q)]));
      std::vector<Value> c(static_cast<std::size_t>(bsz), field_.zero());
      for (int i = 0; i < bsz; ++i)
        for (int j = 0; j < bsz; ++j)
          field_.add_mul_to(c[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(pivots[static_cast<std::size_t>(j)])],
                            s_inv.at(j, i));
      for (int q = 0; q < npts; ++q) {
        Value back = field_.zero();
        for (int i = 0; i < bsz; ++i) field_.add_mul_to(back, c[static_cast<std::size_t>(i)], full->at(i, q));
        if (!(back == v[static_cast<std::size_t>(q)]))
          throw std::logic_error("element " + gen.label + " is not in the span of the component basis images");
      }
      Poly<F> at_n(field_);
      for (int i = 0; i < bsz; ++i)
        if (!field_.is_zero(c[static_cast<std::size_t>(i)])) at_n += small[static_cast<std::size_t>(i)].scale(c[static_cast<std::size_t>(i)]);
      if (!at_n.is_zero()) ++rep.outside_kernel;
      found.push_back(std::move(c));
    }
  }
  if (!found.empty()) {
    Dense<F> m(field_, static_cast<int>(found.size()), bsz);
    for (std::size_t i = 0; i < found.size(); ++i)
      for (int j = 0; j < bsz; ++j) m.at(static_cast<int>(i), j) = found[i][static_cast<std::size_t>(j)];
    rep.span_dim = m.rank();
  }
  return rep;
}

template <class F>
SpanReport KernelLab<F>::span_escalating(const std::vector<int>& delta) {
  SpanReport rep = span(delta, SpanScheme::Words);
  if (rep.span_dim < rep.kernel_dim) rep = span(delta, SpanScheme::Combinations);
  return rep;
}

template class KernelLab<Rationals>;
template class KernelLab<PrimeField>;

}  // namespace invrel
