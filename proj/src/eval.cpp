#include "invrel/eval.hpp"

#include <chrono>
#include <set>

#include <json.hpp>

namespace invrel {

void EvalContext::validate() const {
  if (n < 1) throw Error("n must be positive");
  if (n > kMaxMatrixSize) throw Infeasible("n above the matrix size cap " + std::to_string(kMaxMatrixSize));
  if (group == Group::Sp && n % 2) throw Error("Sp(n) needs even n, got " + std::to_string(n));
  if (d < 1 || d > kMaxLetterIndex) throw Error("d must be in 1.." + std::to_string(kMaxLetterIndex));
}

namespace {

template <class F>
Mat<F> realize_with(const Word& w, Group g, const std::vector<Mat<F>>& xs) {
  auto letter = [&](Letter l) {
    const Mat<F>& x = xs.at(static_cast<std::size_t>(l.k - 1));
    if (!l.transposed || g == Group::GL) return x;
    return transpose(x, g == Group::Sp ? TransposeKind::Symplectic : TransposeKind::Ordinary);
  };
  Mat<F> out = letter(w.at(0));
  for (std::size_t i = 1; i < w.size(); ++i) out = out * letter(w.at(i));
  return out;
}

template <class F>
Poly<F> leading_term(const Poly<F>& p) {
  if (p.is_zero()) return p;
  return Poly<F>::from_terms(p.field(), {p.terms().front()});
}

}  // namespace

template <class F>
Poly<F> phi_eval(const SigmaPoly<F>& f, Group g, int n) {
  const F& field = f.field();
  std::map<Word, std::vector<Poly<F>>> sigmas;
  Poly<F> out(field);
  for (const auto& [mono, coeff] : f.terms()) {
    Poly<F> term = Poly<F>::constant(field, coeff);
    for (const auto& s : mono) {
      if (s.t > n) {
        term = Poly<F>(field);
        break;
      }
      auto it = sigmas.find(s.arg);
      if (it == sigmas.end()) it = sigmas.emplace(s.arg, sigma_coeffs(realize(s.arg, g, field, n))).first;
      term *= it->second[static_cast<std::size_t>(s.t)];
    }
    out += term;
  }
  return out;
}

template <class F>
Mat<F> realize_path(const Quiver& g, const Word& path, const F& field, int n) {
  if (g.kind() == Quiver::Kind::Q) throw Error("realize_path is for G_y and G_z");
  if (path.is_unity()) return Mat<F>::identity(field, n);
  const int d = g.d();
  auto arrow = [&](LetterCode c) {
    g.arrow(c);
    int k = c / 2 + 1;
    bool tr = c & 1;
    if (k <= d) {
      Mat<F> x = generic_x(field, n, k);
      return tr ? transpose(x) : x;
    }
    if (g.kind() == Quiver::Kind::Gy) {
      Mat<F> y = generic_y(field, n);
      return tr ? -y : y;
    }
    Mat<F> z = generic_z(field, n);
    return tr ? transpose(z) : z;
  };
  Mat<F> out = arrow(path.codes()[0]);
  for (std::size_t i = 1; i < path.size(); ++i) out = out * arrow(path.codes()[i]);
  return out;
}

template <class F>
Poly<F> pi_eval(const SigmaPoly<F>& f, const Quiver& g, int n) {
  const F& field = f.field();
  std::map<Word, std::vector<Poly<F>>> sigmas;
  Poly<F> out(field);
  for (const auto& [mono, coeff] : f.terms()) {
    Poly<F> term = Poly<F>::constant(field, coeff);
    for (const auto& s : mono) {
      if (s.t > n) {
        term = Poly<F>(field);
        break;
      }
      if (!g.is_closed(s.arg)) throw Error("'" + g.render(s.arg) + "' is not a closed path of " + g.name());
      auto it = sigmas.find(s.arg);
      if (it == sigmas.end()) it = sigmas.emplace(s.arg, sigma_coeffs(realize_path(g, s.arg, field, n))).first;
      term *= it->second[static_cast<std::size_t>(s.t)];
    }
    out += term;
  }
  return out;
}

template <class F>
Poly<F> eval_relation(const RelationExpr& e, const ArrowImages<F>& images, int n) {
  const F& field = images.by_code.at(0).field();
  std::map<Word, int> need;
  for (const auto& term : e.terms)
    for (const auto& f : term.factors)
      if (f.k <= n) need[f.path] = std::max(need[f.path], f.k);
  std::map<Word, std::vector<Poly<F>>> sigmas;
  for (const auto& [path, k] : need) sigmas.emplace(path, sigma_coeffs(path_matrix(path, images), k));
  Poly<F> out(field);
  for (const auto& term : e.terms) {
    Poly<F> prod = Poly<F>::from_int(field, term.sign);
    for (const auto& f : term.factors) {
      if (f.k > n) {
        prod = Poly<F>(field);
        break;
      }
      prod *= sigmas.at(f.path)[static_cast<std::size_t>(f.k)];
      if (prod.is_zero()) break;
    }
    out += prod;
  }
  return out;
}

std::string to_string(Route r) { return r == Route::Direct ? "direct" : "factored"; }

template <class F>
RelationEvaluator<F>::RelationEvaluator(F field, Group g, int n) : field_(std::move(field)), group_(g), n_(n) {
  if (g == Group::GL) throw Error("relations are evaluated for O or Sp");
  if (g == Group::Sp && n % 2) throw Error("Sp(n) needs even n");
}

template <class F>
const Poly<F>& RelationEvaluator<F>::generic(const RelationExpr& e, bool unit_c) {
  auto key = std::make_tuple(static_cast<int>(e.type), e.t, e.r, unit_c);
  auto it = generic_.find(key);
  if (it != generic_.end()) return it->second;
  TransposeKind kind = group_ == Group::Sp ? TransposeKind::Symplectic : TransposeKind::Ordinary;
  Mat<F> c = unit_c ? Mat<F>::identity(field_, n_) : generic_x(field_, n_, kSlotC);
  auto images = ArrowImages<F>::make(generic_x(field_, n_, kSlotA), generic_x(field_, n_, kSlotB), c, kind);
  return generic_.emplace(key, eval_relation(e, images, n_)).first->second;
}

template <class F>
Poly<F> RelationEvaluator<F>::evaluate(const RelationExpr& e, const WordSum<F>& a, const WordSum<F>& b,
                                       const WordSum<F>& c, Route route) {
  if (route == Route::Direct) return eval_relation(e, realize_triple(a, b, c, group_, n_), n_);
  bool unit_c = c.is_word() && c.has_unity();
  const Poly<F>& p = generic(e, unit_c);
  if (p.is_zero()) return p;
  typename Poly<F>::Assignment as;
  auto bind = [&](int slot, const WordSum<F>& s) {
    Mat<F> m = realize(s, group_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) as.emplace(Variable::x(i + 1, j + 1, slot).code(), m.at(i, j));
  };
  bind(kSlotA, a);
  bind(kSlotB, b);
  if (!unit_c) bind(kSlotC, c);
  return p.substitute(as);
}

Poly<PrimeField> act(const Poly<PrimeField>& f, const Mat<PrimeField>& g, int d) {
  const PrimeField& field = g.field();
  const int n = g.size();
  Mat<PrimeField> gi = inverse(g);
  Poly<PrimeField>::Assignment as;
  for (int k = 1; k <= d; ++k) {
    Mat<PrimeField> c = gi * generic_x(field, n, k) * g;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) as.emplace(Variable::x(i + 1, j + 1, k).code(), c.at(i, j));
  }
  return f.substitute(as, Unassigned::Keep);
}

InvarianceReport check_invariance(const Word& w, int t, Group g, const PrimeField& field, int n, int samples,
                                  std::uint64_t seed, bool certificate) {
  if (w.is_unity()) throw Error("invariance check needs a nonempty word");
  if (t < 1 || t > n) throw Error("t must be in 1..n");
  InvarianceReport rep;
  rep.word = w.to_string();
  rep.t = t;
  rep.method = certificate ? "certificate" : "direct";
  const int d = w.max_index();
  std::vector<Mat<PrimeField>> xs;
  for (int k = 1; k <= d; ++k) xs.push_back(generic_x(field, n, k));
  Mat<PrimeField> word = realize_with(w, g, xs);
  std::optional<Poly<PrimeField>> base;
  Mat<PrimeField> m = generic_x(field, n, kMaxLetterIndex);
  std::optional<Poly<PrimeField>> base_m;
  if (certificate)
    base_m = sigma_coeffs(m, t)[static_cast<std::size_t>(t)];
  else
    base = sigma_coeffs(word, t)[static_cast<std::size_t>(t)];
  for (int s = 0; s < samples; ++s) {
    Mat<PrimeField> gm = g == Group::GL ? sample_group_element(Group::O, field, n, seed + static_cast<std::uint64_t>(s))
                                        : sample_group_element(g, field, n, seed + static_cast<std::uint64_t>(s));
    Mat<PrimeField> gi = inverse(gm);
    std::vector<Mat<PrimeField>> conj;
    for (const auto& x : xs) conj.push_back(gi * x * gm);
    Mat<PrimeField> moved = realize_with(w, g, conj);
    bool ok;
    if (certificate) {
      ok = moved == gi * word * gm && sigma_coeffs(gi * m * gm, t)[static_cast<std::size_t>(t)] == *base_m;
    } else {
      ok = sigma_coeffs(moved, t)[static_cast<std::size_t>(t)] == *base;
    }
    ++rep.samples;
    if (!ok) ++rep.violations;
  }
  return rep;
}

std::vector<Word> all_words(int d, int max_len, bool transposes) {
  std::vector<Word> out;
  std::vector<LetterCode> alphabet;
  for (int k = 1; k <= d; ++k) {
    alphabet.push_back(Letter{k, false}.code());
    if (transposes) alphabet.push_back(Letter{k, true}.code());
  }
  std::vector<Word> layer = {Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (auto c : alphabet) next.push_back(w * Word({c}));
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> primitive_classes(int d, int max_len, Group g) {
  std::set<Word> s;
  for (const auto& w : all_words(d, max_len, g != Group::GL))
    if (w.is_primitive()) s.insert(canonical_class(w, flavor_of(g)));
  return {s.begin(), s.end()};
}

std::vector<std::pair<int, int>> sweep_pairs(int n, int max_tr) {
  std::vector<std::pair<int, int>> out;
  for (int total = n + 1; total <= n + max_tr; ++total)
    for (int r = 0; 2 * r <= total; ++r) out.emplace_back(total - 2 * r, r);
  return out;
}

SweepSummary run_relation_sweep(const SweepConfig& cfg, const std::function<void(const std::string&)>& emit) {
  cfg.ctx.validate();
  if (cfg.ctx.group == Group::GL)
    throw Error("GL relations sigma_t(a), t > n, vanish by definition; use the kernel check");
  if (cfg.max_word_len < 1 || cfg.max_tr < 1) throw Error("word length and t+2r margin must be positive");
  SweepSummary summary;
  with_field(cfg.ctx.field, [&](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    RelationEvaluator<F> ev(field, cfg.ctx.group, cfg.ctx.n);
    auto words = all_words(cfg.ctx.d, cfg.max_word_len, true);
    RelationType type = cfg.ctx.group == Group::Sp ? RelationType::Rho : RelationType::Sigma;
    std::vector<std::optional<Word>> none = {std::nullopt};
    std::vector<std::optional<Word>> ab, cs = {Word{}};
    for (const auto& w : words) {
      ab.emplace_back(w);
      cs.emplace_back(w);
    }
    for (auto [t, r] : sweep_pairs(cfg.ctx.n, cfg.max_tr)) {
      RelationExpr e = build_relation(type, t, r);
      const auto& as = t > 0 ? ab : none;
      const auto& bs = r > 0 ? ab : none;
      const auto& cl = r > 0 ? cs : none;
      for (const auto& a : as)
        for (const auto& b : bs)
          for (const auto& c : cl) {
            auto start = std::chrono::steady_clock::now();
            auto sum = [&](const std::optional<Word>& w) {
              return w ? WordSum<F>::of(field, *w) : WordSum<F>(field);
            };
            Poly<F> v = ev.evaluate(e, sum(a), sum(b), sum(c), cfg.route);
            auto stop = std::chrono::steady_clock::now();
            nlohmann::ordered_json j;
            j["group"] = to_string(cfg.ctx.group);
            j["n"] = cfg.ctx.n;
            j["d"] = cfg.ctx.d;
            j["field"] = cfg.ctx.field.to_string();
            auto text = [](const std::optional<Word>& w) {
              return w ? nlohmann::ordered_json(w->to_string()) : nlohmann::ordered_json(nullptr);
            };
            j["relation"] = {{"type", to_string(type)}, {"t", t}, {"r", r},
                             {"a", text(a)},             {"b", text(b)}, {"c", text(c)}};
            j["result"] = v.is_zero() ? "zero" : "nonzero";
            j["witness_term"] = v.is_zero() ? nlohmann::ordered_json(nullptr)
                                            : nlohmann::ordered_json(leading_term(v).to_string());
            if (cfg.timings)
              j["millis"] = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
            emit(j.dump());
            ++summary.checked;
            if (!v.is_zero()) ++summary.nonzero;
          }
    }
    return 0;
  });
  return summary;
}

#define INVREL_INSTANTIATE(F)                                                \
  template Poly<F> phi_eval(const SigmaPoly<F>&, Group, int);                \
  template Mat<F> realize_path(const Quiver&, const Word&, const F&, int);   \
  template Poly<F> pi_eval(const SigmaPoly<F>&, const Quiver&, int);         \
  template Poly<F> eval_relation(const RelationExpr&, const ArrowImages<F>&, int); \
  template class RelationEvaluator<F>;

INVREL_INSTANTIATE(Rationals)
INVREL_INSTANTIATE(PrimeField)

#undef INVREL_INSTANTIATE

}  // namespace invrel
