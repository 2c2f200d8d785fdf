#include <optional>
#include <random>

#include "invrel/eval.hpp"

namespace invrel {

template <class F>
Poly<F> y_to_z_to_y(const Poly<F>& f, int n) {
  const F& field = f.field();
  typename Poly<F>::Assignment to_z, to_y;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      auto z = Poly<F>::variable(field, Variable::z(i, j));
      if (i < j) {
        to_z.insert_or_assign(Variable::y(i, j).code(), z - Poly<F>::variable(field, Variable::z(j, i)));
        to_y.insert_or_assign(Variable::z(i, j).code(), Poly<F>::variable(field, Variable::y(i, j)));
      } else {
        to_y.insert_or_assign(Variable::z(i, j).code(), -Poly<F>::variable(field, Variable::y(j, i)));
      }
    }
  Poly<F> h = f.substitute(to_z, Unassigned::Keep);
  return h.substitute(to_y, Unassigned::Keep);
}

std::vector<ScalingCase> scaling_check(const ScalingConfig& cfg, const std::function<void(const ScalingCase&)>& emit) {
  if (cfg.field.is_prime() && cfg.field.p == 2) throw Error("the scaling check needs p != 2");
  if (cfg.n < 1 || cfg.n > kMaxMatrixSize) throw Error("n out of range");
  if (cfg.max_k < 0 || cfg.max_k > 4) throw Error("y-degree bound must be in 0..4");
  return with_field(cfg.field, [&](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    Quiver gy = Quiver::g_y(cfg.d);
    std::vector<int> bound(static_cast<std::size_t>(cfg.d), 2);
    bound.push_back(cfg.max_k);
    std::vector<std::vector<Word>> by_k(static_cast<std::size_t>(cfg.max_k + 1));
    for (const auto& w : gy.closed_path_classes(bound)) by_k[static_cast<std::size_t>(gy.mdeg(w).back())].push_back(w);
    std::mt19937_64 rng(cfg.seed);
    // a symbol sigma_t(path) has y-degree t * (number of y in the path)
    auto pick = [&](int part) -> std::optional<SigmaSymbol> {
      std::vector<int> ts;
      for (int t = 1; t <= std::min(cfg.n, part); ++t)
        if (part % t == 0 && !by_k[static_cast<std::size_t>(part / t)].empty()) ts.push_back(t);
      if (ts.empty()) return std::nullopt;
      int t = ts[rng() % ts.size()];
      const auto& v = by_k[static_cast<std::size_t>(part / t)];
      return SigmaSymbol{t, v[rng() % v.size()]};
    };
    std::vector<ScalingCase> out;
    for (int k = 0; k <= cfg.max_k; ++k) {
      for (int s = 0; s < cfg.per_k; ++s) {
        SigmaMonomial m;
        // odd samples are products of two symbols splitting the y-degree
        int k1 = s % 2 && k >= 2 ? 1 + static_cast<int>(rng() % static_cast<unsigned>(k - 1)) : k;
        for (int part : {k1, k - k1}) {
          if (part == 0) continue;
          if (auto sym = pick(part)) m.push_back(*sym);
        }
        // G_y has no closed path without y, so degree 0 is only the unit
        if (m.empty() && (k > 0 || s > 0)) continue;
        std::string text;
        for (const auto& sym : m)
          text += (text.empty() ? "" : "*") + std::string("s") + std::to_string(sym.t) + "(" + gy.render(sym.arg) + ")";
        if (text.empty()) text = "1";
        Poly<F> f = pi_eval(SigmaPoly<F>::monomial(field, m, field.one()), gy, cfg.n);
        Poly<F> l = y_to_z_to_y(f, cfg.n);
        ScalingCase c{text, k, l == f.scale(field.from_int(1L << k))};
        if (emit) emit(c);
        out.push_back(std::move(c));
      }
    }
    return out;
  });
}

template Poly<Rationals> y_to_z_to_y(const Poly<Rationals>&, int);
template Poly<PrimeField> y_to_z_to_y(const Poly<PrimeField>&, int);

}  // namespace invrel
