#include "invrel/matrix.hpp"

#include <random>

namespace invrel {

std::string to_string(Group g) {
  switch (g) {
    case Group::GL: return "gl";
    case Group::O: return "o";
    case Group::Sp: return "sp";
  }
  return "?";
}

Group parse_group(std::string_view text) {
  if (text == "gl" || text == "GL") return Group::GL;
  if (text == "o" || text == "O") return Group::O;
  if (text == "sp" || text == "Sp" || text == "SP") return Group::Sp;
  throw Error("unknown group '" + std::string(text) + "' (expected gl, o or sp)");
}

template <class F>
Mat<F>::Mat(F field, int n) : field_(std::move(field)), n_(n) {
  if (n < 1) throw Error("matrix size must be positive");
  if (n > kMaxMatrixSize) throw Infeasible("matrix size exceeds " + std::to_string(kMaxMatrixSize));
  entries_.assign(static_cast<std::size_t>(n * n), Poly<F>(field_));
}

template <class F>
Mat<F> Mat<F>::identity(const F& field, int n) {
  Mat m(field, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Poly<F>::from_int(field, 1);
  return m;
}

template <class F>
Mat<F> Mat<F>::from_ints(const F& field, int n, const std::vector<long>& entries) {
  if (entries.size() != static_cast<std::size_t>(n * n)) throw Error("from_ints: wrong entry count");
  Mat m(field, n);
  for (std::size_t i = 0; i < entries.size(); ++i) m.entries_[i] = Poly<F>::from_int(field, entries[i]);
  return m;
}

template <class F>
bool Mat<F>::is_constant() const {
  for (const auto& e : entries_)
    if (!e.is_constant()) return false;
  return true;
}

template <class F>
bool Mat<F>::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

template <class F>
std::size_t Mat<F>::term_count() const {
  std::size_t total = 0;
  for (const auto& e : entries_) total += e.size();
  return total;
}

template <class F>
void Mat<F>::check(const Mat& o) const {
  if (n_ != o.n_) throw Error("matrix size mismatch");
  if (!(field_ == o.field_)) throw Error("mixed-field operands");
}

template <class F>
Mat<F>& Mat<F>::operator+=(const Mat& o) {
  check(o);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

template <class F>
Mat<F>& Mat<F>::operator-=(const Mat& o) {
  check(o);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

template <class F>
Mat<F> Mat<F>::operator-() const {
  Mat out(field_, n_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = -entries_[i];
  return out;
}

template <class F>
Mat<F> Mat<F>::scale(const typename F::value_type& c) const {
  Mat out(field_, n_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i].scale(c);
  return out;
}

template <class F>
Mat<F> Mat<F>::scale(const Poly<F>& c) const {
  Mat out(field_, n_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * c;
  return out;
}

template <class F>
Mat<F> Mat<F>::mul(const Mat& o) const {
  check(o);
  Mat out(field_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      std::vector<typename Poly<F>::Term> pieces;
      for (int k = 0; k < n_; ++k) {
        const auto& a = at(i, k);
        const auto& b = o.at(k, j);
        if (a.is_zero() || b.is_zero()) continue;
        Poly<F> prod = a * b;
        pieces.insert(pieces.end(), prod.terms().begin(), prod.terms().end());
      }
      out.at(i, j) = Poly<F>::from_terms(field_, std::move(pieces));
    }
  }
  return out;
}

template <class F>
Poly<F> Mat<F>::trace() const {
  Poly<F> t(field_);
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

template <class F>
std::string Mat<F>::to_string() const {
  std::string out = "[";
  for (int i = 0; i < n_; ++i) {
    out += i ? ", [" : "[";
    for (int j = 0; j < n_; ++j) out += (j ? ", " : "") + at(i, j).to_string();
    out += "]";
  }
  return out + "]";
}

template <class F>
Mat<F> generic_x(const F& field, int n, int k) {
  Mat<F> m(field, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Poly<F>::variable(field, Variable::x(i + 1, j + 1, k));
  return m;
}

template <class F>
Mat<F> generic_y(const F& field, int n) {
  Mat<F> m(field, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m.at(i, j) = Poly<F>::variable(field, Variable::y(i + 1, j + 1));
      m.at(j, i) = -m.at(i, j);
    }
  return m;
}

template <class F>
Mat<F> generic_z(const F& field, int n) {
  Mat<F> m(field, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Poly<F>::variable(field, Variable::z(i + 1, j + 1));
  return m;
}

template <class F>
Mat<F> standard_j(const F& field, int n) {
  if (n < 2 || n % 2) throw Error("the skew form J needs even n >= 2, got " + std::to_string(n));
  Mat<F> m(field, n);
  int h = n / 2;
  for (int i = 0; i < h; ++i) {
    m.at(i, i + h) = Poly<F>::from_int(field, 1);
    m.at(i + h, i) = Poly<F>::from_int(field, -1);
  }
  return m;
}

template <class F>
Mat<F> transpose(const Mat<F>& a, TransposeKind kind) {
  int n = a.size();
  Mat<F> t(a.field(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.at(i, j) = a.at(j, i);
  if (kind == TransposeKind::Ordinary) return t;
  Mat<F> j = standard_j(a.field(), n);
  return -(j * t * j);
}

template <class F>
std::vector<Poly<F>> sigma_coeffs(const Mat<F>& a, int max_t) {
  const F& field = a.field();
  const int n = a.size();
  const int top = (max_t < 0 || max_t > n) ? n : max_t;

  // c holds the coefficients of det(lambda E - A_r), truncated at degree top:
  // det = sum_t c_t lambda^(r - t).
  std::vector<Poly<F>> c{Poly<F>::from_int(field, 1)};
  for (int r = 1; r <= n; ++r) {
    const int m = r - 1;
    const int limit = std::min(r, top);
    const Poly<F>& diag = a.at(m, m);

    // s_k = R M^k C for the bordering row R, column C of the leading block M.
    std::vector<Poly<F>> s;
    if (m >= 1 && limit >= 2) {
      std::vector<Poly<F>> row(static_cast<std::size_t>(m), Poly<F>(field));
      for (int j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] = a.at(m, j);
      for (int k = 0; k <= limit - 2; ++k) {
        Poly<F> acc(field);
        for (int j = 0; j < m; ++j) {
          const auto& rj = row[static_cast<std::size_t>(j)];
          if (!rj.is_zero() && !a.at(j, m).is_zero()) acc += rj * a.at(j, m);
        }
        s.push_back(std::move(acc));
        if (k == limit - 2) break;
        std::vector<Poly<F>> next(static_cast<std::size_t>(m), Poly<F>(field));
        for (int j = 0; j < m; ++j) {
          std::vector<typename Poly<F>::Term> pieces;
          for (int i = 0; i < m; ++i) {
            const auto& ri = row[static_cast<std::size_t>(i)];
            if (ri.is_zero() || a.at(i, j).is_zero()) continue;
            Poly<F> prod = ri * a.at(i, j);
            pieces.insert(pieces.end(), prod.terms().begin(), prod.terms().end());
          }
          next[static_cast<std::size_t>(j)] = Poly<F>::from_terms(field, std::move(pieces));
        }
        row = std::move(next);
      }
    }

    auto old = [&](int t) -> const Poly<F>* {
      return (t >= 0 && t < static_cast<int>(c.size()) && t <= m) ? &c[static_cast<std::size_t>(t)] : nullptr;
    };
    std::vector<Poly<F>> next;
    next.reserve(static_cast<std::size_t>(limit + 1));
    for (int t = 0; t <= limit; ++t) {
      Poly<F> v = old(t) ? *old(t) : Poly<F>(field);
      if (t >= 1 && old(t - 1) && !diag.is_zero()) v -= diag * *old(t - 1);
      for (int j = 0; j <= t - 2; ++j) {
        const Poly<F>* cj = old(j);
        const auto& sk = s[static_cast<std::size_t>(t - 2 - j)];
        if (cj && !sk.is_zero()) v -= *cj * sk;
      }
      next.push_back(std::move(v));
    }
    c = std::move(next);
  }
  for (int t = 1; t < static_cast<int>(c.size()); t += 2) c[static_cast<std::size_t>(t)] = -c[static_cast<std::size_t>(t)];
  return c;
}

template <class F>
Dense<F>::Dense(F field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), field_.zero()) {}

template <class F>
Dense<F> Dense<F>::from_mat(const Mat<F>& m) {
  Dense d(m.field(), m.size(), m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) {
      if (!m.at(i, j).is_constant()) throw Error("matrix entry is not constant");
      d.at(i, j) = m.at(i, j).constant_value();
    }
  return d;
}

template <class F>
Mat<F> Dense<F>::to_mat() const {
  if (rows_ != cols_) throw Error("to_mat needs a square matrix");
  Mat<F> m(field_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = Poly<F>::constant(field_, at(i, j));
  return m;
}

template <class F>
std::vector<int> Dense<F>::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int piv = -1;
    for (int i = row; i < rows_; ++i)
      if (!field_.is_zero(at(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < cols_; ++j) std::swap(at(piv, j), at(row, j));
    value_type inv = field_.inv(at(row, col));
    for (int j = col; j < cols_; ++j) at(row, j) = field_.mul(at(row, j), inv);
    for (int i = 0; i < rows_; ++i) {
      if (i == row || field_.is_zero(at(i, col))) continue;
      value_type f = at(i, col);
      for (int j = col; j < cols_; ++j) at(i, j) = field_.sub(at(i, j), field_.mul(f, at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
int Dense<F>::rank() const {
  Dense copy = *this;
  return static_cast<int>(copy.rref().size());
}

template <class F>
std::vector<std::vector<typename Dense<F>::value_type>> Dense<F>::nullspace() const {
  Dense r = *this;
  std::vector<int> pivots = r.rref();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<value_type>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<value_type> v(static_cast<std::size_t>(cols_), field_.zero());
    v[static_cast<std::size_t>(free)] = field_.one();
    for (std::size_t k = 0; k < pivots.size(); ++k)
      v[static_cast<std::size_t>(pivots[k])] = field_.neg(r.at(static_cast<int>(k), free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
Dense<F> Dense<F>::inverse() const {
  if (rows_ != cols_) throw Error("inverse of a non-square matrix");
  int n = rows_;
  Dense aug(field_, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, n + i) = field_.one();
  }
  auto pivots = aug.rref();
  if (static_cast<int>(pivots.size()) < n || pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    throw Error("matrix is singular");
  Dense out(field_, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

template <class F>
Mat<F> inverse(const Mat<F>& m) {
  return Dense<F>::from_mat(m).inverse().to_mat();
}

template <class F>
Mat<F> skew_congruence_witness(const Mat<F>& cm) {
  const F& field = cm.field();
  const int n = cm.size();
  if (n % 2) throw Error("skew congruence witness needs even size");
  Dense<F> c = Dense<F>::from_mat(cm);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!field.equal(c.at(i, j), field.neg(c.at(j, i))) || (i == j && !field.is_zero(c.at(i, i))))
        throw Error("matrix is not skew-symmetric");

  // Peel rank-2 pieces u v^T - v u^T off C; u and v become columns l and l+n/2 of B.
  Dense<F> b(field, n, n);
  const int h = n / 2;
  int block = 0;
  for (;;) {
    int pi = -1, pj = -1;
    for (int i = 0; i < n && pi < 0; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!field.is_zero(c.at(i, j))) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    auto piv = c.at(pi, pj);
    auto inv = field.inv(piv);
    std::vector<typename F::value_type> u(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
      u[static_cast<std::size_t>(r)] = c.at(r, pj);                          // C e_j
      v[static_cast<std::size_t>(r)] = field.neg(field.mul(c.at(r, pi), inv));  // -C e_i / c
    }
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        auto term = field.sub(field.mul(u[static_cast<std::size_t>(r)], v[static_cast<std::size_t>(s)]),
                              field.mul(v[static_cast<std::size_t>(r)], u[static_cast<std::size_t>(s)]));
        c.at(r, s) = field.sub(c.at(r, s), term);
      }
    if (block >= h) throw Error("skew form has rank above n");
    for (int r = 0; r < n; ++r) {
      b.at(r, block) = u[static_cast<std::size_t>(r)];
      b.at(r, block + h) = v[static_cast<std::size_t>(r)];
    }
    ++block;
  }
  return b.to_mat();
}

Mat<PrimeField> sample_group_element(Group g, const PrimeField& field, int n, std::uint64_t seed) {
  if (g == Group::GL) throw Error("sampling is provided for O(n) and Sp(n) only");
  if (g == Group::Sp && n % 2) throw Error("Sp(n) needs even n");
  std::mt19937_64 rng(seed);
  const std::uint32_t p = field.modulus();
  auto uniform = [&](std::uint32_t lo) { return static_cast<std::uint32_t>(lo + rng() % (p - lo)); };

  Mat<PrimeField> result = Mat<PrimeField>::identity(field, n);
  auto random_vector = [&]() {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(n));
    bool nonzero = false;
    while (!nonzero) {
      for (auto& x : v) {
        x = uniform(0);
        nonzero = nonzero || x != 0;
      }
    }
    return v;
  };
  auto outer = [&](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    Dense<PrimeField> m(field, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = field.mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
    return m;
  };

  if (g == Group::Sp) {
    // T = E + lambda v v^T J; T^T J T = J because v^T J v = 0.
    const int h = n / 2;
    for (int step = 0; step < 2 * n; ++step) {
      auto v = random_vector();
      std::uint32_t lambda = uniform(1);
      std::vector<std::uint32_t> vj(static_cast<std::size_t>(n));  // v^T J
      for (int j = 0; j < n; ++j)
        vj[static_cast<std::size_t>(j)] = j < h ? field.neg(v[static_cast<std::size_t>(j + h)]) : v[static_cast<std::size_t>(j - h)];
      Dense<PrimeField> t = outer(v, vj);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.at(i, j) = field.add(field.mul(lambda, t.at(i, j)), i == j ? 1u : 0u);
      result = result * t.to_mat();
    }
  } else {
    // Reflections E - 2 v v^T / (v^T v) for anisotropic v; an odd count flips det.
    int steps = 2 * n + static_cast<int>(rng() % 2);
    for (int step = 0; step < steps; ++step) {
      std::vector<std::uint32_t> v;
      std::uint32_t norm = 0;
      do {
        v = random_vector();
        norm = 0;
        for (auto x : v) norm = field.add(norm, field.mul(x, x));
      } while (norm == 0);
      auto scale = field.mul(2, field.inv(norm));
      Dense<PrimeField> r = outer(v, v);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = field.sub(i == j ? 1u : 0u, field.mul(scale, r.at(i, j)));
      result = result * r.to_mat();
    }
  }
  return result;
}

#define INVREL_INSTANTIATE(F)                                                   \
  template class Mat<F>;                                                        \
  template class Dense<F>;                                                      \
  template Mat<F> generic_x<F>(const F&, int, int);                             \
  template Mat<F> generic_y<F>(const F&, int);                                  \
  template Mat<F> generic_z<F>(const F&, int);                                  \
  template Mat<F> standard_j<F>(const F&, int);                                 \
  template Mat<F> transpose<F>(const Mat<F>&, TransposeKind);                   \
  template std::vector<Poly<F>> sigma_coeffs<F>(const Mat<F>&, int);           \
  template Mat<F> skew_congruence_witness<F>(const Mat<F>&);                    \
  template Mat<F> inverse<F>(const Mat<F>&);

INVREL_INSTANTIATE(Rationals)
INVREL_INSTANTIATE(PrimeField)

#undef INVREL_INSTANTIATE

}  // namespace invrel
