// Independent reference computations used only by tests.
#ifndef INVREL_TESTS_ORACLES_HPP
#define INVREL_TESTS_ORACLES_HPP

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "invrel/matrix.hpp"
#include "invrel/quiver.hpp"

namespace oracle {

using namespace invrel;

// Polynomial in lambda with Poly coefficients, index = power.
template <class F>
using LPoly = std::vector<Poly<F>>;

template <class F>
LPoly<F> lmul(const F& f, const LPoly<F>& a, const LPoly<F>& b) {
  LPoly<F> out(a.size() + b.size() - 1, Poly<F>(f));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <class F>
void ladd(LPoly<F>& acc, const LPoly<F>& a, bool negate) {
  if (acc.size() < a.size()) acc.resize(a.size(), Poly<F>(a[0].field()));
  for (std::size_t i = 0; i < a.size(); ++i) acc[i] = negate ? acc[i] - a[i] : acc[i] + a[i];
}

// Laplace expansion along the first row.
template <class F>
LPoly<F> ldet(const F& f, const std::vector<std::vector<LPoly<F>>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  LPoly<F> acc{Poly<F>(f)};
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<LPoly<F>>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<LPoly<F>> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    ladd(acc, lmul(f, m[0][c], ldet(f, minor)), c % 2 == 1);
  }
  return acc;
}

// sigma_0..sigma_n from the cofactor expansion of det(lambda E - A).
template <class F>
std::vector<Poly<F>> charpoly_sigmas(const Mat<F>& a) {
  const F& f = a.field();
  int n = a.size();
  std::vector<std::vector<LPoly<F>>> m(n, std::vector<LPoly<F>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m[i][j] = {-a.at(i, j)};
      if (i == j) m[i][j].push_back(Poly<F>::from_int(f, 1));
    }
  LPoly<F> det = ldet(f, m);
  det.resize(n + 1, Poly<F>(f));
  std::vector<Poly<F>> s;
  for (int t = 0; t <= n; ++t) {
    Poly<F> c = det[n - t];
    s.push_back(t % 2 ? -c : c);
  }
  return s;
}

template <class F>
Mat<F> random_matrix(const F& f, int n, std::mt19937_64& rng, int lo = -5, int hi = 5) {
  Mat<F> m(f, n);
  std::uniform_int_distribution<int> dist(lo, hi);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Poly<F>::from_int(f, dist(rng));
  return m;
}

template <class F>
Mat<F> random_skew(const F& f, int n, std::mt19937_64& rng) {
  Mat<F> m(f, n);
  std::uniform_int_distribution<int> dist(-6, 6);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m.at(i, j) = Poly<F>::from_int(f, dist(rng));
      m.at(j, i) = -m.at(i, j);
    }
  return m;
}

// Rotations of w, plus rotations of w^T when involutive. Built from raw codes.
inline std::set<Word> orbit(const Word& w, bool involutive) {
  std::set<Word> out;
  std::vector<std::vector<LetterCode>> seeds = {w.codes()};
  if (involutive) {
    std::vector<LetterCode> t(w.codes().rbegin(), w.codes().rend());
    for (auto& c : t) c ^= 1;
    seeds.push_back(t);
  }
  for (const auto& s : seeds)
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::vector<LetterCode> r(s.begin() + static_cast<long>(i), s.end());
      r.insert(r.end(), s.begin(), s.begin() + static_cast<long>(i));
      out.insert(Word(r));
    }
  return out;
}

inline bool primitive(const std::vector<LetterCode>& s) {
  for (std::size_t p = 1; p < s.size(); ++p) {
    if (s.size() % p) continue;
    bool power = true;
    for (std::size_t i = p; i < s.size() && power; ++i) power = s[i] == s[i - p];
    if (power) return false;
  }
  return !s.empty();
}

// Closed path classes of Q with mdeg <= bound, by listing every arrow sequence.
// x: loop at 1, x': loop at 2, y, y': 2 -> 1, z, z': 1 -> 2.
inline std::map<Word, std::vector<int>> q_classes(int bx, int by, int bz, bool primitive_only) {
  static const int head[6] = {1, 2, 1, 1, 2, 2};
  static const int tail[6] = {1, 2, 2, 2, 1, 1};
  std::map<Word, std::vector<int>> out;
  int max_len = bx + by + bz;
  std::vector<LetterCode> s;
  for (int len = 1; len <= max_len; ++len) {
    long total = 1;
    for (int i = 0; i < len; ++i) total *= 6;
    for (long code = 0; code < total; ++code) {
      s.assign(static_cast<std::size_t>(len), 0);
      long c = code;
      for (int i = 0; i < len; ++i, c /= 6) s[static_cast<std::size_t>(i)] = static_cast<LetterCode>(c % 6);
      bool ok = head[s.front()] == tail[s.back()];
      for (int i = 0; i + 1 < len && ok; ++i) ok = tail[s[i]] == head[s[i + 1]];
      if (!ok) continue;
      std::vector<int> deg(3, 0);
      for (auto a : s) ++deg[a / 2];
      if (deg[0] > bx || deg[1] > by || deg[2] > bz) continue;
      if (primitive_only && !primitive(s)) continue;
      out.emplace(*orbit(Word(s), true).begin(), deg);
    }
  }
  return out;
}

// Terms of sigma_{t,r} or rho_{t,r}: sorted (k, path) lists with their sign.
using OracleTerms = std::map<std::vector<std::pair<int, Word>>, int>;

inline OracleTerms relation_terms(bool sigma, int t, int r) {
  auto classes = q_classes(t, r, r, true);
  std::vector<std::pair<Word, std::vector<int>>> cl(classes.begin(), classes.end());
  OracleTerms out;
  std::vector<std::pair<int, Word>> chosen;
  auto rec = [&](auto&& self, std::size_t i, int a, int b, int c) -> void {
    if (a == 0 && b == 0 && c == 0) {
      int xi = t, ks = 0;
      for (const auto& [k, p] : chosen) {
        int yz = 0;
        for (auto code : p.codes()) yz += code == 2 || code == 4;
        xi += k * (yz + 1);
        ks += k;
      }
      int parity = sigma ? xi : t + ks;
      auto key = chosen;
      std::sort(key.begin(), key.end());
      out[key] = parity % 2 ? -1 : 1;
      return;
    }
    if (i == cl.size()) return;
    self(self, i + 1, a, b, c);
    const auto& dg = cl[i].second;
    for (int k = 1; k * dg[0] <= a && k * dg[1] <= b && k * dg[2] <= c; ++k) {
      chosen.emplace_back(k, cl[i].first);
      self(self, i + 1, a - k * dg[0], b - k * dg[1], c - k * dg[2]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, t, r, r);
  return out;
}

// Rank over GF(p) of polynomials as coefficient vectors, plain elimination.
inline int rank_mod_p(const std::vector<Poly<PrimeField>>& polys, long p) {
  std::map<std::string, std::size_t> col;
  std::vector<std::vector<long>> rows;
  for (const auto& f : polys) {
    std::vector<long> row(col.size(), 0);
    for (const auto& t : f.terms()) {
      auto [it, fresh] = col.try_emplace(t.mono.to_string(), col.size());
      if (it->second >= row.size()) row.resize(it->second + 1, 0);
      row[it->second] = static_cast<long>(t.coeff);
    }
    rows.push_back(row);
  }
  for (auto& r : rows) r.resize(col.size(), 0);
  auto pw = [p](long b, long e) {
    long r = 1;
    for (b %= p; e; e >>= 1, b = b * b % p)
      if (e & 1) r = r * b % p;
    return r;
  };
  int rank = 0;
  for (std::size_t c = 0; c < col.size() && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    auto& pr = rows[static_cast<std::size_t>(rank)];
    long inv = pw(pr[c], p - 2);
    for (auto& v : pr) v = v * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][c] == 0) continue;
      long f = rows[r][c];
      for (std::size_t k = 0; k < col.size(); ++k) rows[r][k] = ((rows[r][k] - f * pr[k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace oracle

#endif
