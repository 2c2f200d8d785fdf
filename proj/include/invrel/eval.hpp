#ifndef INVREL_EVAL_HPP
#define INVREL_EVAL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "invrel/quiver.hpp"
#include "invrel/sigma.hpp"

namespace invrel {

struct EvalContext {
  Group group = Group::GL;
  int n = 2;
  int d = 2;
  FieldSpec field;

  /// Throws on odd n for Sp, n < 1, d out of range.
  void validate() const;
};

/// sigma_t(a) -> sigma_t(X_a) for t <= n, 0 otherwise; ring homomorphism.
template <class F>
Poly<F> phi_eval(const SigmaPoly<F>& f, Group g, int n);

/// Matrix of a path of G_y or G_z: X_{x_k} = X_k, X_{x_k^T} = X_k^T,
/// X_y = Y, X_{y^T} = -Y, X_z = Z, X_{z^T} = Z^T.
template <class F>
Mat<F> realize_path(const Quiver& g, const Word& path, const F& field, int n);

/// pi_{y,n} or pi_{z,n}: each symbol's argument is read as a closed path of g.
template <class F>
Poly<F> pi_eval(const SigmaPoly<F>& f, const Quiver& g, int n);

/// sum of sign * prod sigma_k(X_e) under the given arrow images, with
/// sigma_k := 0 for k > n. Each distinct path matrix is formed once.
template <class F>
Poly<F> eval_relation(const RelationExpr& e, const ArrowImages<F>& images, int n);

enum class Route { Direct, Factored };
std::string to_string(Route r);

/// Reserved X indices standing for the generic images of x, y, z.
inline constexpr int kSlotA = 61, kSlotB = 62, kSlotC = 63;

/// Evaluates relations at substituted triples. The factored route evaluates
/// once at generic A, B, C (C = E when c is the unity) and then substitutes
/// the realized entries of a, b, c into that polynomial.
template <class F>
class RelationEvaluator {
 public:
  RelationEvaluator(F field, Group g, int n);

  Poly<F> evaluate(const RelationExpr& e, const WordSum<F>& a, const WordSum<F>& b, const WordSum<F>& c,
                   Route route);
  /// The relation at generic A, B and C (or C = E).
  const Poly<F>& generic(const RelationExpr& e, bool unit_c);

 private:
  F field_;
  Group group_;
  int n_;
  std::map<std::tuple<int, int, int, bool>, Poly<F>> generic_;
};

/// Report of an invariance check.
struct InvarianceReport {
  std::string word;
  int t = 0;
  int samples = 0;
  int violations = 0;
  std::string method;  // "direct" or "certificate"
};

/// For each sampled g, compares sigma_t(X_w) with the same invariant after
/// X_k -> g^{-1} X_k g. Direct: recompute sigma_t of the conjugated word.
/// Certificate: check W(g^{-1} X g) = g^{-1} W(X) g entrywise and
/// sigma_t(g^{-1} M g) = sigma_t(M) for a generic M; together these give
/// the direct identity by substitution M -> W.
InvarianceReport check_invariance(const Word& w, int t, Group g, const PrimeField& field, int n, int samples,
                                  std::uint64_t seed, bool certificate);

/// g . f for an arbitrary polynomial in the x variables; used for controls.
Poly<PrimeField> act(const Poly<PrimeField>& f, const Mat<PrimeField>& g, int d);

/// Words of length 1..max_len over x_1..x_d (and transposes unless GL), in word order.
std::vector<Word> all_words(int d, int max_len, bool transposes);

/// Canonical primitive classes of words of length 1..max_len.
std::vector<Word> primitive_classes(int d, int max_len, Group g);

/// One line per (t, r, a, b, c) of the vanishing sweep.
struct SweepConfig {
  EvalContext ctx;
  int max_word_len = 2;
  int max_tr = 2;  // n < t + 2r <= n + max_tr
  Route route = Route::Factored;
  bool timings = false;
};

struct SweepSummary {
  int checked = 0;
  int nonzero = 0;
};

SweepSummary run_relation_sweep(const SweepConfig& cfg, const std::function<void(const std::string&)>& emit);

/// (t, r) pairs of the sweep, in order of t + 2r, then r.
std::vector<std::pair<int, int>> sweep_pairs(int n, int max_tr);

/// f = pi_{y,n}(prod sigma_t(path)) with y-degree k; y_ij -> z_ij - z_ji,
/// then z_ij -> y_ij, z_ji -> -y_ij (i < j) must give 2^k f.
struct ScalingCase {
  std::string f;
  int k = 0;
  bool pass = false;
};

struct ScalingConfig {
  FieldSpec field = FieldSpec::prime(7);
  int n = 2;
  int d = 2;
  int max_k = 3;
  int per_k = 4;  // sampled f per y-degree
  std::uint64_t seed = 1;
};

/// Throws for p = 2, where 2^k is not invertible.
std::vector<ScalingCase> scaling_check(const ScalingConfig& cfg, const std::function<void(const ScalingCase&)>& emit = {});

/// The two substitutions on one polynomial in x and y.
template <class F>
Poly<F> y_to_z_to_y(const Poly<F>& f, int n);

}  // namespace invrel

#endif  // INVREL_EVAL_HPP
