#ifndef INVREL_KERNEL_HPP
#define INVREL_KERNEL_HPP

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "invrel/eval.hpp"

namespace invrel {

inline constexpr int kMaxComponentDegree = 6;

/// All monomials prod sigma_{t_i}(w_i) of multidegree delta, w_i canonical
/// primitive classes (without transposes for GL). delta = 0 gives {1}.
struct ComponentBasis {
  std::vector<int> delta;
  std::vector<SigmaMonomial> basis;
};
ComponentBasis component_basis(const std::vector<int>& delta, Group g);

template <class F>
struct KernelComponent {
  int basis_size = 0;
  int dimension = 0;
  std::vector<SigmaPoly<F>> kernel;  // basis of the kernel of phi_n on the component
};

/// Arguments a, b (and c besides the unity) of the generators of the ideal:
/// single words of length <= 2, or additionally u + lambda v for words
/// u != v of equal multidegree, lambda in F_p^* (lambda = +-1, 2 over Q).
enum class SpanScheme { Words, Combinations };
std::string to_string(SpanScheme s);

struct SpanReport {
  std::vector<int> delta;
  int basis_size = 0;
  int kernel_dim = 0;
  int span_dim = 0;
  int generators = 0;      // generator elements of multidegree <= delta
  int products = 0;        // generator * cofactor elements in the component
  int outside_kernel = 0;  // must stay 0
  int phi_size = 0;        // N used for coordinates
  int points = 0;          // evaluation points of phi_N
  SpanScheme scheme = SpanScheme::Words;
};

/// Per (G, n, d, field) lab with caches for sigma values and components.
/// Generators: sigma_t(a), t > n (GL); sigma_{t,r}(a, b, c) (O);
/// rho_{t,r}(a, b, c) (Sp); t + 2r > n.
template <class F>
class KernelLab {
 public:
  KernelLab(F field, Group g, int n, int d);

  const ComponentBasis& basis(const std::vector<int>& delta);
  const KernelComponent<F>& kernel(const std::vector<int>& delta);
  /// Coordinates of ideal elements come from phi_N with N raised until phi_N
  /// is injective on the component. phi_N is only evaluated at random constant
  /// points: full rank of the basis values there certifies injectivity, and
  /// every solve is checked against all points.
  SpanReport span(const std::vector<int>& delta, SpanScheme scheme);
  /// Words first; escalates to combinations on a shortfall.
  SpanReport span_escalating(const std::vector<int>& delta);

  /// phi_N of a basis monomial.
  Poly<F> phi(const SigmaMonomial& m, int big_n);

 private:
  struct Generator {
    std::string label;
    std::vector<int> mdeg;
    RelationType type;
    int t, r;
    WordSum<F> a, b, c;
  };
  using Value = typename F::value_type;
  struct Point {
    std::vector<Mat<F>> x;  // x[k] for X_k, k >= 1
    std::map<Word, std::vector<Poly<F>>> sigma;
  };
  std::vector<Generator> generators(const std::vector<int>& delta, SpanScheme scheme);
  Poly<F> phi_n(const Generator& gen);
  Point random_point(int big_n, std::mt19937_64& rng) const;
  Mat<F> realize_at(const WordSum<F>& s, const Point& p) const;
  Value at_point(const SigmaMonomial& m, Point& p) const;
  Value at_point(const Generator& gen, Point& p);
  const std::vector<Poly<F>>& symbol_values(const Word& w, int big_n);

  F field_;
  Group group_;
  int n_, d_;
  std::map<std::vector<int>, ComponentBasis> bases_;
  std::map<std::vector<int>, KernelComponent<F>> kernels_;
  std::map<std::pair<int, Word>, std::vector<Poly<F>>> sigma_;
  std::optional<RelationEvaluator<F>> small_;
  std::map<std::pair<int, int>, RelationExpr> relations_;
};

/// All multidegrees with |delta| <= max_deg, by total degree then lexicographically.
std::vector<std::vector<int>> multidegrees_up_to(int d, int max_deg);

/// Stable text hash (FNV-1a) of the rendered basis, for cache files.
std::string basis_hash(const ComponentBasis& b);

}  // namespace invrel

#endif  // INVREL_KERNEL_HPP
