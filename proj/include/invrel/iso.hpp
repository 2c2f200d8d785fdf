#ifndef INVREL_ISO_HPP
#define INVREL_ISO_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "invrel/eval.hpp"

namespace invrel {

/// One matrix factor of a generator: X_k, X_k^T, X_k^*, Y, Z J Z^T, or the
/// raw Z, Z^T, J (which only occur in malformed input).
struct IsoFactor {
  enum class Kind { X, XT, XStar, Y, ZJZT, Z, ZT, J };
  Kind kind = Kind::X;
  int k = 0;  // X kinds only
  friend bool operator==(const IsoFactor&, const IsoFactor&) = default;
};

/// Which algebra a generator belongs to: R^{Sp(n)} (words in X_k, X_k^*),
/// I_n (A_1 Y ... A_r Y) or I'_n (A_1 ZJZ^T ... A_r ZJZ^T), A_i in {X_k, X_k^T}.
enum class Algebra { Sp, I, IPrime };
std::string to_string(Algebra a);

/// coeff * sigma_t(F_1 ... F_s). The sign is kept apart from the pattern.
struct GeneratorExpr {
  int coeff = 1;
  int t = 1;
  std::vector<IsoFactor> factors;

  std::optional<Algebra> algebra() const;
  /// `-s2(X1 ZJZ' X2' ZJZ')`; X1* is the symplectic transpose.
  std::string to_string() const;
  static GeneratorExpr parse(std::string_view text);
  friend bool operator==(const GeneratorExpr&, const GeneratorExpr&) = default;
};

/// Exact value with generic X_k, Y, Z; sigma_t := 0 for t > n.
template <class F>
Poly<F> evaluate(const GeneratorExpr& g, const F& field, int n);

/// Psi_n on an I_n generator as a polynomial: X_k -> X_k J, Y -> -J.
template <class F>
Poly<F> psi(const GeneratorExpr& g, const F& field, int n);
/// The same map on generator expressions: X_k Y -> X_k, X_k^T Y -> -X_k^*.
GeneratorExpr psi_generator(const GeneratorExpr& g);

/// mu_n: X_k -> Z^T X_k Z J (so X_k^* -> -Z^T X_k^T Z J), rotated into the
/// I'_n pattern.
GeneratorExpr mu(const GeneratorExpr& f);
/// mu_n by literal substitution into the R^{Sp(n)} generator, no rotation.
template <class F>
Poly<F> mu_literal(const GeneratorExpr& f, const F& field, int n);

/// theta_n: each Z J Z^T becomes Y.
GeneratorExpr theta(const GeneratorExpr& g);

/// Generators of R^{Sp(n)}: sigma_t(X_w), w a primitive class over
/// x_k, x_k^* with |w| <= max_len, 1 <= t <= n.
std::vector<GeneratorExpr> sp_generators(int n, int d, int max_len);
/// Generators of I_n: sigma_t(A_1 Y ... A_r Y), r <= max_len, one per rotation class.
std::vector<GeneratorExpr> i_generators(int n, int d, int max_len);

struct CompositeResult {
  std::string identity;  // "psi_theta_mu" or "theta_mu_psi"
  std::string generator;
  int n = 0;
  int d = 0;
  bool pass = false;
  std::string detail;  // which step failed
};

/// psi_theta_mu: Psi(theta(mu(f))) = f on R^{Sp(n)};
/// theta_mu_psi: theta(mu(Psi(g))) = g on I_n.
/// Each step is also compared with its literal substitution when `literal`
/// is set (mu_literal is costly at n = 4).
std::vector<CompositeResult> verify_composites(const FieldSpec& field, int n, int d, int max_len, bool literal,
                                               const std::function<void(const CompositeResult&)>& emit = {});

/// A uniformly random skew-symmetric constant matrix over GF(p).
Mat<PrimeField> random_skew(const PrimeField& field, int n, std::mt19937_64& rng);

struct WitnessReport {
  int samples = 0;
  int congruence_failures = 0;    // B J B^T != C
  int substitution_failures = 0;  // g(Z := B) != theta(g)(Y := C)
};

/// For random skew C: B = skew_congruence_witness(C) satisfies B J B^T = C,
/// and substituting Z := B in each I'_n generator equals substituting Y := C
/// in its theta image.
WitnessReport skew_witness_check(const PrimeField& field, int n, int samples, std::uint64_t seed,
                                 const std::vector<GeneratorExpr>& iprime_generators);

struct CollisionReport {
  int expressions = 0;
  int collisions = 0;  // pairs with equal values
  int violations = 0;  // of those, pairs whose theta images differ
};

/// Evaluates signed I'_n generators, groups equal values, and checks that
/// theta maps every group to one value.
CollisionReport theta_collision_check(const PrimeField& field, int n, int d, int max_len);

}  // namespace invrel

#endif  // INVREL_ISO_HPP
