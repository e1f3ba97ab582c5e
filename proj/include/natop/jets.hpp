#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "natop/lincomb.hpp"
#include "natop/prng.hpp"
#include "natop/rational.hpp"

namespace natop {

// Multivariate polynomial truncated at a total degree.  Exponent vectors are
// packed into one integer (4 bits per variable), which keeps the arithmetic
// allocation-free on the hot paths.
class TruncPoly {
 public:
  TruncPoly() : dim_(0), order_(0) {}
  TruncPoly(int dim, int order) : dim_(dim), order_(order) {}

  int dim() const { return dim_; }
  int order() const { return order_; }
  // materialized view, exponent vector -> coefficient (cold paths only)
  std::map<std::vector<int>, Rat> coef() const;

  static TruncPoly variable(int dim, int order, int i);
  static TruncPoly constant(int dim, int order, const Rat& c);

  void add_term(const std::vector<int>& expo, const Rat& c);
  Rat coeff(const std::vector<int>& expo) const;
  Rat value0() const;

  TruncPoly operator+(const TruncPoly& o) const;
  TruncPoly operator-(const TruncPoly& o) const;
  TruncPoly operator*(const TruncPoly& o) const;
  TruncPoly operator*(const Rat& c) const;
  bool operator==(const TruncPoly& o) const { return c_ == o.c_; }
  bool is_zero() const { return c_.empty(); }

  TruncPoly partial(int i) const;
  TruncPoly truncated(int order) const;
  // substitution x_i := args[i]; args must have value 0 at the origin
  TruncPoly compose(const std::vector<TruncPoly>& args) const;

  // derivative coefficient: d^alpha (this) at 0
  Rat deriv0(const std::vector<int>& alpha) const;

 private:
  static constexpr int kBits = 4;
  static constexpr std::int64_t kMask = (1 << kBits) - 1;
  std::int64_t pack(const std::vector<int>& e) const;
  int degree_of(std::int64_t key) const;
  void add_key(std::int64_t key, const Rat& c);

  int dim_, order_;
  std::map<std::int64_t, Rat> c_;
};

// Truncated jets of a symmetric connection and a list of vector fields.
struct JetContext {
  int dim = 0;
  int order = 0;
  // gamma[(l*dim + m)*dim + n] with symmetry in (m, n)
  std::vector<TruncPoly> gamma;
  // fields[i][l], i = field index - 1
  std::vector<std::vector<TruncPoly>> fields;

  const TruncPoly& gamma_at(int l, int m, int n) const { return gamma[(l * dim + m) * dim + n]; }

  static JetContext random(int dim, int order, int nfields, Prng& rng, long lo = -2, long hi = 2);
};

// Polynomial coordinate change fixing the origin with exactly invertible
// (unimodular) linear part.
struct PolyDiffeo {
  int dim = 0;
  int order = 0;
  std::vector<TruncPoly> comp;

  static PolyDiffeo random(int dim, int order, Prng& rng);
  std::vector<std::vector<Rat>> linear_part() const;
  std::vector<TruncPoly> inverse() const;  // truncated compositional inverse
};

// Extra data for evaluating graphs: jets of an infinitesimal symmetry
// generator (white vertices) and constant vectors for patch legs (negative
// black labels).
struct EvalExtra {
  std::vector<TruncPoly> symmetry;                 // per output component
  std::map<int, std::vector<Rat>> leg_vectors;     // negative label -> vector
};

// Full index contraction of a degree-0 combination on the jets; the result is
// the output vector at the origin.
std::vector<Rat> evaluate(const LinComb& x, const JetContext& ctx,
                          const EvalExtra* extra = nullptr);

// Transform all jets by the coordinate change (chain rule for the fields, the
// inhomogeneous second-derivative law for the connection).  phi.order must
// exceed ctx.order + 1.
JetContext pushforward(const JetContext& ctx, const PolyDiffeo& phi);

struct NaturalityReport {
  bool natural = true;
  int trials = 0;
  std::uint64_t seed = 0;
  int dim = 0;
  std::string witness;  // empty when natural
};

NaturalityReport naturality_check(const LinComb& x, int dim, int trials, std::uint64_t seed);

// Fit the nabla replacement rule from the coordinate-change variation of the
// connection jets: evaluates candidate trees against the exactly computed
// variation on random jets and solves for the coefficients.
LinComb derive_nabla_variation(int k, std::uint64_t seed = 12345);

// ---- tensor-jet calculus used by the identity checks ----

// (1,k) tensor field with polynomial coefficients: comp[(l, m_1..m_k)].
struct TensorJets {
  int dim = 0, k = 0;
  std::vector<TruncPoly> comp;
  const TruncPoly& at(const std::vector<int>& idx) const;  // idx = (l, m_1..m_k)
  TruncPoly& at_mut(const std::vector<int>& idx);
  static TensorJets zero(int dim, int k, int order);
  static TensorJets random(int dim, int k, int order, Prng& rng);
};

// covariant derivative: new lower index first
TensorJets nabla_tensor(const TensorJets& t, const JetContext& ctx);
// curvature as a (1,3) tensor: slots (x, y, z)
TensorJets curvature_tensor(const JetContext& ctx);

}  // namespace natop
