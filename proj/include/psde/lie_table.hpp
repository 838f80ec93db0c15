#ifndef PSDE_LIE_TABLE_HPP
#define PSDE_LIE_TABLE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psde/diff_operator.hpp"

namespace psde {

struct BasisNotClosed : std::runtime_error {
  explicit BasisNotClosed(const std::string& w) : std::runtime_error(w) {}
};
struct DegenerateMetric : std::runtime_error {
  explicit DegenerateMetric(const std::string& w) : std::runtime_error(w) {}
};
struct SingularContraction : std::runtime_error {
  explicit SingularContraction(const std::string& w) : std::runtime_error(w) {}
};

// Laurent polynomial in the contraction parameter gamma.
class GammaPoly {
 public:
  GammaPoly() = default;
  GammaPoly(const Rat& c) { set(0, c); }
  static GammaPoly gamma_power(long k, const Rat& c = Rat(1)) {
    GammaPoly g;
    g.set(k, c);
    return g;
  }

  bool is_zero() const { return coef_.empty(); }
  bool is_constant() const { return coef_.empty() || (coef_.size() == 1 && coef_.count(0)); }
  Rat constant_term() const;
  long min_degree() const;  // 0 for the zero polynomial
  const std::map<long, Rat>& coefficients() const { return coef_; }

  GammaPoly operator-() const;
  GammaPoly& operator+=(const GammaPoly& o);
  friend GammaPoly operator+(GammaPoly a, const GammaPoly& b) { return a += b; }
  friend GammaPoly operator*(const GammaPoly& a, const GammaPoly& b);
  GammaPoly shifted(long k) const;  // multiply by gamma^k

  friend bool operator==(const GammaPoly& a, const GammaPoly& b) { return a.coef_ == b.coef_; }
  std::string str() const;

 private:
  void set(long k, const Rat& c) {
    if (c != 0) coef_[k] = c;
  }
  std::map<long, Rat> coef_;
};

// Structure constants [e_i, e_j] = sum_k c_ijk e_k + central_ij * 1 over an
// abstract basis; entries may depend on the contraction parameter.
class LieAlgebraTable {
 public:
  LieAlgebraTable() = default;
  explicit LieAlgebraTable(std::vector<std::string> names);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  const GammaPoly& c(int i, int j, int k) const { return c_.at(idx(i, j)).at(k); }
  const GammaPoly& central(int i, int j) const { return central_.at(idx(i, j)); }
  void set_bracket(int i, int j, std::vector<GammaPoly> coords, GammaPoly central);

  // bracket of basis vectors with rational coordinates; returns (coords, central)
  std::pair<std::vector<GammaPoly>, GammaPoly> bracket(const std::vector<Rat>& v,
                                                       const std::vector<Rat>& w) const;

  bool antisymmetry_ok() const;
  bool jacobi_ok() const;
  bool is_constant() const;

  friend bool operator==(const LieAlgebraTable& a, const LieAlgebraTable& b) {
    return a.names_ == b.names_ && a.c_ == b.c_ && a.central_ == b.central_;
  }

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * names_.size() + j; }
  std::vector<std::string> names_;
  std::vector<std::vector<GammaPoly>> c_;  // [i*dim+j][k]
  std::vector<GammaPoly> central_;
};

// Expands every [B_i, B_j] over the given operator basis (plus the identity
// operator when it is not itself a basis element). Throws BasisNotClosed with
// the offending residual if some bracket leaves the span.
LieAlgebraTable commutator_table(const std::vector<DiffOperator>& basis,
                                 const std::vector<std::string>& names);

struct StructureReport {
  std::vector<std::vector<Rat>> center;   // coordinate vectors
  std::vector<std::vector<Rat>> derived;  // basis of the derived subalgebra
  std::optional<std::array<int, 3>> sl2;  // indices (K-, K0, K+)
  std::vector<int> commuting_with_sl2;    // so(1,1) candidates
  std::vector<int> heisenberg_indices;
  bool heisenberg_ideal = false;
  std::string levi_label;
  // the split real form of the triple; su(1,1) is the same algebra
  std::string sl2_alias;
};

// Works on constant tables whose central slots are unused (bases that carry
// their own identity element), which covers every basis in this project.
StructureReport analyze_structure(const LieAlgebraTable& tab);

// so(n-like) table for a diagonal metric of +-1 signs; basis J_ij with i<j
LieAlgebraTable orthogonal_table(const std::vector<int>& metric_signs);

// basis rescale e_k -> gamma^{powers[k]} e_k; central slot scales like gamma^0
LieAlgebraTable contract(const LieAlgebraTable& tab, const std::vector<long>& powers);

// gamma -> 0 limit; throws SingularContraction if negative powers survive
LieAlgebraTable contraction_limit(const LieAlgebraTable& tab);

} // namespace psde

#endif
