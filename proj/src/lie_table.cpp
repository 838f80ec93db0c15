#include "psde/lie_table.hpp"

#include <algorithm>
#include <sstream>

namespace psde {

// ---------------------------------------------------------------------------
// GammaPoly
// ---------------------------------------------------------------------------

Rat GammaPoly::constant_term() const {
  auto it = coef_.find(0);
  return it == coef_.end() ? Rat(0) : it->second;
}

long GammaPoly::min_degree() const { return coef_.empty() ? 0 : coef_.begin()->first; }

GammaPoly GammaPoly::operator-() const {
  GammaPoly g = *this;
  for (auto& [k, c] : g.coef_) c = -c;
  return g;
}

GammaPoly& GammaPoly::operator+=(const GammaPoly& o) {
  for (auto& [k, c] : o.coef_) {
    auto [it, fresh] = coef_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) coef_.erase(it);
    }
  }
  return *this;
}

GammaPoly operator*(const GammaPoly& a, const GammaPoly& b) {
  GammaPoly out;
  for (auto& [ka, ca] : a.coef_)
    for (auto& [kb, cb] : b.coef_) {
      auto [it, fresh] = out.coef_.emplace(ka + kb, ca * cb);
      if (!fresh) {
        it->second += ca * cb;
        if (it->second == 0) out.coef_.erase(it);
      }
    }
  return out;
}

GammaPoly GammaPoly::shifted(long k) const {
  GammaPoly g;
  for (auto& [d, c] : coef_) g.coef_[d + k] = c;
  return g;
}

std::string GammaPoly::str() const {
  if (coef_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : coef_) {
    Rat mag = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || !(mag == 1)) os << rat_to_string(mag);
    if (k != 0) {
      if (!(mag == 1)) os << "*";
      os << "g";
      if (k != 1) os << "^" << k;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// LieAlgebraTable
// ---------------------------------------------------------------------------

LieAlgebraTable::LieAlgebraTable(std::vector<std::string> names) : names_(std::move(names)) {
  size_t n = names_.size();
  c_.assign(n * n, std::vector<GammaPoly>(n));
  central_.assign(n * n, GammaPoly());
}

void LieAlgebraTable::set_bracket(int i, int j, std::vector<GammaPoly> coords, GammaPoly central) {
  if (coords.size() != names_.size()) throw std::invalid_argument("bad coordinate count");
  std::vector<GammaPoly> neg(coords.size());
  for (size_t k = 0; k < coords.size(); ++k) neg[k] = -coords[k];
  c_[idx(i, j)] = std::move(coords);
  central_[idx(i, j)] = central;
  c_[idx(j, i)] = std::move(neg);
  central_[idx(j, i)] = -central;
}

std::pair<std::vector<GammaPoly>, GammaPoly> LieAlgebraTable::bracket(
    const std::vector<Rat>& v, const std::vector<Rat>& w) const {
  std::vector<GammaPoly> out(names_.size());
  GammaPoly cen;
  for (int i = 0; i < dim(); ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < dim(); ++j) {
      if (w[j] == 0) continue;
      GammaPoly scale{Rat(v[i] * w[j])};
      for (int k = 0; k < dim(); ++k) out[k] += scale * c(i, j, k);
      cen += scale * central(i, j);
    }
  }
  return {std::move(out), std::move(cen)};
}

bool LieAlgebraTable::antisymmetry_ok() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      for (int k = 0; k < dim(); ++k)
        if (!((c(i, j, k) + c(j, i, k)).is_zero())) return false;
      if (!((central(i, j) + central(j, i)).is_zero())) return false;
    }
  return true;
}

bool LieAlgebraTable::jacobi_ok() const {
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          GammaPoly s;
          for (int m = 0; m < n; ++m)
            s += c(j, k, m) * c(i, m, l) + c(k, i, m) * c(j, m, l) + c(i, j, m) * c(k, m, l);
          if (!s.is_zero()) return false;
        }
        GammaPoly cen;
        for (int m = 0; m < n; ++m)
          cen += c(j, k, m) * central(i, m) + c(k, i, m) * central(j, m) +
                 c(i, j, m) * central(k, m);
        if (!cen.is_zero()) return false;
      }
  return true;
}

bool LieAlgebraTable::is_constant() const {
  for (auto& row : c_)
    for (auto& e : row)
      if (!e.is_constant()) return false;
  for (auto& e : central_)
    if (!e.is_constant()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// expansion of operator brackets over a basis
// ---------------------------------------------------------------------------

namespace {

struct FlatKey {
  unsigned dt, dx, dp;
  ScalarTerm term;  // coefficient term with q normalized out (q = 1)

  bool operator<(const FlatKey& o) const {
    if (dt != o.dt) return dt < o.dt;
    if (dx != o.dx) return dx < o.dx;
    if (dp != o.dp) return dp < o.dp;
    // compare term keys without the rational coefficient
    if (term.xdeg != o.term.xdeg) return term.xdeg < o.term.xdeg;
    if (term.pdeg != o.term.pdeg) return term.pdeg < o.term.pdeg;
    int c = cmp(term.pi_e, o.term.pi_e);
    if (c != 0) return c < 0;
    c = cmp(term.c.m, o.term.c.m);
    if (c != 0) return c < 0;
    if (!(term.rads == o.term.rads))
      return std::lexicographical_compare(term.rads.begin(), term.rads.end(), o.term.rads.begin(),
                                          o.term.rads.end());
    if (!(term.tb == o.term.tb)) return term.tb < o.term.tb;
    return false;
  }
};

std::map<FlatKey, Rat> flatten(const DiffOperator& P) {
  std::map<FlatKey, Rat> out;
  for (auto& t : P.terms()) {
    for (auto& s : t.coeff.terms()) {
      FlatKey key;
      key.dt = t.dt;
      key.dx = t.dx;
      key.dp = t.dp;
      key.term = s;
      key.term.c.q = Rat(1);
      out[key] += s.c.q;
    }
  }
  return out;
}

// Solve sum_k lambda_k * cols[k] = rhs exactly over the rationals.
std::optional<std::vector<Rat>> solve_exact(const std::vector<std::map<FlatKey, Rat>>& cols,
                                            const std::map<FlatKey, Rat>& rhs) {
  std::vector<FlatKey> keys;
  {
    std::map<FlatKey, Rat> all = rhs;
    for (auto& c : cols)
      for (auto& [k, v] : c) all.emplace(k, v);
    for (auto& [k, v] : all) keys.push_back(k);
  }
  const size_t rows = keys.size(), n = cols.size();
  std::vector<std::vector<Rat>> M(rows, std::vector<Rat>(n + 1, Rat(0)));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t k = 0; k < n; ++k) {
      auto it = cols[k].find(keys[r]);
      if (it != cols[k].end()) M[r][k] = it->second;
    }
    auto it = rhs.find(keys[r]);
    if (it != rhs.end()) M[r][n] = it->second;
  }
  std::vector<long> pivot_col(rows, -1);
  size_t rank = 0;
  for (size_t col = 0; col < n && rank < rows; ++col) {
    size_t sel = rank;
    while (sel < rows && M[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(M[sel], M[rank]);
    Rat inv = Rat(1) / M[rank][col];
    for (size_t j = col; j <= n; ++j) M[rank][j] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || M[r][col] == 0) continue;
      Rat f = M[r][col];
      for (size_t j = col; j <= n; ++j) M[r][j] -= f * M[rank][j];
    }
    pivot_col[rank] = static_cast<long>(col);
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (M[r][n] != 0) return std::nullopt;  // inconsistent
  std::vector<Rat> sol(n, Rat(0));
  for (size_t r = 0; r < rank; ++r) sol[static_cast<size_t>(pivot_col[r])] = M[r][n];
  return sol;
}

} // namespace

LieAlgebraTable commutator_table(const std::vector<DiffOperator>& basis,
                                 const std::vector<std::string>& names) {
  if (basis.size() != names.size()) throw std::invalid_argument("basis/name size mismatch");
  const int n = static_cast<int>(basis.size());
  const DiffOperator one = DiffOperator::identity();
  bool identity_in_basis = false;
  for (auto& B : basis)
    if (B == one) identity_in_basis = true;

  std::vector<std::map<FlatKey, Rat>> cols;
  for (auto& B : basis) cols.push_back(flatten(B));
  if (!identity_in_basis) cols.push_back(flatten(one));

  LieAlgebraTable tab(names);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      DiffOperator R = op_commutator(basis[i], basis[j]);
      auto sol = solve_exact(cols, flatten(R));
      if (!sol)
        throw BasisNotClosed("bracket [" + names[i] + ", " + names[j] +
                             "] leaves the span; residual: " + R.str());
      std::vector<GammaPoly> coords(n);
      for (int k = 0; k < n; ++k) coords[k] = GammaPoly((*sol)[k]);
      GammaPoly central = identity_in_basis ? GammaPoly() : GammaPoly((*sol)[n]);
      tab.set_bracket(i, j, std::move(coords), central);
    }
  }
  return tab;
}

// ---------------------------------------------------------------------------
// structure analysis
// ---------------------------------------------------------------------------

namespace {

// reduced row echelon basis of the span of the given vectors
std::vector<std::vector<Rat>> row_space(std::vector<std::vector<Rat>> rows) {
  if (rows.empty()) return {};
  const size_t n = rows[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < n && rank < rows.size(); ++col) {
    size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    Rat inv = Rat(1) / rows[rank][col];
    for (size_t j = 0; j < n; ++j) rows[rank][j] *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rat f = rows[r][col];
      for (size_t j = 0; j < n; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

// nullspace basis of the matrix given by rows
std::vector<std::vector<Rat>> null_space(const std::vector<std::vector<Rat>>& rows_in, size_t n) {
  std::vector<std::vector<Rat>> rows = rows_in;
  std::vector<long> pivot_of_col(n, -1);
  size_t rank = 0;
  for (size_t col = 0; col < n && rank < rows.size(); ++col) {
    size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    Rat inv = Rat(1) / rows[rank][col];
    for (size_t j = 0; j < n; ++j) rows[rank][j] *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rat f = rows[r][col];
      for (size_t j = 0; j < n; ++j) rows[r][j] -= f * rows[rank][j];
    }
    pivot_of_col[col] = static_cast<long>(rank);
    ++rank;
  }
  std::vector<std::vector<Rat>> out;
  for (size_t free_col = 0; free_col < n; ++free_col) {
    if (pivot_of_col[free_col] >= 0) continue;
    std::vector<Rat> v(n, Rat(0));
    v[free_col] = 1;
    for (size_t col = 0; col < n; ++col)
      if (pivot_of_col[col] >= 0) v[col] = -rows[static_cast<size_t>(pivot_of_col[col])][free_col];
    out.push_back(std::move(v));
  }
  return out;
}

bool is_multiple_of_basis_vector(const std::vector<GammaPoly>& coords, int k, const Rat& value) {
  for (size_t i = 0; i < coords.size(); ++i) {
    if (static_cast<int>(i) == k) {
      if (!(coords[i] == GammaPoly(value))) return false;
    } else if (!coords[i].is_zero()) {
      return false;
    }
  }
  return true;
}

} // namespace

StructureReport analyze_structure(const LieAlgebraTable& tab) {
  if (!tab.is_constant())
    throw std::invalid_argument("structure analysis expects a constant table");
  for (int i = 0; i < tab.dim(); ++i)
    for (int j = 0; j < tab.dim(); ++j)
      if (!tab.central(i, j).is_zero())
        throw std::invalid_argument("structure analysis expects bases carrying their own center");
  if (!tab.jacobi_ok()) throw std::invalid_argument("table violates the Jacobi identity");

  const int n = tab.dim();
  StructureReport rep;

  // center: v with sum_i v_i c_ijk = 0 for all j,k
  {
    std::vector<std::vector<Rat>> rows;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<Rat> row(n, Rat(0));
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
          row[i] = tab.c(i, j, k).constant_term();
          if (row[i] != 0) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    rep.center = null_space(rows, n);
  }

  // derived subalgebra
  {
    std::vector<std::vector<Rat>> rows;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::vector<Rat> row(n, Rat(0));
        bool nonzero = false;
        for (int k = 0; k < n; ++k) {
          row[k] = tab.c(i, j, k).constant_term();
          if (row[k] != 0) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    rep.derived = row_space(std::move(rows));
  }

  // sl(2) triple: [K0,K+] = 2K+, [K0,K-] = -2K-, [K-,K+] = K0
  for (int k0 = 0; k0 < n && !rep.sl2; ++k0) {
    for (int km = 0; km < n && !rep.sl2; ++km) {
      if (km == k0) continue;
      for (int kp = 0; kp < n; ++kp) {
        if (kp == k0 || kp == km) continue;
        auto row = [&](int i, int j) {
          std::vector<GammaPoly> out(n);
          for (int k = 0; k < n; ++k) out[k] = tab.c(i, j, k);
          return out;
        };
        if (is_multiple_of_basis_vector(row(k0, kp), kp, Rat(2)) &&
            is_multiple_of_basis_vector(row(k0, km), km, Rat(-2)) &&
            is_multiple_of_basis_vector(row(km, kp), k0, Rat(1))) {
          rep.sl2 = std::array<int, 3>{km, k0, kp};
          break;
        }
      }
    }
  }

  if (rep.sl2) {
    // elements commuting with the whole triple, excluding the triple itself
    for (int j = 0; j < n; ++j) {
      if (j == (*rep.sl2)[0] || j == (*rep.sl2)[1] || j == (*rep.sl2)[2]) continue;
      bool commutes = true;
      bool central_elt = true;
      for (int a : *rep.sl2) {
        for (int k = 0; k < n; ++k)
          if (!tab.c(j, a, k).is_zero()) commutes = false;
      }
      for (int i = 0; i < n && central_elt; ++i)
        for (int k = 0; k < n; ++k)
          if (!tab.c(j, i, k).is_zero()) central_elt = false;
      if (commutes && !central_elt) rep.commuting_with_sl2.push_back(j);
    }

    // candidate nilpotent ideal: everything outside the triple and the
    // so(1,1) element
    std::vector<bool> in_ideal(n, true);
    for (int a : *rep.sl2) in_ideal[a] = false;
    for (int j : rep.commuting_with_sl2) in_ideal[j] = false;
    for (int i = 0; i < n; ++i)
      if (in_ideal[i]) rep.heisenberg_indices.push_back(i);

    // ideal: [anything, S] in span(S); Heisenberg: [S,S] central inside S
    bool ok = !rep.heisenberg_indices.empty();
    for (int i = 0; i < n && ok; ++i)
      for (int j : rep.heisenberg_indices)
        for (int k = 0; k < n; ++k)
          if (!tab.c(i, j, k).is_zero() && !in_ideal[k]) ok = false;
    for (int i : rep.heisenberg_indices)
      for (int j : rep.heisenberg_indices)
        for (int k = 0; k < n; ++k)
          if (!tab.c(i, j, k).is_zero()) {
            // the bracket must land in the center
            bool central_target = false;
            for (auto& z : rep.center)
              if (z[k] != 0) central_target = true;
            if (!central_target) ok = false;
          }
    rep.heisenberg_ideal = ok;
  } else {
    // no triple; a pure Heisenberg table still gets recognized
    bool all_central = true;
    for (int i = 0; i < n && all_central; ++i)
      for (int j = 0; j < n && all_central; ++j)
        for (int k = 0; k < n; ++k)
          if (!tab.c(i, j, k).is_zero()) {
            bool central_target = false;
            for (auto& z : rep.center)
              if (z[k] != 0) central_target = true;
            if (!central_target) all_central = false;
          }
    if (all_central && !rep.derived.empty()) {
      rep.heisenberg_ideal = true;
      for (int i = 0; i < n; ++i) rep.heisenberg_indices.push_back(i);
    }
  }

  if (rep.sl2) rep.sl2_alias = "su(1,1) ~ sl(2,R)";
  if (rep.sl2 && !rep.commuting_with_sl2.empty() && rep.heisenberg_ideal &&
      rep.heisenberg_indices.size() == 5) {
    rep.levi_label = "sl(2,R) (+) so(1,1) |x h2";
  } else if (!rep.sl2 && rep.heisenberg_ideal && n == 5) {
    rep.levi_label = "h2 (5-dim Heisenberg)";
  } else if (rep.derived.empty()) {
    rep.levi_label = "abelian";
  } else {
    rep.levi_label = "unclassified";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// orthogonal algebras and contraction
// ---------------------------------------------------------------------------

LieAlgebraTable orthogonal_table(const std::vector<int>& metric_signs) {
  const int n = static_cast<int>(metric_signs.size());
  if (n < 2) throw DegenerateMetric("need dimension >= 2");
  for (int s : metric_signs)
    if (s != 1 && s != -1) throw DegenerateMetric("metric signs must be +1 or -1");

  std::vector<std::pair<int, int>> pairs;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      pairs.push_back({i, j});
      names.push_back("J" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  auto index_of = [&](int i, int j) -> std::pair<int, int> {
    // returns (basis index, sign); J_ii = 0 encoded as index -1
    if (i == j) return {-1, 0};
    bool flip = i > j;
    if (flip) std::swap(i, j);
    for (size_t k = 0; k < pairs.size(); ++k)
      if (pairs[k].first == i && pairs[k].second == j) return {static_cast<int>(k), flip ? -1 : 1};
    return {-1, 0};
  };

  LieAlgebraTable tab(names);
  const int dim = static_cast<int>(pairs.size());
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      auto [i, j] = pairs[a];
      auto [k, l] = pairs[b];
      std::vector<GammaPoly> coords(dim);
      auto put = [&](int g_index, int u, int v, int sgn) {
        // adds sgn * g_{g_index} * J_uv
        auto [bi, s] = index_of(u, v);
        if (bi < 0 || s == 0) return;
        coords[bi] += GammaPoly(Rat(sgn * s * metric_signs[g_index]));
      };
      // [J_ij, J_kl] = g_jk J_il - g_jl J_ik - g_ik J_jl + g_il J_jk
      if (j == k) put(j, i, l, +1);
      if (j == l) put(j, i, k, -1);
      if (i == k) put(i, j, l, -1);
      if (i == l) put(i, j, k, +1);
      tab.set_bracket(a, b, std::move(coords), GammaPoly());
    }
  }
  return tab;
}

LieAlgebraTable contract(const LieAlgebraTable& tab, const std::vector<long>& powers) {
  if (static_cast<int>(powers.size()) != tab.dim())
    throw std::invalid_argument("one gamma power per basis element required");
  LieAlgebraTable out(tab.names());
  for (int i = 0; i < tab.dim(); ++i)
    for (int j = i + 1; j < tab.dim(); ++j) {
      std::vector<GammaPoly> coords(tab.dim());
      for (int k = 0; k < tab.dim(); ++k)
        coords[k] = tab.c(i, j, k).shifted(powers[i] + powers[j] - powers[k]);
      GammaPoly central = tab.central(i, j).shifted(powers[i] + powers[j]);
      out.set_bracket(i, j, std::move(coords), central);
    }
  return out;
}

LieAlgebraTable contraction_limit(const LieAlgebraTable& tab) {
  LieAlgebraTable out(tab.names());
  for (int i = 0; i < tab.dim(); ++i)
    for (int j = i + 1; j < tab.dim(); ++j) {
      std::vector<GammaPoly> coords(tab.dim());
      for (int k = 0; k < tab.dim(); ++k) {
        const GammaPoly& e = tab.c(i, j, k);
        if (!e.is_zero() && e.min_degree() < 0)
          throw SingularContraction("negative gamma power survives in [" + tab.names()[i] + ", " +
                                    tab.names()[j] + "]");
        coords[k] = GammaPoly(e.constant_term());
      }
      const GammaPoly& ce = tab.central(i, j);
      if (!ce.is_zero() && ce.min_degree() < 0)
        throw SingularContraction("negative gamma power survives in a central slot");
      out.set_bracket(i, j, std::move(coords), GammaPoly(ce.constant_term()));
    }
  return out;
}

} // namespace psde
