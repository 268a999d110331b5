#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "centra/errors.hpp"
#include "centra/matrix.hpp"

namespace centra {

/// Thrown when bracket closure grows past the requested cap; carries the
/// partial basis found so far.
struct ClosureCapError : CapError {
  std::vector<QMatrix> partial_basis;
  ClosureCapError(const std::string& msg, std::vector<QMatrix> partial)
      : CapError(msg), partial_basis(std::move(partial)) {}
};

namespace detail {

inline std::vector<Rational> flatten(const QMatrix& m) {
  return m.entries();
}

}  // namespace detail

/// Matrix Lie algebra given by a linearly independent basis plus exact
/// structure constants: [B_i, B_j] = sum_k c[i][j][k] B_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(int ambient, std::vector<QMatrix> basis)
      : n_(ambient), basis_(std::move(basis)) {
    compute_structure();
    if (dim() <= 10 && !structure_ok())
      throw std::logic_error("LieAlgebra: structure constants inconsistent");
  }

  int ambient_dimension() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<QMatrix>& basis() const { return basis_; }
  const QMatrix& basis_element(int i) const { return basis_[i]; }

  const std::vector<Rational>& structure(int i, int j) const {
    return c_[i][j];
  }

  bool is_abelian() const {
    for (int i = 0; i < dim(); ++i)
      for (int j = i + 1; j < dim(); ++j)
        for (const auto& x : c_[i][j])
          if (x != 0) return false;
    return true;
  }

  bool all_diagonal() const {
    for (const auto& b : basis_)
      if (!b.is_diagonal()) return false;
    return true;
  }
  bool all_upper_triangular() const {
    for (const auto& b : basis_)
      if (!b.is_upper_triangular()) return false;
    return true;
  }

  /// Antisymmetry and the Jacobi identity on the structure constants.
  bool structure_ok() const {
    const int r = dim();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k)
          if (c_[i][j][k] != -c_[j][i][k]) return false;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k)
          for (int l = 0; l < r; ++l) {
            Rational s = 0;
            for (int m = 0; m < r; ++m)
              s += c_[i][j][m] * c_[m][k][l] + c_[j][k][m] * c_[m][i][l] +
                   c_[k][i][m] * c_[m][j][l];
            if (s != 0) return false;
          }
    return true;
  }

 private:
  void compute_structure() {
    const int r = dim();
    c_.assign(r, std::vector<std::vector<Rational>>(
                     r, std::vector<Rational>(r)));
    if (r == 0) return;
    // columns = flattened basis elements; commutators resolved against them
    QMatrix cols(n_ * n_, r);
    for (int k = 0; k < r; ++k) {
      const auto flat = detail::flatten(basis_[k]);
      for (int row = 0; row < n_ * n_; ++row) cols.at(row, k) = flat[row];
    }
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        const auto sol = solve(cols, detail::flatten(commutator(basis_[i], basis_[j])));
        if (!sol)
          throw std::invalid_argument(
              "LieAlgebra: basis is not closed under the commutator");
        c_[i][j] = *sol;
        for (int k = 0; k < r; ++k) c_[j][i][k] = -(*sol)[k];
      }
  }

  int n_ = 0;
  std::vector<QMatrix> basis_;
  std::vector<std::vector<std::vector<Rational>>> c_;
};

/// Smallest commutator-closed subspace containing the generators. Dependent
/// generators are dropped; a first-seen spanning subset is kept. Throws
/// ClosureCapError when the dimension would exceed cap.
inline LieAlgebra bracket_closure(const std::vector<QMatrix>& generators,
                                  int cap = 200) {
  if (generators.empty()) return LieAlgebra(0, {});
  const int n = generators[0].rows();
  for (const auto& g : generators)
    if (g.rows() != n || g.cols() != n)
      throw std::invalid_argument("bracket_closure: generators must be square, same size");

  RowSpan span(n * n);
  std::vector<QMatrix> basis;
  auto push = [&](const QMatrix& m) {
    if (!span.add(detail::flatten(m))) return false;
    if (static_cast<int>(basis.size()) + 1 > cap)
      throw ClosureCapError("bracket closure exceeds cap " + std::to_string(cap),
                            basis);
    basis.push_back(m);
    return true;
  };

  for (const auto& g : generators) push(g);
  // worklist pass: new elements must bracket against everything already kept
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) push(commutator(basis[j], basis[i]));
  return LieAlgebra(n, std::move(basis));
}

/// Derived series dimensions, starting at dim M and ending when stable.
inline std::vector<int> derived_series_dims(const LieAlgebra& m) {
  std::vector<int> dims{m.dim()};
  std::vector<QMatrix> current = m.basis();
  const int n = m.ambient_dimension();
  while (!current.empty()) {
    RowSpan span(n * n);
    std::vector<QMatrix> next;
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        QMatrix cm = commutator(current[i], current[j]);
        if (span.add(detail::flatten(cm))) next.push_back(std::move(cm));
      }
    if (static_cast<int>(next.size()) == dims.back()) break;  // stabilized
    dims.push_back(static_cast<int>(next.size()));
    current = std::move(next);
  }
  return dims;
}

inline bool is_solvable(const LieAlgebra& m) {
  return derived_series_dims(m).back() == 0;
}

/// True iff span of all commutators equals the whole algebra.
inline bool is_perfect(const LieAlgebra& m) {
  if (m.dim() == 0) return true;
  RowSpan span(m.ambient_dimension() * m.ambient_dimension());
  int rank = 0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i + 1; j < m.dim(); ++j)
      if (span.add(detail::flatten(
              commutator(m.basis_element(i), m.basis_element(j)))))
        ++rank;
  return rank == m.dim();
}

/// Values rho_i(B_j) = (B_j)_ii of the coordinate forms on the basis of M.
/// source keeps the basis matrices so downstream candidate checks can verify
/// against the full (possibly triangular) matrices.
struct DiagonalProfile {
  std::vector<std::vector<Rational>> forms;  // forms[i][j] = rho_i(B_j)
  std::vector<QMatrix> source;
  bool strictly_diagonal = false;

  int coordinates() const { return static_cast<int>(forms.size()); }
};

namespace detail {

inline DiagonalProfile extract_profile(const LieAlgebra& m) {
  DiagonalProfile p;
  p.strictly_diagonal = m.all_diagonal();
  p.source = m.basis();
  p.forms.assign(m.ambient_dimension(), std::vector<Rational>(m.dim()));
  for (int j = 0; j < m.dim(); ++j) {
    const auto d = m.basis_element(j).diagonal();
    for (int i = 0; i < m.ambient_dimension(); ++i) p.forms[i][j] = d[i];
  }
  return p;
}

}  // namespace detail

inline std::optional<DiagonalProfile> diagonal_profile(const LieAlgebra& m) {
  if (!m.all_diagonal()) return std::nullopt;
  return detail::extract_profile(m);
}

/// Same extraction for an upper-triangular basis; forms come from the
/// diagonal part only.
inline std::optional<DiagonalProfile> triangular_profile(const LieAlgebra& m) {
  if (!m.all_upper_triangular()) return std::nullopt;
  return detail::extract_profile(m);
}

}  // namespace centra
