#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "centra/lie_algebra.hpp"
#include "centra/poly.hpp"

namespace centra {

/// A linear form on M, stored by its values on the basis.
struct LinearForm {
  std::vector<Rational> values;

  static LinearForm zero(int dim) {
    return LinearForm{std::vector<Rational>(dim)};
  }
  bool is_zero() const {
    for (const auto& v : values)
      if (v != 0) return false;
    return true;
  }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

namespace detail {

// Joint kernel of X_{B_i} - alpha_i on the degree-k monomial space,
// returned as polynomials with first nonzero coefficient 1.
inline std::vector<Poly> relative_kernel(const LieAlgebra& m,
                                         const std::vector<Rational>& alpha,
                                         int k) {
  const int n = m.ambient_dimension();
  const auto mons = monomials_of_degree(n, k);
  const int N = static_cast<int>(mons.size());
  std::map<Monomial, int, MonomialBefore> index;
  for (int j = 0; j < N; ++j) index.emplace(mons[j], j);

  const int r = m.dim();
  QMatrix stacked(std::max(1, r) * N, N);
  if (r == 0) {
    // no constraints: stacked stays zero, kernel is everything
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < N; ++j) {
      Poly image = lie_derivative(m.basis_element(i), Poly::monomial(n, mons[j], 1));
      image.add_term(mons[j], -alpha[i]);
      for (const auto& [mono, c] : image.terms())
        stacked.at(i * N + index.at(mono), j) = c;
    }

  std::vector<Poly> basis;
  for (const auto& v : kernel_basis(stacked)) {
    Poly p(n);
    for (int j = 0; j < N; ++j) p.add_term(mons[j], v[j]);
    basis.push_back(std::move(p));
  }
  return basis;
}

}  // namespace detail

/// Basis of homogeneous degree-k polynomials with X_B(phi) = 0 for all B.
inline std::vector<Poly> invariant_space(const LieAlgebra& m, int k) {
  if (k < 0) throw std::invalid_argument("invariant_space: negative degree");
  return detail::relative_kernel(m, std::vector<Rational>(m.dim()), k);
}

/// Basis of {phi homogeneous of degree k : X_{B_i}(phi) = alpha(B_i) phi}.
/// Every returned element is re-verified against the defining equation.
inline std::vector<Poly> relative_invariant_space(const LieAlgebra& m,
                                                  const LinearForm& alpha,
                                                  int k) {
  if (k < 0)
    throw std::invalid_argument("relative_invariant_space: negative degree");
  if (static_cast<int>(alpha.values.size()) != m.dim())
    throw std::invalid_argument("relative_invariant_space: form length != dim M");
  auto basis = detail::relative_kernel(m, alpha.values, k);
  for (const auto& phi : basis)
    for (int i = 0; i < m.dim(); ++i)
      if (lie_derivative(m.basis_element(i), phi) != alpha.values[i] * phi)
        throw std::logic_error("relative invariant failed re-verification");
  return basis;
}

/// Exponent vectors d >= 0 with |d| = k and sum_i d_i rho_i = alpha as
/// linear forms on M. Candidates come from the diagonal part; when the
/// profile's source matrices are not strictly diagonal each candidate is
/// confirmed against the full matrices.
inline std::vector<Monomial> monomial_relative_invariants(
    const DiagonalProfile& profile, const LinearForm& alpha, int k) {
  const int n = profile.coordinates();
  const int r = n > 0 ? static_cast<int>(profile.forms[0].size()) : 0;
  if (static_cast<int>(alpha.values.size()) != r)
    throw std::invalid_argument(
        "monomial_relative_invariants: form length != dim M");
  std::vector<Monomial> out;
  for (const auto& d : monomials_of_degree(n, k)) {
    bool match = true;
    for (int j = 0; j < r && match; ++j) {
      Rational s = 0;
      for (int i = 0; i < n; ++i)
        if (d.e[i] != 0) s += d.e[i] * profile.forms[i][j];
      match = (s == alpha.values[j]);
    }
    if (!match) continue;
    if (!profile.strictly_diagonal) {
      const Poly cand = Poly::monomial(n, d, 1);
      bool confirmed = true;
      for (std::size_t j = 0; j < profile.source.size() && confirmed; ++j)
        confirmed = lie_derivative(profile.source[j], cand) ==
                    alpha.values[j] * cand;
      if (!confirmed) continue;
    }
    out.push_back(d);
  }
  return out;
}

/// Nonzero nonnegative integer solutions of m . sigma = 0 up to a degree
/// bound, with simplicity in the sense of a single generating ray.
struct ResonanceLattice {
  std::vector<Rational> spectrum;
  std::vector<Monomial> solutions;
  std::optional<Monomial> primitive_generator;
  bool simple = false;
};

inline ResonanceLattice resonance_lattice(const std::vector<Rational>& sigma,
                                          int degree_bound) {
  if (degree_bound < 1)
    throw std::invalid_argument("resonance_lattice: bound must be >= 1");
  ResonanceLattice lat;
  lat.spectrum = sigma;
  const int n = static_cast<int>(sigma.size());
  for (int k = 1; k <= degree_bound; ++k)
    for (const auto& mono : monomials_of_degree(n, k)) {
      Rational s = 0;
      for (int i = 0; i < n; ++i)
        if (mono.e[i] != 0) s += mono.e[i] * sigma[i];
      if (s == 0) lat.solutions.push_back(mono);
    }
  if (lat.solutions.empty()) {
    lat.simple = true;  // vacuously
    return lat;
  }
  // candidate generator: the unique lowest-degree solution, if unique
  const Monomial& g = lat.solutions.front();
  const int gd = g.degree();
  bool simple = true;
  for (const auto& s : lat.solutions) {
    const int sd = s.degree();
    if (sd % gd != 0) {
      simple = false;
      break;
    }
    const int mult = sd / gd;
    bool is_multiple = true;
    for (int i = 0; i < n; ++i)
      if (s.e[i] != mult * g.e[i]) {
        is_multiple = false;
        break;
      }
    if (!is_multiple) {
      simple = false;
      break;
    }
  }
  lat.simple = simple;
  if (simple) lat.primitive_generator = g;
  return lat;
}

}  // namespace centra
