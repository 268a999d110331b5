#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "centra/matrix.hpp"
#include "centra/monomial.hpp"
#include "centra/vector_field.hpp"

namespace centra {

/// Formal vector field Bx + sum of homogeneous parts, kept only up to the
/// truncation degree. Zero parts are never stored.
struct FormalField {
  QMatrix linear;
  std::map<int, VectorField> nonlinear;  // degree >= 2 -> homogeneous part
  int truncation = 0;

  int nvars() const { return linear.rows(); }

  VectorField part(int k) const {
    const auto it = nonlinear.find(k);
    return it != nonlinear.end() ? it->second : VectorField(nvars());
  }

  /// Reassembles the polynomial field Bx + sum of parts.
  VectorField field() const {
    VectorField f = VectorField::linear(linear);
    for (const auto& [k, p] : nonlinear) f += p;
    return f;
  }

  friend bool operator==(const FormalField& a, const FormalField& b) = default;
};

namespace detail {

inline void validate_formal(const FormalField& f) {
  if (!f.linear.is_square())
    throw std::invalid_argument("FormalField: linear part not square");
  for (const auto& [k, p] : f.nonlinear) {
    if (k < 2 || k > f.truncation)
      throw std::invalid_argument("FormalField: part degree outside 2..D");
    if (p.nvars() != f.nvars() || !p.is_homogeneous(k) || p.is_zero())
      throw std::invalid_argument("FormalField: part is not homogeneous of its degree");
  }
}

}  // namespace detail

/// Splits a polynomial field vanishing at the origin into linear part and
/// homogeneous rest, truncated at D.
inline FormalField split_field(const VectorField& q, int D) {
  FormalField f;
  const int n = q.nvars();
  f.linear = QMatrix(n, n);
  f.truncation = D;
  for (const auto& [k, part] : q.homogeneous_components()) {
    if (k == 0)
      throw std::invalid_argument("split_field: field must vanish at the origin");
    if (k == 1) {
      const auto jac = part.jacobian();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          f.linear.at(i, j) = jac[i][j].coeff(Monomial::one(n));
    } else if (k <= D) {
      f.nonlinear.emplace(k, part);
    }
  }
  return f;
}

/// Monomial fields x^r e_l of the given degree with r.sigma = sigma_l, and
/// r.tau = tau_l as well when the symmetry A is present. Ordered by monomial,
/// then by component.
inline std::vector<VectorField> resonant_space(
    const QMatrix& b, int degree,
    const std::optional<QMatrix>& symmetry = std::nullopt) {
  if (!b.is_square() || !b.is_diagonal())
    throw std::invalid_argument("resonant_space: matrix must be diagonal");
  const int n = b.rows();
  const auto sigma = b.diagonal();
  std::vector<Rational> tau;
  if (symmetry) {
    if (!symmetry->is_square() || symmetry->rows() != n || !symmetry->is_diagonal())
      throw std::invalid_argument("resonant_space: symmetry must be diagonal");
    tau = symmetry->diagonal();
  }
  std::vector<VectorField> out;
  for (const auto& r : monomials_of_degree(n, degree))
    for (int l = 0; l < n; ++l) {
      Rational mu = -sigma[l], nu = 0;
      if (!tau.empty()) nu = -tau[l];
      for (int i = 0; i < n; ++i) {
        mu += r.e[i] * sigma[i];
        if (!tau.empty()) nu += r.e[i] * tau[i];
      }
      if (mu == 0 && nu == 0)
        out.push_back(VectorField::monomial_field(n, r, l));
    }
  return out;
}

/// Conjugates the field by the near-identity change x = y + u(y) and
/// truncates at D. The inverse Jacobian factor is a finite Neumann series
/// because Du strictly raises degree.
inline FormalField push_forward(const FormalField& f, const VectorField& u,
                                int D) {
  detail::validate_formal(f);
  const int n = f.nvars();
  if (!u.is_zero()) {
    const auto deg = u.degree();
    if (u.nvars() != n || !deg || *deg < 2 || !u.is_homogeneous(*deg))
      throw std::invalid_argument(
          "push_forward: u must be homogeneous of degree > 1");
  }

  std::vector<Poly> subs;
  for (int i = 0; i < n; ++i)
    subs.push_back(Poly::variable(n, i) + u.component(i));
  const VectorField g = f.field();
  VectorField v(n);
  for (int i = 0; i < n; ++i)
    v.component(i) = g.component(i).substitute(subs).truncated(D);

  // w = (I + Du)^(-1) v
  const auto du = u.jacobian();
  VectorField w = v, term = v;
  while (!term.is_zero()) {
    VectorField next(n);
    for (int i = 0; i < n; ++i) {
      Poly acc(n);
      for (int j = 0; j < n; ++j)
        if (!du[i][j].is_zero()) acc += du[i][j] * term.component(j);
      next.component(i) = -acc.truncated(D);
    }
    term = next;
    w += term;
  }

  FormalField out;
  out.linear = f.linear;
  out.truncation = D;
  w -= VectorField::linear(f.linear);
  for (auto& [k, part] : w.homogeneous_components()) {
    if (k < 2)
      throw std::logic_error("push_forward: low-degree residue");
    if (k <= D) out.nonlinear.emplace(k, std::move(part));
  }
  return out;
}

/// One degree of the normalization: the resonant directions available, the
/// terms removed, and the generator that removed them.
struct DegreeStep {
  int degree = 0;
  std::vector<VectorField> resonant_basis;
  VectorField removed;
  VectorField generator;
};

struct NormalFormResult {
  FormalField nf;
  std::map<int, VectorField> generators;
  std::vector<DegreeStep> steps;
};

namespace detail {

inline bool commutes_with(const QMatrix& a, const VectorField& f) {
  return lie_bracket(VectorField::linear(a), f).is_zero();
}

}  // namespace detail

/// Poincare-Dulac normalization through degree D. Each step projects the
/// working degree onto the resonant space; the generator carries coefficient
/// gamma / (r.sigma - sigma_l) on each nonresonant monomial and zero on the
/// resonant ones, so ad B is never inverted where it vanishes. When A is
/// given the input must be A-equivariant and every intermediate stays so.
inline NormalFormResult normal_form(
    const FormalField& f, int D,
    const std::optional<QMatrix>& symmetry = std::nullopt) {
  detail::validate_formal(f);
  if (!f.linear.is_diagonal())
    throw std::invalid_argument("normal_form: linear part must be diagonal");
  const int n = f.nvars();
  if (symmetry) {
    if (!symmetry->is_square() || symmetry->rows() != n ||
        !symmetry->is_diagonal())
      throw std::invalid_argument("normal_form: symmetry must be diagonal");
    if (!commutator(*symmetry, f.linear).is_zero())
      throw std::invalid_argument("normal_form: symmetry does not commute");
    for (const auto& [k, part] : f.nonlinear)
      if (!detail::commutes_with(*symmetry, part))
        throw std::invalid_argument("normal_form: field is not equivariant");
  }
  const auto sigma = f.linear.diagonal();

  NormalFormResult res;
  FormalField g = f;
  g.truncation = D;
  std::erase_if(g.nonlinear, [D](const auto& e) { return e.first > D; });

  for (int k = 2; k <= D; ++k) {
    DegreeStep step;
    step.degree = k;
    step.resonant_basis = resonant_space(f.linear, k, symmetry);
    step.removed = VectorField(n);
    step.generator = VectorField(n);

    const VectorField fk = g.part(k);
    for (int l = 0; l < n; ++l)
      for (const auto& [r, c] : fk.component(l).terms()) {
        Rational mu = -sigma[l];
        for (int i = 0; i < n; ++i) mu += r.e[i] * sigma[i];
        if (mu == 0) continue;
        step.removed += VectorField::monomial_field(n, r, l, c);
        step.generator += VectorField::monomial_field(n, r, l, c / mu);
      }

    if (!step.generator.is_zero()) {
      g = push_forward(g, step.generator, D);
      if (g.part(k) != fk - step.removed)
        throw std::logic_error("normal_form: homological step failed");
      if (symmetry)
        for (const auto& [j, part] : g.nonlinear)
          if (!detail::commutes_with(*symmetry, part))
            throw std::logic_error("normal_form: symmetry lost");
    }
    res.generators.emplace(k, step.generator);
    res.steps.push_back(std::move(step));
  }
  res.nf = std::move(g);
  return res;
}

}  // namespace centra
