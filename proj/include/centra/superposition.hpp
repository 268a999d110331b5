#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "centra/equivariance.hpp"
#include "centra/exppoly.hpp"
#include "centra/lie_algebra.hpp"
#include "centra/spectral.hpp"
#include "centra/vector_field.hpp"

namespace centra {

/// Family of equivariant fields closed under u -> directional(u, seed).
/// table[i][j] expands directional(fields[i], fields[seeds[j]]) over the
/// family as sparse (index, coefficient) pairs. Degrees strictly increase
/// along the operation, so the induced linear system is triangular.
struct ClosedFamily {
  int ambient = 0;
  LieAlgebra algebra;
  std::vector<VectorField> fields;
  std::vector<int> seeds;  // indices into fields
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> table;

  int size() const { return static_cast<int>(fields.size()); }
};

namespace detail {

inline bool is_equivariant(const LieAlgebra& m, const VectorField& f) {
  for (int i = 0; i < m.dim(); ++i)
    if (!lie_bracket(VectorField::linear(m.basis_element(i)), f).is_zero())
      return false;
  return true;
}

// expands target over the same-degree members, or absent if independent
inline std::optional<std::vector<std::pair<int, Rational>>> expand_in_family(
    const std::vector<VectorField>& fields, const VectorField& target) {
  if (target.is_zero()) return std::vector<std::pair<int, Rational>>{};
  const int deg = *target.degree();
  const int n = target.nvars();
  std::vector<int> members;
  for (int i = 0; i < static_cast<int>(fields.size()); ++i)
    if (fields[i].degree() == deg) members.push_back(i);
  if (members.empty()) return std::nullopt;

  const FieldCoords coords(n, deg);
  QMatrix cols(coords.dim(), static_cast<int>(members.size()));
  for (int j = 0; j < static_cast<int>(members.size()); ++j) {
    const auto v = coords.to_coords(fields[members[j]]);
    for (int i = 0; i < coords.dim(); ++i) cols.at(i, j) = v[i];
  }
  const auto sol = solve(cols, coords.to_coords(target));
  if (!sol) return std::nullopt;
  std::vector<std::pair<int, Rational>> combo;
  for (int j = 0; j < static_cast<int>(members.size()); ++j)
    if ((*sol)[j] != 0) combo.emplace_back(members[j], (*sol)[j]);
  return combo;
}

}  // namespace detail

/// Smallest family containing the seeds and closed under directional
/// products with the seeds. Termination rides on the strict degree increase;
/// a cap overflow signals a likely infinite-dimensional centralizer.
inline ClosedFamily close_family(const LieAlgebra& m,
                                 const std::vector<VectorField>& seeds,
                                 int cap = 200) {
  ClosedFamily fam;
  fam.algebra = m;
  fam.ambient = m.ambient_dimension();
  for (const auto& s : seeds) {
    const auto deg = s.degree();
    if (!deg || *deg < 2 || !s.is_homogeneous(*deg))
      throw std::invalid_argument(
          "close_family: seeds must be homogeneous of degree > 1");
    if (!detail::is_equivariant(m, s))
      throw std::invalid_argument("close_family: seed is not equivariant");
    fam.fields.push_back(s);
    fam.seeds.push_back(static_cast<int>(fam.fields.size()) - 1);
  }

  for (std::size_t i = 0; i < fam.fields.size(); ++i) {
    fam.table.emplace_back();
    for (std::size_t j = 0; j < fam.seeds.size(); ++j) {
      const VectorField d =
          directional(fam.fields[i], fam.fields[fam.seeds[j]]);
      auto combo = detail::expand_in_family(fam.fields, d);
      if (!combo) {
        if (static_cast<int>(fam.fields.size()) + 1 > cap)
          throw CapError("family closure exceeds cap " + std::to_string(cap));
        fam.fields.push_back(d);
        combo = std::vector<std::pair<int, Rational>>{
            {static_cast<int>(fam.fields.size()) - 1, 1}};
      }
      fam.table.back().push_back(std::move(*combo));
    }
  }

  // re-verify every expansion as an exact field identity
  for (std::size_t i = 0; i < fam.fields.size(); ++i)
    for (std::size_t j = 0; j < fam.seeds.size(); ++j) {
      VectorField sum(fam.ambient);
      for (const auto& [k, c] : fam.table[i][j]) {
        sum += c * fam.fields[k];
        if (*fam.fields[k].degree() <= *fam.fields[i].degree())
          throw std::logic_error("close_family: table is not triangular");
      }
      if (sum != directional(fam.fields[i], fam.fields[fam.seeds[j]]))
        throw std::logic_error("close_family: table row failed re-verification");
    }
  return fam;
}

/// Right-hand side sum_j sigma_j(t) e^(alpha_j t) p_{seed_j}(x), with the
/// sigma_j polynomial coefficients stored lowest power first.
struct EDETerm {
  int seed = 0;
  std::vector<Rational> sigma;
  Rational alpha;
};
struct EDESystem {
  std::vector<EDETerm> terms;
};

namespace detail {

inline ExpPoly term_weight(const EDETerm& term) {
  ExpPoly w;
  for (int i = 0; i < static_cast<int>(term.sigma.size()); ++i)
    w.add_term(term.alpha, i, term.sigma[i]);
  return w;
}

}  // namespace detail

/// Integrates the elementary system in closed form. Auxiliary scalars
/// w_u(t) = u(x(t)) obey a triangular linear system because directional
/// products raise degree, so integration runs from the top degree down and
/// ends with one quadrature for x itself.
inline std::vector<ExpPoly> solve_elementary(const ClosedFamily& family,
                                             const EDESystem& system,
                                             const std::vector<Rational>& y,
                                             const Rational& t0 = 0) {
  const int n = family.ambient;
  if (static_cast<int>(y.size()) != n)
    throw std::invalid_argument("solve_elementary: initial value length != n");
  for (const auto& term : system.terms)
    if (term.seed < 0 || term.seed >= static_cast<int>(family.seeds.size()))
      throw std::invalid_argument("solve_elementary: seed index out of range");

  std::vector<int> order(family.fields.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int da = *family.fields[a].degree(), db = *family.fields[b].degree();
    return da != db ? da > db : a < b;
  });

  // w[i][c): component c of fields[i] along the solution
  std::vector<std::vector<ExpPoly>> w(family.fields.size());
  for (int idx : order) {
    std::vector<ExpPoly> rate(n);
    for (const auto& term : system.terms) {
      const ExpPoly weight = detail::term_weight(term);
      for (const auto& [k, c] : family.table[idx][term.seed])
        for (int comp = 0; comp < n; ++comp)
          rate[comp] += (c * weight) * w[k][comp];
    }
    w[idx].resize(n);
    for (int comp = 0; comp < n; ++comp)
      w[idx][comp] = rate[comp].integrate(
          t0, family.fields[idx].component(comp).evaluate(y));
  }

  std::vector<ExpPoly> x(n);
  for (int comp = 0; comp < n; ++comp) {
    ExpPoly rate;
    for (const auto& term : system.terms)
      rate += detail::term_weight(term) * w[family.seeds[term.seed]][comp];
    x[comp] = rate.integrate(t0, y[comp]);
  }
  return x;
}

/// d/dt x(t) minus the right-hand side along x(t), as exact exp-polynomials;
/// all zero iff x solves the system.
inline std::vector<ExpPoly> residual(const ClosedFamily& family,
                                     const EDESystem& system,
                                     const std::vector<ExpPoly>& x) {
  const int n = family.ambient;
  std::vector<ExpPoly> r(n);
  for (int comp = 0; comp < n; ++comp) r[comp] = x[comp].differentiate();
  for (const auto& term : system.terms) {
    const ExpPoly weight = detail::term_weight(term);
    const VectorField& p = family.fields[family.seeds[term.seed]];
    for (int comp = 0; comp < n; ++comp)
      r[comp] -= weight * compose(p.component(comp), x);
  }
  return r;
}

/// Chen reduction data for an autonomous equivariant field q = Bx + q~.
struct ChenReduction {
  QMatrix linear_part;
  ClosedFamily family;
  EDESystem system;
  std::vector<std::vector<ExpPoly>> transport;  // e^(tB)
};

/// Writes the flow of q as x = e^(tB) z where z obeys an elementary system:
/// the reduced right-hand side is exp(t ad B) applied to the nonlinear part,
/// expanded over generalized eigenspaces with rational eigenvalues.
inline ChenReduction chen_reduce(const LieAlgebra& m, const VectorField& q,
                                 int cap = 200) {
  const int n = q.nvars();
  if (n != m.ambient_dimension())
    throw std::invalid_argument("chen_reduce: dimension mismatch");
  if (!detail::is_equivariant(m, q))
    throw std::invalid_argument("chen_reduce: field is not equivariant");
  auto parts = q.homogeneous_components();
  if (parts.count(0))
    throw std::invalid_argument("chen_reduce: field must vanish at the origin");

  ChenReduction red;
  QMatrix b(n, n);
  if (parts.count(1)) {
    const auto jac = parts.at(1).jacobian();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        b.at(i, j) = jac[i][j].coeff(Monomial::one(n));
    parts.erase(1);
  }
  red.linear_part = b;
  const VectorField bx = VectorField::linear(b);

  std::vector<VectorField> seeds;
  std::vector<std::pair<Rational, int>> rates;  // (alpha, power) per seed
  for (const auto& [k, qk] : parts) {
    const detail::FieldCoords coords(n, k);
    const int N = coords.dim();
    QMatrix L(N, N);
    for (int j = 0; j < static_cast<int>(coords.mons.size()); ++j)
      for (int l = 0; l < n; ++l) {
        const auto w = coords.to_coords(lie_bracket(
            bx, VectorField::monomial_field(n, coords.mons[j], l)));
        for (int row = 0; row < N; ++row)
          if (w[row] != 0) L.at(row, j * n + l) = w[row];
      }
    for (const auto& part : exp_action(L, coords.to_coords(qk))) {
      seeds.push_back(coords.to_field(part.coeff));
      rates.emplace_back(part.lambda, part.k);
    }
  }

  red.family = close_family(m, seeds, cap);
  for (int s = 0; s < static_cast<int>(seeds.size()); ++s) {
    EDETerm term;
    term.seed = s;
    term.alpha = rates[s].first;
    term.sigma.assign(rates[s].second + 1, 0);
    term.sigma[rates[s].second] = 1;
    red.system.terms.push_back(std::move(term));
  }
  red.transport = matrix_exponential(b);
  return red;
}

/// Full flow of the autonomous field: reduce, solve the elementary system
/// from z(0) = y, transport back by e^(tB).
struct FlowResult {
  ChenReduction reduction;
  std::vector<ExpPoly> solution;
};

inline FlowResult solve_autonomous(const LieAlgebra& m, const VectorField& q,
                                   const std::vector<Rational>& y,
                                   int cap = 200) {
  FlowResult out{chen_reduce(m, q, cap), {}};
  const auto z = solve_elementary(out.reduction.family, out.reduction.system, y, 0);
  const int n = q.nvars();
  out.solution.assign(n, ExpPoly());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.solution[i] += out.reduction.transport[i][j] * z[j];
  return out;
}

namespace detail {

inline double eval_double(const Poly& p, const std::vector<double>& x) {
  double sum = 0;
  for (const auto& [m, c] : p.terms()) {
    double t = to_double(c);
    for (int i = 0; i < p.nvars(); ++i)
      for (int e = 0; e < m.e[i]; ++e) t *= x[i];
    sum += t;
  }
  return sum;
}

// max deviation between the symbolic solution and an RK4 run of rhs
inline double rk4_deviation(
    const std::vector<ExpPoly>& sol,
    const std::function<std::vector<double>(double, const std::vector<double>&)>& rhs,
    std::vector<double> x, double t_end, int steps) {
  const int n = static_cast<int>(x.size());
  const double h = t_end / steps;
  double worst = 0;
  double t = 0;
  auto axpy = [&](const std::vector<double>& base, double f,
                  const std::vector<double>& k) {
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = base[i] + f * k[i];
    return r;
  };
  for (int s = 0; s < steps; ++s) {
    const auto k1 = rhs(t, x);
    const auto k2 = rhs(t + h / 2, axpy(x, h / 2, k1));
    const auto k3 = rhs(t + h / 2, axpy(x, h / 2, k2));
    const auto k4 = rhs(t + h, axpy(x, h, k3));
    for (int i = 0; i < n; ++i)
      x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    t = (s + 1) * h;
    for (int i = 0; i < n; ++i) {
      const double dev = std::abs(sol[i].eval(t) - x[i]);
      if (dev > worst) worst = dev;
    }
  }
  return worst;
}

}  // namespace detail

/// Compares the symbolic solution of an elementary system against RK4.
inline double verify_numeric(const std::vector<ExpPoly>& sol,
                             const ClosedFamily& family, const EDESystem& system,
                             const std::vector<Rational>& y, double t_end,
                             int steps) {
  const int n = family.ambient;
  auto rhs = [&](double t, const std::vector<double>& x) {
    std::vector<double> v(n, 0.0);
    for (const auto& term : system.terms) {
      const double weight = detail::term_weight(term).eval(t);
      const VectorField& p = family.fields[family.seeds[term.seed]];
      for (int i = 0; i < n; ++i)
        v[i] += weight * detail::eval_double(p.component(i), x);
    }
    return v;
  };
  std::vector<double> x0;
  for (const auto& v : y) x0.push_back(to_double(v));
  return detail::rk4_deviation(sol, rhs, std::move(x0), t_end, steps);
}

/// Compares the symbolic solution of an autonomous field against RK4.
inline double verify_numeric(const std::vector<ExpPoly>& sol,
                             const VectorField& q,
                             const std::vector<Rational>& y, double t_end,
                             int steps) {
  const int n = q.nvars();
  auto rhs = [&](double, const std::vector<double>& x) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = detail::eval_double(q.component(i), x);
    return v;
  };
  std::vector<double> x0;
  for (const auto& v : y) x0.push_back(to_double(v));
  return detail::rk4_deviation(sol, rhs, std::move(x0), t_end, steps);
}

}  // namespace centra
