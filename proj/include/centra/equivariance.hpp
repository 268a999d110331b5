#pragma once

#include <atomic>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "centra/feasibility.hpp"
#include "centra/invariants.hpp"
#include "centra/lie_algebra.hpp"
#include "centra/vector_field.hpp"

namespace centra {

namespace detail {

// Index map for the degree-k coefficient space: monomial fields x^r e_l in
// graded-lex order of r, then l.
struct FieldCoords {
  std::vector<Monomial> mons;
  std::map<Monomial, int, MonomialBefore> mon_index;
  int n = 0;

  FieldCoords(int nvars, int k) : mons(monomials_of_degree(nvars, k)), n(nvars) {
    for (int j = 0; j < static_cast<int>(mons.size()); ++j)
      mon_index.emplace(mons[j], j);
  }

  int dim() const { return static_cast<int>(mons.size()) * n; }

  std::vector<Rational> to_coords(const VectorField& f) const {
    std::vector<Rational> v(dim());
    for (int l = 0; l < n; ++l)
      for (const auto& [m, c] : f.component(l).terms())
        v[mon_index.at(m) * n + l] = c;
    return v;
  }

  VectorField to_field(const std::vector<Rational>& v) const {
    VectorField f(n);
    for (int j = 0; j < static_cast<int>(mons.size()); ++j)
      for (int l = 0; l < n; ++l)
        if (v[j * n + l] != 0) f.component(l).add_term(mons[j], v[j * n + l]);
    return f;
  }
};

}  // namespace detail

/// Basis of {f homogeneous of degree k : [B_i x, f] = 0 for every basis
/// element}, the joint kernel of the stacked bracket operators on the
/// monomial-field coefficient space.
inline std::vector<VectorField> equivariant_space(const LieAlgebra& m, int k) {
  if (k < 0) throw std::invalid_argument("equivariant_space: negative degree");
  const int n = m.ambient_dimension();
  const detail::FieldCoords coords(n, k);
  const int N = coords.dim();
  const int r = m.dim();

  QMatrix stacked(std::max(1, r) * N, N);
  for (int i = 0; i < r; ++i) {
    const VectorField bx = VectorField::linear(m.basis_element(i));
    for (int j = 0; j < static_cast<int>(coords.mons.size()); ++j)
      for (int l = 0; l < n; ++l) {
        const VectorField image = lie_bracket(
            bx, VectorField::monomial_field(n, coords.mons[j], l));
        const auto w = coords.to_coords(image);
        for (int row = 0; row < N; ++row)
          if (w[row] != 0) stacked.at(i * N + row, j * n + l) = w[row];
      }
  }

  std::vector<VectorField> basis;
  for (const auto& v : kernel_basis(stacked)) basis.push_back(coords.to_field(v));
  return basis;
}

/// Graded slices of the centralizer C(M) for degrees 0..D.
struct GradedBasis {
  LieAlgebra algebra;
  std::map<int, std::vector<VectorField>> per_degree;

  int max_degree() const {
    return per_degree.empty() ? -1 : per_degree.rbegin()->first;
  }
  int dim_at(int k) const {
    auto it = per_degree.find(k);
    return it == per_degree.end() ? 0 : static_cast<int>(it->second.size());
  }
};

/// Worker bound for degree-parallel computations: CENTRA_THREADS when set,
/// hardware concurrency otherwise, never more than tasks.
inline int worker_count(int tasks) {
  int w = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CENTRA_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) w = v;
  }
  if (w < 1) w = 1;
  return w < tasks ? w : tasks;
}

inline GradedBasis centralizer_up_to(const LieAlgebra& m, int max_degree) {
  if (max_degree < 1)
    throw std::invalid_argument("centralizer_up_to: max_degree must be >= 1");
  const int tasks = max_degree + 1;
  std::vector<std::vector<VectorField>> slots(tasks);
  const int workers = worker_count(tasks);
  if (workers <= 1) {
    for (int k = 0; k < tasks; ++k) slots[k] = equivariant_space(m, k);
  } else {
    std::atomic<int> next{0};
    auto run = [&] {
      for (int k = next.fetch_add(1); k < tasks; k = next.fetch_add(1))
        slots[k] = equivariant_space(m, k);
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  GradedBasis g;
  g.algebra = m;
  for (int k = 0; k < tasks; ++k) g.per_degree.emplace(k, std::move(slots[k]));
  return g;
}

struct ClosureReport {
  int pairs_checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Verifies that directional(p, q) stays inside the stored graded spans for
/// every ordered pair whose product degree is still stored. A violation
/// would contradict the closure property of C(M), so any entry here means
/// an internal bug.
inline ClosureReport check_directional_closure(const GradedBasis& g) {
  ClosureReport report;
  const int top = g.max_degree();
  // span membership is tested degree by degree in coefficient coordinates
  std::map<int, RowSpan> spans;
  std::map<int, detail::FieldCoords> coords;
  const int n = g.algebra.ambient_dimension();
  for (const auto& [k, fields] : g.per_degree) {
    auto [cit, unused] = coords.try_emplace(k, n, k);
    auto [sit, unused2] = spans.emplace(k, RowSpan(cit->second.dim()));
    for (const auto& f : fields) sit->second.add(cit->second.to_coords(f));
  }
  for (const auto& [dp, ps] : g.per_degree)
    for (const auto& [dq, qs] : g.per_degree) {
      const int dr = dp + dq - 1;
      if (dr < 0 || dr > top) continue;
      for (std::size_t a = 0; a < ps.size(); ++a)
        for (std::size_t b = 0; b < qs.size(); ++b) {
          ++report.pairs_checked;
          const VectorField d = directional(ps[a], qs[b]);
          if (d.is_zero()) continue;
          if (!spans.at(dr).contains(coords.at(dr).to_coords(d))) {
            std::ostringstream os;
            os << "directional(p[" << dp << "," << a << "], q[" << dq << ","
               << b << "]) leaves the degree-" << dr << " span";
            report.violations.push_back(os.str());
          }
        }
    }
  return report;
}

/// Finiteness dichotomy outcomes. InfiniteCertified carries a nonconstant
/// invariant witness; FiniteCertified carries the same-sign combination and
/// the forced degree bound; Undetermined records how far the search went.
struct InfiniteCertified {
  Poly witness;
};
struct FiniteCertified {
  int max_degree = 0;
  std::vector<Rational> combination;  // coefficients over the basis of M
  std::vector<Rational> spectrum;     // resulting same-sign diagonal
};
struct Undetermined {
  int searched_bound = 0;
};
using FinitenessVerdict =
    std::variant<InfiniteCertified, FiniteCertified, Undetermined>;

/// (a) nonconstant invariant up to degree D certifies infinite dimension;
/// (b) a same-sign diagonal combination forces the bound
///     d = floor(max|sigma| / min|sigma|); (c) otherwise honest Undetermined.
inline FinitenessVerdict finiteness_report(const LieAlgebra& m, int search_bound) {
  if (search_bound < 1)
    throw std::invalid_argument("finiteness_report: bound must be >= 1");
  for (int k = 1; k <= search_bound; ++k) {
    auto inv = invariant_space(m, k);
    if (!inv.empty()) return InfiniteCertified{std::move(inv.front())};
  }
  if (const auto profile = diagonal_profile(m); profile && m.dim() > 0) {
    const int n = profile->coordinates();
    std::vector<std::vector<Rational>> rows(profile->forms);
    if (const auto c = strict_feasible_point(rows, m.dim())) {
      std::vector<Rational> sigma(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m.dim(); ++j)
          sigma[i] += profile->forms[i][j] * (*c)[j];
      Rational lo = sigma[0], hi = sigma[0];
      for (const auto& s : sigma) {
        if (s < lo) lo = s;
        if (s > hi) hi = s;
      }
      const int d = static_cast<int>(rational_floor(hi / lo).convert_to<long>());
      return FiniteCertified{d, *c, std::move(sigma)};
    }
  }
  return Undetermined{search_bound};
}

struct NilpotencyReport {
  int pairs_checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// For a finite-certified centralizer with top degree d, every directional
/// product of stored fields with deg p + deg q > d + 1 must vanish.
inline NilpotencyReport nilpotency_witness(const GradedBasis& g,
                                           const FinitenessVerdict& verdict) {
  const auto* fin = std::get_if<FiniteCertified>(&verdict);
  if (!fin)
    throw std::invalid_argument("nilpotency_witness: verdict is not FiniteCertified");
  const int d = fin->max_degree;
  NilpotencyReport report;
  for (const auto& [dp, ps] : g.per_degree)
    for (const auto& [dq, qs] : g.per_degree) {
      if (dp + dq <= d + 1) continue;
      for (std::size_t a = 0; a < ps.size(); ++a)
        for (std::size_t b = 0; b < qs.size(); ++b) {
          ++report.pairs_checked;
          if (!directional(ps[a], qs[b]).is_zero()) {
            std::ostringstream os;
            os << "directional(p[" << dp << "," << a << "], q[" << dq << ","
               << b << "]) is nonzero past the bound";
            report.violations.push_back(os.str());
          }
        }
    }
  return report;
}

struct WitnessReport {
  int checks = 0;
  bool passed = false;
  std::vector<std::string> notes;
};

/// Certifies the infinite-dimension witness family phi^m * E: phi must be a
/// nonconstant invariant, and each power-scaled Euler field must commute
/// with the algebra.
inline WitnessReport infinite_certificate(const LieAlgebra& m, const Poly& phi,
                                          int checks) {
  const auto deg = phi.degree();
  if (!deg || *deg == 0)
    throw std::invalid_argument("infinite_certificate: witness must be nonconstant");
  for (int i = 0; i < m.dim(); ++i)
    if (!lie_derivative(m.basis_element(i), phi).is_zero())
      throw std::invalid_argument("infinite_certificate: witness is not invariant");

  WitnessReport report;
  report.checks = checks;
  report.passed = true;
  const int n = m.ambient_dimension();
  const VectorField euler = VectorField::identity_field(n);
  for (int power = 1; power <= checks; ++power) {
    const VectorField member = phi.pow(power) * euler;
    bool ok = true;
    for (int i = 0; i < m.dim(); ++i)
      if (!lie_bracket(VectorField::linear(m.basis_element(i)), member).is_zero())
        ok = false;
    std::ostringstream os;
    os << "phi^" << power << "*E equivariance: " << (ok ? "pass" : "FAIL");
    report.notes.push_back(os.str());
    report.passed = report.passed && ok;
  }
  return report;
}

}  // namespace centra
