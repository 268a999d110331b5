#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "centra/errors.hpp"
#include "centra/exppoly.hpp"
#include "centra/matrix.hpp"

namespace centra {

/// Characteristic polynomial coefficients, lowest degree first, monic.
/// Faddeev-LeVerrier keeps everything rational.
inline std::vector<Rational> char_poly(const QMatrix& a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("char_poly: matrix not square");
  auto trace = [](const QMatrix& m) {
    Rational t = 0;
    for (int i = 0; i < m.rows(); ++i) t += m.at(i, i);
    return t;
  };
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  QMatrix m = a;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      QMatrix shifted = m;
      for (int i = 0; i < n; ++i) shifted.at(i, i) += c[n - k + 1];
      m = a * shifted;
    }
    c[n - k] = -trace(m) / k;
  }
  return c;
}

struct RootList {
  std::vector<std::pair<Rational, int>> roots;  // (root, multiplicity)
  int leftover_degree = 0;  // degree of the factor without rational roots
};

namespace detail {

inline std::vector<Integer> positive_divisors(Integer a) {
  if (a < 0) a = -a;
  std::vector<Integer> divs;
  for (Integer i = 1; i * i <= a; ++i)
    if (a % i == 0) {
      divs.push_back(i);
      if (i * i != a) divs.push_back(a / i);
    }
  std::sort(divs.begin(), divs.end());
  return divs;
}

inline Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational v = 0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    v = v * x + coeffs[i];
  return v;
}

// synthetic division by (t - r); exact when r is a root
inline std::vector<Rational> deflate(const std::vector<Rational>& coeffs,
                                     const Rational& r) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  std::vector<Rational> q(d);
  Rational carry = coeffs[d];
  for (int i = d - 1; i >= 0; --i) {
    q[i] = carry;
    carry = coeffs[i] + r * carry;
  }
  return q;
}

}  // namespace detail

/// All rational roots with multiplicity, by the rational root theorem on the
/// denominator-cleared polynomial; repeated deflation counts multiplicity.
inline RootList rational_roots(std::vector<Rational> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  RootList out;
  if (coeffs.size() <= 1) return out;

  // roots at zero
  int zero_mult = 0;
  while (coeffs.size() > 1 && coeffs.front() == 0) {
    coeffs.erase(coeffs.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) out.roots.emplace_back(0, zero_mult);

  while (coeffs.size() > 1) {
    // clear denominators for the divisor enumeration
    Integer common = 1;
    for (const auto& c : coeffs)
      common = boost::multiprecision::lcm(common, denominator(c));
    std::vector<Integer> ic;
    for (const auto& c : coeffs)
      ic.push_back(numerator(c) * (common / denominator(c)));

    std::optional<Rational> found;
    for (const auto& p : detail::positive_divisors(ic.front())) {
      for (const auto& q : detail::positive_divisors(ic.back())) {
        if (boost::multiprecision::gcd(p, q) != 1) continue;
        for (int sign : {1, -1}) {
          const Rational cand(sign * p, q);
          if (detail::eval_poly(coeffs, cand) == 0) {
            found = cand;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;

    int mult = 0;
    while (coeffs.size() > 1 && detail::eval_poly(coeffs, *found) == 0) {
      coeffs = detail::deflate(coeffs, *found);
      ++mult;
    }
    out.roots.emplace_back(*found, mult);
  }
  out.leftover_degree = static_cast<int>(coeffs.size()) - 1;
  std::sort(out.roots.begin(), out.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

/// One (lambda, k) slice of exp(tL)v: the vector coefficient of t^k e^(lt).
struct SpectralPart {
  Rational lambda;
  int k = 0;
  std::vector<Rational> coeff;
};

/// Exact exp(tL)v through the generalized eigenspaces of the rational
/// eigenvalues: v = sum of v_lambda, then
/// exp(tL)v_lambda = e^(lt) sum_i t^i/i! (L - lambda)^i v_lambda.
/// Fails when v has a component outside those eigenspaces.
inline std::vector<SpectralPart> exp_action(const QMatrix& L,
                                            const std::vector<Rational>& v) {
  const int n = L.rows();
  const RootList roots = rational_roots(char_poly(L));

  std::vector<std::vector<Rational>> columns;  // generalized eigenvectors
  std::vector<int> column_root;                // index into roots.roots
  for (int ri = 0; ri < static_cast<int>(roots.roots.size()); ++ri) {
    const auto& [lambda, mult] = roots.roots[ri];
    QMatrix shifted = L;
    for (int i = 0; i < n; ++i) shifted.at(i, i) -= lambda;
    QMatrix power = QMatrix::identity(n);
    for (int i = 0; i < mult; ++i) power = power * shifted;
    for (auto& vec : kernel_basis(power)) {
      columns.push_back(std::move(vec));
      column_root.push_back(ri);
    }
  }

  QMatrix stacked(n, static_cast<int>(columns.size()));
  for (int j = 0; j < static_cast<int>(columns.size()); ++j)
    for (int i = 0; i < n; ++i) stacked.at(i, j) = columns[j][i];
  const auto decomposition = solve(stacked, v);
  if (!decomposition)
    throw UnsupportedError(
        "vector meets irrational eigenvalues of the operator (characteristic "
        "factor of degree " +
        std::to_string(roots.leftover_degree) + " has no rational root)");

  std::vector<SpectralPart> parts;
  for (int ri = 0; ri < static_cast<int>(roots.roots.size()); ++ri) {
    const auto& [lambda, mult] = roots.roots[ri];
    std::vector<Rational> piece(n);
    for (int j = 0; j < static_cast<int>(columns.size()); ++j)
      if (column_root[j] == ri && (*decomposition)[j] != 0)
        for (int i = 0; i < n; ++i)
          piece[i] += (*decomposition)[j] * columns[j][i];

    QMatrix nil = L;
    for (int i = 0; i < n; ++i) nil.at(i, i) -= lambda;
    Rational factorial = 1;
    for (int k = 0; k < mult; ++k) {
      if (k > 0) factorial *= k;
      bool nonzero = false;
      std::vector<Rational> coeff(n);
      for (int i = 0; i < n; ++i) {
        coeff[i] = piece[i] / factorial;
        nonzero = nonzero || coeff[i] != 0;
      }
      if (nonzero) parts.push_back({lambda, k, std::move(coeff)});
      piece = nil * piece;
    }
  }
  return parts;
}

/// Symbolic e^(tB), column by column.
inline std::vector<std::vector<ExpPoly>> matrix_exponential(const QMatrix& b) {
  const int n = b.rows();
  std::vector<std::vector<ExpPoly>> T(n, std::vector<ExpPoly>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> e(n);
    e[j] = 1;
    for (const auto& part : exp_action(b, e))
      for (int i = 0; i < n; ++i)
        if (part.coeff[i] != 0)
          T[i][j] += ExpPoly::term(part.lambda, part.k, part.coeff[i]);
  }
  return T;
}

}  // namespace centra
