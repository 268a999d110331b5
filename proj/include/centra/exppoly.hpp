#pragma once

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "centra/errors.hpp"
#include "centra/poly.hpp"
#include "centra/rational.hpp"

namespace centra {

/// Exact scalar function of t: a finite sum of c * t^k * e^(lambda t) with
/// rational c, lambda and k >= 0. Closed under products, differentiation
/// and (for rational data) integration, which is what makes the residual
/// checks exact.
class ExpPoly {
 public:
  using Key = std::pair<Rational, int>;  // (lambda, k)

  ExpPoly() = default;

  static ExpPoly constant(const Rational& c) {
    ExpPoly f;
    f.add_term(0, 0, c);
    return f;
  }
  static ExpPoly term(const Rational& lambda, int k, const Rational& coeff) {
    ExpPoly f;
    f.add_term(lambda, k, coeff);
    return f;
  }

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_polynomial() const {
    for (const auto& [key, c] : terms_)
      if (key.first != 0) return false;
    return true;
  }

  void add_term(const Rational& lambda, int k, const Rational& coeff) {
    if (coeff == 0) return;
    const Key key{lambda, k};
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  ExpPoly operator-() const {
    ExpPoly f;
    for (const auto& [key, c] : terms_) f.terms_.emplace(key, -c);
    return f;
  }
  ExpPoly& operator+=(const ExpPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
    return *this;
  }
  ExpPoly& operator-=(const ExpPoly& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
    return *this;
  }
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }

  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    ExpPoly f;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        f.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return f;
  }
  friend ExpPoly operator*(const Rational& c, const ExpPoly& a) {
    ExpPoly f;
    if (c != 0)
      for (const auto& [key, k] : a.terms_) f.terms_.emplace(key, c * k);
    return f;
  }

  ExpPoly pow(int k) const {
    ExpPoly r = ExpPoly::constant(1);
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  ExpPoly differentiate() const {
    ExpPoly f;
    for (const auto& [key, c] : terms_) {
      const auto& [lambda, k] = key;
      if (k > 0) f.add_term(lambda, k - 1, c * k);
      if (lambda != 0) f.add_term(lambda, k, c * lambda);
    }
    return f;
  }

  /// Exact value at a rational t. A term with lambda != 0 at t != 0 has no
  /// rational value.
  Rational eval_exact(const Rational& t) const {
    Rational sum = 0;
    for (const auto& [key, c] : terms_) {
      const auto& [lambda, k] = key;
      if (lambda != 0 && t != 0)
        throw UnsupportedError(
            "exp-polynomial has no exact rational value at t != 0");
      if (t == 0) {
        if (k == 0) sum += c;
        continue;
      }
      sum += c * rat_pow(t, k);
    }
    return sum;
  }

  double eval(double t) const {
    double sum = 0;
    for (const auto& [key, c] : terms_)
      sum += to_double(c) * std::pow(t, key.second) *
             std::exp(to_double(key.first) * t);
    return sum;
  }

  /// Exact antiderivative normalized to take the value init at t0.
  /// Repeated integration by parts gives
  ///   int t^k e^(lt) dt = e^(lt) * sum_{i=0..k} (-1)^i k!/(k-i)! t^(k-i)/l^(i+1).
  ExpPoly integrate(const Rational& t0, const Rational& init) const {
    ExpPoly F;
    for (const auto& [key, c] : terms_) {
      const auto& [lambda, k] = key;
      if (lambda == 0) {
        F.add_term(0, k + 1, c / (k + 1));
        continue;
      }
      Rational falling = 1;  // k!/(k-i)!
      Rational sign = 1;
      for (int i = 0; i <= k; ++i) {
        F.add_term(lambda, k - i, c * sign * falling / rat_pow(lambda, i + 1));
        falling *= (k - i);
        sign = -sign;
      }
    }
    F.add_term(0, 0, init - F.eval_exact(t0));
    return F;
  }

  friend bool operator==(const ExpPoly& a, const ExpPoly& b) = default;

 private:
  std::map<Key, Rational> terms_;
};

/// Substitutes exp-polynomials for the variables of p.
inline ExpPoly compose(const Poly& p, const std::vector<ExpPoly>& args) {
  ExpPoly out;
  for (const auto& [m, c] : p.terms()) {
    ExpPoly t = ExpPoly::constant(c);
    for (int i = 0; i < p.nvars(); ++i)
      for (int e = 0; e < m.e[i]; ++e) t = t * args[i];
    out += t;
  }
  return out;
}

}  // namespace centra
