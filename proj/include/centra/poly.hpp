#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "centra/matrix.hpp"
#include "centra/monomial.hpp"
#include "centra/rational.hpp"

namespace centra {

/// Polynomial in n variables with rational coefficients. Terms are stored
/// sparsely; zero coefficients are never kept.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Monomial::one(nvars), c);
    return p;
  }
  static Poly variable(int nvars, int index) {
    Poly p(nvars);
    std::vector<int> e(nvars, 0);
    e[index] = 1;
    p.add_term(Monomial(std::move(e)), 1);
    return p;
  }
  static Poly monomial(int nvars, Monomial m, const Rational& c) {
    Poly p(nvars);
    p.add_term(std::move(m), c);
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  const std::map<Monomial, Rational, MonomialBefore>& terms() const {
    return terms_;
  }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    if (m.nvars() != nvars_)
      throw std::invalid_argument("Poly: monomial nvars mismatch");
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Total degree; absent for the zero polynomial.
  std::optional<int> degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.degree();  // leading term has max degree
  }

  /// Zero counts as homogeneous of every degree.
  bool is_homogeneous(int k) const {
    for (const auto& [m, c] : terms_)
      if (m.degree() != k) return false;
    return true;
  }

  Poly homogeneous_part(int k) const {
    Poly p(nvars_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == k) p.add_term(m, c);
    return p;
  }

  /// Drops all terms of degree above max_degree.
  Poly truncated(int max_degree) const {
    Poly p(nvars_);
    for (const auto& [m, c] : terms_)
      if (m.degree() <= max_degree) p.add_term(m, c);
    return p;
  }

  Poly differentiate(int var) const {
    Poly p(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.e[var] == 0) continue;
      Monomial d = m;
      --d.e[var];
      p.add_term(d, c * m.e[var]);
    }
    return p;
  }

  Rational evaluate(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != nvars_)
      throw std::invalid_argument("Poly::evaluate: point dimension mismatch");
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < m.e[i]; ++k) t *= x[i];
      sum += t;
    }
    return sum;
  }

  Poly operator-() const {
    Poly p(nvars_);
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
  }
  Poly& operator+=(const Poly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly p(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
    return p;
  }
  friend Poly operator*(const Rational& c, const Poly& a) {
    Poly p(a.nvars_);
    if (c != 0)
      for (const auto& [m, k] : a.terms_) p.terms_.emplace(m, c * k);
    return p;
  }

  Poly pow(int k) const {
    Poly r = Poly::constant(nvars_, 1);
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  /// Substitutes args[i] for x_{i+1}.
  Poly substitute(const std::vector<Poly>& args) const {
    if (static_cast<int>(args.size()) != nvars_)
      throw std::invalid_argument("Poly::substitute: arity mismatch");
    const int out_vars = args.empty() ? 0 : args[0].nvars();
    Poly result(out_vars);
    for (const auto& [m, c] : terms_) {
      Poly t = Poly::constant(out_vars, c);
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < m.e[i]; ++k) t = t * args[i];
      result += t;
    }
    return result;
  }

  friend bool operator==(const Poly& a, const Poly& b) = default;

  /// Renders like "3/2*x1^2*x3 - x2". Terms appear leading-first; a unit
  /// coefficient is omitted before a variable part.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (s.empty()) {
        if (neg) s += '-';
      } else {
        s += neg ? " - " : " + ";
      }
      const std::string ms = m.str();
      if (ms == "1") {
        s += rational_str(mag);
      } else if (mag == 1) {
        s += ms;
      } else {
        s += rational_str(mag);
        s += '*';
        s += ms;
      }
    }
    return s;
  }

 private:
  void check_same(const Poly& o) const {
    if (nvars_ != o.nvars_)
      throw std::invalid_argument("Poly: nvars mismatch");
  }

  int nvars_ = 0;
  std::map<Monomial, Rational, MonomialBefore> terms_;
};

/// Derivative of phi along the linear field x -> b x.
inline Poly lie_derivative(const QMatrix& b, const Poly& phi) {
  const int n = phi.nvars();
  if (b.rows() != n || b.cols() != n)
    throw std::invalid_argument("lie_derivative: matrix size mismatch");
  Poly out(n);
  for (int i = 0; i < n; ++i) {
    const Poly dphi = phi.differentiate(i);
    if (dphi.is_zero()) continue;
    Poly bx_i(n);
    for (int j = 0; j < n; ++j)
      if (b.at(i, j) != 0)
        bx_i.add_term(Monomial([&] {
                        std::vector<int> e(n, 0);
                        e[j] = 1;
                        return e;
                      }()),
                      b.at(i, j));
    out += bx_i * dphi;
  }
  return out;
}

}  // namespace centra
