#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "centra/matrix.hpp"
#include "centra/poly.hpp"

namespace centra {

/// Polynomial vector field on Q^n, one component polynomial per coordinate.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(int nvars)
      : nvars_(nvars), comp_(nvars, Poly(nvars)) {}
  explicit VectorField(std::vector<Poly> components)
      : nvars_(static_cast<int>(components.size())), comp_(std::move(components)) {
    for (const auto& p : comp_)
      if (p.nvars() != nvars_)
        throw std::invalid_argument("VectorField: component nvars mismatch");
  }

  /// The field x^r e_l (single monomial in one component).
  static VectorField monomial_field(int nvars, const Monomial& r, int l,
                                    const Rational& c = 1) {
    VectorField f(nvars);
    f.comp_[l].add_term(r, c);
    return f;
  }

  /// The linear field x -> b x.
  static VectorField linear(const QMatrix& b) {
    const int n = b.rows();
    if (b.cols() != n)
      throw std::invalid_argument("VectorField::linear: matrix not square");
    VectorField f(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (b.at(i, j) != 0) {
          std::vector<int> e(n, 0);
          e[j] = 1;
          f.comp_[i].add_term(Monomial(std::move(e)), b.at(i, j));
        }
    return f;
  }

  /// The Euler field (x1, ..., xn).
  static VectorField identity_field(int nvars) {
    return linear(QMatrix::identity(nvars));
  }

  int nvars() const { return nvars_; }
  const Poly& component(int i) const { return comp_[i]; }
  Poly& component(int i) { return comp_[i]; }
  const std::vector<Poly>& components() const { return comp_; }

  bool is_zero() const {
    for (const auto& p : comp_)
      if (!p.is_zero()) return false;
    return true;
  }

  /// Max component degree; absent for the zero field.
  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& p : comp_)
      if (auto pd = p.degree())
        if (!d || *pd > *d) d = pd;
    return d;
  }

  bool is_homogeneous(int k) const {
    for (const auto& p : comp_)
      if (!p.is_homogeneous(k)) return false;
    return true;
  }

  VectorField truncated(int max_degree) const {
    VectorField f(nvars_);
    for (int i = 0; i < nvars_; ++i) f.comp_[i] = comp_[i].truncated(max_degree);
    return f;
  }

  /// Splits into homogeneous pieces keyed by degree; only nonzero pieces
  /// appear.
  std::map<int, VectorField> homogeneous_components() const {
    std::map<int, VectorField> parts;
    for (int i = 0; i < nvars_; ++i)
      for (const auto& [m, c] : comp_[i].terms()) {
        auto [it, ok] = parts.try_emplace(m.degree(), VectorField(nvars_));
        it->second.comp_[i].add_term(m, c);
      }
    return parts;
  }

  std::vector<std::vector<Poly>> jacobian() const {
    std::vector<std::vector<Poly>> j(nvars_,
                                     std::vector<Poly>(nvars_, Poly(nvars_)));
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < nvars_; ++k) j[i][k] = comp_[i].differentiate(k);
    return j;
  }

  std::vector<Rational> evaluate(const std::vector<Rational>& x) const {
    std::vector<Rational> v(nvars_);
    for (int i = 0; i < nvars_; ++i) v[i] = comp_[i].evaluate(x);
    return v;
  }

  VectorField operator-() const {
    VectorField f(nvars_);
    for (int i = 0; i < nvars_; ++i) f.comp_[i] = -comp_[i];
    return f;
  }
  VectorField& operator+=(const VectorField& o) {
    check_same(o);
    for (int i = 0; i < nvars_; ++i) comp_[i] += o.comp_[i];
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    check_same(o);
    for (int i = 0; i < nvars_; ++i) comp_[i] -= o.comp_[i];
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) {
    return a += b;
  }
  friend VectorField operator-(VectorField a, const VectorField& b) {
    return a -= b;
  }
  friend VectorField operator*(const Rational& c, const VectorField& f) {
    VectorField r(f.nvars_);
    for (int i = 0; i < f.nvars_; ++i) r.comp_[i] = c * f.comp_[i];
    return r;
  }
  friend VectorField operator*(const Poly& phi, const VectorField& f) {
    VectorField r(f.nvars_);
    for (int i = 0; i < f.nvars_; ++i) r.comp_[i] = phi * f.comp_[i];
    return r;
  }

  friend bool operator==(const VectorField& a, const VectorField& b) = default;

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < nvars_; ++i) {
      if (i) s += ", ";
      s += comp_[i].str();
    }
    s += ')';
    return s;
  }

 private:
  void check_same(const VectorField& o) const {
    if (nvars_ != o.nvars_)
      throw std::invalid_argument("VectorField: nvars mismatch");
  }

  int nvars_ = 0;
  std::vector<Poly> comp_;
};

/// Directional derivative Dp(x) q(x): differentiates p along q.
inline VectorField directional(const VectorField& p, const VectorField& q) {
  if (p.nvars() != q.nvars())
    throw std::invalid_argument("directional: nvars mismatch");
  const int n = p.nvars();
  VectorField out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Poly d = p.component(i).differentiate(k);
      if (!d.is_zero() && !q.component(k).is_zero())
        out.component(i) += d * q.component(k);
    }
  return out;
}

/// Lie bracket [f,g] = Dg f - Df g.
inline VectorField lie_bracket(const VectorField& f, const VectorField& g) {
  return directional(g, f) - directional(f, g);
}

}  // namespace centra
