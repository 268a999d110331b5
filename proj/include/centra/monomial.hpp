#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace centra {

/// Exponent vector of a monomial x1^e1 * ... * xn^en.
struct Monomial {
  std::vector<int> e;

  Monomial() = default;
  explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}
  static Monomial one(int nvars) { return Monomial(std::vector<int>(nvars, 0)); }

  int nvars() const { return static_cast<int>(e.size()); }
  int degree() const { return std::accumulate(e.begin(), e.end(), 0); }
  bool is_one() const { return degree() == 0; }

  /// True when this divides other exponentwise.
  bool divides(const Monomial& other) const {
    if (e.size() != other.e.size()) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > other.e[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    if (e.size() != other.e.size())
      throw std::invalid_argument("monomial mul: nvars mismatch");
    Monomial r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += other.e[i];
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += 'x';
      s += std::to_string(i + 1);
      if (e[i] > 1) {
        s += '^';
        s += std::to_string(e[i]);
      }
    }
    return s.empty() ? "1" : s;
  }
};

/// Graded lexicographic order with x1 heaviest, arranged so that the leading
/// term of a polynomial (highest degree, then lexicographically largest)
/// compares smallest. Iterating a map keyed by this order prints leading
/// terms first.
struct MonomialBefore {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return a.e > b.e;
  }
};

/// All degree-k monomials in n variables, listed in the MonomialBefore order
/// for that degree: (k,0,..), then exponent of x1 decreasing.
inline std::vector<Monomial> monomials_of_degree(int nvars, int k) {
  std::vector<Monomial> out;
  std::vector<int> cur(nvars, 0);
  auto rec = [&](auto&& self, int var, int rem) -> void {
    if (var == nvars - 1) {
      cur[var] = rem;
      out.push_back(Monomial(cur));
      cur[var] = 0;
      return;
    }
    for (int d = rem; d >= 0; --d) {
      cur[var] = d;
      self(self, var + 1, rem - d);
    }
    cur[var] = 0;
  };
  if (nvars == 0) {
    if (k == 0) out.push_back(Monomial{});
    return out;
  }
  rec(rec, 0, k);
  return out;
}

}  // namespace centra
