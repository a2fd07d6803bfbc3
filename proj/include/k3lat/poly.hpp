#pragma once

#include "k3lat/mat.hpp"

namespace k3lat {

// Dense univariate polynomial over Q.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rat> coeffs);
  static QPoly constant(const Rat& c);
  static QPoly monomial(const Rat& c, int deg);
  static QPoly parse(const std::string& comma_separated);  // "c0,c1,..."

  int degree() const { return int(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const Rat& coeff(int i) const;
  Rat eval(const Rat& x) const;

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator*(const Rat& s) const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }

  QPoly derivative() const;
  QPoly monic() const;
  static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
  static QPoly gcd(const QPoly& a, const QPoly& b);  // monic

  // substitute t -> t^2
  QPoly at_t_squared() const;

  std::string str() const;

 private:
  std::vector<Rat> c_;  // c_[i] is the t^i coefficient; no trailing zeros
  void trim();
};

// Yun's algorithm: p = prod_i out[i].first ^ out[i].second with squarefree,
// pairwise coprime factors; multiplicities strictly increasing.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p);

}  // namespace k3lat
