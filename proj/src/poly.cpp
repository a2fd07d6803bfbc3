#include "k3lat/poly.hpp"

#include <sstream>

namespace k3lat {

QPoly::QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void QPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

QPoly QPoly::constant(const Rat& c) { return QPoly({c}); }

QPoly QPoly::monomial(const Rat& c, int deg) {
  std::vector<Rat> v(deg + 1, Rat(0));
  v[deg] = c;
  return QPoly(std::move(v));
}

QPoly QPoly::parse(const std::string& s) {
  std::vector<Rat> coeffs;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      coeffs.push_back(parse_rat(cur));
      cur.clear();
    }
  };
  for (char ch : s) {
    if (ch == ',') {
      flush();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  flush();
  return QPoly(std::move(coeffs));
}

const Rat& QPoly::coeff(int i) const {
  static const Rat zero(0);
  if (i < 0 || i >= int(c_.size())) return zero;
  return c_[i];
}

Rat QPoly::eval(const Rat& x) const {
  Rat r(0);
  for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
  return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return QPoly(std::move(v));
}

QPoly QPoly::operator-(const QPoly& o) const {
  std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
  return QPoly(std::move(v));
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return QPoly(std::move(v));
}

QPoly QPoly::operator*(const Rat& s) const {
  std::vector<Rat> v = c_;
  for (auto& x : v) x *= s;
  return QPoly(std::move(v));
}

QPoly QPoly::derivative() const {
  if (degree() < 1) return QPoly();
  std::vector<Rat> v(degree(), Rat(0));
  for (int i = 1; i <= degree(); ++i) v[i - 1] = c_[i] * Rat(i);
  return QPoly(std::move(v));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (1 / c_.back());
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  QPoly r = a;
  std::vector<Rat> q(std::max(0, a.degree() - b.degree() + 1), Rat(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Rat f = r.c_.back() / b.c_.back();
    int shift = r.degree() - b.degree();
    q[shift] = f;
    r = r - QPoly::monomial(f, shift) * b;
  }
  return {QPoly(std::move(q)), r};
}

QPoly QPoly::gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

QPoly QPoly::at_t_squared() const {
  if (is_zero()) return QPoly();
  std::vector<Rat> v(2 * degree() + 1, Rat(0));
  for (int i = 0; i <= degree(); ++i) v[2 * i] = c_[i];
  return QPoly(std::move(v));
}

std::string QPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (sgn(c_[i]) == 0) continue;
    Rat a = c_[i];
    if (!first) {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    os << rat_str(a);
    if (i > 0) os << "*t^" << i;
  }
  return os.str();
}

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  if (p.degree() < 1) return out;
  QPoly a = p.monic();
  QPoly g = QPoly::gcd(a, a.derivative());
  QPoly w = QPoly::divmod(a, g).first;  // product of the squarefree parts
  int i = 1;
  while (w.degree() > 0) {
    QPoly y = QPoly::gcd(w, g);
    QPoly factor = QPoly::divmod(w, y).first;
    if (factor.degree() > 0) out.push_back({factor, i});
    w = y;
    g = QPoly::divmod(g, y).first;
    ++i;
  }
  return out;
}

}  // namespace k3lat
