#include "toporna/bipoly.hpp"

#include <algorithm>
#include <sstream>

namespace toporna {

BiPoly BiPoly::from_x(const Polynomial& p) {
  if (!p.has_integer_coefficients()) throw SeriesError("BiPoly: coefficients must be integers");
  BiPoly out;
  if (p.is_zero()) return out;
  out.c_.emplace_back();
  for (const auto& q : p.coeffs()) out.c_[0].push_back(q.get_num());
  out.normalize();
  return out;
}

BiPoly BiPoly::monomial(const Integer& c, std::size_t xpow, std::size_t ypow) {
  BiPoly out;
  out.c_.assign(ypow + 1, {});
  out.c_[ypow].assign(xpow + 1, 0);
  out.c_[ypow][xpow] = c;
  out.normalize();
  return out;
}

void BiPoly::normalize() {
  for (auto& row : c_) {
    while (!row.empty() && sgn(row.back()) == 0) row.pop_back();
  }
  while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

int BiPoly::x_degree() const {
  int d = -1;
  for (const auto& row : c_) d = std::max(d, static_cast<int>(row.size()) - 1);
  return d;
}

Integer BiPoly::coeff(std::size_t xpow, std::size_t ypow) const {
  if (ypow >= c_.size() || xpow >= c_[ypow].size()) return 0;
  return c_[ypow][xpow];
}

Polynomial BiPoly::y_slice(std::size_t b) const {
  if (b >= c_.size()) return {};
  std::vector<Rational> v;
  for (const auto& z : c_[b]) v.emplace_back(z);
  return Polynomial(std::move(v));
}

Polynomial BiPoly::at_y_one() const {
  Polynomial out;
  for (std::size_t b = 0; b < c_.size(); ++b) out += y_slice(b);
  return out;
}

BiPoly BiPoly::y_derivative() const {
  BiPoly out;
  for (std::size_t b = 1; b < c_.size(); ++b) {
    out.c_.push_back(c_[b]);
    for (auto& z : out.c_.back()) z *= static_cast<unsigned long>(b);
  }
  out.normalize();
  return out;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t b = 0; b < o.c_.size(); ++b) {
    auto& row = c_[b];
    if (o.c_[b].size() > row.size()) row.resize(o.c_[b].size());
    for (std::size_t a = 0; a < o.c_[b].size(); ++a) row[a] += o.c_[b][a];
  }
  normalize();
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  BiPoly neg = o;
  neg *= Integer(-1);
  return *this += neg;
}

BiPoly& BiPoly::operator*=(const Integer& s) {
  for (auto& row : c_)
    for (auto& z : row) z *= s;
  normalize();
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  BiPoly out;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, {});
  for (std::size_t ya = 0; ya < a.c_.size(); ++ya) {
    for (std::size_t yb = 0; yb < b.c_.size(); ++yb) {
      const auto& ra = a.c_[ya];
      const auto& rb = b.c_[yb];
      if (ra.empty() || rb.empty()) continue;
      auto& dst = out.c_[ya + yb];
      if (dst.size() < ra.size() + rb.size() - 1) dst.resize(ra.size() + rb.size() - 1);
      for (std::size_t i = 0; i < ra.size(); ++i) {
        if (sgn(ra[i]) == 0) continue;
        for (std::size_t j = 0; j < rb.size(); ++j) {
          mpz_addmul(dst[i + j].get_mpz_t(), ra[i].get_mpz_t(), rb[j].get_mpz_t());
        }
      }
    }
  }
  out.normalize();
  return out;
}

std::vector<std::pair<std::pair<std::size_t, std::size_t>, Integer>> BiPoly::terms() const {
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Integer>> out;
  for (std::size_t b = 0; b < c_.size(); ++b)
    for (std::size_t a = 0; a < c_[b].size(); ++a)
      if (sgn(c_[b][a]) != 0) out.push_back({{a, b}, c_[b][a]});
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  return out;
}

std::string BiPoly::to_string() const {
  const auto t = terms();
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [pw, c] : t) {
    const auto [a, b] = pw;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    const Integer m = abs(c);
    std::string mono;
    if (a > 0) mono += a == 1 ? "x" : "x^" + std::to_string(a);
    if (b > 0) mono += (mono.empty() ? "" : "*") + (b == 1 ? std::string("y") : "y^" + std::to_string(b));
    if (mono.empty()) os << m.get_str();
    else if (m == 1) os << mono;
    else os << m.get_str() << "*" << mono;
    first = false;
  }
  return os.str();
}

BiPoly pow(const BiPoly& p, unsigned e) {
  BiPoly out = BiPoly::constant(1);
  for (unsigned i = 0; i < e; ++i) out = out * p;
  return out;
}

}  // namespace toporna
