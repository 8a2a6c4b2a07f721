#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace nonfree {

namespace detail {

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
inline const std::vector<long long> &cyclotomic_polynomial(std::uint32_t n) {
  static std::map<std::uint32_t, std::vector<long long>> cache;
  static std::recursive_mutex guard;
  std::lock_guard lock(guard);
  auto it = cache.find(n);
  if (it != cache.end())
    return it->second;
  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<long long> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d)
      continue;
    const auto &divisor = cyclotomic_polynomial(d);
    std::vector<long long> quotient(poly.size() - divisor.size() + 1, 0);
    for (std::size_t k = quotient.size(); k-- > 0;) {
      long long c = poly[k + divisor.size() - 1]; // divisor is monic
      quotient[k] = c;
      for (std::size_t j = 0; j < divisor.size(); ++j)
        poly[k + j] -= c * divisor[j];
    }
    poly = std::move(quotient);
  }
  return cache.emplace(n, std::move(poly)).first->second;
}

} // namespace detail

/// An element of the cyclotomic field Q(zeta_n), zeta_n = exp(2 pi i / n),
/// stored in the power basis reduced modulo the n-th cyclotomic polynomial,
/// so equal numbers have equal coefficient vectors.
class Cyclotomic {
public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(std::uint32_t n, const Rational &value = 0)
      : n_(n), coeffs_(detail::cyclotomic_polynomial(n).size() - 1, Rational(0)) {
    coeffs_[0] = value;
  }

  /// zeta_n^k.
  static Cyclotomic zeta_power(std::uint32_t n, std::uint64_t k) {
    std::vector<Rational> c(n, Rational(0));
    c[k % n] = 1;
    return from_powers(n, c);
  }

  /// sum_k c[k] zeta_n^k for any number of coefficients.
  static Cyclotomic from_powers(std::uint32_t n, std::vector<Rational> c) {
    const auto &phi = detail::cyclotomic_polynomial(n);
    const auto deg = phi.size() - 1;
    for (std::size_t k = c.size(); k-- > deg;) {
      if (c[k] == 0)
        continue;
      Rational f = c[k];
      for (std::size_t j = 0; j < phi.size(); ++j)
        c[k - deg + j] -= f * static_cast<long>(phi[j]);
    }
    c.resize(deg, Rational(0));
    Cyclotomic out(n);
    out.coeffs_ = std::move(c);
    return out;
  }

  std::uint32_t conductor() const { return n_; }
  const std::vector<Rational> &coefficients() const { return coeffs_; }

  bool is_rational() const {
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      if (coeffs_[k] != 0)
        return false;
    return true;
  }

  Rational rational_value() const {
    if (!is_rational())
      throw std::domain_error("cyclotomic number is not rational");
    return coeffs_[0];
  }

  Cyclotomic conj() const {
    std::vector<Rational> c(n_, Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      c[(n_ - k) % n_] += coeffs_[k];
    return from_powers(n_, std::move(c));
  }

  friend Cyclotomic operator+(const Cyclotomic &a, const Cyclotomic &b) {
    a.check(b);
    Cyclotomic out = a;
    for (std::size_t k = 0; k < out.coeffs_.size(); ++k)
      out.coeffs_[k] += b.coeffs_[k];
    return out;
  }

  friend Cyclotomic operator-(const Cyclotomic &a, const Cyclotomic &b) {
    a.check(b);
    Cyclotomic out = a;
    for (std::size_t k = 0; k < out.coeffs_.size(); ++k)
      out.coeffs_[k] -= b.coeffs_[k];
    return out;
  }

  friend Cyclotomic operator*(const Cyclotomic &a, const Cyclotomic &b) {
    a.check(b);
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0)
        continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return from_powers(a.n_, std::move(c));
  }

  friend Cyclotomic operator*(const Rational &r, const Cyclotomic &a) {
    Cyclotomic out = a;
    for (auto &c : out.coeffs_)
      c *= r;
    return out;
  }

  Cyclotomic &operator+=(const Cyclotomic &b) { return *this = *this + b; }

  friend bool operator==(const Cyclotomic &a, const Cyclotomic &b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

  /// "p/q" for rationals, otherwise a sum of terms c*z^k with z = E(n).
  std::string to_string() const {
    if (is_rational())
      return nonfree::to_string(coeffs_[0]);
    std::string s;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0)
        continue;
      std::string term = nonfree::to_string(coeffs_[k]);
      if (k > 0)
        term += "*E(" + std::to_string(n_) + ")^" + std::to_string(k);
      if (!s.empty() && term[0] != '-')
        s += "+";
      s += term;
    }
    return s;
  }

  friend std::ostream &operator<<(std::ostream &os, const Cyclotomic &a) { return os << a.to_string(); }

private:
  void check(const Cyclotomic &b) const {
    if (n_ != b.n_)
      throw std::invalid_argument("cyclotomic numbers from different fields");
  }

  std::uint32_t n_;
  std::vector<Rational> coeffs_;
};

} // namespace nonfree
