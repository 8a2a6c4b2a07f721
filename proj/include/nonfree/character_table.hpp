#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "group.hpp"

namespace nonfree {

/// Irreducible characters of a finite group, one row per irreducible and one
/// column per conjugacy class (in the group's class order). Rows are sorted by
/// degree with the trivial character first.
struct CharacterTable {
  std::uint32_t conductor = 1; // the group exponent
  std::vector<std::vector<Cyclotomic>> rows;
  std::vector<std::uint64_t> degrees;
};

namespace detail::modp {

using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((__uint128_t)a * b % p); }

inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  for (; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1)
      r = mulmod(r, a, p);
  return r;
}

inline u64 inv(u64 a, u64 p) { return powmod(a, p - 2, p); }

inline bool is_prime(u64 n) {
  if (n < 2)
    return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

inline u64 primitive_root(u64 p) {
  std::vector<u64> factors;
  u64 m = p - 1;
  for (u64 d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0)
        m /= d;
    }
  if (m > 1)
    factors.push_back(m);
  for (u64 g = 2; g < p; ++g)
    if (std::all_of(factors.begin(), factors.end(),
                    [&](u64 q) { return powmod(g, (p - 1) / q, p) != 1; }))
      return g;
  return 1;
}

/// Basis (as columns in the returned rows) of the null space of an r x c
/// matrix over F_p.
inline std::vector<std::vector<u64>> null_space(std::vector<std::vector<u64>> m, u64 p) {
  const auto rows = m.size();
  const auto cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0)
      ++piv;
    if (piv == rows)
      continue;
    std::swap(m[piv], m[r]);
    u64 s = inv(m[r][c], p);
    for (auto &x : m[r])
      x = mulmod(x, s, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0)
        continue;
      u64 f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k)
        m[i][k] = (m[i][k] + p - mulmod(f, m[r][k], p)) % p;
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<std::vector<u64>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col)
    is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free])
      continue;
    std::vector<u64> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = (p - m[i][free]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace detail::modp

/// Character table by the class-algebra eigenvector method (Dixon) over F_p
/// with p = 1 mod exponent(G) and p > 2 sqrt|G|, lifted to exact cyclotomic
/// values and verified by the orthogonality relations and sum of squared
/// degrees. Throws TableBoundExceeded above `max_order`.
inline CharacterTable character_table(const FiniteGroup &g, std::size_t max_order = 200) {
  namespace mp = detail::modp;
  using u64 = mp::u64;
  if (g.order() > max_order)
    throw TableBoundExceeded("character table limited to groups of order " +
                             std::to_string(max_order));
  const auto &classes = g.classes();
  const auto r = classes.size();
  const u64 order = g.order();
  const auto e = static_cast<std::uint32_t>(g.exponent());

  u64 p = e + 1;
  while (!mp::is_prime(p) || p * p <= 4 * order)
    p += e;
  const u64 zeta_e = mp::powmod(mp::primitive_root(p), (p - 1) / e, p);

  // class multiplication coefficients: c[j][i][k] = #{x in C_i : x^-1 z_k in C_j}
  std::vector<std::vector<std::vector<u64>>> c(r, std::vector<std::vector<u64>>(r, std::vector<u64>(r, 0)));
  for (std::size_t k = 0; k < r; ++k) {
    auto z = classes[k].front();
    for (std::size_t i = 0; i < r; ++i)
      for (auto x : classes[i])
        ++c[g.class_of(g.multiply(g.inverse(x), z))][i][k];
  }

  // split F_p^r into common eigenspaces of M_j, (M_j)_{ik} = c[j][i][k]
  std::vector<std::vector<std::vector<u64>>> spaces; // each: list of basis vectors
  {
    std::vector<std::vector<u64>> all;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<u64> v(r, 0);
      v[i] = 1;
      all.push_back(std::move(v));
    }
    spaces.push_back(std::move(all));
  }
  for (std::size_t j = 1; j < r; ++j) {
    std::vector<std::vector<std::vector<u64>>> next;
    for (auto &space : spaces) {
      if (space.size() == 1) {
        next.push_back(std::move(space));
        continue;
      }
      const auto d = space.size();
      // columns of M_j B
      std::vector<std::vector<u64>> mb(d, std::vector<u64>(r, 0));
      for (std::size_t col = 0; col < d; ++col)
        for (std::size_t i = 0; i < r; ++i) {
          u64 s = 0;
          for (std::size_t k = 0; k < r; ++k)
            s = (s + mp::mulmod(c[j][i][k] % p, space[col][k], p)) % p;
          mb[col][i] = s;
        }
      std::size_t covered = 0;
      for (u64 lambda = 0; lambda < p && covered < d; ++lambda) {
        // (M_j - lambda) B as an r x d matrix
        std::vector<std::vector<u64>> m(r, std::vector<u64>(d, 0));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t col = 0; col < d; ++col)
            m[i][col] = (mb[col][i] + p - mp::mulmod(lambda, space[col][i], p)) % p;
        auto kernel = mp::null_space(std::move(m), p);
        if (kernel.empty())
          continue;
        std::vector<std::vector<u64>> sub;
        for (const auto &coef : kernel) {
          std::vector<u64> v(r, 0);
          for (std::size_t col = 0; col < d; ++col)
            for (std::size_t i = 0; i < r; ++i)
              v[i] = (v[i] + mp::mulmod(coef[col], space[col][i], p)) % p;
          sub.push_back(std::move(v));
        }
        covered += sub.size();
        next.push_back(std::move(sub));
      }
      if (covered != d)
        throw std::logic_error("class matrix is not diagonalizable over F_p");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r)
    throw std::logic_error("class algebra eigenspaces did not split into lines");

  std::vector<u64> class_size(r), inverse_class(r);
  for (std::size_t i = 0; i < r; ++i) {
    class_size[i] = classes[i].size();
    inverse_class[i] = g.class_of(g.inverse(classes[i].front()));
  }

  CharacterTable table;
  table.conductor = e;
  const auto max_degree = static_cast<u64>(std::sqrt(static_cast<double>(order)) + 1);
  for (const auto &space : spaces) {
    auto omega = space.front();
    u64 scale = mp::inv(omega[0], p);
    for (auto &x : omega)
      x = mp::mulmod(x, scale, p);
    u64 sum = 0;
    for (std::size_t i = 0; i < r; ++i)
      sum = (sum + mp::mulmod(mp::mulmod(omega[i], omega[inverse_class[i]], p),
                              mp::inv(class_size[i] % p, p), p)) % p;
    u64 d2 = mp::mulmod(order % p, mp::inv(sum, p), p);
    u64 degree = 0;
    for (u64 d = 1; d <= max_degree; ++d)
      if (d * d % p == d2) {
        degree = d;
        break;
      }
    if (degree == 0)
      throw std::logic_error("no character degree found");
    std::vector<u64> chi(r);
    for (std::size_t i = 0; i < r; ++i)
      chi[i] = mp::mulmod(mp::mulmod(omega[i], degree % p, p), mp::inv(class_size[i] % p, p), p);

    // lift: chi(g) = sum_k m_k eps^k, eps a primitive o(g)-th root of unity
    std::vector<Cyclotomic> row;
    for (std::size_t i = 0; i < r; ++i) {
      auto x = classes[i].front();
      const u64 o = g.element_order(x);
      const u64 zeta_o = mp::powmod(zeta_e, e / o, p);
      std::vector<u64> power_class(o);
      ElementIndex y = FiniteGroup::identity();
      for (u64 l = 0; l < o; ++l, y = g.multiply(y, x))
        power_class[l] = g.class_of(y);
      std::vector<Rational> coeffs(e, Rational(0));
      for (u64 k = 0; k < o; ++k) {
        u64 s = 0;
        for (u64 l = 0; l < o; ++l)
          s = (s + mp::mulmod(chi[power_class[l]], mp::powmod(zeta_o, (o - (k * l) % o) % o, p), p)) % p;
        u64 mult = mp::mulmod(s, mp::inv(o % p, p), p);
        if (mult > degree)
          throw std::logic_error("eigenvalue multiplicity out of range during lifting");
        coeffs[(k * (e / o)) % e] += Rational(static_cast<unsigned long>(mult));
      }
      row.push_back(Cyclotomic::from_powers(e, std::move(coeffs)));
    }
    table.rows.push_back(std::move(row));
    table.degrees.push_back(degree);
  }

  // sort: by degree, trivial first, then by printed values
  std::vector<std::size_t> perm(r);
  for (std::size_t i = 0; i < r; ++i)
    perm[i] = i;
  auto is_trivial = [&](std::size_t a) {
    return std::all_of(table.rows[a].begin(), table.rows[a].end(),
                       [&](const Cyclotomic &v) { return v == Cyclotomic(e, 1); });
  };
  auto key = [&](std::size_t a) {
    std::vector<std::string> s;
    for (const auto &v : table.rows[a])
      s.push_back(v.to_string());
    return s;
  };
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (table.degrees[a] != table.degrees[b])
      return table.degrees[a] < table.degrees[b];
    if (is_trivial(a) != is_trivial(b))
      return is_trivial(a);
    return key(a) < key(b);
  });
  CharacterTable sorted;
  sorted.conductor = e;
  for (auto i : perm) {
    sorted.rows.push_back(table.rows[i]);
    sorted.degrees.push_back(table.degrees[i]);
  }

  // verification
  u64 sum_sq = 0;
  for (auto d : sorted.degrees)
    sum_sq += d * d;
  if (sum_sq != order)
    throw std::logic_error("sum of squared degrees differs from the group order");
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) {
      Cyclotomic ip(e);
      for (std::size_t i = 0; i < r; ++i)
        ip += Rational(static_cast<unsigned long>(class_size[i])) *
              (sorted.rows[a][i] * sorted.rows[b][i].conj());
      if (ip != Cyclotomic(e, Rational(a == b ? static_cast<long>(order) : 0)))
        throw std::logic_error("character table fails row orthogonality");
    }
  return sorted;
}

} // namespace nonfree
