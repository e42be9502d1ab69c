#pragma once

// Independent reference arithmetic for tests. Nothing here calls into the
// library's algebra: polynomials are plain maps over the variables
// (x_1..x_k, t) with t an ordinary variable, nothing is truncated until
// asked, brackets sum over all ordered pairs (i, j), and linear algebra is
// done by cofactor expansion.

#include <momentkit/line_module.hpp>
#include <momentkit/tpoly.hpp>

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace oracle {

using Q = mpq_class;

// Exponent vector of length k+1; the last slot is t.
struct NPoly {
  std::size_t nvars = 0; // k + 1
  std::map<std::vector<int>, Q> c;

  explicit NPoly(std::size_t k = 0) : nvars(k + 1) {}

  static NPoly constant(std::size_t k, const Q &v)
  {
    NPoly p(k);
    if (v != 0)
      p.c[std::vector<int>(k + 1, 0)] = v;
    return p;
  }
  static NPoly var(std::size_t k, std::size_t i) // i == k means t
  {
    NPoly p(k);
    std::vector<int> e(k + 1, 0);
    e[i] = 1;
    p.c[e] = 1;
    return p;
  }
  std::size_t k() const { return nvars - 1; }

  void add(const std::vector<int> &e, const Q &v)
  {
    Q &slot = c[e];
    slot += v;
    if (slot == 0)
      c.erase(e);
  }
  friend NPoly operator+(NPoly a, const NPoly &b)
  {
    for (auto &[e, v] : b.c)
      a.add(e, v);
    return a;
  }
  friend NPoly operator-(NPoly a, const NPoly &b)
  {
    for (auto &[e, v] : b.c)
      a.add(e, -v);
    return a;
  }
  friend NPoly operator*(const NPoly &a, const NPoly &b)
  {
    NPoly out(a.k());
    for (auto &[ea, va] : a.c)
      for (auto &[eb, vb] : b.c) {
        std::vector<int> e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i)
          e[i] = ea[i] + eb[i];
        out.add(e, va * vb);
      }
    return out;
  }
  friend NPoly operator*(NPoly a, const Q &s)
  {
    NPoly out(a.k());
    for (auto &[e, v] : a.c)
      out.add(e, v * s);
    return out;
  }
  NPoly d(std::size_t i) const
  {
    NPoly out(k());
    for (auto &[e, v] : c)
      if (e[i] != 0) {
        auto f = e;
        --f[i];
        out.add(f, v * e[i]);
      }
    return out;
  }
  // drop t^m for m > order
  NPoly mod_t(unsigned order) const
  {
    NPoly out(k());
    for (auto &[e, v] : c)
      if (e.back() <= static_cast<int>(order))
        out.add(e, v);
    return out;
  }
  bool zero() const { return c.empty(); }
  friend bool operator==(const NPoly &a, const NPoly &b) { return a.c == b.c; }
};

inline NPoly from_tpoly(const momentkit::TPoly &f)
{
  const std::size_t k = f.ring()->arity();
  NPoly out(k);
  for (unsigned m = 0; m <= f.order(); ++m)
    for (const auto &[e, v] : f.coeff(m).terms()) {
      std::vector<int> ee(e.begin(), e.end());
      ee.push_back(static_cast<int>(m));
      out.add(ee, v);
    }
  return out;
}

inline momentkit::TPoly to_tpoly(const NPoly &p, const momentkit::RingPtr &ring, unsigned order)
{
  std::vector<momentkit::Poly> cs(order + 1, momentkit::Poly(ring));
  for (const auto &[e, v] : p.c) {
    if (e.back() > static_cast<int>(order))
      continue;
    momentkit::Exponents x(e.begin(), e.end() - 1);
    cs[e.back()] += momentkit::Poly::monomial(ring, x, v);
  }
  return momentkit::TPoly::from_coefficients(std::move(cs));
}

// Full antisymmetric table; table[i][j] for all i, j.
using Table = std::vector<std::vector<NPoly>>;

// {f,g} = sum_{i,j} B_ij d_i f d_j g, reduced mod t^{order+1}.
inline NPoly bracket(const Table &b, const NPoly &f, const NPoly &g, unsigned order)
{
  const std::size_t k = b.size();
  NPoly out(f.k());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (!b[i][j].zero())
        out = out + b[i][j] * f.d(i) * g.d(j);
  return out.mod_t(order);
}

inline NPoly jacobiator(const Table &b, const NPoly &f, const NPoly &g, const NPoly &h,
                        unsigned order)
{
  return bracket(b, f, bracket(b, g, h, order), order) +
         bracket(b, g, bracket(b, h, f, order), order) +
         bracket(b, h, bracket(b, f, g, order), order);
}

// Derivation with values on x_i and on t: sum_i d_i f v_i + d_t f v_t.
inline NPoly derive(const std::vector<NPoly> &values, const NPoly &tvalue, const NPoly &f,
                    unsigned order)
{
  NPoly out(f.k());
  for (std::size_t i = 0; i < values.size(); ++i)
    out = out + f.d(i) * values[i];
  out = out + f.d(f.k()) * tvalue;
  return out.mod_t(order);
}

// ---------------------------------------------------------------------------
// Tot(L) as a Laurent algebra in one more variable s. Polynomials have slots
// (x_1..x_k, t, s); negative s-exponents are allowed. The bracket is the
// biderivation of the coordinate matrix
//   {x_i,x_j} = B_ij, {x_i,s} = alpha(x_i) s, {t,s} = s, {x_i,t} = 0.

inline NPoly with_s(const NPoly &p, int s_exp = 0)
{
  NPoly out(p.k() + 1);
  for (const auto &[e, v] : p.c) {
    auto f = e;
    f.push_back(s_exp);
    out.add(f, v);
  }
  return out;
}

inline NPoly tot_from(const momentkit::TotElement &w)
{
  NPoly out(w.ring()->arity() + 1);
  for (const auto &[p, f] : w.terms())
    out = out + with_s(from_tpoly(f), p);
  return out;
}

// Drops t^m for m > order; t sits at slot k, s at slot k+1.
inline NPoly tot_mod_t(const NPoly &p, std::size_t k, unsigned order)
{
  NPoly out(p.k());
  for (const auto &[e, v] : p.c)
    if (e[k] <= static_cast<int>(order))
      out.add(e, v);
  return out;
}

inline NPoly tot_bracket(const Table &b, const std::vector<NPoly> &alpha, const NPoly &f,
                         const NPoly &g)
{
  const std::size_t k = b.size();
  const std::size_t t = k, s = k + 1;
  const NPoly svar = NPoly::var(k + 1, s);
  // coordinate matrix, indices 0..k+1
  std::vector<std::vector<NPoly>> pi(k + 2, std::vector<NPoly>(k + 2, NPoly(k + 1)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      pi[i][j] = with_s(b[i][j]);
    pi[i][s] = with_s(alpha[i]) * svar;
    pi[s][i] = pi[i][s] * Q(-1);
  }
  pi[t][s] = svar;
  pi[s][t] = svar * Q(-1);
  NPoly out(k + 1);
  for (std::size_t a = 0; a < k + 2; ++a)
    for (std::size_t c = 0; c < k + 2; ++c)
      if (!pi[a][c].zero())
        out = out + pi[a][c] * f.d(a) * g.d(c);
  return out;
}

// ---------------------------------------------------------------------------
// Linear algebra by expansion

using QMatrix = std::vector<std::vector<Q>>;

inline Q det(const QMatrix &m)
{
  const std::size_t n = m.size();
  if (n == 0)
    return 1;
  Q sum = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0)
      continue;
    QMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Q> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c)
          row.push_back(m[r][cc]);
      minor.push_back(row);
    }
    Q term = m[0][c] * det(minor);
    sum += (c % 2 == 0) ? term : Q(-term);
  }
  return sum;
}

// Largest r with a nonzero r x r minor.
inline std::size_t rank_by_minors(const QMatrix &m)
{
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t best = 0;
  const std::size_t maxr = std::min(rows, cols);
  for (std::size_t r = 1; r <= maxr; ++r) {
    bool found = false;
    // enumerate row/col subsets by bitmask
    for (unsigned rm = 0; rm < (1u << rows) && !found; ++rm) {
      if (static_cast<std::size_t>(__builtin_popcount(rm)) != r)
        continue;
      for (unsigned cm = 0; cm < (1u << cols) && !found; ++cm) {
        if (static_cast<std::size_t>(__builtin_popcount(cm)) != r)
          continue;
        QMatrix sub;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!(rm >> i & 1u))
            continue;
          std::vector<Q> row;
          for (std::size_t j = 0; j < cols; ++j)
            if (cm >> j & 1u)
              row.push_back(m[i][j]);
          sub.push_back(row);
        }
        if (det(sub) != 0)
          found = true;
      }
    }
    if (found)
      best = r;
    else
      break;
  }
  return best;
}

// Pf(A) = sum_{j>0} (-1)^{j+1} a_{0j} Pf(A with rows/cols 0, j removed)
inline Q pfaffian(const QMatrix &a)
{
  const std::size_t n = a.size();
  if (n == 0)
    return 1;
  if (n % 2)
    return 0;
  Q sum = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (a[0][j] == 0)
      continue;
    QMatrix sub;
    for (std::size_t r = 1; r < n; ++r) {
      if (r == j)
        continue;
      std::vector<Q> row;
      for (std::size_t c = 1; c < n; ++c)
        if (c != j)
          row.push_back(a[r][c]);
      sub.push_back(row);
    }
    Q term = a[0][j] * pfaffian(sub);
    sum += (j % 2 == 1) ? term : Q(-term);
  }
  return sum;
}

} // namespace oracle
