#pragma once

// Brute-force oracles shared by the unit tests and the acceptance suite.

#include "mflef/hilbert.hpp"
#include "mflef/linalg.hpp"
#include "mflef/polynomial.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace oracle {

using namespace mflef;

// Brute-force dimensions of H(Hom(A, B)) for rank-one factorizations
// (x^a, x^{d-a}) of x^d. Entry (i, j) times x^k gets internal degree
// 2k + g(i) - g(j) with g(even) = 0, g(odd) = d - 2a; every degree piece is
// finite, so ker / im is dense linear algebra on each piece up to `cap`.
inline std::array<std::size_t, 2> piecewise_dims(long d, long a, long b, long cap) {
  auto r = make_ring({"x"});
  auto mono = [&](long e) { return Polynomial(r, Monomial::variable(0, static_cast<unsigned>(e))); };
  // generators: 0 even, 1 odd; delta = {0, x^{d-a}; x^a, 0}
  auto delta = [&](long s, std::size_t i, std::size_t j) {
    if (i == j)
      return Polynomial(r);
    return i == 1 ? mono(s) : mono(d - s);
  };
  auto g = [&](long s, std::size_t i) { return i == 0 ? 0 : d - 2 * s; };
  struct Elem {
    std::size_t i, j;
    long k;
  };
  auto piece = [&](long e, int p) {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        if (static_cast<int>((i + j) % 2) != p)
          continue;
        const long twice = e - g(b, i) + g(a, j);
        if (twice >= 0 && twice % 2 == 0)
          out.push_back({i, j, twice / 2});
      }
    return out;
  };
  auto dmat = [&](long e, int p) {
    const auto src = piece(e, p), dst = piece(e + d, 1 - p);
    ScalarMatrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      // D(phi) = delta_B phi - (-1)^p phi delta_A
      PolyMatrix phi(r, 2, 2);
      phi(src[c].i, src[c].j) = mono(src[c].k);
      PolyMatrix db(r, 2, 2), da(r, 2, 2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          db(i, j) = delta(b, i, j);
          da(i, j) = delta(a, i, j);
        }
      const PolyMatrix out = p ? db * phi + phi * da : db * phi - phi * da;
      for (std::size_t q = 0; q < dst.size(); ++q)
        m(q, c) = out(dst[q].i, dst[q].j).coefficient(Monomial::variable(0, static_cast<unsigned>(dst[q].k)));
    }
    return m;
  };
  std::array<std::size_t, 2> dims{};
  for (long e = -2 * d; e <= cap; ++e)
    for (int p = 0; p < 2; ++p) {
      const auto here = piece(e, p);
      if (here.empty())
        continue;
      const std::size_t ker = here.size() - (piece(e + d, 1 - p).empty() ? 0 : rank(dmat(e, p)));
      const std::size_t im = piece(e - d, 1 - p).empty() ? 0 : rank(dmat(e - d, 1 - p));
      dims[p] += ker - im;
    }
  return dims;
}

// exponent vectors of all monomials of total degree k in n variables
inline void monomials(std::size_t n, long k, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
  if (cur.size() + 1 == n) {
    cur.push_back(static_cast<int>(k));
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long a = 0; a <= k; ++a) {
    cur.push_back(static_cast<int>(a));
    monomials(n, k - a, cur, out);
    cur.pop_back();
  }
}

inline bool divides(const std::vector<int> &a, const std::vector<int> &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i])
      return false;
  return true;
}

// Hilbert function of R / I by counting standard monomials, times (1 - t)^n,
// truncated at degree cap.
inline IntPoly counted_chi(std::size_t n, const std::vector<std::vector<int>> &gens, long cap) {
  std::vector<long> h(cap + 1, 0);
  for (long k = 0; k <= cap; ++k) {
    std::vector<std::vector<int>> all;
    std::vector<int> cur;
    monomials(n, k, cur, all);
    for (const auto &m : all) {
      bool in = false;
      for (const auto &g : gens)
        in = in || divides(g, m);
      if (!in)
        ++h[k];
    }
  }
  for (std::size_t s = 0; s < n; ++s)
    for (long k = cap; k >= 1; --k)
      h[k] -= h[k - 1];
  return h;
}

// Krull dimension of R / I for monomial I: largest set of variables
// containing the support of no generator.
inline std::size_t monomial_krull_dim(std::size_t n, const std::vector<std::vector<int>> &gens) {
  std::size_t best = 0;
  for (unsigned s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (const auto &g : gens) {
      bool inside = true;
      for (std::size_t i = 0; i < n; ++i)
        if (g[i] > 0 && !(s >> i & 1))
          inside = false;
      ok = ok && !inside;
    }
    if (ok)
      best = std::max<std::size_t>(best, __builtin_popcount(s));
  }
  return best;
}

} // namespace oracle
