#pragma once
#include <random>
#include <string>
#include <vector>

#include "tame3/error.hpp"
#include "tame3/poly.hpp"
#include "tame3/tame.hpp"
#include "tame3/valuation.hpp"

namespace testutil {

using tame3::Automorphism;
using tame3::Polynomial;
using tame3::Q;
using tame3::Weight;
using tame3::Vec3;
using tame3::Triple;
using tame3::Monomial;
using tame3::Error;

inline Q small_rational(std::mt19937& rng) {
  Q q(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
  q.canonicalize();
  return q;
}

inline Polynomial random_poly(std::mt19937& rng, int max_deg, int max_terms) {
  Polynomial p;
  int n = 1 + static_cast<int>(rng() % max_terms);
  for (int i = 0; i < n; ++i) {
    tame3::Monomial m{};
    int d = static_cast<int>(rng() % (max_deg + 1));
    for (int k = 0; k < d; ++k) ++m[rng() % 3];
    p += Polynomial::monomial(m, small_rational(rng));
  }
  return p;
}

inline std::array<Q, 3> random_point(std::mt19937& rng) {
  return {small_rational(rng), small_rational(rng), small_rational(rng)};
}

// Polynomial in the given variables only, no constant term when `pure`.
inline Polynomial random_in(std::mt19937& rng, std::vector<int> vars, int max_deg, bool pure = false) {
  Polynomial p;
  int n = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n; ++i) {
    tame3::Monomial m{};
    int d = (pure ? 1 : 0) + static_cast<int>(rng() % (max_deg + (pure ? 0 : 1)));
    for (int k = 0; k < d; ++k) ++m[vars[rng() % vars.size()]];
    Q c = small_rational(rng);
    if (c == 0) c = 1;
    p += Polynomial::monomial(m, c);
  }
  return p;
}

inline Q nonzero(std::mt19937& rng) {
  Q c = small_rational(rng);
  return c == 0 ? Q(1) : c;
}

// Random tame map: a product of elementary maps in all three coordinate
// positions and coordinate permutations.
inline Automorphism random_tame(std::mt19937& rng, int letters, int max_deg) {
  auto X = [](int i) { return Polynomial::var(i); };
  Automorphism f;
  for (int l = 0; l < letters; ++l) {
    int i = static_cast<int>(rng() % 3);
    int j = (i + 1) % 3, k = (i + 2) % 3;
    tame3::Triple t{X(0), X(1), X(2)};
    t[i] = X(i).scale(nonzero(rng)) + random_in(rng, {j, k}, max_deg);
    f = f.compose(Automorphism(t));
    if (rng() % 3 == 0) {
      tame3::Triple s{X(1), X(0), X(2)};
      if (rng() % 2) s = tame3::Triple{X(0), X(2), X(1)};
      f = f.compose(Automorphism(s));
    }
  }
  return f;
}

inline Weight random_dominant(std::mt19937& rng) {
  long c = 1 + rng() % 4;
  long b = c + (rng() % 3 == 0 ? 0 : 1 + rng() % 4);
  long a = b + (rng() % 3 == 0 ? 0 : 1 + rng() % 6);
  if (rng() % 10 == 0) a = b = c;
  return Weight(Vec3{a, b, c});
}

// Mostly products of stabiliser-shaped pieces so that both answers occur often.
inline Automorphism random_near_stab(std::mt19937& rng, const Weight& w) {
  auto X = [](int i) { return Polynomial::var(i); };
  Automorphism f;
  int letters = 1 + rng() % 3;
  for (int l = 0; l < letters; ++l) {
    int kind = rng() % 4;
    if (kind == 0) {
      // diagonal or block linear
      std::array<std::array<Q, 3>, 3> m{};
      for (int i = 0; i < 3; ++i) m[i][i] = nonzero(rng);
      if (rng() % 2) m[0][1] = small_rational(rng);
      if (rng() % 2) m[1][2] = small_rational(rng);
      if (rng() % 4 == 0) m[1][0] = small_rational(rng);
      try {
        f = f.compose(tame3::linear_automorphism(m));
      } catch (const Error&) {
      }
    } else {
      int i = kind - 1;
      Triple t{X(0), X(1), X(2)};
      Polynomial tail;
      for (int k = 0; k < 2; ++k) {
        Monomial m{0, 0, 0};
        for (int j = i + 1; j < 3; ++j) m[j] = rng() % 4;
        if (rng() % 5 == 0) m[(i + 1) % 3] += 1;  // occasionally leave the triangular shape
        if (tame3::total_degree(m) == 0 || m[i]) continue;
        Q wdeg = w[0] * m[0] + w[1] * m[1] + w[2] * m[2];
        if (wdeg <= w[i] || rng() % 3 == 0) tail += Polynomial::monomial(m, nonzero(rng));
      }
      t[i] = X(i) + tail;
      f = f.compose(Automorphism(t));
    }
  }
  return f;
}

}  // namespace testutil
