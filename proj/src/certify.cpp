#include "tame3/certify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "tame3/error.hpp"

namespace tame3 {

std::vector<std::vector<Q>> nullspace(std::vector<std::vector<Q>> rows, size_t ncols) {
  // clear denominators row by row, then fraction-free (Bareiss) elimination
  std::vector<std::vector<mpz_class>> a;
  for (auto& row : rows) {
    mpz_class l = 1;
    for (auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> r(ncols);
    for (size_t j = 0; j < ncols; ++j) r[j] = (row[j].get_num() * (l / row[j].get_den()));
    a.push_back(r);
  }
  std::vector<int> pivot_col;
  size_t rank = 0;
  mpz_class prev = 1;
  for (size_t col = 0; col < ncols && rank < a.size(); ++col) {
    size_t p = rank;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (size_t i = rank + 1; i < a.size(); ++i) {
      for (size_t j = col + 1; j < ncols; ++j) {
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    pivot_col.push_back(static_cast<int>(col));
    ++rank;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Q>> basis;
  for (size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Q> x(ncols, Q(0));
    x[free] = 1;
    for (size_t k = rank; k-- > 0;) {
      size_t pc = pivot_col[k];
      Q s = 0;
      for (size_t j = pc + 1; j < ncols; ++j)
        if (a[k][j] != 0) s += Q(a[k][j]) * x[j];
      x[pc] = -s / Q(a[k][pc]);
    }
    basis.push_back(x);
  }
  return basis;
}

namespace {

// homogeneous monomials x2^k x3^(deg-k) with weights (w2, 1), ordered by exponent of x2
std::vector<Monomial> weighted_basis(int deg, int w2) {
  std::vector<Monomial> b;
  if (deg < 0) return b;
  for (int k = 0; k * w2 <= deg; ++k) b.push_back({0, static_cast<unsigned>(k), static_cast<unsigned>(deg - k * w2)});
  return b;
}

std::vector<KernelVector> kernel_of(const std::array<Polynomial, 3>& mult, const std::array<int, 3>& deg, int target,
                                    int w2) {
  std::vector<std::pair<int, Monomial>> cols;
  for (int i = 0; i < 3; ++i)
    for (auto& m : weighted_basis(deg[i], w2)) cols.push_back({i, m});
  auto rowsb = weighted_basis(target, w2);
  std::map<Monomial, size_t> row_of;
  for (size_t i = 0; i < rowsb.size(); ++i) row_of[rowsb[i]] = i;
  std::vector<std::vector<Q>> mat(rowsb.size(), std::vector<Q>(cols.size(), Q(0)));
  for (size_t j = 0; j < cols.size(); ++j) {
    Polynomial img = mult[cols[j].first] * Polynomial::monomial(cols[j].second);
    for (auto& [m, c] : img.terms()) {
      auto it = row_of.find(m);
      if (it == row_of.end()) throw Error(Errc::InconsistentDegrees, "image leaves the target degree");
      mat[it->second][j] = c;
    }
  }
  std::vector<KernelVector> out;
  for (auto& v : nullspace(mat, cols.size())) {
    KernelVector k{Polynomial(0L), Polynomial(0L), Polynomial(0L)};
    for (size_t j = 0; j < cols.size(); ++j)
      if (v[j] != 0) k[cols[j].first] += Polynomial::monomial(cols[j].second, v[j]);
    out.push_back(k);
  }
  return out;
}

std::array<Q, 2> linear_coeffs(const Polynomial& f) {
  for (auto& [m, c] : f.terms())
    if (m[0] || total_degree(m) != 1) throw Error(Errc::DependentForms, "forms must be linear in x2, x3: " + f.str());
  return {f.coeff({0, 1, 0}), f.coeff({0, 0, 1})};
}

template <class Cell, class Fn>
void parallel_cells(const std::vector<Cell>& cells, int jobs, Fn fn) {
  jobs = std::max(1, jobs);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < cells.size(); i = next++) fn(i);
  };
  if (jobs == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<KernelVector> kernel_plain(int d, int r, int t, int u, const std::array<Polynomial, 3>& forms) {
  if (d < 0 || r < 0 || t < 0 || u < 0 || r > d || t > d || u > d)
    throw Error(Errc::InconsistentDegrees, "exponents must lie in [0, d]");
  std::array<std::array<Q, 2>, 3> lc;
  for (int i = 0; i < 3; ++i) {
    lc[i] = linear_coeffs(forms[i]);
    if (lc[i][0] == 0 && lc[i][1] == 0) throw Error(Errc::DependentForms, "zero linear form");
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (lc[i][0] * lc[j][1] - lc[i][1] * lc[j][0] == 0)
        throw Error(Errc::DependentForms, "forms " + forms[i].str() + " and " + forms[j].str() + " are dependent");
  std::array<Polynomial, 3> mult{forms[0].pow(r), forms[1].pow(t), forms[2].pow(u)};
  return kernel_of(mult, {d - r, d - t, d - u}, d, 1);
}

std::vector<KernelVector> kernel_weighted(WeightedVariant v, int p, int m, int r, int t, int u, const Q& c,
                                          const Q& cprime) {
  if (p < 1 || m < 0 || r < 0 || t < 0 || u < 0) throw Error(Errc::InconsistentDegrees, "negative parameter");
  if (c == 0) throw Error(Errc::BadConstants, "c must be nonzero");
  if (v == WeightedVariant::Weighted && (cprime == 0 || cprime == c))
    throw Error(Errc::BadConstants, "c and c' must be distinct and nonzero");
  Polynomial x2 = Polynomial::var(1), x3 = Polynomial::var(2);
  Polynomial x3p = x3.pow(p);
  std::array<Polynomial, 3> mult;
  std::array<int, 3> deg;
  mult[0] = x2.pow(r);
  mult[1] = (x2 + x3p.scale(c)).pow(t);
  deg[0] = m - r * p;
  deg[1] = m - t * p;
  if (v == WeightedVariant::Weighted) {
    mult[2] = (x2 + x3p.scale(cprime)).pow(u);
    deg[2] = m - u * p;
  } else {
    mult[2] = x3.pow(u);
    deg[2] = m - u;
  }
  for (int dd : deg)
    if (dd < 0) throw Error(Errc::InconsistentDegrees, "weighted degree bookkeeping fails: exponent too large for m");
  return kernel_of(mult, deg, m, p);
}

int plain_bound(int d) { return (2 * d + 1) / 3; }

SweepReport sweep_plain(int dmax, const std::vector<std::array<Polynomial, 3>>& form_samples, int jobs) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<SweepCase> cells;
  for (int d = 0; d <= dmax; ++d)
    for (int r = 0; r <= d; ++r)
      for (int t = 0; t <= d; ++t)
        for (int u = 0; u <= d; ++u) {
          int mn = std::min({r, t, u});
          if (mn < plain_bound(d)) continue;
          for (size_t s = 0; s < form_samples.size(); ++s) cells.push_back({d, 0, 0, r, t, u, s, 0});
        }
  parallel_cells(cells, jobs, [&](size_t i) {
    auto& c = cells[i];
    c.kernel_dim = kernel_plain(c.d, c.r, c.t, c.u, form_samples[c.sample]).size();
  });
  SweepReport rep;
  std::vector<bool> witnessed(dmax + 1, false);
  for (auto& c : cells) {
    int mn = std::min({c.r, c.t, c.u});
    if (mn > plain_bound(c.d)) {
      ++rep.instances;
      if (c.kernel_dim) rep.violations.push_back(c);
    } else if (c.kernel_dim && !witnessed[c.d]) {
      witnessed[c.d] = true;
      rep.witnesses.push_back(c);
    }
  }
  rep.wall_time = seconds_since(t0);
  return rep;
}

SweepReport sweep_weighted(WeightedVariant v, int pmax, int mmax, const std::vector<std::array<Q, 2>>& constants,
                           int jobs) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<SweepCase> cells;
  for (int p = 1; p <= pmax; ++p)
    for (int m = 0; m <= mmax; ++m) {
      if (m / p < 2) continue;
      int emax = m / p;
      for (int r = 0; r <= emax; ++r)
        for (int t = 0; t <= emax; ++t) {
          int umax = v == WeightedVariant::Weighted ? emax : m;
          for (int u = 0; u <= umax; ++u) {
            int third = v == WeightedVariant::Weighted ? u * p : u;
            int mn = std::min({r * p, t * p, third});
            // weighted: violation iff min > 3m/4; weighted-plus: iff min ≥ 4m/5
            bool in_range = v == WeightedVariant::Weighted ? 4 * mn > 3 * m : 5 * mn >= 4 * m;
            if (!in_range) continue;
            for (size_t s = 0; s < constants.size(); ++s) cells.push_back({0, p, m, r, t, u, s, 0});
          }
        }
    }
  parallel_cells(cells, jobs, [&](size_t i) {
    auto& c = cells[i];
    c.kernel_dim =
        kernel_weighted(v, c.p, c.m, c.r, c.t, c.u, constants[c.sample][0], constants[c.sample][1]).size();
  });
  SweepReport rep;
  for (auto& c : cells) {
    ++rep.instances;
    if (c.kernel_dim) rep.violations.push_back(c);
  }
  rep.wall_time = seconds_since(t0);
  return rep;
}

std::vector<std::array<Polynomial, 3>> random_form_triples(size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::vector<std::array<Polynomial, 3>> out;
  Polynomial x2 = Polynomial::var(1), x3 = Polynomial::var(2);
  while (out.size() < n) {
    std::array<std::array<int, 2>, 3> c;
    for (auto& f : c) f = {coef(rng), coef(rng)};
    bool ok = true;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) ok = ok && c[i][0] * c[j][1] - c[i][1] * c[j][0] != 0;
    if (!ok) continue;
    std::array<Polynomial, 3> f;
    for (int i = 0; i < 3; ++i) f[i] = x2.scale(Q(c[i][0])) + x3.scale(Q(c[i][1]));
    out.push_back(f);
  }
  return out;
}

SpadeResult spade(int alpha_max) {
  if (alpha_max < 2) throw Error(Errc::InconsistentDegrees, "alpha_max must be at least 2");
  SpadeResult best{Q(-1), 0};
  for (int a = 2; a <= alpha_max; ++a) {
    Q v(plain_bound(a), a);
    v.canonicalize();
    if (v > best.value) best = {v, a};
  }
  return best;
}

bool derivative_identity_check(const Polynomial& q, const Q& c, const Q& cprime, int power) {
  if (q.is_zero() || c == 0 || cprime == 0 || power < 1) return false;
  Polynomial ell = Polynomial::var(1).scale(c) + Polynomial::var(2).scale(cprime);
  Polynomial f = ell.pow(power) * q;
  int want = q.degree() + power - 1;
  Polynomial base = ell.pow(power - 1);
  for (int var : {1, 2}) {
    Polynomial d = f.derivative(var);
    if (d.is_zero()) return false;
    for (auto& [m, k] : d.terms())
      if (static_cast<int>(total_degree(m)) != want) return false;
    // divisibility by ell^(power-1): substitute x2 = -c'/c·x3 repeatedly via derivatives along ell
    // equivalently, d vanishes to order power-1 on the line ell = 0
    Polynomial g = d;
    for (int k = 0; k < power - 1; ++k) {
      Polynomial on_line = g.compose(Triple{Polynomial::var(0), Polynomial::var(2).scale(-cprime / c), Polynomial::var(2)});
      if (!on_line.is_zero()) return false;
      g = g.derivative(1);
    }
  }
  return true;
}

std::vector<std::set<int>> translates(const FiniteAction& a, const std::set<int>& z) {
  std::set<std::set<int>> seen{z};
  std::vector<std::set<int>> queue{z};
  for (size_t i = 0; i < queue.size(); ++i)
    for (auto& g : a.generators) {
      std::set<int> img;
      for (int x : queue[i]) img.insert(g[x]);
      if (seen.insert(img).second) queue.push_back(img);
    }
  return queue;
}

bool is_invariant(const FiniteAction& a, const std::set<int>& s) {
  for (auto& g : a.generators)
    for (int x : s)
      if (!s.count(g[x])) return false;
  return true;
}

namespace {

std::set<int> invariant_rec(const FiniteAction& a, const std::set<int>& z, bool top) {
  auto orbit = translates(a, z);
  for (auto& t : orbit) {
    bool meet = std::any_of(t.begin(), t.end(), [&](int x) { return z.count(x) > 0; });
    if (!meet) {
      std::string w;
      for (int x : t) w += (w.empty() ? "" : ",") + std::to_string(x);
      throw Error(top ? Errc::HypothesisFails : Errc::SurrogateFailed,
                  "translate {" + w + "} misses Z");
    }
  }
  std::set<int> uni;
  for (auto& t : orbit) uni.insert(t.begin(), t.end());
  if (z.size() == 1) return z;
  // largest proper subset lying in more than θ distinct translates, ties lexicographic
  std::vector<int> zs(z.begin(), z.end());
  std::optional<std::set<int>> best;
  size_t n = zs.size();
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::set<int> s;
    for (size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(zs[i]);
    int count = 0;
    for (auto& t : orbit)
      if (std::includes(t.begin(), t.end(), s.begin(), s.end())) ++count;
    if (count <= a.threshold) continue;
    if (!best || s.size() > best->size() || (s.size() == best->size() && s < *best)) best = s;
  }
  if (!best) return uni;
  return invariant_rec(a, *best, false);
}

}  // namespace

std::set<int> invariant_set(const FiniteAction& a) {
  if (a.Z.empty()) throw Error(Errc::HypothesisFails, "Z is empty");
  auto s = invariant_rec(a, a.Z, true);
  if (s.empty() || !is_invariant(a, s)) throw Error(Errc::SurrogateFailed, "recursion ended in a non-invariant set");
  return s;
}

FiniteAction y_model(int k, int threshold) {
  FiniteAction a;
  a.points = 3 + 3 * k;
  a.threshold = threshold;
  // apex index of the i-th triangle on edge e (0: ξη, 1: ξζ, 2: ηζ)
  auto apex = [k](int e, int i) { return 3 + e * k + i; };
  auto edge_of = [](int x, int y) {
    if (x > y) std::swap(x, y);
    return x == 0 ? (y == 1 ? 0 : 1) : 2;
  };
  // permutations of {ξ,η,ζ} carry the apex families along
  auto lift = [&](std::array<int, 3> pi) {
    std::vector<int> g(a.points);
    for (int i = 0; i < 3; ++i) g[i] = pi[i];
    static const int ends[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int e = 0; e < 3; ++e) {
      int e2 = edge_of(pi[ends[e][0]], pi[ends[e][1]]);
      for (int i = 0; i < k; ++i) g[apex(e, i)] = apex(e2, i);
    }
    return g;
  };
  a.generators.push_back(lift({1, 0, 2}));
  a.generators.push_back(lift({1, 2, 0}));
  for (int e = 0; e < 3; ++e)
    if (k >= 2) {
      std::vector<int> swap(a.points), cyc(a.points);
      for (int x = 0; x < a.points; ++x) swap[x] = cyc[x] = x;
      std::swap(swap[apex(e, 0)], swap[apex(e, 1)]);
      for (int i = 0; i < k; ++i) cyc[apex(e, i)] = apex(e, (i + 1) % k);
      a.generators.push_back(swap);
      a.generators.push_back(cyc);
    }
  a.Z = {0, 1, apex(0, 0)};
  return a;
}

}  // namespace tame3
