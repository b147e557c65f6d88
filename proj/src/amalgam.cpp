#include "tame3/amalgam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tame3/error.hpp"

namespace tame3 {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

Subgroup left_factor(AmalgamGroup g) { return g == AmalgamGroup::C ? Subgroup::K : Subgroup::B; }

bool same_factor(FactorTag a, FactorTag b) { return a == b && a != FactorTag::Common; }

std::array<unsigned, 2> dominant_monomial(const Polynomial& p1) {
  std::array<unsigned, 2> best{0, 0};
  bool any = false;
  for (auto& [m, c] : p1.terms()) {
    if (m[0] || total_degree(m) == 0) continue;
    std::array<unsigned, 2> cand{m[1], m[2]};
    if (!any || cand > best) best = cand;
    any = true;
  }
  return best;
}

// P1 of an H element: f1 − a·x1
Polynomial h_tail(const Automorphism& h) {
  Polynomial p = h[0];
  return p - Polynomial::monomial({1, 0, 0}, p.coeff({1, 0, 0}));
}

Polynomial h_p2(const Automorphism& h) {
  Polynomial p = h[1];
  return p - Polynomial::monomial({0, 1, 0}, p.coeff({0, 1, 0}));
}

}  // namespace

AmalgamGroup parse_group(std::string_view s) {
  if (s == "C") return AmalgamGroup::C;
  if (s == "B'" || s == "Bp" || s == "B′") return AmalgamGroup::Bp;
  throw Error(Errc::Syntax, "group must be C or B'");
}

const char* group_name(AmalgamGroup g) { return g == AmalgamGroup::C ? "C" : "B'"; }

std::optional<FactorTag> factor_of(AmalgamGroup g, const Automorphism& f) {
  bool l = member(f, left_factor(g));
  bool r = member(f, Subgroup::H);
  if (l && r) return FactorTag::Common;
  if (l) return FactorTag::Left;
  if (r) return FactorTag::Right;
  return std::nullopt;
}

std::string NormalForm::tag_name(size_t i) const {
  const char* left = group == AmalgamGroup::C ? "K" : "B";
  switch (letters[i].tag) {
    case FactorTag::Left: return left;
    case FactorTag::Right: return "H";
    case FactorTag::Common: return std::string(left) + "&H";
  }
  return "?";
}

NormalForm normal_form(AmalgamGroup g, const TameWord& w) {
  NormalForm nf;
  nf.group = g;
  for (size_t i = 0; i < w.letters.size(); ++i) {
    const auto& f = w.letters[i].map;
    if (auto t = factor_of(g, f)) {
      nf.letters.push_back({f, *t});
      continue;
    }
    // a letter outside both factors may still split as (affine part) ∘ rest
    bool split = false;
    try {
      auto lin = linear_part(f);
      std::array<Q, 3> shift{f[0].constant_term(), f[1].constant_term(), f[2].constant_term()};
      Automorphism L = linear_automorphism(lin, shift);
      Automorphism rest = L.inverse().compose(f);
      auto tl = factor_of(g, L), tr = factor_of(g, rest);
      if (tl && tr) {
        nf.letters.push_back({L, *tl});
        nf.letters.push_back({rest, *tr});
        split = true;
      }
    } catch (const Error&) {
    }
    if (!split) {
      Error e(Errc::LetterNotInFactors, "letter " + std::to_string(i) + " " + f.str() + " is not in a factor of " +
                                            group_name(g));
      e.index = static_cast<int>(i);
      throw e;
    }
  }
  auto merge = [&](size_t i) {  // letters i, i+1 → their composition
    Automorphism c = nf.letters[i].map.compose(nf.letters[i + 1].map);
    nf.letters.erase(nf.letters.begin() + static_cast<long>(i) + 1);
    nf.letters[i] = {c, *factor_of(g, c)};
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < nf.letters.size(); ++i)
      if (nf.letters[i].map.is_identity() && nf.letters.size() > 1) {
        nf.letters.erase(nf.letters.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    if (changed) continue;
    for (size_t i = 0; i + 1 < nf.letters.size(); ++i)
      if (same_factor(nf.letters[i].tag, nf.letters[i + 1].tag) || nf.letters[i].tag == FactorTag::Common ||
          nf.letters[i + 1].tag == FactorTag::Common) {
        merge(i);
        changed = true;
        break;
      }
  }
  nf.realized = w.realize();
  if (nf.letters.empty()) nf.letters.push_back({Automorphism(), FactorTag::Common});
  return nf;
}

CyclicReduction cyclic_reduce(const NormalForm& nf) {
  CyclicReduction r{nf, {}};
  Automorphism conj;
  while (r.reduced.letters.size() >= 2 &&
         same_factor(r.reduced.letters.front().tag, r.reduced.letters.back().tag)) {
    Automorphism w = r.reduced.letters.front().map;
    std::vector<Automorphism> rotated;
    for (size_t i = 1; i < r.reduced.letters.size(); ++i) rotated.push_back(r.reduced.letters[i].map);
    rotated.push_back(w);
    r.conjugator.letters.push_back({w, ""});
    conj = conj.compose(w);
    r.reduced = normal_form(nf.group, TameWord::from(rotated));
  }
  if (!(conj.inverse().compose(nf.realized).compose(conj) == r.reduced.realized))
    throw Error(Errc::NotCyclicallyReduced, "conjugation identity failed during cyclic reduction");
  return r;
}

std::string StripItem::str() const {
  switch (kind) {
    case Kind::PrincipalRay: return std::to_string(a) + "-principal ray";
    case Kind::AntiprincipalRay: return std::to_string(a) + "-antiprincipal ray";
    case Kind::CurveOnLine: return "line (" + std::to_string(m2) + "," + std::to_string(m3) + ")";
  }
  return "?";
}

InvariantStrip strip_data(AmalgamGroup g, const TameWord& w) {
  auto nf = normal_form(g, w);
  if (nf.letters.size() < 2 || same_factor(nf.letters.front().tag, nf.letters.back().tag))
    throw Error(Errc::NotCyclicallyReduced, "strip data needs a cyclically reduced form of length at least 2");
  InvariantStrip s;
  s.group = g;
  for (auto& l : nf.letters) {
    StripItem it{};
    if (l.tag == FactorTag::Left) {
      it.kind = g == AmalgamGroup::C ? StripItem::Kind::PrincipalRay : StripItem::Kind::AntiprincipalRay;
      it.a = 1;
      it.offset = 0;
    } else if (g == AmalgamGroup::C) {
      it.kind = StripItem::Kind::CurveOnLine;
      auto p1 = h_tail(l.map);
      auto d = dominant_monomial(p1);
      it.m2 = d[0];
      it.m3 = d[1];
      for (auto& [m, c] : p1.terms())
        if (!m[0] && total_degree(m) > 0) it.bounding.push_back({m[1], m[2]});
      it.offset = std::log(static_cast<double>(std::max(1u, it.m2))) / kSqrt2;
      for (auto& b : it.bounding)
        if (b != d && b[0] == d[0] && d[0] > 0) s.second_constraint_binds = true;
    } else {
      it.kind = StripItem::Kind::AntiprincipalRay;
      it.a = static_cast<unsigned>(std::max(1, h_p2(l.map).degree()));
      it.offset = std::log(static_cast<double>(it.a)) / kSqrt2;
    }
    s.boundary.push_back(it);
  }
  size_t n = s.boundary.size();
  for (size_t i = 0; i < n; ++i) s.gaps.push_back(std::fabs(s.boundary[i].offset - s.boundary[(i + 1) % n].offset));
  return s;
}

const char* isometry_kind_name(IsometryKind k) {
  switch (k) {
    case IsometryKind::Elliptic: return "elliptic";
    case IsometryKind::Parabolic: return "parabolic";
    case IsometryKind::Loxodromic: return "loxodromic-not-rank-1";
  }
  return "?";
}

IsometryClass classify_isometry(AmalgamGroup g, const TameWord& w) {
  IsometryClass c;
  c.reduction = cyclic_reduce(normal_form(g, w));
  const auto& red = c.reduction.reduced;
  if (red.letters.size() <= 1) {
    c.kind = IsometryKind::Elliptic;
    c.length_expr = "0";
    return c;
  }
  std::vector<Automorphism> maps;
  for (auto& l : red.letters) maps.push_back(l.map);
  c.strip = strip_data(g, TameWord::from(maps));
  mpz_class product = 1;
  bool curved = false;
  for (auto& it : c.strip->boundary) {
    if (it.kind == StripItem::Kind::CurveOnLine) {
      product *= it.m2;
      curved = curved || it.m3 > 0;
    } else {
      product *= it.a;
    }
  }
  c.kind = curved ? IsometryKind::Parabolic : IsometryKind::Loxodromic;
  for (double gap : c.strip->gaps) c.length += gap;
  c.length_expr = product == 1 ? "0" : "sqrt(2)*log(" + product.get_str() + ")";
  const char* point = g == AmalgamGroup::C ? "principal" : "antiprincipal";
  c.limit_data.push_back(std::string("fixes the ") + point + " point of the chamber of id");
  if (c.kind == IsometryKind::Loxodromic)
    c.limit_data.push_back(std::string("axis bounds a half-plane asymptotic to the ") + point + " rays");
  return c;
}

std::optional<Weight> fixed_weight(const Automorphism& f) {
  auto rows = fixed_region(f).rows;
  rows.push_back({1, -1, 0});
  rows.push_back({0, 1, -1});
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = i + 1; j < rows.size(); ++j) {
      auto& a = rows[i];
      auto& b = rows[j];
      Vec3 x{Q(a[1] * b[2] - a[2] * b[1]), Q(a[2] * b[0] - a[0] * b[2]), Q(a[0] * b[1] - a[1] * b[0])};
      for (int sign : {1, -1}) {
        Vec3 y{x[0] * sign, x[1] * sign, x[2] * sign};
        if (y[0] <= 0 || y[1] <= 0 || y[2] <= 0) continue;
        Weight w(y);
        if (w.dominant() && is_fixed(f, w)) return w;
      }
    }
  return std::nullopt;
}

namespace {

// chart y of the boundary of {α1 ≥ m2α2 + m3α3} at chart height t
double constraint_y(unsigned m2, unsigned m3, double t) {
  if (m3 == 0) return std::log(static_cast<double>(m2)) / kSqrt2;
  double s = std::sqrt(6.0) * t;  // log(α1/α3) + log(α2/α3)
  if (m2 == 0) return (2 * std::log(static_cast<double>(m3)) - s) / kSqrt2;
  double lo = -60, hi = s + 60;
  for (int it = 0; it < 200; ++it) {
    double mid = (lo + hi) / 2;
    double f = std::log(m2 * std::exp(mid) + m3) + mid - s;
    (f > 0 ? hi : lo) = mid;
  }
  double ly = (lo + hi) / 2;
  return std::log(m2 + m3 * std::exp(-ly)) / kSqrt2;
}

double item_y(const StripItem& it, double t) {
  if (it.kind != StripItem::Kind::CurveOnLine) return it.offset;
  double y = 0;  // the 1-principal ray bounds the chamber side
  for (auto& b : it.bounding) y = std::max(y, constraint_y(b[0], b[1], t));
  return y;
}

}  // namespace

double unfold_length_oracle(const InvariantStrip& s, int periods, double height) {
  if (periods < 1 || s.boundary.size() < 2) throw Error(Errc::DegenerateStrip, "strip needs two boundaries and a period");
  size_t n = s.boundary.size();
  size_t K = n * static_cast<size_t>(periods);  // crossings; point K is the translate of point 0
  constexpr int G = 121;
  constexpr double step = 0.25;
  std::vector<double> grid(G);
  for (int j = 0; j < G; ++j) grid[j] = height + j * step;
  std::vector<std::vector<double>> ys(n, std::vector<double>(G));
  for (size_t i = 0; i < n; ++i)
    for (int j = 0; j < G; ++j) ys[i][j] = item_y(s.boundary[i], grid[j]);

  // dynamic programme over grid heights, both ends pinned to grid[0]
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(G, inf), next(G);
  std::vector<std::vector<int>> back(K + 1, std::vector<int>(G, 0));
  cost[0] = 0;
  for (size_t k = 1; k <= K; ++k) {
    size_t ia = (k - 1) % n, ib = k % n;
    for (int b = 0; b < G; ++b) {
      next[b] = inf;
      if (k == K && b != 0) continue;
      for (int a = 0; a < G; ++a) {
        if (cost[a] == inf) continue;
        double c = cost[a] + std::hypot(ys[ia][a] - ys[ib][b], grid[a] - grid[b]);
        if (c < next[b]) {
          next[b] = c;
          back[k][b] = a;
        }
      }
    }
    cost.swap(next);
  }
  std::vector<double> t(K + 1);
  int idx = 0;
  for (size_t k = K; k > 0; --k) {
    t[k] = grid[idx];
    idx = back[k][idx];
  }
  t[0] = grid[0];

  // local refinement of the interior heights
  auto seg = [&](size_t k, double ta, double tb) {
    const auto& A = s.boundary[k % n];
    const auto& B = s.boundary[(k + 1) % n];
    return std::hypot(item_y(A, ta) - item_y(B, tb), ta - tb);
  };
  for (int sweep = 0; sweep < 30; ++sweep)
    for (size_t k = 1; k < K; ++k) {
      double lo = std::max(height, t[k] - step), hi = t[k] + step;
      auto local = [&](double x) { return seg(k - 1, t[k - 1], x) + seg(k, x, t[k + 1]); };
      const double gr = (std::sqrt(5.0) - 1) / 2;
      double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
      double f1 = local(x1), f2 = local(x2);
      for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - gr * (hi - lo);
          f1 = local(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + gr * (hi - lo);
          f2 = local(x2);
        }
      }
      double x = (lo + hi) / 2;
      if (local(x) < local(t[k])) t[k] = x;
    }
  double total = 0;
  for (size_t k = 0; k < K; ++k) total += seg(k, t[k], t[k + 1]);
  return total / periods;
}

}  // namespace tame3
