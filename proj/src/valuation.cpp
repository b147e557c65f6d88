#include "tame3/valuation.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tame3/error.hpp"

namespace tame3 {

Weight::Weight(const Vec3& a) {
  for (auto& x : a)
    if (x <= 0) throw Error(Errc::Syntax, "weight components must be positive");
  Q mn = std::min({a[0], a[1], a[2]});
  for (int i = 0; i < 3; ++i) a_[i] = a[i] / mn;
}

Weight Weight::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw Error(Errc::Syntax, "weight must be written \"[a1,a2,a3]\": '" + std::string(text) + "'");
  s = s.substr(1, s.size() - 2);
  Vec3 a;
  for (int i = 0; i < 3; ++i) {
    size_t comma = s.find(',');
    if ((i < 2) != (comma != std::string::npos))
      throw Error(Errc::Syntax, "weight needs three components: '" + std::string(text) + "'");
    a[i] = parse_rational(s.substr(0, comma));
    if (i < 2) s = s.substr(comma + 1);
  }
  return Weight(a);
}

std::string Weight::str() const {
  return "[" + q_str(a_[0]) + "," + q_str(a_[1]) + "," + q_str(a_[2]) + "]";
}

Q nu(const Vec3& alpha, const Polynomial& p) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "valuation of the zero polynomial");
  bool first = true;
  Q best;
  for (auto& [m, c] : p.terms()) {
    Q v = -(alpha[0] * m[0] + alpha[1] * m[1] + alpha[2] * m[2]);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

Valuation act(const Automorphism& g, const Valuation& v) { return {g.compose(v.label), v.weight}; }

bool agree_on_generators(const Valuation& a, const Valuation& b) {
  static const std::array<Monomial, 6> gens{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}};
  std::optional<Q> ratio;
  for (auto& m : gens) {
    auto p = Polynomial::monomial(m);
    Q va = a(p), vb = b(p);
    // both values are negative for nonconstant monomials
    Q r = va / vb;
    if (ratio && *ratio != r) return false;
    ratio = r;
  }
  return *ratio > 0;
}

namespace {

// permutation automorphism x ↦ (x_{π0}, x_{π1}, x_{π2})
Automorphism permutation(const std::array<int, 3>& pi) {
  return Automorphism(Triple{Polynomial::var(pi[0]), Polynomial::var(pi[1]), Polynomial::var(pi[2])});
}

std::pair<Automorphism, Weight> to_dominant(const Valuation& v) {
  std::array<int, 3> pi{0, 1, 2};
  std::stable_sort(pi.begin(), pi.end(), [&](int i, int j) { return v.weight[i] > v.weight[j]; });
  Vec3 a{v.weight[pi[0]], v.weight[pi[1]], v.weight[pi[2]]};
  // ν_{f,α} = ν_{f∘π⁻¹, α∘π}
  return {v.label.compose(permutation(pi).inverse()), Weight(a)};
}

}  // namespace

bool same_point(const Valuation& a, const Valuation& b) {
  auto [fa, wa] = to_dominant(a);
  auto [fb, wb] = to_dominant(b);
  if (!(wa == wb)) return false;
  return is_fixed(fb.inverse().compose(fa), wa);
}

bool FixedRegion::contains(const Vec3& alpha) const {
  for (auto& r : rows)
    if (r[0] * alpha[0] + r[1] * alpha[1] + r[2] * alpha[2] < 0) return false;
  return true;
}

FixedRegion fixed_region(const Automorphism& f) {
  std::set<std::array<long, 3>> seen;
  FixedRegion fr;
  for (int i = 0; i < 3; ++i)
    for (auto& [m, c] : f[i].terms()) {
      std::array<long, 3> row{-static_cast<long>(m[0]), -static_cast<long>(m[1]), -static_cast<long>(m[2])};
      row[i] += 1;
      if (total_degree(m) == 0) continue;          // α_i ≥ 0
      if (row == std::array<long, 3>{0, 0, 0}) continue;  // α_i ≥ α_i
      if (seen.insert(row).second) fr.rows.push_back(row);
    }
  return fr;
}

bool is_fixed(const Automorphism& f, const Weight& alpha) {
  if (!alpha.dominant()) throw Error(Errc::WeightNotDominant, "weight " + alpha.str() + " is outside the dominant chamber");
  return fixed_region(f).contains(alpha.rep());
}

int stab_case(const Weight& a) {
  if (a[0] == a[1] && a[1] == a[2]) return 1;
  if (a[0] > a[1] && a[1] > a[2]) return 2;
  if (a[1] == a[2]) return 3;
  return 4;
}

namespace {

bool unit_with_tail(const Polynomial& p, int i, const std::vector<int>& allowed_tail) {
  // p = x_i + (polynomial in the allowed variables)
  if (p.coeff([&] { Monomial m{0, 0, 0}; m[i] = 1; return m; }()) != 1) return false;
  for (auto& [m, c] : p.terms()) {
    Monomial lead{0, 0, 0};
    lead[i] = 1;
    if (m == lead) continue;
    for (int k = 0; k < 3; ++k)
      if (m[k] && std::find(allowed_tail.begin(), allowed_tail.end(), k) == allowed_tail.end()) return false;
  }
  return true;
}

bool degree_bound(const Polynomial& tail, const Q& alpha_i, const Vec3& alpha) {
  if (tail.is_zero()) return true;
  return alpha_i >= -nu(alpha, tail);
}

}  // namespace

std::optional<StabFactor> stab_decompose(const Automorphism& f, const Weight& alpha) {
  if (!alpha.dominant()) throw Error(Errc::WeightNotDominant, "weight " + alpha.str() + " is outside the dominant chamber");
  int cs = stab_case(alpha);
  auto lin = linear_part(f);
  std::array<std::array<Q, 3>, 3> l{};
  switch (cs) {
    case 1: l = lin; break;
    case 2:
      for (int i = 0; i < 3; ++i) l[i][i] = lin[i][i];
      break;
    case 3:
      l[0][0] = lin[0][0];
      for (int i = 1; i < 3; ++i)
        for (int k = 1; k < 3; ++k) l[i][k] = lin[i][k];
      break;
    case 4:
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) l[i][k] = lin[i][k];
      l[2][2] = lin[2][2];
      break;
  }
  Automorphism lp;
  try {
    lp = linear_automorphism(l);
  } catch (const Error&) {
    return std::nullopt;
  }
  Automorphism m = f.compose(lp.inverse());
  const Vec3& a = alpha.rep();
  auto tail = [&](int i) { return m[i] - Polynomial::var(i); };
  bool ok = false;
  switch (cs) {
    case 1:
      ok = true;
      for (int i = 0; i < 3; ++i) ok = ok && tail(i).is_constant();
      break;
    case 2:
      ok = unit_with_tail(m[0], 0, {1, 2}) && unit_with_tail(m[1], 1, {2}) && unit_with_tail(m[2], 2, {}) &&
           degree_bound(tail(0), a[0], a) && degree_bound(tail(1), a[1], a);
      break;
    case 3:
      ok = unit_with_tail(m[0], 0, {1, 2}) && tail(1).is_constant() && tail(2).is_constant() &&
           degree_bound(tail(0), a[0], a);
      break;
    case 4:
      ok = unit_with_tail(m[0], 0, {2}) && unit_with_tail(m[1], 1, {2}) && tail(2).is_constant() &&
           degree_bound(tail(0), a[0], a) && degree_bound(tail(1), a[1], a);
      break;
  }
  if (!ok) return std::nullopt;
  return StabFactor{m, lp, cs};
}

}  // namespace tame3
