#include "tame3/tame.hpp"

#include <algorithm>
#include <numeric>

#include "tame3/error.hpp"

namespace tame3 {

namespace {

Triple identity_triple() { return {Polynomial::var(0), Polynomial::var(1), Polynomial::var(2)}; }

Q det3(const std::array<std::array<Q, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Exact inverse of a small square matrix, empty when singular.
std::optional<std::vector<std::vector<Q>>> invert_small(std::vector<std::vector<Q>> a) {
  size_t n = a.size();
  std::vector<std::vector<Q>> inv(n, std::vector<Q>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Q piv = a[c][c];
    for (size_t k = 0; k < n; ++k) {
      a[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Q f = a[r][c];
      for (size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

}  // namespace

Q jacobian_determinant(const Triple& f) {
  std::array<std::array<Polynomial, 3>, 3> j;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) j[i][k] = f[i].derivative(k);
  Polynomial d = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
                 j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
                 j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
  if (!d.is_constant()) throw Error(Errc::NotInvertible, "Jacobian determinant is not constant");
  return d.constant_term();
}

std::optional<Triple> structural_inverse(const Triple& f) {
  std::array<bool, 3> solved{false, false, false}, used{false, false, false};
  Triple sol{Polynomial(), Polynomial(), Polynomial()};
  auto y = identity_triple();

  // f_i restricted to unsolved variables must be linear with constant coefficients
  auto split = [&](int i, std::array<Q, 3>& lin, Polynomial& rest) -> bool {
    lin = {0, 0, 0};
    rest = Polynomial();
    for (auto& [m, c] : f[i].terms()) {
      unsigned unsolved_deg = 0;
      int which = -1;
      for (int k = 0; k < 3; ++k)
        if (!solved[k] && m[k]) {
          unsolved_deg += m[k];
          which = k;
        }
      if (unsolved_deg == 0) {
        rest += Polynomial::monomial(m, c);
      } else if (unsolved_deg == 1 && total_degree(m) == 1) {
        lin[which] = c;
      } else {
        return false;
      }
    }
    return true;
  };

  int remaining = 3;
  while (remaining > 0) {
    bool progressed = false;
    for (int size = 1; size <= remaining && !progressed; ++size) {
      std::vector<int> comps, vars;
      for (int i = 0; i < 3; ++i)
        if (!used[i]) comps.push_back(i);
      for (int k = 0; k < 3; ++k)
        if (!solved[k]) vars.push_back(k);
      // choose `size` components and `size` variables
      std::vector<int> cs(comps.size(), 0), vs(vars.size(), 0);
      std::fill(cs.begin(), cs.begin() + size, 1);
      std::fill(vs.begin(), vs.begin() + size, 1);
      std::sort(cs.begin(), cs.end());
      do {
        std::vector<int> csel;
        for (size_t a = 0; a < cs.size(); ++a)
          if (cs[a]) csel.push_back(comps[a]);
        std::vector<std::array<Q, 3>> lins(size);
        std::vector<Polynomial> rests(size);
        bool ok = true;
        for (int a = 0; a < size && ok; ++a) ok = split(csel[a], lins[a], rests[a]);
        if (!ok) continue;
        std::sort(vs.begin(), vs.end());
        do {
          std::vector<int> vsel;
          for (size_t b = 0; b < vs.size(); ++b)
            if (vs[b]) vsel.push_back(vars[b]);
          bool confined = true;
          for (int a = 0; a < size && confined; ++a)
            for (int k : vars)
              if (std::find(vsel.begin(), vsel.end(), k) == vsel.end() && lins[a][k] != 0) confined = false;
          if (!confined) continue;
          std::vector<std::vector<Q>> mat(size, std::vector<Q>(size));
          for (int a = 0; a < size; ++a)
            for (int b = 0; b < size; ++b) mat[a][b] = lins[a][vsel[b]];
          auto inv = invert_small(mat);
          if (!inv) continue;
          // x_V = M^{-1} (y_S - R_S(sol))
          std::vector<Polynomial> rhs(size);
          for (int a = 0; a < size; ++a) rhs[a] = y[csel[a]] - rests[a].compose(sol);
          for (int b = 0; b < size; ++b) {
            Polynomial v;
            for (int a = 0; a < size; ++a) v += rhs[a].scale((*inv)[b][a]);
            sol[vsel[b]] = v;
          }
          for (int a = 0; a < size; ++a) used[csel[a]] = true;
          for (int b = 0; b < size; ++b) solved[vsel[b]] = true;
          remaining -= size;
          progressed = true;
          break;
        } while (std::next_permutation(vs.begin(), vs.end()));
        if (progressed) break;
      } while (std::next_permutation(cs.begin(), cs.end()));
    }
    if (!progressed) return std::nullopt;
  }
  // sanity: f∘sol = id
  for (int i = 0; i < 3; ++i)
    if (!(f[i].compose(sol) == y[i])) return std::nullopt;
  return sol;
}

Automorphism::Automorphism() : f_(identity_triple()), inv_(std::make_shared<const Triple>(identity_triple())) {}

Automorphism::Automorphism(Triple f) : f_(std::move(f)) {
  Q j = jacobian_determinant(f_);
  if (j == 0) throw Error(Errc::NotInvertible, "Jacobian determinant vanishes");
  if (auto inv = structural_inverse(f_)) inv_ = std::make_shared<const Triple>(std::move(*inv));
}

Automorphism Automorphism::parse(std::string_view text) {
  std::string_view s = text;
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  s = trim(s);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw Error(Errc::Syntax, "automorphism must be written \"(f1, f2, f3)\": '" + std::string(text) + "'");
  s = s.substr(1, s.size() - 2);
  Triple f;
  for (int i = 0; i < 3; ++i) {
    size_t comma = s.find(',');
    if ((i < 2) != (comma != std::string_view::npos))
      throw Error(Errc::Syntax, "automorphism needs exactly three components: '" + std::string(text) + "'");
    f[i] = Polynomial::parse(s.substr(0, comma));
    if (i < 2) s = s.substr(comma + 1);
  }
  return Automorphism(std::move(f));
}

Q Automorphism::jacobian() const { return jacobian_determinant(f_); }

bool Automorphism::is_identity() const { return f_ == identity_triple(); }

int Automorphism::degree() const {
  return std::max({f_[0].degree(), f_[1].degree(), f_[2].degree()});
}

Automorphism Automorphism::compose(const Automorphism& g) const {
  Triple h{f_[0].compose(g.f_), f_[1].compose(g.f_), f_[2].compose(g.f_)};
  std::shared_ptr<const Triple> inv;
  if (inv_ && g.inv_) {
    auto& gi = *g.inv_;
    auto& fi = *inv_;
    inv = std::make_shared<const Triple>(Triple{gi[0].compose(fi), gi[1].compose(fi), gi[2].compose(fi)});
  } else if (auto s = structural_inverse(h)) {
    inv = std::make_shared<const Triple>(std::move(*s));
  }
  return Automorphism(std::move(h), std::move(inv));
}

Automorphism Automorphism::inverse() const {
  if (!inv_) throw Error(Errc::NotDirectlyInvertible, "no structural inverse for " + str());
  return Automorphism(*inv_, std::make_shared<const Triple>(f_));
}

std::string Automorphism::str() const {
  return "(" + f_[0].str() + ", " + f_[1].str() + ", " + f_[2].str() + ")";
}

std::optional<Subgroup> parse_subgroup(std::string_view s) {
  if (s == "A") return Subgroup::A;
  if (s == "B") return Subgroup::B;
  if (s == "H") return Subgroup::H;
  if (s == "K") return Subgroup::K;
  if (s == "B&H" || s == "BH" || s == "B∩H") return Subgroup::BH;
  if (s == "K&H" || s == "KH" || s == "K∩H") return Subgroup::KH;
  if (s == "C") return Subgroup::CLetter;
  if (s == "B'" || s == "Bp" || s == "B′") return Subgroup::BpLetter;
  return std::nullopt;
}

const char* subgroup_name(Subgroup g) {
  switch (g) {
    case Subgroup::A: return "A";
    case Subgroup::B: return "B";
    case Subgroup::H: return "H";
    case Subgroup::K: return "K";
    case Subgroup::BH: return "B&H";
    case Subgroup::KH: return "K&H";
    case Subgroup::CLetter: return "C";
    case Subgroup::BpLetter: return "B'";
  }
  return "?";
}

namespace {

// which variables (0-based) occur in p
std::array<bool, 3> support(const Polynomial& p) {
  return {p.depends_on(0), p.depends_on(1), p.depends_on(2)};
}

// p = c*x_i + (terms free of x_i); returns c (0 when x_i appears nonlinearly or not at all)
Q isolated_linear(const Polynomial& p, int i) {
  Q c = 0;
  for (auto& [m, k] : p.terms()) {
    if (!m[i]) continue;
    if (total_degree(m) != 1) return 0;
    c = k;
  }
  return c;
}

bool affine(const Polynomial& p) { return p.degree() <= 1; }

bool in_B(const Automorphism& f) {
  auto& g = f.map();
  Q a = isolated_linear(g[0], 0);
  if (a == 0) return false;
  if (!affine(g[1]) || !affine(g[2]) || g[1].depends_on(0) || g[2].depends_on(0)) return false;
  Q b = g[1].coeff({0, 1, 0}), c = g[1].coeff({0, 0, 1});
  Q b2 = g[2].coeff({0, 1, 0}), c2 = g[2].coeff({0, 0, 1});
  return b * c2 - b2 * c != 0;
}

bool in_H(const Automorphism& f) {
  auto& g = f.map();
  if (isolated_linear(g[0], 0) == 0) return false;
  if (g[1].depends_on(0) || isolated_linear(g[1], 1) == 0) return false;
  auto s = support(g[2]);
  if (s[0] || s[1] || !affine(g[2]) || g[2].coeff({0, 0, 1}) == 0) return false;
  return true;
}

bool in_K(const Automorphism& f) {
  auto& g = f.map();
  for (int i = 0; i < 2; ++i)
    for (auto& [m, c] : g[i].terms())
      if ((m[0] || m[1]) && total_degree(m) != 1) return false;
  auto s = support(g[2]);
  if (s[0] || s[1] || !affine(g[2]) || g[2].coeff({0, 0, 1}) == 0) return false;
  Q a = g[0].coeff({1, 0, 0}), b = g[0].coeff({0, 1, 0});
  Q a2 = g[1].coeff({1, 0, 0}), b2 = g[1].coeff({0, 1, 0});
  return a * b2 - a2 * b != 0;
}

bool in_A(const Automorphism& f) {
  for (auto& p : f.map())
    if (!affine(p)) return false;
  return true;  // Jacobian already validated nonzero
}

}  // namespace

bool member(const Automorphism& f, Subgroup g) {
  switch (g) {
    case Subgroup::A: return in_A(f);
    case Subgroup::B: return in_B(f);
    case Subgroup::H: return in_H(f);
    case Subgroup::K: return in_K(f);
    case Subgroup::BH: return in_B(f) && in_H(f);
    case Subgroup::KH: return in_K(f) && in_H(f);
    case Subgroup::CLetter: return in_K(f) || in_H(f);
    case Subgroup::BpLetter: return in_B(f) || in_H(f);
  }
  return false;
}

bool is_elementary(const Automorphism& f) {
  auto& g = f.map();
  return g[1] == Polynomial::var(1) && g[2] == Polynomial::var(2) && isolated_linear(g[0], 0) == 1 &&
         g[0].coeff({1, 0, 0}) == 1;
}

bool is_linear(const Automorphism& f) {
  for (auto& p : f.map())
    for (auto& [m, c] : p.terms())
      if (total_degree(m) != 1) return false;
  return true;
}

std::array<std::array<Q, 3>, 3> linear_part(const Automorphism& f) {
  std::array<std::array<Q, 3>, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      Monomial e{0, 0, 0};
      e[k] = 1;
      m[i][k] = f[i].coeff(e);
    }
  return m;
}

Automorphism linear_automorphism(const std::array<std::array<Q, 3>, 3>& m, const std::array<Q, 3>& shift) {
  if (det3(m) == 0) throw Error(Errc::NotInvertible, "singular linear map");
  Triple t;
  for (int i = 0; i < 3; ++i) {
    Polynomial p(shift[i]);
    for (int k = 0; k < 3; ++k) p += Polynomial::var(k).scale(m[i][k]);
    t[i] = p;
  }
  return Automorphism(std::move(t));
}

Automorphism TameWord::realize() const {
  Automorphism r;
  for (auto& l : letters) r = r.compose(l.map);
  return r;
}

TameWord TameWord::from(const std::vector<Automorphism>& maps) {
  TameWord w;
  for (auto& m : maps) w.letters.push_back({m, ""});
  return w;
}

TameWord invert_word(const TameWord& w) {
  TameWord r;
  for (size_t i = w.letters.size(); i-- > 0;) {
    auto& l = w.letters[i];
    if (!l.map.has_inverse()) {
      Error e(Errc::NotDirectlyInvertible, "letter " + std::to_string(i) + " is not directly invertible");
      e.index = static_cast<int>(i);
      throw e;
    }
    r.letters.push_back({l.map.inverse(), l.hint});
  }
  return r;
}

}  // namespace tame3
