#include "tame3/links.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "tame3/error.hpp"

namespace tame3 {

namespace {

constexpr double kPi = std::numbers::pi;

Q apply_row(const Row& r, const Vec3& alpha, const Vec3& u) {
  return r[0] * alpha[0] * u[0] + r[1] * alpha[1] * u[1] + r[2] * alpha[2] * u[2];
}

Q row_at(const Row& r, const Vec3& alpha) { return r[0] * alpha[0] + r[1] * alpha[1] + r[2] * alpha[2]; }

Vec3 rotate(const Vec3& u) {  // (1,1,1) × u, a quarter turn counterclockwise
  return {u[2] - u[1], u[0] - u[2], u[1] - u[0]};
}

std::string point_str(const Vec3& p) { return "[" + q_str(p[0]) + "," + q_str(p[1]) + "," + q_str(p[2]) + "]"; }

std::vector<Row> walls(const Weight& v) {
  std::vector<Row> w;
  if (v[0] == v[1]) w.push_back({1, -1, 0});
  if (v[1] == v[2]) w.push_back({0, 1, -1});
  return w;
}

std::string row_tag(const Row& r) {
  int pos = -1, npos = 0;
  for (int i = 0; i < 3; ++i)
    if (r[i] > 0) {
      pos = i;
      ++npos;
    }
  if (npos == 1 && r[pos] == 1) {
    AdmissibleLine l;
    l.target = pos;
    for (int k = 0; k < 3; ++k)
      if (k != pos) l.coef[k] = static_cast<unsigned>(-r[k]);
    if (l.coef[0] + l.coef[1] + l.coef[2] > 0) return l.canonical().str();
  }
  return "(" + std::to_string(r[0]) + "," + std::to_string(r[1]) + "," + std::to_string(r[2]) + ")";
}

void name_direction(const Weight& v, Direction& d) {
  if (vertex_kind(v) == VertexKind::Center) return;
  Vec3 s = tangent(v.rep(), point_s(v)), q = tangent(v.rep(), point_q(v));
  if (same_direction(d.u, s)) d.label = "s";
  if (same_direction(d.u, q)) d.label = "q";
}

Vec3 inside_point(const Weight& v) {
  switch (vertex_kind(v)) {
    case VertexKind::MM1: return {1, 0, 0};
    case VertexKind::Center: return {3, 2, 1};
    default: return {0, 1, 0};
  }
}

}  // namespace

VertexKind vertex_kind(const Weight& v) {
  if (!v.dominant()) throw Error(Errc::WeightNotDominant, "vertex " + v.str() + " is outside the dominant chamber");
  if (v[0] == v[1] && v[1] == v[2]) return VertexKind::Center;
  if (v[0] == v[1]) return VertexKind::MM1;
  if (v[1] == v[2]) return VertexKind::M11;
  return VertexKind::Interior;
}

Vec3 point_s(const Weight& v) {
  switch (vertex_kind(v)) {
    case VertexKind::Center: throw Error(Errc::Syntax, "s is undefined at [1,1,1]");
    case VertexKind::Interior: return {0, v[1], v[2]};
    default: return {1, 1, 1};
  }
}

Vec3 point_q(const Weight& v) {
  switch (vertex_kind(v)) {
    case VertexKind::Center: throw Error(Errc::Syntax, "q is undefined at [1,1,1]");
    case VertexKind::MM1: return {1, 1, 0};
    default: return {1, 0, 0};
  }
}

Vec3 parse_point(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto fail = [&]() { throw Error(Errc::Syntax, "point must be written \"[a,b,c]\": '" + std::string(text) + "'"); };
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') fail();
  s = s.substr(1, s.size() - 2);
  Vec3 p;
  for (int i = 0; i < 3; ++i) {
    size_t comma = s.find(',');
    if ((i < 2) != (comma != std::string::npos)) fail();
    p[i] = parse_rational(s.substr(0, comma));
    if (p[i] < 0) fail();
    if (i < 2) s = s.substr(comma + 1);
  }
  if (p[0] == 0 && p[1] == 0 && p[2] == 0) fail();
  return p;
}

Vec3 exit_point(const Vec3& alpha, const Vec3& u) {
  std::optional<Q> t;
  for (int i = 0; i < 3; ++i) {
    Q d = alpha[i] * u[i];
    if (d < 0) {
      Q ti = -alpha[i] / d;
      if (!t || ti < *t) t = ti;
    }
  }
  if (!t) throw Error(Errc::DegenerateSegment, "direction of zero length");
  Vec3 p;
  Q mn = 0;
  for (int i = 0; i < 3; ++i) {
    p[i] = alpha[i] + *t * alpha[i] * u[i];
    if (p[i] > 0 && (mn == 0 || p[i] < mn)) mn = p[i];
  }
  for (auto& x : p) x /= mn;
  return p;
}

Direction direction_toward(const Weight& v, const Vec3& target) {
  Direction d;
  d.u = tangent(v.rep(), target);
  d.label = point_str(exit_point(v.rep(), d.u));
  name_direction(v, d);
  return d;
}

Direction direction_at(const Weight& v, std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s == "s") return {"s", tangent(v.rep(), point_s(v))};
  if (s == "q") return {"q", tangent(v.rep(), point_q(v))};
  return direction_toward(v, parse_point(s));
}

std::vector<Direction> link_vertices(const Weight& v) {
  std::vector<Direction> out;
  auto add = [&](const Direction& d) {
    for (auto& r : walls(v))
      if (apply_row(r, v.rep(), d.u) < 0) return;
    for (auto& e : out)
      if (same_direction(e.u, d.u)) return;
    out.push_back(d);
  };
  if (vertex_kind(v) != VertexKind::Center) {
    add(direction_at(v, "q"));
    add(direction_at(v, "s"));
  }
  for (auto& l : lines_through(v))
    for (auto& e : l.ends()) add(direction_toward(v, e));
  return out;
}

bool LinkProfile::contains(const Vec3& u) const {
  for (auto& r : active)
    if (apply_row(r, vertex.rep(), u) < 0) return false;
  return true;
}

bool LinkProfile::contains_germ(const Vec3& u, int side) const {
  if (!contains(u)) return false;
  Vec3 n = rotate(u);
  if (side < 0)
    for (auto& x : n) x = -x;
  for (auto& r : active)
    if (apply_row(r, vertex.rep(), u) == 0 && apply_row(r, vertex.rep(), n) < 0) return false;
  return true;
}

LinkProfile link_profile(const Weight& v, const Automorphism& f, const Automorphism& g) {
  if (!is_fixed(f, v)) throw Error(Errc::NotInStabilizer, f.str() + " does not fix the vertex " + v.str());
  if (!is_fixed(g, v)) throw Error(Errc::NotInStabilizer, g.str() + " does not fix the vertex " + v.str());
  LinkProfile p;
  p.vertex = v;
  p.f = f;
  p.g = g;
  const Vec3& a = v.rep();
  auto h = f.inverse().compose(g);
  std::vector<std::string> row_tags;
  for (auto& r : fixed_region(h).rows)
    if (row_at(r, a) == 0) p.active.push_back(r);
  p.full = p.active.empty();
  for (auto& r : walls(v)) p.active.push_back(r);

  for (auto& r : p.active) {
    Vec3 la{r[0] * a[0], r[1] * a[1], r[2] * a[2]};
    Vec3 ray = rotate(la);
    for (int sign : {1, -1}) {
      Vec3 u{ray[0] * sign, ray[1] * sign, ray[2] * sign};
      if (!p.contains(u)) continue;
      bool dup = false;
      for (auto& d : p.shared) dup = dup || same_direction(d.u, u);
      if (dup) continue;
      Direction d;
      d.u = u;
      d.label = point_str(exit_point(a, u));
      name_direction(v, d);
      p.shared.push_back(d);
      p.tags.push_back(row_tag(r));
    }
  }
  return p;
}

LinkCycle build_cycle(const Weight& v, const std::vector<Automorphism>& chambers, const std::vector<Direction>& junctions,
                      const std::vector<int>& sweeps) {
  size_t n = chambers.size();
  if (n == 0 || junctions.size() != n) throw Error(Errc::Syntax, "a cycle needs one junction per chamber");
  if (!sweeps.empty() && sweeps.size() != n) throw Error(Errc::Syntax, "one sweep sign per segment");
  VertexKind kind = vertex_kind(v);
  LinkCycle c;
  c.vertex = v;
  for (size_t i = 0; i < n; ++i) {
    auto prof = link_profile(v, chambers[i], chambers[(i + 1) % n]);
    if (!prof.contains(junctions[i].u)) {
      Error e(Errc::JunctionNotShared, "junction " + std::to_string(i) + " (" + junctions[i].label +
                                           ") is not shared by chambers " + std::to_string(i) + " and " +
                                           std::to_string((i + 1) % n));
      e.index = static_cast<int>(i);
      throw e;
    }
  }
  Vec3 inside = tangent(v.rep(), inside_point(v));
  for (size_t i = 0; i < n; ++i) {
    const Direction& a = junctions[(i + n - 1) % n];
    const Direction& b = junctions[i];
    int want = sweeps.empty() ? 0 : sweeps[i];
    LinkSegment s{chambers[i], a, b, 0, 0.0};
    auto fail = [&](Errc code, const std::string& what) {
      Error e(code, "segment " + std::to_string(i) + ": " + what);
      e.index = static_cast<int>(i);
      throw e;
    };
    if (kind != VertexKind::Interior) {
      if (same_direction(a.u, b.u)) fail(Errc::DegenerateSegment, "zero length");
      if (opposite_direction(a.u, b.u)) {
        s.sweep = orientation(a.u, inside);
        s.length = kPi;
      } else {
        s.sweep = orientation(a.u, b.u);
        s.length = angle_between(a.u, b.u);
      }
      if (want != 0 && want != s.sweep) fail(Errc::AmbiguousArc, "requested sweep leaves the half link");
    } else if (want != 0) {
      s.sweep = want > 0 ? 1 : -1;
      if (same_direction(a.u, b.u))
        s.length = 2 * kPi;
      else
        s.length = s.sweep > 0 ? ccw_angle(a.u, b.u) : ccw_angle(b.u, a.u);
    } else {
      if (same_direction(a.u, b.u)) fail(Errc::DegenerateSegment, "zero length");
      if (opposite_direction(a.u, b.u)) fail(Errc::AmbiguousArc, "antipodal junctions need an explicit sweep");
      s.sweep = orientation(a.u, b.u);
      s.length = angle_between(a.u, b.u);
    }
    c.total_length += s.length;
    c.segments.push_back(s);
  }
  return c;
}

std::vector<int> backtracking_junctions(const LinkCycle& c) {
  std::vector<int> out;
  size_t n = c.segments.size();
  if (n < 2) return out;
  for (size_t i = 0; i < n; ++i) {
    auto& in = c.segments[i];
    auto& nx = c.segments[(i + 1) % n];
    if (-in.sweep != nx.sweep) continue;
    auto prof = link_profile(c.vertex, in.chamber, nx.chamber);
    if (prof.contains_germ(in.to.u, nx.sweep)) out.push_back(static_cast<int>(i));
  }
  return out;
}

const char* cycle_class_name(CycleClass c) {
  switch (c) {
    case CycleClass::SingleApartment: return "single-apartment";
    case CycleClass::TwoApartments: return "two-apartments";
    case CycleClass::TripleBranch: return "triple-branch";
    case CycleClass::FourRun: return "four-run";
    case CycleClass::SixRun: return "six-run";
    case CycleClass::SixRunThroughS: return "six-run-through-s";
    case CycleClass::ExceedsThreshold: return "exceeds-threshold";
    case CycleClass::Unmatched: return "unmatched";
  }
  return "?";
}

CycleShape cycle_shape(const LinkCycle& c) {
  CycleShape sh;
  if (vertex_kind(c.vertex) == VertexKind::Center || c.segments.empty()) return sh;
  const Vec3& a = c.vertex.rep();
  Vec3 q = tangent(a, point_q(c.vertex));
  int o = orientation(q, tangent(a, inside_point(c.vertex)));
  if (o == 0) o = 1;
  auto theta = [&](const Vec3& u) -> double {
    if (same_direction(u, q)) return 0;
    if (opposite_direction(u, q)) return kPi;
    return o > 0 ? ccw_angle(q, u) : ccw_angle(u, q);
  };
  constexpr double tol = 1e-9;
  std::vector<int> dirs;
  double turned = 0;
  for (auto& s : c.segments) {
    double th = theta(s.from.u);
    int d = s.sweep * o;
    turned += d * s.length;
    // split at multiples of π crossed strictly inside the segment
    std::vector<double> cuts{0};
    if (d > 0) {
      for (double k = std::floor(th / kPi + tol) + 1; k * kPi - th < s.length - tol; k += 1) {
        cuts.push_back(k * kPi - th);
        (static_cast<long>(k) % 2 ? sh.s_passes : sh.q_passes)++;
      }
    } else {
      for (double k = std::ceil(th / kPi - tol) - 1; th - k * kPi < s.length - tol; k -= 1) {
        cuts.push_back(th - k * kPi);
        (static_cast<long>(std::fabs(k)) % 2 ? sh.s_passes : sh.q_passes)++;
      }
    }
    cuts.push_back(s.length);
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
      double mid = th + d * (cuts[k] + cuts[k + 1]) / 2;
      double m = std::fmod(mid, 2 * kPi);
      if (m < 0) m += 2 * kPi;
      bool rising = (m < kPi) == (d > 0);
      dirs.push_back(rising ? 1 : -1);
    }
  }
  sh.winding = static_cast<int>(std::lround(turned / (2 * kPi)));
  size_t n = dirs.size();
  int changes = 0;
  for (size_t i = 0; i < n; ++i) changes += dirs[i] != dirs[(i + 1) % n];
  sh.runs = changes == 0 ? 1 : changes;
  return sh;
}

double default_epsilon(const Weight& v) {
  const Vec3& a = v.rep();
  auto toward_frac = [&](const Q& delta) { return Vec3{delta * a[0] / a[1], 1, 0}; };
  switch (vertex_kind(v)) {
    case VertexKind::Center:
    case VertexKind::MM1: return 2 * kPi / 3;
    case VertexKind::M11: return angle_at(a, toward_frac(Q(1, 4)), Vec3{0, 1, 0});
    case VertexKind::Interior: {
      Vec3 far{a[0], a[1], 0};
      return std::min(angle_at(a, toward_frac(Q(3, 4)), far), angle_at(a, toward_frac(Q(4, 5)), far));
    }
  }
  return 0;
}

Classification classify_cycle(const LinkCycle& c, std::optional<double> epsilon) {
  Classification r;
  r.epsilon = epsilon ? *epsilon : default_epsilon(c.vertex);
  r.length = c.total_length;
  r.shape = cycle_shape(c);
  const auto& sh = r.shape;
  VertexKind kind = vertex_kind(c.vertex);
  if (c.total_length >= 2 * kPi + r.epsilon - 1e-12) {
    r.kind = CycleClass::ExceedsThreshold;
    return r;
  }
  r.kind = CycleClass::Unmatched;
  switch (kind) {
    case VertexKind::Center:
      if (std::fabs(c.total_length - 2 * kPi) < 1e-6) r.kind = CycleClass::SingleApartment;
      break;
    case VertexKind::MM1:
    case VertexKind::M11:
      if (sh.runs == 2) r.kind = CycleClass::SingleApartment;
      if (sh.runs == 4) r.kind = CycleClass::TwoApartments;
      if (sh.runs == 6 && kind == VertexKind::MM1) r.kind = CycleClass::TripleBranch;
      break;
    case VertexKind::Interior:
      if (sh.winding != 0) {
        if (sh.runs == 2 && std::abs(sh.winding) == 1) r.kind = CycleClass::SingleApartment;
      } else if (sh.runs == 2) {
        r.kind = CycleClass::TwoApartments;
      } else if (sh.runs == 4) {
        r.kind = sh.s_passes > 0 ? CycleClass::TwoApartments : CycleClass::FourRun;
      } else if (sh.runs == 6) {
        if (sh.s_passes == 0) r.kind = CycleClass::SixRun;
        if (sh.s_passes == 2) r.kind = CycleClass::SixRunThroughS;
      }
      break;
  }
  return r;
}

namespace {

Automorphism elementary(int var, const Polynomial& p) {
  Triple t{Polynomial::var(0), Polynomial::var(1), Polynomial::var(2)};
  t[var] += p;
  return Automorphism(t);
}

Polynomial mono(unsigned e1, unsigned e2, unsigned e3, long c) { return Polynomial::monomial({e1, e2, e3}, Q(c)); }

// Elementary maps fixing v; `critical` keeps those whose fixed region has the vertex on its boundary.
std::vector<Automorphism> stab_elementaries(const Weight& v, bool critical, std::mt19937& rng) {
  const Vec3& a = v.rep();
  std::uniform_int_distribution<int> cd(0, 3);
  static const long cs[4] = {-2, -1, 1, 2};
  std::vector<Automorphism> out;
  auto consider = [&](int var, unsigned e1, unsigned e2, unsigned e3) {
    Q w = a[0] * e1 + a[1] * e2 + a[2] * e3;
    if (w > a[var] || (critical && w != a[var])) return;
    out.push_back(elementary(var, mono(e1, e2, e3, cs[cd(rng)])));
  };
  for (unsigned i = 0; i <= 6; ++i)
    for (unsigned j = 0; i + j <= 8; ++j) {
      consider(0, 0, i, j);
      consider(1, 0, 0, j);
      if (a[0] == a[1]) consider(1, i, 0, j);
    }
  return out;
}

Automorphism random_stab(const Weight& v, int letters, bool critical, std::mt19937& rng) {
  Automorphism u;
  for (int k = 0; k < letters; ++k) {
    auto pool = stab_elementaries(v, critical, rng);
    if (pool.empty()) pool = stab_elementaries(v, false, rng);
    u = u.compose(pool[rng() % pool.size()]);
  }
  return u;
}

}  // namespace

LinkCycle random_link_cycle(const Weight& v, unsigned seed, std::string* family) {
  std::mt19937 rng(seed);
  VertexKind kind = vertex_kind(v);
  if (kind == VertexKind::Center) throw Error(Errc::WeightNotDominant, "random cycles are not drawn at the centre");
  Automorphism u = random_stab(v, 1 + static_cast<int>(rng() % 3), false, rng);
  bool single = kind != VertexKind::Interior && rng() % 4 == 0;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Automorphism g = single ? Automorphism() : random_stab(v, 1 + static_cast<int>(rng() % 3), true, rng);
    auto prof = link_profile(v, Automorphism(), g);
    std::vector<Automorphism> C;
    std::vector<Direction> J;
    std::vector<int> sw;
    if (kind == VertexKind::Interior) {
      if (prof.full || prof.shared.empty() || prof.shared.size() > 2) continue;
      Direction a = prof.shared[0], b = prof.shared.back();
      if (prof.shared.size() == 2 && !prof.contains_germ(a.u, 1)) std::swap(a, b);
      C = {Automorphism(), g};
      J = {a, b};
      sw = {1, -1};
      if (family) *family = "two-apartments";
    } else {
      Automorphism tau = kind == VertexKind::M11 ? Automorphism::parse("(x1,x3,x2)") : Automorphism::parse("(x2,x1,x3)");
      Direction s = direction_at(v, "s"), q = direction_at(v, "q");
      if (g.is_identity()) {
        C = {Automorphism(), tau};
        J = {q, s};
        if (family) *family = "single-apartment";
      } else {
        if (prof.full || prof.shared.empty() || prof.shared.size() > 2) continue;
        Direction a = prof.shared[0], b = prof.shared.back();
        if (angle_between(s.u, a.u) > angle_between(s.u, b.u)) std::swap(a, b);
        bool at_s = same_direction(a.u, s.u), at_q = same_direction(b.u, q.u);
        if (at_s && at_q) continue;
        if (!at_s && !at_q) {
          // shared arc [a,b] inside the half link, a nearer s
          C = {Automorphism(), tau, Automorphism(), g, g.compose(tau), g};
          J = {q, s, a, s, q, b};
        } else {
          // the shared arc runs on through an end e into the reflected halves
          const Direction& e = at_q ? q : s;
          const Direction& far = at_q ? s : q;
          const Direction& inner = at_q ? a : b;
          auto p2 = link_profile(v, tau, g.compose(tau));
          const Direction* other = nullptr;
          for (auto& d : p2.shared)
            if (!same_direction(d.u, e.u)) other = &d;
          if (!other || same_direction(other->u, far.u)) continue;
          C = {Automorphism(), tau, g.compose(tau), g};
          J = {far, *other, far, inner};
        }
        if (family) *family = "two-apartments";
      }
    }
    for (auto& c : C) c = u.compose(c);
    try {
      return build_cycle(v, C, J, sw);
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(Errc::DegenerateSegment, "no random cycle found at " + v.str());
}

}  // namespace tame3
