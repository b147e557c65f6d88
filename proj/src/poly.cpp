#include "tame3/poly.hpp"

#include <cctype>

#include "tame3/error.hpp"

namespace tame3 {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Syntax: return "SyntaxError";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::NotDirectlyInvertible: return "NotDirectlyInvertible";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::WeightNotDominant: return "WeightNotDominant";
    case Errc::DegenerateSegment: return "DegenerateSegment";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::PointsNotOnLine: return "PointsNotOnLine";
    case Errc::NotInStabilizer: return "NotInStabilizer";
    case Errc::JunctionNotShared: return "JunctionNotShared";
    case Errc::AmbiguousArc: return "AmbiguousArc";
    case Errc::LetterNotInFactors: return "LetterNotInFactors";
    case Errc::NotCyclicallyReduced: return "NotCyclicallyReduced";
    case Errc::DegenerateStrip: return "DegenerateStrip";
    case Errc::DependentForms: return "DependentForms";
    case Errc::BadConstants: return "BadConstants";
    case Errc::InconsistentDegrees: return "InconsistentDegrees";
    case Errc::HypothesisFails: return "HypothesisFails";
    case Errc::SurrogateFailed: return "SurrogateFailed";
    case Errc::InvalidDiagram: return "InvalidDiagram";
    case Errc::AngleTooLarge: return "AngleTooLarge";
    case Errc::IOError: return "IOError";
  }
  return "Error";
}

std::string q_str(const Q& q) { return q.get_str(); }

Q parse_rational(std::string_view s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw Error(Errc::Syntax, "empty rational");
  size_t i = 0;
  if (t[0] == '+' || t[0] == '-') i = 1;
  bool slash = false;
  size_t digits = 0;
  for (size_t k = i; k < t.size(); ++k) {
    if (t[k] == '/') {
      if (slash || digits == 0) throw Error(Errc::Syntax, "bad rational '" + t + "'");
      slash = true;
      digits = 0;
    } else if (std::isdigit(static_cast<unsigned char>(t[k]))) {
      ++digits;
    } else {
      throw Error(Errc::Syntax, "bad rational '" + t + "'");
    }
  }
  if (digits == 0) throw Error(Errc::Syntax, "bad rational '" + t + "'");
  if (t[0] == '+') t = t.substr(1);
  Q q;
  if (q.set_str(t, 10) != 0) throw Error(Errc::Syntax, "bad rational '" + t + "'");
  if (q.get_den() == 0) throw Error(Errc::Syntax, "zero denominator");
  q.canonicalize();
  return q;
}

Polynomial::Polynomial(const Q& c) {
  if (c != 0) terms_.emplace(Monomial{0, 0, 0}, c);
}

Polynomial Polynomial::var(int i) {
  Monomial m{0, 0, 0};
  m[i] = 1;
  return monomial(m);
}

Polynomial Polynomial::monomial(const Monomial& m, const Q& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.begin()->first));
}

unsigned Polynomial::degree_in(int i) const {
  unsigned d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, m[i]);
  return d;
}

Q Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Q(0) : it->second;
}

bool Polynomial::depends_on(int i) const { return degree_in(i) > 0; }

void Polynomial::add_term(const Monomial& m, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const { return scale(-1); }

Polynomial Polynomial::scale(const Q& r) const {
  Polynomial p;
  if (r == 0) return p;
  for (auto& [m, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), m, c * r);
  return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial p;
  for (auto& [ma, ca] : a.terms_)
    for (auto& [mb, cb] : b.terms_)
      p.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
  return p;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(int i) const {
  Polynomial p;
  for (auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial n = m;
    --n[i];
    p.add_term(n, c * m[i]);
  }
  return p;
}

Polynomial Polynomial::compose(const Triple& f) const {
  // cache powers of each component as they are requested
  std::array<std::vector<Polynomial>, 3> powers;
  for (int i = 0; i < 3; ++i) powers[i].push_back(Polynomial(1));
  auto power = [&](int i, unsigned e) -> const Polynomial& {
    auto& v = powers[i];
    while (v.size() <= e) v.push_back(v.back() * f[i]);
    return v[e];
  };
  Polynomial p;
  for (auto& [m, c] : terms_) {
    Polynomial t(c);
    for (int i = 0; i < 3; ++i)
      if (m[i]) t = t * power(i, m[i]);
    p += t;
  }
  return p;
}

Q Polynomial::eval(const std::array<Q, 3>& x) const {
  Q s = 0;
  for (auto& [m, c] : terms_) {
    Q t = c;
    for (int i = 0; i < 3; ++i)
      for (unsigned k = 0; k < m[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

std::vector<std::pair<Q, Polynomial>> Polynomial::weighted_parts(const std::array<Q, 3>& w) const {
  std::map<Q, Polynomial> parts;
  for (auto& [m, c] : terms_) {
    Q d = w[0] * m[0] + w[1] * m[1] + w[2] * m[2];
    parts[d].add_term(m, c);
  }
  return {parts.begin(), parts.end()};
}

Q Polynomial::weighted_degree(const std::array<Q, 3>& w) const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "weighted degree of zero polynomial");
  auto parts = weighted_parts(w);
  return parts.back().first;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : terms_) {
    Q a = abs(c);
    bool neg = c < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string body;
    bool unit = (a == 1);
    if (!unit || total_degree(m) == 0) body = q_str(a);
    for (int i = 0; i < 3; ++i) {
      if (!m[i]) continue;
      if (!body.empty()) body += "*";
      body += "x" + std::to_string(i + 1);
      if (m[i] > 1) body += "^" + std::to_string(m[i]);
    }
    out += body;
  }
  return out;
}

namespace {

struct Parser {
  std::string_view s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::Syntax, msg + " at offset " + std::to_string(pos) + " in '" + std::string(s) + "'");
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char ch) {
    skip();
    return pos < s.size() && s[pos] == ch;
  }
  bool at_digit() {
    skip();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  bool at_var() {
    skip();
    return pos < s.size() && s[pos] == 'x';
  }
  std::string digits() {
    skip();
    size_t b = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (b == pos) fail("expected digits");
    return std::string(s.substr(b, pos - b));
  }
  unsigned nat() {
    std::string d = digits();
    if (d.size() > 6) fail("exponent too large");
    return static_cast<unsigned>(std::stoul(d));
  }

  Polynomial term(bool negative) {
    Q coeff = 1;
    bool any = false;
    if (at_digit()) {
      mpz_class num(digits());
      mpz_class den = 1;
      if (peek('/')) {
        ++pos;
        den = mpz_class(digits());
        if (den == 0) fail("zero denominator");
      }
      coeff = Q(num, den);
      coeff.canonicalize();
      any = true;
    }
    Monomial m{0, 0, 0};
    for (;;) {
      bool star = false;
      if (peek('*')) {
        if (!any) fail("'*' without left operand");
        ++pos;
        star = true;
      }
      if (!at_var()) {
        if (star) fail("expected variable after '*'");
        break;
      }
      ++pos;
      if (pos >= s.size() || s[pos] < '1' || s[pos] > '3') fail("expected x1, x2 or x3");
      int v = s[pos] - '1';
      ++pos;
      unsigned e = 1;
      if (peek('^')) {
        ++pos;
        e = nat();
      }
      m[v] += e;
      any = true;
    }
    if (!any) fail("expected term");
    return Polynomial::monomial(m, negative ? -coeff : coeff);
  }

  Polynomial poly() {
    Polynomial p;
    bool neg = false;
    if (peek('-')) {
      ++pos;
      neg = true;
    } else if (peek('+')) {
      ++pos;
    }
    p += term(neg);
    for (;;) {
      if (peek('+')) {
        ++pos;
        p += term(false);
      } else if (peek('-')) {
        ++pos;
        p += term(true);
      } else {
        break;
      }
    }
    return p;
  }
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) {
  Parser ps{text};
  Polynomial p = ps.poly();
  ps.skip();
  if (ps.pos != text.size()) ps.fail("unexpected character");
  return p;
}

}  // namespace tame3
