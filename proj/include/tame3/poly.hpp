#pragma once
#include <gmpxx.h>

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tame3 {

using Q = mpq_class;
using Monomial = std::array<unsigned, 3>;

inline unsigned total_degree(const Monomial& m) { return m[0] + m[1] + m[2]; }

// Graded lex, largest first: serialization walks terms in this order.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

class Polynomial;
using Triple = std::array<Polynomial, 3>;

class Polynomial {
 public:
  using Terms = std::map<Monomial, Q, GrlexGreater>;

  Polynomial() = default;
  Polynomial(const Q& c);
  Polynomial(long c) : Polynomial(Q(c)) {}
  static Polynomial var(int i);  // 0-based: var(0) = x1
  static Polynomial monomial(const Monomial& m, const Q& c = 1);
  static Polynomial parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int degree() const;  // -1 for the zero polynomial
  unsigned degree_in(int i) const;
  Q coeff(const Monomial& m) const;
  Q constant_term() const { return coeff({0, 0, 0}); }
  bool depends_on(int i) const;
  size_t size() const { return terms_.size(); }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator-() const;
  Polynomial scale(const Q& r) const;
  Polynomial pow(unsigned e) const;
  Polynomial derivative(int i) const;
  Polynomial compose(const Triple& f) const;  // P(f1,f2,f3)
  Q eval(const std::array<Q, 3>& x) const;

  // Weighted-homogeneous components, degrees ascending.
  std::vector<std::pair<Q, Polynomial>> weighted_parts(const std::array<Q, 3>& w) const;
  Q weighted_degree(const std::array<Q, 3>& w) const;

  std::string str() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void add_term(const Monomial& m, const Q& c);
  Terms terms_;
};

std::string q_str(const Q& q);
Q parse_rational(std::string_view s);

}  // namespace tame3
