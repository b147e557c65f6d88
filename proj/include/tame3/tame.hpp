#pragma once
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tame3/poly.hpp"

namespace tame3 {

// Polynomial triple with constant nonzero Jacobian. (f∘g)_i = f_i(g1,g2,g3).
class Automorphism {
 public:
  Automorphism();  // identity
  explicit Automorphism(Triple f);
  static Automorphism parse(std::string_view text);
  static Automorphism identity() { return Automorphism(); }

  const Triple& map() const { return f_; }
  const Polynomial& operator[](int i) const { return f_[i]; }
  Q jacobian() const;
  bool is_identity() const;
  int degree() const;

  Automorphism compose(const Automorphism& g) const;
  bool has_inverse() const { return inv_ != nullptr; }
  Automorphism inverse() const;  // NotDirectlyInvertible when no inverse is known

  std::string str() const;
  friend bool operator==(const Automorphism& a, const Automorphism& b) { return a.f_ == b.f_; }
  friend Automorphism operator*(const Automorphism& a, const Automorphism& b) { return a.compose(b); }

 private:
  Automorphism(Triple f, std::shared_ptr<const Triple> inv) : f_(std::move(f)), inv_(std::move(inv)) {}
  Triple f_;
  std::shared_ptr<const Triple> inv_;
};

Q jacobian_determinant(const Triple& f);

// Inverse of a triple that is block triangular up to reordering (affine,
// elementary, B/H/K shapes and their products in that shape).
std::optional<Triple> structural_inverse(const Triple& f);

enum class Subgroup { A, B, H, K, BH, KH, CLetter, BpLetter };
std::optional<Subgroup> parse_subgroup(std::string_view s);
const char* subgroup_name(Subgroup g);

bool member(const Automorphism& f, Subgroup g);
bool is_elementary(const Automorphism& f);  // (x1 + P(x2,x3), x2, x3)
bool is_linear(const Automorphism& f);      // homogeneous of degree 1

// 3x3 matrix of degree-one coefficients: row i holds the coefficients of x1..x3 in f_i.
std::array<std::array<Q, 3>, 3> linear_part(const Automorphism& f);
Automorphism linear_automorphism(const std::array<std::array<Q, 3>, 3>& m,
                                 const std::array<Q, 3>& shift = {0, 0, 0});

struct Letter {
  Automorphism map;
  std::string hint;  // advisory: A, B, H, K, elementary, other
};

struct TameWord {
  std::vector<Letter> letters;
  Automorphism realize() const;  // left-to-right composition
  static TameWord from(const std::vector<Automorphism>& maps);
};

TameWord invert_word(const TameWord& w);

}  // namespace tame3
