#pragma once
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tame3/poly.hpp"
#include "tame3/tame.hpp"

namespace tame3 {

using Vec3 = std::array<Q, 3>;

// Projective class of a positive rational triple, stored with min component 1.
class Weight {
 public:
  Weight() : a_{1, 1, 1} {}
  explicit Weight(const Vec3& a);
  static Weight parse(std::string_view text);  // "[a1,a2,a3]"

  const Vec3& rep() const { return a_; }
  const Q& operator[](int i) const { return a_[i]; }
  bool dominant() const { return a_[0] >= a_[1] && a_[1] >= a_[2]; }
  std::string str() const;
  friend bool operator==(const Weight& x, const Weight& y) { return x.a_ == y.a_; }
  friend bool operator<(const Weight& x, const Weight& y) { return x.a_ < y.a_; }

 private:
  Vec3 a_;
};

Q nu(const Vec3& alpha, const Polynomial& p);
inline Q nu(const Weight& w, const Polynomial& p) { return nu(w.rep(), p); }

struct Valuation {
  Automorphism label;
  Weight weight;
  Q operator()(const Polynomial& p) const { return nu(weight, p.compose(label.map())); }
};

Valuation act(const Automorphism& g, const Valuation& v);

// Agreement on x1, x2, x3, x1x2, x1x3, x2x3 up to a common positive factor.
// Necessary for equality but not sufficient; see same_point.
bool agree_on_generators(const Valuation& a, const Valuation& b);

// Decides whether two valuations define the same point: both are moved into
// the dominant chamber, then the weights must match and label_b^{-1} label_a
// must fix the common weight.
bool same_point(const Valuation& a, const Valuation& b);

// Rows c with c·α ≥ 0, one per (i, monomial of f_i), trivial rows dropped.
struct FixedRegion {
  std::vector<std::array<long, 3>> rows;
  bool contains(const Vec3& alpha) const;
};

FixedRegion fixed_region(const Automorphism& f);
bool is_fixed(const Automorphism& f, const Weight& alpha);  // WeightNotDominant outside ∇⁺

struct StabFactor {
  Automorphism m_part;
  Automorphism l_part;
  int stab_case;  // 1..4 by the equality pattern of α
};

int stab_case(const Weight& alpha);
std::optional<StabFactor> stab_decompose(const Automorphism& f, const Weight& alpha);

}  // namespace tame3
