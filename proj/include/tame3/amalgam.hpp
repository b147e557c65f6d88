#pragma once
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tame3/tame.hpp"
#include "tame3/valuation.hpp"

namespace tame3 {

// C = K *_{K∩H} H and B' = B *_{B∩H} H
enum class AmalgamGroup { C, Bp };
AmalgamGroup parse_group(std::string_view s);  // "C", "B'", "Bp"
const char* group_name(AmalgamGroup g);

enum class FactorTag { Left, Right, Common };  // K or B / H / intersection

struct NFLetter {
  Automorphism map;
  FactorTag tag;
};

struct NormalForm {
  AmalgamGroup group;
  std::vector<NFLetter> letters;
  Automorphism realized;
  std::string tag_name(size_t i) const;  // "K", "H", "B", "K&H", ...
};

// Factor of a single element, or nullopt when it lies in neither factor.
std::optional<FactorTag> factor_of(AmalgamGroup g, const Automorphism& f);

NormalForm normal_form(AmalgamGroup g, const TameWord& w);

struct CyclicReduction {
  NormalForm reduced;
  TameWord conjugator;  // reduced = w⁻¹ ∘ f ∘ w with w the realized conjugator
};
CyclicReduction cyclic_reduce(const NormalForm& nf);

struct StripItem {
  enum class Kind { PrincipalRay, AntiprincipalRay, CurveOnLine };
  Kind kind;
  unsigned a = 1;                                  // ray parameter
  unsigned m2 = 0, m3 = 0;                         // dominant line α1 = m2α2 + m3α3
  std::vector<std::array<unsigned, 2>> bounding;   // every (m2,m3) constraint of the shared region
  double offset = 0;                               // chart distance of the asymptote from the 1-ray
  std::string str() const;
};

struct InvariantStrip {
  AmalgamGroup group;
  std::vector<StripItem> boundary;  // one period, in normal-form order
  std::vector<double> gaps;         // |offset_i − offset_{i+1}| cyclically
  bool second_constraint_binds = false;
};

InvariantStrip strip_data(AmalgamGroup g, const TameWord& w);  // NotCyclicallyReduced

enum class IsometryKind { Elliptic, Parabolic, Loxodromic };
const char* isometry_kind_name(IsometryKind k);

struct IsometryClass {
  IsometryKind kind;
  std::string length_expr;  // "0" or "sqrt(2)*log(N)"
  double length = 0;
  std::vector<std::string> limit_data;
  CyclicReduction reduction;
  std::optional<InvariantStrip> strip;
};

IsometryClass classify_isometry(AmalgamGroup g, const TameWord& w);

// A rational weight in ∇⁺ fixed by f, searched over the vertices of its fixed region.
std::optional<Weight> fixed_weight(const Automorphism& f);

// Shortest path over `periods` glued copies of the strip, from a basepoint at
// chart height `height` on the first boundary to its translate, divided by periods.
double unfold_length_oracle(const InvariantStrip& s, int periods, double height = 20.0);

}  // namespace tame3
