#pragma once
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tame3/nabla.hpp"
#include "tame3/tame.hpp"
#include "tame3/valuation.hpp"

namespace tame3 {

using Row = std::array<long, 3>;

// A direction at a vertex: exact tangent (dβ) plus a readable label, usually
// the point where the projective ray leaves ∇ ("[1,1,0]"), or "s" / "q".
struct Direction {
  std::string label;
  Vec3 u;
};

enum class VertexKind { Center, MM1, M11, Interior };  // [1,1,1], α1=α2, α2=α3, int ∇⁺
VertexKind vertex_kind(const Weight& v);

Vec3 point_s(const Weight& v);  // toward [1,1,1], or [0,α2,α3] inside ∇⁺
Vec3 point_q(const Weight& v);  // toward [1,0,0], or [1,1,0] when α1=α2
Vec3 parse_point(std::string_view text);  // "[a,b,c]", nonnegative, not all zero
Vec3 exit_point(const Vec3& alpha, const Vec3& u);  // where the ray leaves the positive octant
Direction direction_at(const Weight& v, std::string_view text);  // "s", "q" or a point
Direction direction_toward(const Weight& v, const Vec3& target);

// Directions along the admissible lines through v, plus s and q, restricted to Γ⁺.
std::vector<Direction> link_vertices(const Weight& v);

struct LinkProfile {
  Weight vertex;
  Automorphism f, g;
  std::vector<Row> active;        // rows of fixed_region(f⁻¹g) and ∇⁺ walls vanishing at the vertex
  std::vector<Direction> shared;  // extreme directions of Γ⁺_f ∩ Γ⁺_g
  std::vector<std::string> tags;  // admissible line carrying each extreme direction
  bool full = false;              // Γ⁺_f = Γ⁺_g
  bool contains(const Vec3& u) const;
  // germ of directions on the counterclockwise (side=+1) or clockwise side of u is shared
  bool contains_germ(const Vec3& u, int side) const;
};

LinkProfile link_profile(const Weight& v, const Automorphism& f, const Automorphism& g);

struct LinkSegment {
  Automorphism chamber;
  Direction from, to;
  int sweep;  // +1 counterclockwise, -1 clockwise in the chart
  double length;
};

struct LinkCycle {
  Weight vertex;
  std::vector<LinkSegment> segments;  // segment i runs in chambers[i] from junction i-1 to junction i
  double total_length = 0;
};

// sweeps: optional per-segment orientation (0 = automatic). Needed at interior
// vertices when a segment joins antipodal directions.
LinkCycle build_cycle(const Weight& v, const std::vector<Automorphism>& chambers,
                      const std::vector<Direction>& junctions, const std::vector<int>& sweeps = {});

// Junctions where the cycle turns back along an edge shared by both chambers.
std::vector<int> backtracking_junctions(const LinkCycle& c);

enum class CycleClass {
  SingleApartment,
  TwoApartments,
  TripleBranch,
  FourRun,
  SixRun,
  SixRunThroughS,
  ExceedsThreshold,
  Unmatched,
};
const char* cycle_class_name(CycleClass c);

struct CycleShape {
  int runs = 0;      // maximal monotone runs of the distance from q
  int winding = 0;   // around the full circle at interior vertices
  int s_passes = 0;  // segments crossing s in their interior
  int q_passes = 0;
};
CycleShape cycle_shape(const LinkCycle& c);

struct Classification {
  CycleClass kind;
  CycleShape shape;
  double epsilon;
  double length;
};

double default_epsilon(const Weight& v);
Classification classify_cycle(const LinkCycle& c, std::optional<double> epsilon = std::nullopt);

// A closed gallery at v drawn from the apartment families (single or two
// apartments), translated by a random element of the stabiliser.
LinkCycle random_link_cycle(const Weight& v, unsigned seed, std::string* family = nullptr);

}  // namespace tame3
