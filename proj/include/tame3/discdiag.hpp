#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tame3/links.hpp"
#include "tame3/nabla.hpp"
#include "tame3/tame.hpp"

namespace tame3 {

// A disc built from labelled copies of arrangement faces. Corner k of a face sits at
// the tail of boundary half-edge k of its arrangement face.
struct DiscDiagram {
  struct Face {
    int arr_face;
    Automorphism chamber;
  };
  struct Gluing {
    int f1, k1, f2, k2;  // half-edge k1 of face f1 is glued to half-edge k2 of face f2
  };

  Arrangement arr;
  std::vector<Face> faces;
  std::vector<Gluing> gluings;

  // Glue every pair of faces lying on opposite sides of an arrangement edge.
  void glue_adjacent();
};

// Combinatorics derived from the gluing data.
struct DiagramTopology {
  struct Vertex {
    int arr_vertex;
    bool interior;
    std::vector<std::array<int, 2>> corners;  // (face, corner), cyclic order around the vertex
  };
  struct Edge {
    int arr_edge;
    std::vector<std::array<int, 2>> sides;  // (face, half-edge index): one or two
    int v0, v1;                             // diagram vertices at the arrangement edge's a and b ends
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> corner_vertex;  // face → corner → diagram vertex
  std::vector<std::vector<int>> side_edge;      // face → half-edge → diagram edge
  std::vector<int> boundary;                    // diagram edges of the boundary cycle
};

DiagramTopology topology(const DiscDiagram& d);  // InvalidDiagram unless d is a disc

double corner_angle(const DiscDiagram& d, int face, int corner);
double side_turning(const DiscDiagram& d, int face, int k);  // turning of half-edge k seen from the face

struct Curvatures {
  std::vector<double> vertex;  // κ for interior vertices, κ∂ for boundary vertices
  std::vector<double> edge;
};
Curvatures curvatures(const DiscDiagram& d, const DiagramTopology& t);
Curvatures curvatures(const DiscDiagram& d);
double gauss_bonnet(const DiscDiagram& d);

struct FoldEdge {
  int edge;                             // diagram edge
  std::optional<std::array<int, 2>> oriented;  // (from, to) diagram vertices when the edge is on a principal line
};
std::vector<FoldEdge> folding_locus(const DiscDiagram& d, const DiagramTopology& t);
std::vector<FoldEdge> folding_locus(const DiscDiagram& d);

struct ReducedCheck {
  bool reduced = true;
  std::optional<int> witness;  // diagram edge across which the labels agree
};
ReducedCheck is_x_reduced(const DiscDiagram& d);

enum class StarTemplate { NoFold, A, B, C, D, E, F, G, H, I, NoMatch };
const char* star_template_name(StarTemplate t);

struct StarMatch {
  StarTemplate kind;
  std::string marks;             // cyclic sequence of 'F' (fold edge) and 'S' (edge toward s)
  std::vector<double> sectors;   // sectors[i] runs from mark i to mark i+1
  std::vector<int> orientation;  // per mark: +1 away from v, -1 toward v, 0 unoriented
  double total_angle;
  double epsilon;
};
// AngleTooLarge when the total angle at v reaches 2π + ε.
StarMatch star_classify(const DiscDiagram& d, int vertex, std::optional<double> epsilon = std::nullopt);
StarTemplate match_star(const std::string& marks, const std::vector<double>& sectors);

// Star of an arrangement vertex realising a link cycle: one labelled copy of each
// arrangement face met by each segment, glued around the vertex.
DiscDiagram star_diagram(const Arrangement& arr, const LinkCycle& c);
int find_vertex(const DiagramTopology& t, const DiscDiagram& d, const Vec3& alpha);

// Union of up to `max_faces` faces grown from a random seed face (labels: identity).
DiscDiagram random_diagram(const Arrangement& arr, int max_faces, unsigned seed);
// Glue a relabelled copy of d to itself along a boundary arc of `arc_len` edges.
DiscDiagram double_along_arc(const DiscDiagram& d, int start, int arc_len, const Automorphism& copy_label);

}  // namespace tame3
