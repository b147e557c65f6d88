#pragma once
#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tame3/poly.hpp"

namespace tame3 {

using KernelVector = std::array<Polynomial, 3>;  // (R, T, U)

// Exact kernel of a linear map given by its matrix (rows = equations).
std::vector<std::vector<Q>> nullspace(std::vector<std::vector<Q>> rows, size_t ncols);

// (R,T,U) ↦ ℓ1^r R + ℓ2^t T + ℓ3^u U on homogeneous forms in x2,x3 of total degree d.
std::vector<KernelVector> kernel_plain(int d, int r, int t, int u, const std::array<Polynomial, 3>& forms);

enum class WeightedVariant { Weighted, WeightedPlus };

// Weights (p,1) on (x2,x3). Weighted: x2^r R + (x2+cx3^p)^t T + (x2+c'x3^p)^u U.
// WeightedPlus: x2^r R + (x2+cx3^p)^t T + x3^u U.
std::vector<KernelVector> kernel_weighted(WeightedVariant v, int p, int m, int r, int t, int u, const Q& c,
                                          const Q& cprime = 0);

struct SweepCase {
  int d = 0, p = 0, m = 0, r = 0, t = 0, u = 0;
  size_t sample = 0;  // index of the forms / constants used
  size_t kernel_dim = 0;
};

struct SweepReport {
  size_t instances = 0;
  std::vector<SweepCase> violations;
  std::vector<SweepCase> witnesses;  // sharpness: nontrivial kernel exactly at the bound
  double wall_time = 0;
};

int plain_bound(int d);  // ⌊(2d+1)/3⌋

SweepReport sweep_plain(int dmax, const std::vector<std::array<Polynomial, 3>>& form_samples, int jobs = 1);
SweepReport sweep_weighted(WeightedVariant v, int pmax, int mmax, const std::vector<std::array<Q, 2>>& constants,
                           int jobs = 1);

std::vector<std::array<Polynomial, 3>> random_form_triples(size_t n, unsigned seed);

struct SpadeResult {
  Q value;
  int argmax;
};
SpadeResult spade(int alpha_max);

bool derivative_identity_check(const Polynomial& q, const Q& c, const Q& cprime, int power);

// Finite G-set: points 0..n-1, G generated by permutations.
struct FiniteAction {
  int points = 0;
  std::vector<std::vector<int>> generators;
  std::set<int> Z;
  int threshold = 2;
};

std::vector<std::set<int>> translates(const FiniteAction& a, const std::set<int>& z);
std::set<int> invariant_set(const FiniteAction& a);  // HypothesisFails, SurrogateFailed
bool is_invariant(const FiniteAction& a, const std::set<int>& s);

// Vertex set of a triangle ξηζ with k extra triangles on each of its edges.
// Points: 0=ξ, 1=η, 2=ζ, then apexes on ξη, ξζ, ηζ. Z is the first apex triangle on ξη.
FiniteAction y_model(int k, int threshold = 2);

}  // namespace tame3
