#pragma once

#include <vector>

#include "strippress/column_system.hpp"
#include "strippress/sft.hpp"

namespace strippress {

// Translation-invariant nearest-neighbor interaction: a value per symbol,
// per horizontal pair (left, right), and per vertical pair (lower, upper).
// Values are defined on all pairs; pairs outside e1/e2 only ever matter in
// fillable-boundary computations, never in transfer weights.
struct NnInteraction {
  int alphabet_size = 0;
  std::vector<double> vertex;  // |A|
  std::vector<double> hedge;   // |A| x |A| row-major, (left, right)
  std::vector<double> vedge;   // |A| x |A| row-major, (lower, upper)

  static NnInteraction zero(int alphabet_size);

  double vertex_at(Sym s) const { return vertex[static_cast<size_t>(s)]; }
  double hedge_at(Sym l, Sym r) const {
    return hedge[static_cast<size_t>(l) * alphabet_size + static_cast<size_t>(r)];
  }
  double vedge_at(Sym lo, Sym up) const {
    return vedge[static_cast<size_t>(lo) * alphabet_size + static_cast<size_t>(up)];
  }
  double& vertex_at(Sym s) { return vertex[static_cast<size_t>(s)]; }
  double& hedge_at(Sym l, Sym r) {
    return hedge[static_cast<size_t>(l) * alphabet_size + static_cast<size_t>(r)];
  }
  double& vedge_at(Sym lo, Sym up) {
    return vedge[static_cast<size_t>(lo) * alphabet_size + static_cast<size_t>(up)];
  }

  bool is_zero() const;
  void validate() const;  // finiteness, sizes
};

// Single-shape form on the corner set {(0,0), (0,1), (1,0)}:
// vertex((0,0)) + vertical pair ((0,0) below (0,1)) + horizontal pair
// ((0,0) left of (1,0)). The pressure target is f = -phi_hat.
double phi_hat(const NnInteraction& phi, const Configuration& corner);

// Per-edge strip weights; entry k corresponds to the k-th CSR edge of cs.
// For an edge (c, d):
//   sum_i vertex(c_i) + vedge(b0, c_1) + sum_i vedge(c_i, c_{i+1})
//   + vedge(c_n, t0) + sum_i hedge(c_i, d_i).
struct StripInteraction {
  std::vector<double> weights;
};

StripInteraction strip_interaction(const NnInteraction& phi, const ColumnSystem& cs);

// Interaction induced on the horizontal p-block recoding: vertex values add
// over members, horizontal values take the left block's interior plus the
// seam, vertical values add columnwise.
NnInteraction power_interaction(const NnInteraction& phi, const HigherPower& hp);

}  // namespace strippress
