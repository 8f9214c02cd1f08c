#include "strippress/interaction.hpp"

#include <cmath>

namespace strippress {

NnInteraction NnInteraction::zero(int alphabet_size) {
  NnInteraction phi;
  phi.alphabet_size = alphabet_size;
  phi.vertex.assign(static_cast<size_t>(alphabet_size), 0.0);
  phi.hedge.assign(static_cast<size_t>(alphabet_size) * alphabet_size, 0.0);
  phi.vedge.assign(static_cast<size_t>(alphabet_size) * alphabet_size, 0.0);
  return phi;
}

bool NnInteraction::is_zero() const {
  for (double v : vertex)
    if (v != 0.0) return false;
  for (double v : hedge)
    if (v != 0.0) return false;
  for (double v : vedge)
    if (v != 0.0) return false;
  return true;
}

void NnInteraction::validate() const {
  const size_t a = static_cast<size_t>(alphabet_size);
  if (vertex.size() != a || hedge.size() != a * a || vedge.size() != a * a)
    throw InputError("interaction tables sized for a different alphabet");
  for (double v : vertex)
    if (!std::isfinite(v)) throw InputError("non-finite vertex value");
  for (double v : hedge)
    if (!std::isfinite(v)) throw InputError("non-finite horizontal edge value");
  for (double v : vedge)
    if (!std::isfinite(v)) throw InputError("non-finite vertical edge value");
}

double phi_hat(const NnInteraction& phi, const Configuration& corner) {
  auto origin = corner.at({0, 0});
  auto above = corner.at({0, 1});
  auto right = corner.at({1, 0});
  if (!origin || !above || !right)
    throw InputError("phi_hat needs symbols at (0,0), (0,1) and (1,0)");
  return phi.vertex_at(*origin) + phi.vedge_at(*origin, *above) + phi.hedge_at(*origin, *right);
}

StripInteraction strip_interaction(const NnInteraction& phi, const ColumnSystem& cs) {
  if (phi.alphabet_size != cs.alphabet_size)
    throw InputError("interaction and column system built over different alphabets");
  const int n = cs.height;
  const int m = cs.num_columns();
  const Sym b0 = cs.bottom.at(0), t0 = cs.top.at(0);

  // Column-only part of the weight, shared by all out-edges of c.
  std::vector<double> col_part(static_cast<size_t>(m));
  for (int c = 0; c < m; ++c) {
    auto col = cs.column(c);
    double w = 0;
    for (int i = 0; i < n; ++i) w += phi.vertex_at(col[static_cast<size_t>(i)]);
    w += phi.vedge_at(b0, col[0]);
    for (int i = 0; i + 1 < n; ++i)
      w += phi.vedge_at(col[static_cast<size_t>(i)], col[static_cast<size_t>(i) + 1]);
    w += phi.vedge_at(col[static_cast<size_t>(n - 1)], t0);
    col_part[static_cast<size_t>(c)] = w;
  }

  StripInteraction out;
  out.weights.resize(static_cast<size_t>(cs.num_edges()));
  for (int c = 0; c < m; ++c) {
    auto cc = cs.column(c);
    for (long e = cs.row_ptr[static_cast<size_t>(c)]; e < cs.row_ptr[static_cast<size_t>(c) + 1]; ++e) {
      auto dd = cs.column(cs.col_idx[static_cast<size_t>(e)]);
      double w = col_part[static_cast<size_t>(c)];
      for (int i = 0; i < n; ++i)
        w += phi.hedge_at(cc[static_cast<size_t>(i)], dd[static_cast<size_t>(i)]);
      out.weights[static_cast<size_t>(e)] = w;
    }
  }
  return out;
}

NnInteraction power_interaction(const NnInteraction& phi, const HigherPower& hp) {
  if (phi.alphabet_size <= 0) throw InputError("empty interaction");
  const int m = static_cast<int>(hp.blocks.size());
  const int p = hp.p;
  NnInteraction out = NnInteraction::zero(m);
  for (int i = 0; i < m; ++i) {
    const auto& bi = hp.blocks[static_cast<size_t>(i)];
    double v = 0;
    for (Sym s : bi) v += phi.vertex_at(s);
    out.vertex_at(i) = v;
    for (int j = 0; j < m; ++j) {
      const auto& bj = hp.blocks[static_cast<size_t>(j)];
      double h = 0;  // interior of the left block, then the seam
      for (int k = 0; k + 1 < p; ++k)
        h += phi.hedge_at(bi[static_cast<size_t>(k)], bi[static_cast<size_t>(k) + 1]);
      h += phi.hedge_at(bi[static_cast<size_t>(p - 1)], bj[0]);
      out.hedge_at(i, j) = h;
      double ve = 0;  // i below j, columnwise
      for (int k = 0; k < p; ++k)
        ve += phi.vedge_at(bi[static_cast<size_t>(k)], bj[static_cast<size_t>(k)]);
      out.vedge_at(i, j) = ve;
    }
  }
  return out;
}

}  // namespace strippress
