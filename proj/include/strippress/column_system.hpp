#pragma once

#include <span>
#include <string>
#include <vector>

#include "strippress/sft.hpp"

namespace strippress {

struct BuildLimits {
  long max_columns = 2'000'000;
  long max_edges = 50'000'000;
};

// Column alphabet and edge set of a height-n strip between constant boundary
// rows. Columns are stored bottom row first and enumerated lexicographically
// with the bottom row most significant; edges are CSR in (row, col) order.
// Both orders are deterministic contracts relied on by golden-file tests.
struct ColumnSystem {
  int height = 0;
  PeriodicRow bottom = PeriodicRow::constant(0);
  PeriodicRow top = PeriodicRow::constant(0);
  int alphabet_size = 0;

  std::vector<Sym> cells;     // num_columns() * height
  std::vector<long> row_ptr;  // num_columns() + 1
  std::vector<int> col_idx;

  int num_columns() const {
    return height == 0 ? 0 : static_cast<int>(cells.size() / static_cast<size_t>(height));
  }
  long num_edges() const { return static_cast<long>(col_idx.size()); }
  std::span<const Sym> column(int i) const {
    return {cells.data() + static_cast<size_t>(i) * static_cast<size_t>(height),
            static_cast<size_t>(height)};
  }
  bool has_edge(int c, int d) const;
};

// Enumerates the locally admissible columns compatible with the constant
// rows t (above) and b (below), plus the horizontally compatible pairs.
// Throws NumericError when the projected size exceeds the limits and
// InputError ("strip empty") when no column satisfies the constraints.
ColumnSystem build_column_system(const NnSft& sft, int n, const PeriodicRow& t,
                                 const PeriodicRow& b, const BuildLimits& limits = {});

struct TrimDiagnostics {
  int removed_columns = 0;
  int scc_count = 0;
  int period = 0;  // gcd of cycle lengths over the surviving digraph
  bool is_single_scc = false;
  bool is_primitive = false;
};

struct TrimResult {
  ColumnSystem system;
  TrimDiagnostics diag;
};

// Repeatedly deletes columns with zero in- or out-degree, then analyzes the
// strongly connected structure of what survives. Non-primitive results are
// flagged, not rejected; the pressure pipeline refuses them downstream.
TrimResult trim_to_essential(const ColumnSystem& cs);

// Canonical text form (column list + edge list) for golden-file tests.
std::string canonical_serialization(const ColumnSystem& cs, const Alphabet& alphabet);

}  // namespace strippress
