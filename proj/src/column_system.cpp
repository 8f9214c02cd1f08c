#include "strippress/column_system.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace strippress {

bool ColumnSystem::has_edge(int c, int d) const {
  auto first = col_idx.begin() + row_ptr[static_cast<size_t>(c)];
  auto last = col_idx.begin() + row_ptr[static_cast<size_t>(c) + 1];
  return std::binary_search(first, last, d);
}

ColumnSystem build_column_system(const NnSft& sft, int n, const PeriodicRow& t,
                                 const PeriodicRow& b, const BuildLimits& limits) {
  if (n < 1) throw InputError("strip height must be >= 1");
  if (t.period() != 1 || b.period() != 1)
    throw InputError("build_column_system takes constant boundary rows; recode period-p rows first");
  const int asize = sft.alphabet.size();
  const Sym t0 = t.at(0), b0 = b.at(0);
  if (t0 < 0 || t0 >= asize || b0 < 0 || b0 >= asize)
    throw InputError("boundary row symbol out of range");

  // reach[i*asize + s]: a column can be completed from row i (1-based)
  // holding s up to the top constraint.
  std::vector<char> reach(static_cast<size_t>(n) * asize, 0);
  for (Sym s = 0; s < asize; ++s)
    reach[static_cast<size_t>(n - 1) * asize + static_cast<size_t>(s)] = sft.e2.contains(s, t0) ? 1 : 0;
  for (int i = n - 2; i >= 0; --i)
    for (Sym s = 0; s < asize; ++s) {
      char ok = 0;
      for (Sym u = 0; u < asize && !ok; ++u)
        ok = static_cast<char>(sft.e2.contains(s, u) &&
                               reach[static_cast<size_t>(i + 1) * asize + static_cast<size_t>(u)]);
      reach[static_cast<size_t>(i) * asize + static_cast<size_t>(s)] = ok;
    }

  // Projected column count before any allocation.
  std::vector<double> cnt(static_cast<size_t>(asize), 0.0), nxt(static_cast<size_t>(asize));
  for (Sym s = 0; s < asize; ++s)
    cnt[static_cast<size_t>(s)] = sft.e2.contains(b0, s) ? 1.0 : 0.0;
  for (int i = 1; i < n; ++i) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (Sym s = 0; s < asize; ++s) {
      if (cnt[static_cast<size_t>(s)] == 0.0) continue;
      for (Sym u = 0; u < asize; ++u)
        if (sft.e2.contains(s, u)) nxt[static_cast<size_t>(u)] += cnt[static_cast<size_t>(s)];
    }
    cnt.swap(nxt);
  }
  double projected = 0;
  for (Sym s = 0; s < asize; ++s)
    if (sft.e2.contains(s, t0)) projected += cnt[static_cast<size_t>(s)];
  if (projected > static_cast<double>(limits.max_columns)) {
    std::ostringstream msg;
    msg << "column budget exceeded: projected |C_" << n << "| = ";
    if (projected < 9e18)
      msg << static_cast<long long>(projected);
    else
      msg << projected;
    msg << " > " << limits.max_columns << "; lower n or raise the limit";
    throw NumericError(msg.str());
  }

  ColumnSystem cs;
  cs.height = n;
  cs.bottom = b;
  cs.top = t;
  cs.alphabet_size = asize;

  // Depth-first enumeration in symbol-index order gives the canonical
  // lexicographic column order (bottom row most significant).
  std::vector<Sym> cur(static_cast<size_t>(n));
  auto emit = [&](auto&& self, int row) -> void {
    for (Sym s = 0; s < asize; ++s) {
      if (!reach[static_cast<size_t>(row) * asize + static_cast<size_t>(s)]) continue;
      if (row == 0) {
        if (!sft.e2.contains(b0, s)) continue;
      } else if (!sft.e2.contains(cur[static_cast<size_t>(row - 1)], s)) {
        continue;
      }
      cur[static_cast<size_t>(row)] = s;
      if (row == n - 1)
        cs.cells.insert(cs.cells.end(), cur.begin(), cur.end());
      else
        self(self, row + 1);
    }
  };
  emit(emit, 0);

  const int m = cs.num_columns();
  if (m == 0)
    throw InputError("strip empty: boundary rows are incompatible with e2 at this height");

  cs.row_ptr.assign(static_cast<size_t>(m) + 1, 0);
  long edges = 0;
  for (int c = 0; c < m; ++c) {
    auto cc = cs.column(c);
    for (int d = 0; d < m; ++d) {
      auto dd = cs.column(d);
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        ok = sft.e1.contains(cc[static_cast<size_t>(i)], dd[static_cast<size_t>(i)]);
      if (ok) {
        cs.col_idx.push_back(d);
        if (++edges > limits.max_edges) {
          std::ostringstream msg;
          msg << "edge budget exceeded at height " << n << ": more than "
              << limits.max_edges << " column pairs";
          throw NumericError(msg.str());
        }
      }
    }
    cs.row_ptr[static_cast<size_t>(c) + 1] = edges;
  }
  return cs;
}

namespace {

// Iterative Tarjan; assigns scc id per node, ids ordered by completion.
int strongly_connected_components(int m, const std::vector<long>& row_ptr,
                                  const std::vector<int>& col_idx, std::vector<int>& comp) {
  comp.assign(static_cast<size_t>(m), -1);
  std::vector<int> index(static_cast<size_t>(m), -1), low(static_cast<size_t>(m), 0);
  std::vector<char> on_stack(static_cast<size_t>(m), 0);
  std::vector<int> stack;
  std::vector<std::pair<int, long>> call;  // node, next edge offset
  int next_index = 0, ncomp = 0;

  for (int root = 0; root < m; ++root) {
    if (index[static_cast<size_t>(root)] != -1) continue;
    call.emplace_back(root, row_ptr[static_cast<size_t>(root)]);
    index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = next_index++;
    stack.push_back(root);
    on_stack[static_cast<size_t>(root)] = 1;
    while (!call.empty()) {
      auto& [v, off] = call.back();
      if (off < row_ptr[static_cast<size_t>(v) + 1]) {
        int w = col_idx[static_cast<size_t>(off++)];
        if (index[static_cast<size_t>(w)] == -1) {
          index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = next_index++;
          stack.push_back(w);
          on_stack[static_cast<size_t>(w)] = 1;
          call.emplace_back(w, row_ptr[static_cast<size_t>(w)]);
        } else if (on_stack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(v)] = std::min(low[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
        }
      } else {
        int v_done = v;
        call.pop_back();
        if (!call.empty())
          low[static_cast<size_t>(call.back().first)] =
              std::min(low[static_cast<size_t>(call.back().first)], low[static_cast<size_t>(v_done)]);
        if (low[static_cast<size_t>(v_done)] == index[static_cast<size_t>(v_done)]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<size_t>(w)] = 0;
            comp[static_cast<size_t>(w)] = ncomp;
            if (w == v_done) break;
          }
          ++ncomp;
        }
      }
    }
  }
  return ncomp;
}

// gcd of cycle lengths within one SCC: BFS levels, gcd of level[u]+1-level[v]
// over internal edges.
int scc_period(const std::vector<int>& nodes, const std::vector<int>& comp, int cid,
               const std::vector<long>& row_ptr, const std::vector<int>& col_idx,
               std::vector<int>& level) {
  for (int v : nodes) level[static_cast<size_t>(v)] = -1;
  std::vector<int> queue;
  queue.push_back(nodes.front());
  level[static_cast<size_t>(nodes.front())] = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (long e = row_ptr[static_cast<size_t>(v)]; e < row_ptr[static_cast<size_t>(v) + 1]; ++e) {
      int w = col_idx[static_cast<size_t>(e)];
      if (comp[static_cast<size_t>(w)] != cid || level[static_cast<size_t>(w)] != -1) continue;
      level[static_cast<size_t>(w)] = level[static_cast<size_t>(v)] + 1;
      queue.push_back(w);
    }
  }
  int g = 0;
  for (int v : nodes)
    for (long e = row_ptr[static_cast<size_t>(v)]; e < row_ptr[static_cast<size_t>(v) + 1]; ++e) {
      int w = col_idx[static_cast<size_t>(e)];
      if (comp[static_cast<size_t>(w)] != cid) continue;
      g = std::gcd(g, std::abs(level[static_cast<size_t>(v)] + 1 - level[static_cast<size_t>(w)]));
    }
  return g;
}

}  // namespace

TrimResult trim_to_essential(const ColumnSystem& cs) {
  const int m = cs.num_columns();
  std::vector<long> out_deg(static_cast<size_t>(m), 0), in_deg(static_cast<size_t>(m), 0);
  for (int c = 0; c < m; ++c) {
    out_deg[static_cast<size_t>(c)] = cs.row_ptr[static_cast<size_t>(c) + 1] - cs.row_ptr[static_cast<size_t>(c)];
    for (long e = cs.row_ptr[static_cast<size_t>(c)]; e < cs.row_ptr[static_cast<size_t>(c) + 1]; ++e)
      ++in_deg[static_cast<size_t>(cs.col_idx[static_cast<size_t>(e)])];
  }

  // transpose adjacency for in-degree updates
  std::vector<long> tr_ptr(static_cast<size_t>(m) + 1, 0);
  for (int c = 0; c < m; ++c)
    for (long e = cs.row_ptr[static_cast<size_t>(c)]; e < cs.row_ptr[static_cast<size_t>(c) + 1]; ++e)
      ++tr_ptr[static_cast<size_t>(cs.col_idx[static_cast<size_t>(e)]) + 1];
  for (int c = 0; c < m; ++c) tr_ptr[static_cast<size_t>(c) + 1] += tr_ptr[static_cast<size_t>(c)];
  std::vector<int> tr_idx(static_cast<size_t>(cs.num_edges()));
  {
    std::vector<long> fill = tr_ptr;
    for (int c = 0; c < m; ++c)
      for (long e = cs.row_ptr[static_cast<size_t>(c)]; e < cs.row_ptr[static_cast<size_t>(c) + 1]; ++e)
        tr_idx[static_cast<size_t>(fill[static_cast<size_t>(cs.col_idx[static_cast<size_t>(e)])]++)] = c;
  }

  std::vector<char> removed(static_cast<size_t>(m), 0);
  std::vector<int> queue;
  for (int c = 0; c < m; ++c)
    if (out_deg[static_cast<size_t>(c)] == 0 || in_deg[static_cast<size_t>(c)] == 0) {
      removed[static_cast<size_t>(c)] = 1;
      queue.push_back(c);
    }
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (long e = cs.row_ptr[static_cast<size_t>(v)]; e < cs.row_ptr[static_cast<size_t>(v) + 1]; ++e) {
      int w = cs.col_idx[static_cast<size_t>(e)];
      if (!removed[static_cast<size_t>(w)] && --in_deg[static_cast<size_t>(w)] == 0) {
        removed[static_cast<size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
    for (long e = tr_ptr[static_cast<size_t>(v)]; e < tr_ptr[static_cast<size_t>(v) + 1]; ++e) {
      int w = tr_idx[static_cast<size_t>(e)];
      if (!removed[static_cast<size_t>(w)] && --out_deg[static_cast<size_t>(w)] == 0) {
        removed[static_cast<size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }

  TrimResult result;
  result.diag.removed_columns = static_cast<int>(queue.size());
  if (result.diag.removed_columns == m)
    throw NumericError("degenerate strip: trimming removed every column");

  // compact survivors, preserving canonical order
  std::vector<int> new_id(static_cast<size_t>(m), -1);
  ColumnSystem& trimmed = result.system;
  trimmed.height = cs.height;
  trimmed.bottom = cs.bottom;
  trimmed.top = cs.top;
  trimmed.alphabet_size = cs.alphabet_size;
  int kept = 0;
  for (int c = 0; c < m; ++c)
    if (!removed[static_cast<size_t>(c)]) {
      new_id[static_cast<size_t>(c)] = kept++;
      auto col = cs.column(c);
      trimmed.cells.insert(trimmed.cells.end(), col.begin(), col.end());
    }
  trimmed.row_ptr.assign(static_cast<size_t>(kept) + 1, 0);
  long edges = 0;
  for (int c = 0; c < m; ++c) {
    if (removed[static_cast<size_t>(c)]) continue;
    for (long e = cs.row_ptr[static_cast<size_t>(c)]; e < cs.row_ptr[static_cast<size_t>(c) + 1]; ++e) {
      int w = cs.col_idx[static_cast<size_t>(e)];
      if (removed[static_cast<size_t>(w)]) continue;
      trimmed.col_idx.push_back(new_id[static_cast<size_t>(w)]);
      ++edges;
    }
    trimmed.row_ptr[static_cast<size_t>(new_id[static_cast<size_t>(c)]) + 1] = edges;
  }

  std::vector<int> comp;
  result.diag.scc_count =
      strongly_connected_components(kept, trimmed.row_ptr, trimmed.col_idx, comp);
  result.diag.is_single_scc = (result.diag.scc_count == 1);

  std::vector<std::vector<int>> members(static_cast<size_t>(result.diag.scc_count));
  for (int v = 0; v < kept; ++v) members[static_cast<size_t>(comp[static_cast<size_t>(v)])].push_back(v);
  std::vector<int> level(static_cast<size_t>(kept), -1);
  int g = 0;
  for (int cid = 0; cid < result.diag.scc_count; ++cid)
    g = std::gcd(g, scc_period(members[static_cast<size_t>(cid)], comp, cid, trimmed.row_ptr,
                               trimmed.col_idx, level));
  result.diag.period = g;
  result.diag.is_primitive = result.diag.is_single_scc && g == 1;
  return result;
}

std::string canonical_serialization(const ColumnSystem& cs, const Alphabet& alphabet) {
  bool single_char = true;
  for (const auto& n : alphabet.names())
    if (n.size() != 1) single_char = false;

  std::ostringstream os;
  os << "columns n=" << cs.height << " count=" << cs.num_columns()
     << " bottom=" << alphabet.name(cs.bottom.at(0)) << " top=" << alphabet.name(cs.top.at(0))
     << "\n";
  for (int c = 0; c < cs.num_columns(); ++c) {
    auto col = cs.column(c);
    for (size_t i = 0; i < col.size(); ++i) {
      if (i && !single_char) os << '.';
      os << alphabet.name(col[i]);
    }
    os << "\n";
  }
  os << "edges count=" << cs.num_edges() << "\n";
  for (int c = 0; c < cs.num_columns(); ++c)
    for (long e = cs.row_ptr[static_cast<size_t>(c)]; e < cs.row_ptr[static_cast<size_t>(c) + 1]; ++e)
      os << c << " " << cs.col_idx[static_cast<size_t>(e)] << "\n";
  return os.str();
}

}  // namespace strippress
