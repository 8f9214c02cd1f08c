#include "strippress/sft.hpp"

#include <algorithm>
#include <set>

namespace strippress {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) throw InputError("alphabet needs at least two symbols");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("empty symbol name");
    if (!seen.insert(n).second) throw InputError("duplicate symbol name: " + n);
  }
}

Sym Alphabet::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Sym>(i);
  return -1;
}

PairSet::PairSet(int alphabet_size, const std::vector<std::pair<Sym, Sym>>& pairs)
    : size_(alphabet_size), table_(static_cast<size_t>(alphabet_size) * alphabet_size, 0) {
  if (alphabet_size <= 0) throw InputError("pair set over empty alphabet");
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= size_ || b < 0 || b >= size_)
      throw InputError("pair symbol out of range");
    table_[static_cast<size_t>(a) * size_ + b] = 1;
  }
}

PairSet PairSet::full(int alphabet_size) {
  PairSet p(alphabet_size, {});
  std::fill(p.table_.begin(), p.table_.end(), 1);
  return p;
}

PairSet PairSet::unequal(int alphabet_size) {
  PairSet p = full(alphabet_size);
  for (int a = 0; a < alphabet_size; ++a)
    p.table_[static_cast<size_t>(a) * alphabet_size + a] = 0;
  return p;
}

long PairSet::count() const {
  long c = 0;
  for (char v : table_) c += v;
  return c;
}

std::vector<std::pair<Sym, Sym>> PairSet::pairs() const {
  std::vector<std::pair<Sym, Sym>> out;
  for (Sym a = 0; a < size_; ++a)
    for (Sym b = 0; b < size_; ++b)
      if (contains(a, b)) out.emplace_back(a, b);
  return out;
}

NnSft::NnSft(Alphabet a, PairSet h, PairSet v)
    : alphabet(std::move(a)), e1(std::move(h)), e2(std::move(v)) {
  if (e1.alphabet_size() != alphabet.size() || e2.alphabet_size() != alphabet.size())
    throw InputError("pair sets sized for a different alphabet");
}

Configuration::Configuration(std::initializer_list<std::pair<Site, Sym>> cells) {
  for (const auto& [s, v] : cells) values_[s] = v;
}

std::optional<Sym> Configuration::at(Site s) const {
  auto it = values_.find(s);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

PeriodicRow::PeriodicRow(std::vector<Sym> word) : word_(std::move(word)) {
  if (word_.empty()) throw InputError("periodic row needs a nonempty word");
}

Sym PeriodicRow::at(long i) const {
  long p = static_cast<long>(word_.size());
  long r = i % p;
  if (r < 0) r += p;
  return word_[static_cast<size_t>(r)];
}

bool is_locally_admissible(const NnSft& sft, const Configuration& config) {
  const int asize = sft.alphabet.size();
  for (const auto& [site, v] : config.cells()) {
    if (v < 0 || v >= asize) throw InputError("symbol index out of range");
    if (auto right = config.at({site.x + 1, site.y}))
      if (!sft.e1.contains(v, *right)) return false;
    if (auto upper = config.at({site.x, site.y + 1}))
      if (!sft.e2.contains(v, *upper)) return false;
  }
  return true;
}

namespace {

std::string block_name(const Alphabet& a, const std::vector<Sym>& block) {
  bool single_char = true;
  for (Sym s : block)
    if (a.name(s).size() != 1) single_char = false;
  std::string out;
  for (size_t i = 0; i < block.size(); ++i) {
    if (i && !single_char) out += '.';
    out += a.name(block[i]);
  }
  return out;
}

// All horizontally locally admissible p-blocks, lexicographic.
std::vector<std::vector<Sym>> admissible_blocks(const NnSft& sft, int p) {
  std::vector<std::vector<Sym>> out;
  std::vector<Sym> cur(static_cast<size_t>(p));
  const int asize = sft.alphabet.size();
  int i = 0;
  cur[0] = -1;
  while (i >= 0) {
    ++cur[static_cast<size_t>(i)];
    if (cur[static_cast<size_t>(i)] >= asize) {
      --i;
      continue;
    }
    if (i > 0 && !sft.e1.contains(cur[static_cast<size_t>(i - 1)], cur[static_cast<size_t>(i)]))
      continue;
    if (i == p - 1) {
      out.push_back(cur);
    } else {
      ++i;
      cur[static_cast<size_t>(i)] = -1;
    }
  }
  return out;
}

}  // namespace

Sym HigherPower::block_index(const std::vector<Sym>& block) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), block);
  if (it == blocks.end() || *it != block) return -1;
  return static_cast<Sym>(it - blocks.begin());
}

HigherPower higher_power_sft(const NnSft& sft, int p) {
  if (p < 1) throw InputError("higher power code needs p >= 1");
  auto blocks = admissible_blocks(sft, p);
  if (blocks.size() < 2)
    throw InputError("higher power code degenerate: fewer than two admissible blocks");

  std::vector<std::string> names;
  names.reserve(blocks.size());
  for (const auto& b : blocks) names.push_back(block_name(sft.alphabet, b));

  const int m = static_cast<int>(blocks.size());
  std::vector<std::pair<Sym, Sym>> h, v;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      // Horizontal: only the seam is new; block interiors are admissible.
      if (sft.e1.contains(blocks[static_cast<size_t>(i)].back(), blocks[static_cast<size_t>(j)].front()))
        h.emplace_back(i, j);
      bool stacked = true;  // i below, j above, columnwise
      for (int k = 0; k < p && stacked; ++k)
        stacked = sft.e2.contains(blocks[static_cast<size_t>(i)][static_cast<size_t>(k)],
                                  blocks[static_cast<size_t>(j)][static_cast<size_t>(k)]);
      if (stacked) v.emplace_back(i, j);
    }
  }
  return HigherPower{NnSft(Alphabet(std::move(names)), PairSet(m, h), PairSet(m, v)),
                     std::move(blocks), p};
}

std::vector<Sym> find_safe_symbols(const NnSft& sft) {
  std::vector<Sym> out;
  const int asize = sft.alphabet.size();
  for (Sym a = 0; a < asize; ++a) {
    bool safe = true;
    for (Sym b = 0; b < asize && safe; ++b)
      safe = sft.e1.contains(a, b) && sft.e1.contains(b, a) && sft.e2.contains(a, b) &&
             sft.e2.contains(b, a);
    if (safe) out.push_back(a);
  }
  return out;
}

namespace {

// Words of length q over the alphabet that are horizontally admissible as
// q-periodic rows (wrapping pair included), lexicographic.
std::vector<std::vector<Sym>> cylinder_rows(const NnSft& sft, int q) {
  std::vector<std::vector<Sym>> all;
  std::vector<Sym> cur(static_cast<size_t>(q), 0);
  const int asize = sft.alphabet.size();
  while (true) {
    bool ok = true;
    for (int i = 0; i < q && ok; ++i)
      ok = sft.e1.contains(cur[static_cast<size_t>(i)], cur[static_cast<size_t>((i + 1) % q)]);
    if (ok) all.push_back(cur);
    int i = q - 1;
    while (i >= 0 && cur[static_cast<size_t>(i)] == asize - 1) cur[static_cast<size_t>(i--)] = 0;
    if (i < 0) break;
    ++cur[static_cast<size_t>(i)];
  }
  return all;
}

bool is_primitive_word(const std::vector<Sym>& w) {
  const int q = static_cast<int>(w.size());
  for (int d = 1; d < q; ++d) {
    if (q % d != 0) continue;
    bool rep = true;
    for (int i = d; i < q && rep; ++i) rep = (w[static_cast<size_t>(i)] == w[static_cast<size_t>(i % d)]);
    if (rep) return false;
  }
  return true;
}

}  // namespace

std::vector<CandidateRow> candidate_boundary_rows(const NnSft& sft, int max_period,
                                                  int depth) {
  if (max_period < 1 || depth < 1) throw InputError("max_period and depth must be >= 1");
  std::vector<CandidateRow> out;
  for (int q = 1; q <= max_period; ++q) {
    double projected = 1;
    for (int i = 0; i < q; ++i) projected *= sft.alphabet.size();
    if (projected > (1 << 20))
      throw InputError("candidate row search too large: |A|^p exceeds 2^20 words");

    auto rows = cylinder_rows(sft, q);
    const int m = static_cast<int>(rows.size());
    // up[i] counts how many rows of upward extension row i admits, capped at
    // depth; same for down with the roles of e2 swapped.
    std::vector<std::vector<char>> step(static_cast<size_t>(m), std::vector<char>(static_cast<size_t>(m)));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        bool ok = true;  // i below j
        for (int k = 0; k < q && ok; ++k)
          ok = sft.e2.contains(rows[static_cast<size_t>(i)][static_cast<size_t>(k)],
                               rows[static_cast<size_t>(j)][static_cast<size_t>(k)]);
        step[static_cast<size_t>(i)][static_cast<size_t>(j)] = ok ? 1 : 0;
      }
    std::vector<char> up(static_cast<size_t>(m), 1), dn(static_cast<size_t>(m), 1), nxt(static_cast<size_t>(m));
    for (int d = 0; d < depth; ++d) {
      for (int i = 0; i < m; ++i) {
        char ok = 0;
        for (int j = 0; j < m && !ok; ++j)
          ok = static_cast<char>(step[static_cast<size_t>(i)][static_cast<size_t>(j)] && up[static_cast<size_t>(j)]);
        nxt[static_cast<size_t>(i)] = ok;
      }
      up.swap(nxt);
      for (int i = 0; i < m; ++i) {
        char ok = 0;
        for (int j = 0; j < m && !ok; ++j)
          ok = static_cast<char>(step[static_cast<size_t>(j)][static_cast<size_t>(i)] && dn[static_cast<size_t>(j)]);
        nxt[static_cast<size_t>(i)] = ok;
      }
      dn.swap(nxt);
    }
    for (int i = 0; i < m; ++i) {
      if (!is_primitive_word(rows[static_cast<size_t>(i)])) continue;  // listed at their true period
      if (up[static_cast<size_t>(i)] && dn[static_cast<size_t>(i)])
        out.push_back({PeriodicRow(rows[static_cast<size_t>(i)]), depth});
    }
  }
  return out;
}

}  // namespace strippress
