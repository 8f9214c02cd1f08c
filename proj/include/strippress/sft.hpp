#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strippress/errors.hpp"

namespace strippress {

// Symbol index into an Alphabet, 0..|A|-1.
using Sym = int;

class Alphabet {
 public:
  // Names must be distinct and non-empty; at least two symbols.
  explicit Alphabet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(Sym s) const { return names_.at(static_cast<size_t>(s)); }
  const std::vector<std::string>& names() const { return names_; }
  // -1 if the name is unknown.
  Sym index_of(const std::string& name) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> names_;
};

// Set of ordered symbol pairs, dense membership table.
class PairSet {
 public:
  PairSet(int alphabet_size, const std::vector<std::pair<Sym, Sym>>& pairs);

  static PairSet full(int alphabet_size);
  static PairSet unequal(int alphabet_size);

  bool contains(Sym a, Sym b) const {
    return table_[static_cast<size_t>(a) * size_ + static_cast<size_t>(b)] != 0;
  }
  int alphabet_size() const { return size_; }
  long count() const;
  // Sorted (a, b) list.
  std::vector<std::pair<Sym, Sym>> pairs() const;

  bool operator==(const PairSet&) const = default;

 private:
  int size_;
  std::vector<char> table_;
};

// Nearest-neighbor Z^2 shift of finite type: allowed horizontal pairs e1
// stored as (left, right), allowed vertical pairs e2 stored as
// (lower, upper). That orientation convention holds everywhere: in code,
// model files, and serialized output.
struct NnSft {
  Alphabet alphabet;
  PairSet e1;
  PairSet e2;

  NnSft(Alphabet a, PairSet h, PairSet v);

  bool operator==(const NnSft&) const = default;
};

struct Site {
  int x = 0;
  int y = 0;
  auto operator<=>(const Site&) const = default;
};

// Finite configuration: a symbol per site of a finite shape.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::initializer_list<std::pair<Site, Sym>> cells);

  void set(Site s, Sym v) { values_[s] = v; }
  std::optional<Sym> at(Site s) const;
  const std::map<Site, Sym>& cells() const { return values_; }

 private:
  std::map<Site, Sym> values_;
};

// Bi-infinite periodic row word^inf; value at horizontal coordinate i is
// word[i mod p].
class PeriodicRow {
 public:
  explicit PeriodicRow(std::vector<Sym> word);
  static PeriodicRow constant(Sym s) { return PeriodicRow({s}); }

  int period() const { return static_cast<int>(word_.size()); }
  Sym at(long i) const;
  const std::vector<Sym>& word() const { return word_; }

  bool operator==(const PeriodicRow&) const = default;

 private:
  std::vector<Sym> word_;
};

// True iff every horizontal pair inside the shape is in e1 and every
// vertical pair is in e2. Pairs straddling the shape boundary are not
// checked. Out-of-range symbols raise InputError.
bool is_locally_admissible(const NnSft& sft, const Configuration& config);

// Horizontal p-block recoding. The recoded alphabet is the set of locally
// admissible horizontal p-blocks; `blocks[i]` lists the member symbols of
// recoded symbol i, in left-to-right order.
struct HigherPower {
  NnSft sft;
  std::vector<std::vector<Sym>> blocks;
  int p = 1;

  // -1 if the block is not an admissible p-block.
  Sym block_index(const std::vector<Sym>& block) const;
};

HigherPower higher_power_sft(const NnSft& sft, int p);

// Symbols legal next to every symbol in every direction.
std::vector<Sym> find_safe_symbols(const NnSft& sft);

struct CandidateRow {
  PeriodicRow row;
  int verified_depth = 0;  // extension checked this many rows up and down
};

// Bounded search for boundary-row candidates: periodic rows of period
// <= max_period that are horizontally admissible (wrapping) and extend
// periodically to a locally admissible strip `depth` rows above and below.
// A semi-decision: absence from the result proves nothing.
std::vector<CandidateRow> candidate_boundary_rows(const NnSft& sft, int max_period,
                                                  int depth);

}  // namespace strippress
