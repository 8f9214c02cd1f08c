#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "strippress/column_system.hpp"
#include "strippress/models.hpp"
#include "strippress/sft.hpp"

using namespace strippress;

namespace {

NnSft two_checker_horizontal() {
  // adjacent symbols must differ horizontally, anything goes vertically
  Alphabet a({"0", "1"});
  return NnSft(a, PairSet(2, {{0, 1}, {1, 0}}), PairSet::full(2));
}

long fib(int k) {  // F_1 = F_2 = 1
  long a = 1, b = 1;
  for (int i = 2; i < k; ++i) {
    long c = a + b;
    a = b;
    b = c;
  }
  return k <= 2 ? 1 : b;
}

}  // namespace

TEST_CASE("alphabet invariants") {
  CHECK_THROWS_AS(Alphabet({"x"}), InputError);
  CHECK_THROWS_AS(Alphabet({"x", "x"}), InputError);
  Alphabet a({"0", "1", "2"});
  CHECK(a.size() == 3);
  CHECK(a.index_of("2") == 2);
  CHECK(a.index_of("q") == -1);
}

TEST_CASE("local admissibility") {
  NnSft hs = hard_square_sft();

  Configuration single{{Site{0, 0}, 1}};
  CHECK(is_locally_admissible(hs, single));  // no edges inside the shape

  Configuration pair{{Site{0, 0}, 1}, {Site{1, 0}, 1}};
  CHECK_FALSE(is_locally_admissible(hs, pair));

  Configuration vpair{{Site{0, 0}, 1}, {Site{0, 1}, 1}};
  CHECK_FALSE(is_locally_admissible(hs, vpair));

  Configuration ok{{Site{0, 0}, 1}, {Site{1, 0}, 0}, {Site{0, 1}, 0}};
  CHECK(is_locally_admissible(hs, ok));

  // gaps in the shape are not checked
  Configuration gap{{Site{0, 0}, 1}, {Site{2, 0}, 1}};
  CHECK(is_locally_admissible(hs, gap));

  NnSft full = model_ising(0.3, 0.1).sft;
  Configuration any{{Site{0, 0}, 0}, {Site{1, 0}, 1}, {Site{0, 1}, 1}};
  CHECK(is_locally_admissible(full, any));

  Configuration bad{{Site{0, 0}, 7}};
  CHECK_THROWS_AS(is_locally_admissible(hs, bad), InputError);
}

TEST_CASE("hard-square column systems at small heights") {
  NnSft hs = hard_square_sft();
  PeriodicRow zeros = PeriodicRow::constant(0);

  ColumnSystem c1 = build_column_system(hs, 1, zeros, zeros);
  REQUIRE(c1.num_columns() == 2);
  CHECK(c1.column(0)[0] == 0);
  CHECK(c1.column(1)[0] == 1);
  CHECK(c1.has_edge(0, 0));
  CHECK(c1.has_edge(0, 1));
  CHECK(c1.has_edge(1, 0));
  CHECK_FALSE(c1.has_edge(1, 1));

  ColumnSystem c2 = build_column_system(hs, 2, zeros, zeros);
  REQUIRE(c2.num_columns() == 3);  // 00, 01, 10 bottom-first
  CHECK(std::vector<Sym>(c2.column(0).begin(), c2.column(0).end()) == std::vector<Sym>{0, 0});
  CHECK(std::vector<Sym>(c2.column(1).begin(), c2.column(1).end()) == std::vector<Sym>{0, 1});
  CHECK(std::vector<Sym>(c2.column(2).begin(), c2.column(2).end()) == std::vector<Sym>{1, 0});
  CHECK(c2.num_edges() == 7);  // all 9 minus (01,01) and (10,10)
  CHECK_FALSE(c2.has_edge(1, 1));
  CHECK_FALSE(c2.has_edge(2, 2));

  CHECK(build_column_system(hs, 3, zeros, zeros).num_columns() == 5);
}

TEST_CASE("hard-square column counts are Fibonacci and match brute force") {
  NnSft hs = hard_square_sft();
  PeriodicRow zeros = PeriodicRow::constant(0);
  for (int n = 1; n <= 15; ++n) {
    ColumnSystem cs = build_column_system(hs, n, zeros, zeros);
    auto brute = oracles::brute_columns(hs, n, 0, 0);
    REQUIRE(cs.num_columns() == static_cast<int>(brute.size()));
    CHECK(cs.num_columns() == fib(n + 2));
    for (int i = 0; i < cs.num_columns(); ++i) {
      auto col = cs.column(i);
      CHECK(std::vector<Sym>(col.begin(), col.end()) == brute[static_cast<size_t>(i)]);
    }
  }
}

TEST_CASE("column enumeration is deterministic") {
  NnSft hs = hard_square_sft();
  PeriodicRow zeros = PeriodicRow::constant(0);
  ColumnSystem a = build_column_system(hs, 6, zeros, zeros);
  ColumnSystem b = build_column_system(hs, 6, zeros, zeros);
  CHECK(canonical_serialization(a, hs.alphabet) == canonical_serialization(b, hs.alphabet));
}

TEST_CASE("strip empty error") {
  // 2-checkerboard with a constant boundary symbol leaves no admissible column
  Model cb = model_checkerboard(2);
  PeriodicRow ones = PeriodicRow::constant(0);
  CHECK_THROWS_AS(build_column_system(cb.sft, 2, ones, ones), InputError);
}

TEST_CASE("column budget aborts with projected size") {
  NnSft full = model_ising(0, 0).sft;
  PeriodicRow row = PeriodicRow::constant(0);
  BuildLimits limits;
  limits.max_columns = 100;
  CHECK_THROWS_AS(build_column_system(full, 20, row, row, limits), NumericError);
  try {
    build_column_system(full, 20, row, row, limits);
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("1048576") != std::string::npos);  // 2^20
  }
}

TEST_CASE("trim keeps primitive systems unchanged") {
  NnSft hs = hard_square_sft();
  PeriodicRow zeros = PeriodicRow::constant(0);
  ColumnSystem c2 = build_column_system(hs, 2, zeros, zeros);
  TrimResult t = trim_to_essential(c2);
  CHECK(t.diag.removed_columns == 0);
  CHECK(t.diag.is_single_scc);
  CHECK(t.diag.period == 1);
  CHECK(t.diag.is_primitive);
  CHECK(t.system.num_columns() == 3);
  CHECK(t.system.num_edges() == 7);

  // idempotence
  TrimResult t2 = trim_to_essential(t.system);
  CHECK(t2.diag.removed_columns == 0);
  CHECK(canonical_serialization(t2.system, hs.alphabet) ==
        canonical_serialization(t.system, hs.alphabet));
}

TEST_CASE("trim flags period-2 systems") {
  NnSft alt = two_checker_horizontal();
  PeriodicRow zeros = PeriodicRow::constant(0);
  ColumnSystem cs = build_column_system(alt, 1, zeros, zeros);
  TrimResult t = trim_to_essential(cs);
  CHECK(t.diag.is_single_scc);
  CHECK(t.diag.period == 2);
  CHECK_FALSE(t.diag.is_primitive);
}

TEST_CASE("trim on full shifts") {
  NnSft full = model_ising(0, 0).sft;
  PeriodicRow row = PeriodicRow::constant(1);
  for (int n : {1, 3}) {
    ColumnSystem cs = build_column_system(full, n, row, row);
    TrimResult t = trim_to_essential(cs);
    CHECK(t.diag.removed_columns == 0);
    CHECK(t.diag.is_primitive);
  }
}

TEST_CASE("trim removes dead-end columns") {
  // single column alphabet {a->b} plus self-loops on a only: b has no out-edge
  Alphabet a({"a", "b"});
  NnSft sft(a, PairSet(2, {{0, 0}, {0, 1}}), PairSet::full(2));
  PeriodicRow row = PeriodicRow::constant(0);
  ColumnSystem cs = build_column_system(sft, 1, row, row);
  REQUIRE(cs.num_columns() == 2);
  TrimResult t = trim_to_essential(cs);
  CHECK(t.diag.removed_columns == 1);
  CHECK(t.system.num_columns() == 1);
  CHECK(t.diag.is_primitive);

  // everything dies when nothing can cycle
  NnSft dead(a, PairSet(2, {{0, 1}}), PairSet::full(2));
  ColumnSystem cs2 = build_column_system(dead, 1, row, row);
  CHECK_THROWS_AS(trim_to_essential(cs2), NumericError);
}

TEST_CASE("higher power code") {
  NnSft hs = hard_square_sft();

  HigherPower p1 = higher_power_sft(hs, 1);
  CHECK(p1.sft.alphabet.size() == 2);
  CHECK(p1.sft.e1.pairs() == hs.e1.pairs());
  CHECK(p1.sft.e2.pairs() == hs.e2.pairs());

  HigherPower p2 = higher_power_sft(hs, 2);
  REQUIRE(p2.sft.alphabet.size() == 3);  // 00, 01, 10
  CHECK(p2.sft.alphabet.names() == std::vector<std::string>{"00", "01", "10"});
  CHECK(p2.block_index({0, 1}) == 1);
  CHECK(p2.block_index({1, 1}) == -1);
  // seam rule: block ending in 1 cannot precede a block starting with 1
  CHECK(p2.sft.e1.contains(0, 1));
  CHECK_FALSE(p2.sft.e1.contains(1, 2));  // 01 then 10 puts 1 next to 1
  // stacking rule is columnwise
  CHECK(p2.sft.e2.contains(1, 2));  // 01 under 10
  CHECK_FALSE(p2.sft.e2.contains(1, 1));

  NnSft full3(Alphabet({"a", "b", "c"}), PairSet::full(3), PairSet::full(3));
  CHECK(higher_power_sft(full3, 2).sft.alphabet.size() == 9);

  CHECK_THROWS_AS(higher_power_sft(hs, 0), InputError);
}

TEST_CASE("recoded column counts match 2D brute force") {
  std::vector<NnSft> sfts = {hard_square_sft(), model_checkerboard(3).sft,
                             two_checker_horizontal()};
  for (const auto& sft : sfts) {
    for (int p = 1; p <= 3; ++p) {
      HigherPower hp = higher_power_sft(sft, p);
      for (int n = 1; n <= 3; ++n) {
        // boundary rows: first admissible block, held constant
        PeriodicRow orig(hp.blocks[0]);
        PeriodicRow recoded = PeriodicRow::constant(0);
        long brute = oracles::brute_rectangles(sft, n, p, orig, orig);
        if (brute == 0) {
          CHECK_THROWS_AS(build_column_system(hp.sft, n, recoded, recoded), InputError);
        } else {
          ColumnSystem cs = build_column_system(hp.sft, n, recoded, recoded);
          CHECK(cs.num_columns() == brute);
        }
      }
    }
  }
}

TEST_CASE("safe symbols") {
  CHECK(find_safe_symbols(hard_square_sft()) == std::vector<Sym>{0});
  NnSft full = model_ising(1, 0).sft;
  CHECK(find_safe_symbols(full) == std::vector<Sym>{0, 1});
  CHECK(find_safe_symbols(model_checkerboard(12).sft).empty());
}

TEST_CASE("candidate boundary rows") {
  auto rows = candidate_boundary_rows(hard_square_sft(), 1, 4);
  REQUIRE(rows.size() == 1);  // all-zeros; all-ones fails horizontally
  CHECK(rows[0].row == PeriodicRow::constant(0));
  CHECK(rows[0].verified_depth == 4);

  auto full_rows = candidate_boundary_rows(model_ising(0, 0).sft, 1, 3);
  CHECK(full_rows.size() == 2);

  auto cb = candidate_boundary_rows(model_checkerboard(12).sft, 2, 3);
  bool has12 = false;
  for (const auto& c : cb)
    if (c.row == PeriodicRow({0, 1})) has12 = true;
  CHECK(has12);
  // no period-1 candidates exist for a checkerboard
  for (const auto& c : cb) CHECK(c.row.period() == 2);

  CHECK_THROWS_AS(candidate_boundary_rows(hard_square_sft(), 0, 1), InputError);
}

TEST_CASE("periodic row indexing wraps both ways") {
  PeriodicRow r({3, 5});
  CHECK(r.at(0) == 3);
  CHECK(r.at(1) == 5);
  CHECK(r.at(2) == 3);
  CHECK(r.at(-1) == 5);
  CHECK(r.at(-2) == 3);
}
