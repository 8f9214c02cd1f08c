#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "strippress/interaction.hpp"
#include "strippress/models.hpp"

using namespace strippress;

namespace {

NnInteraction random_integer_interaction(std::mt19937& rng, int asize) {
  std::uniform_int_distribution<int> d(-4, 4);
  NnInteraction phi = NnInteraction::zero(asize);
  for (Sym s = 0; s < asize; ++s) phi.vertex_at(s) = d(rng);
  for (Sym a = 0; a < asize; ++a)
    for (Sym b = 0; b < asize; ++b) {
      phi.hedge_at(a, b) = d(rng);
      phi.vedge_at(a, b) = d(rng);
    }
  return phi;
}

}  // namespace

TEST_CASE("phi_hat on the corner shape") {
  Model hc = model_hard_core(std::exp(1.0));
  Configuration zeros{{Site{0, 0}, 0}, {Site{0, 1}, 0}, {Site{1, 0}, 0}};
  CHECK(phi_hat(NnInteraction::zero(2), zeros) == 0.0);
  CHECK(phi_hat(hc.phi, zeros) == 0.0);

  Configuration one_at_origin{{Site{0, 0}, 1}, {Site{0, 1}, 0}, {Site{1, 0}, 0}};
  CHECK(phi_hat(hc.phi, one_at_origin) == doctest::Approx(-1.0).epsilon(1e-15));

  double beta = 0.7, h = 1.3;
  Model is = model_ising(beta, h);
  // +1 at origin and above, -1 to the right
  Configuration corner{{Site{0, 0}, 0}, {Site{0, 1}, 0}, {Site{1, 0}, 1}};
  CHECK(phi_hat(is.phi, corner) == doctest::Approx(-beta * h).epsilon(1e-14));

  Configuration missing{{Site{0, 0}, 0}, {Site{0, 1}, 0}};
  CHECK_THROWS_AS(phi_hat(is.phi, missing), InputError);
}

TEST_CASE("strip weights on hard-core height-1 strips") {
  double a = 2.5;
  Model hc = model_hard_core(a);
  PeriodicRow zeros = PeriodicRow::constant(0);
  ColumnSystem cs = build_column_system(hc.sft, 1, zeros, zeros);
  StripInteraction w = strip_interaction(hc.phi, cs);
  // edges in canonical order: (0,0), (0,1), (1,0)
  REQUIRE(w.weights.size() == 3);
  CHECK(w.weights[0] == 0.0);
  CHECK(w.weights[1] == 0.0);
  CHECK(w.weights[2] == doctest::Approx(-std::log(a)).epsilon(1e-15));
}

TEST_CASE("strip weights accumulate boundary and edge terms") {
  double beta = 0.37, h = 0.81;
  Model is = model_ising(beta, h);
  PeriodicRow plus = PeriodicRow::constant(0);
  ColumnSystem cs = build_column_system(is.sft, 1, plus, plus);
  StripInteraction w = strip_interaction(is.phi, cs);
  // column +1 next to column -1: vertex -beta*h, two boundary vertical
  // terms beta each, horizontal seam -beta
  REQUIRE(cs.num_columns() == 2);
  long e = -1;
  for (long k = cs.row_ptr[0]; k < cs.row_ptr[1]; ++k)
    if (cs.col_idx[static_cast<size_t>(k)] == 1) e = k;
  REQUIRE(e >= 0);
  CHECK(w.weights[static_cast<size_t>(e)] ==
        doctest::Approx(-beta * h + 2 * beta - beta).epsilon(1e-14));
}

TEST_CASE("zero interaction gives zero weights") {
  Model cb = model_checkerboard(3);
  HigherPower hp = higher_power_sft(cb.sft, 2);
  ColumnSystem cs = build_column_system(hp.sft, 2, PeriodicRow::constant(0),
                                        PeriodicRow::constant(0));
  StripInteraction w = strip_interaction(power_interaction(cb.phi, hp), cs);
  for (double x : w.weights) CHECK(x == 0.0);
}

TEST_CASE("strip weights are linear in the interaction") {
  std::mt19937 rng(1234);
  NnSft hs = hard_square_sft();
  PeriodicRow zeros = PeriodicRow::constant(0);
  ColumnSystem cs = build_column_system(hs, 4, zeros, zeros);
  for (int trial = 0; trial < 20; ++trial) {
    NnInteraction p1 = random_integer_interaction(rng, 2);
    NnInteraction p2 = random_integer_interaction(rng, 2);
    NnInteraction sum = NnInteraction::zero(2);
    for (Sym s = 0; s < 2; ++s) sum.vertex_at(s) = p1.vertex_at(s) + p2.vertex_at(s);
    for (Sym a = 0; a < 2; ++a)
      for (Sym b = 0; b < 2; ++b) {
        sum.hedge_at(a, b) = p1.hedge_at(a, b) + p2.hedge_at(a, b);
        sum.vedge_at(a, b) = p1.vedge_at(a, b) + p2.vedge_at(a, b);
      }
    StripInteraction w1 = strip_interaction(p1, cs);
    StripInteraction w2 = strip_interaction(p2, cs);
    StripInteraction ws = strip_interaction(sum, cs);
    for (size_t i = 0; i < ws.weights.size(); ++i)
      CHECK(ws.weights[i] == w1.weights[i] + w2.weights[i]);  // integer inputs: exact
  }
}

TEST_CASE("power interaction") {
  Model hc = model_hard_core(std::exp(2.0));  // vertex(1) = -2
  HigherPower hp = higher_power_sft(hc.sft, 2);
  NnInteraction p2 = power_interaction(hc.phi, hp);

  CHECK(p2.vertex_at(hp.block_index({0, 0})) == 0.0);
  CHECK(p2.vertex_at(hp.block_index({0, 1})) == -2.0);
  CHECK(p2.vertex_at(hp.block_index({1, 0})) == -2.0);

  // p = 1 is the identity
  HigherPower hp1 = higher_power_sft(hc.sft, 1);
  NnInteraction p1 = power_interaction(hc.phi, hp1);
  CHECK(p1.vertex == hc.phi.vertex);
  CHECK(p1.hedge == hc.phi.hedge);
  CHECK(p1.vedge == hc.phi.vedge);

  // zero stays zero at any power
  NnInteraction z2 = power_interaction(NnInteraction::zero(2), hp);
  CHECK(z2.is_zero());
}

TEST_CASE("power interaction splits horizontal terms left-block-plus-seam") {
  std::mt19937 rng(99);
  NnSft full(Alphabet({"a", "b"}), PairSet::full(2), PairSet::full(2));
  NnInteraction phi = random_integer_interaction(rng, 2);
  HigherPower hp = higher_power_sft(full, 3);
  NnInteraction pp = power_interaction(phi, hp);
  // pick two blocks and check the definition term by term
  std::vector<Sym> x = {0, 1, 1}, y = {1, 0, 1};
  Sym xi = hp.block_index(x), yi = hp.block_index(y);
  double expect_h = phi.hedge_at(0, 1) + phi.hedge_at(1, 1) + phi.hedge_at(1, 1);
  CHECK(pp.hedge_at(xi, yi) == expect_h);
  double expect_v = phi.vedge_at(0, 1) + phi.vedge_at(1, 0) + phi.vedge_at(1, 1);
  CHECK(pp.vedge_at(xi, yi) == expect_v);
  double expect_vertex = phi.vertex_at(0) + phi.vertex_at(1) + phi.vertex_at(1);
  CHECK(pp.vertex_at(xi) == expect_vertex);
}

TEST_CASE("builtin models") {
  Model a1 = model_hard_core(1.0);
  CHECK(a1.phi.is_zero());  // a = 1 is the entropy case

  Model a2 = model_hard_core(2.0);
  CHECK(a2.phi.vertex_at(1) == doctest::Approx(-std::log(2.0)).epsilon(1e-16));
  CHECK(a2.phi.vertex_at(0) == 0.0);

  Model ae = model_hard_core(std::exp(1.0));
  CHECK(ae.phi.vertex_at(1) == doctest::Approx(-1.0).epsilon(1e-15));

  Model raw = model_hard_core(2.0, true);
  CHECK(raw.phi.vertex_at(1) == 2.0);

  CHECK_THROWS_AS(model_hard_core(0.0), InputError);
  CHECK_THROWS_AS(model_hard_core(-1.0), InputError);

  Model is = model_ising(1.0, 0.0);
  CHECK(is.phi.hedge_at(0, 0) == 1.0);   // (+1,+1) edge
  CHECK(is.phi.hedge_at(0, 1) == -1.0);  // (+1,-1)
  CHECK(is.phi.vertex_at(0) == 0.0);
  Model is0 = model_ising(0.0, 0.5);
  CHECK(is0.phi.is_zero());

  Model cb = model_checkerboard(3);
  CHECK(cb.sft.e1.count() == 6);
  CHECK(cb.phi.is_zero());
  CHECK(model_checkerboard(12).sft.e1.count() == 132);
  CHECK_THROWS_AS(model_checkerboard(1), InputError);
}

TEST_CASE("builtin parser") {
  Model m = parse_builtin("hard_core a=1.5");
  CHECK(m.phi.vertex_at(1) == doctest::Approx(-std::log(1.5)));
  CHECK(parse_builtin("ising beta=0.02 h=0.5").ising.has_value());
  CHECK(parse_builtin("checkerboard k=4").sft.alphabet.size() == 4);
  CHECK(parse_builtin("zero").phi.is_zero());
  CHECK_THROWS_AS(parse_builtin("bogus x=1"), ModelParseError);
  CHECK_THROWS_AS(parse_builtin("hard_core"), ModelParseError);
  CHECK_THROWS_AS(parse_builtin("hard_core a=1 extra=2"), ModelParseError);
  CHECK_THROWS_AS(parse_builtin("checkerboard k=2.5"), ModelParseError);
}
