#pragma once

#include <optional>
#include <string>

#include "strippress/interaction.hpp"
#include "strippress/sft.hpp"

namespace strippress {

struct IsingParams {
  double beta = 0;
  double h = 0;
};

NnSft hard_square_sft();

struct Model {
  NnSft sft;
  NnInteraction phi;
  std::string description;
  PeriodicRow default_bottom = PeriodicRow::constant(0);
  PeriodicRow default_top = PeriodicRow::constant(0);
  std::optional<IsingParams> ising;  // set only for the Ising builtin

  Model() : sft(hard_square_sft()), phi(NnInteraction::zero(2)) {}
  Model(NnSft s, NnInteraction p, std::string d, PeriodicRow b, PeriodicRow t,
        std::optional<IsingParams> i)
      : sft(std::move(s)),
        phi(std::move(p)),
        description(std::move(d)),
        default_bottom(std::move(b)),
        default_top(std::move(t)),
        ising(i) {}
};

// Hard-core model with activity a: weight a on symbol 1 under the exp(-phi)
// convention, i.e. vertex(1) = -log a. The raw vertex(1) = a variant sits
// behind raw_vertex_value for comparison runs.
Model model_hard_core(double a, bool raw_vertex_value = false);

// Ising antiferromagnet on the full {+1,-1} shift: vertex(u) = -beta*h*u,
// edge(u,v) = beta*u*v both directions.
Model model_ising(double beta, double h);

// k symbols, adjacent sites must differ, zero interaction.
Model model_checkerboard(int k);

// Zero interaction over a given shift.
Model model_zero(NnSft sft, PeriodicRow bottom, PeriodicRow top, std::string description);

// Builtin selector: "hard_core a=1.5", "ising beta=0.02 h=0",
// "checkerboard k=12", "zero" (zero interaction on hard squares).
Model parse_builtin(const std::string& text);

// Canonical text used for checkpoint fingerprints and reports.
std::string describe(const Model& model);

}  // namespace strippress
