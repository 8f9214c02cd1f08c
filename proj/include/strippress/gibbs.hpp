#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strippress/interaction.hpp"
#include "strippress/models.hpp"
#include "strippress/sft.hpp"

namespace strippress {

// Rigorous lower bound on the Z^2 site-percolation threshold; the default
// gate. Anything above it (e.g. the 0.5927 simulation estimate) is flagged
// non-rigorous in reports.
inline constexpr double kDefaultPcBound = 0.556;

// Configuration on the four neighbors of the origin.
struct SiteBoundary {
  Sym up = 0;
  Sym down = 0;
  Sym left = 0;
  Sym right = 0;
  bool operator==(const SiteBoundary&) const = default;
};

struct SiteDistribution {
  std::vector<double> probs;  // indexed by symbol, sums to 1
};

bool is_fillable(const NnSft& sft, const SiteBoundary& b);

// All boundaries some center symbol completes admissibly, in lexicographic
// (up, down, left, right) order.
std::vector<SiteBoundary> fillable_boundaries(const NnSft& sft);

// Single-site conditional law: weight of center x is
// exp(-(vertex(x) + hedge(left,x) + hedge(x,right) + vedge(down,x)
//       + vedge(x,up))) over admissible fillings, normalized.
SiteDistribution site_distribution(const NnInteraction& phi, const NnSft& sft,
                                   const SiteBoundary& b);

// (1/2) sum |mu - nu|; equals 1 iff the supports are disjoint.
double variational_distance(const SiteDistribution& mu, const SiteDistribution& nu);

// Max variational distance between single-site laws over fillable boundary
// pairs. Upper-bounds the influence coefficient taken over globally
// admissible boundaries, so q_hat < p_c certifies the gate hypothesis.
double q_hat(const NnInteraction& phi, const NnSft& sft);

struct ApplicabilityReport {
  double q_hat_value = 0;
  double p_c_bound = kDefaultPcBound;
  bool passes_qhat = false;

  double safe_fraction = 0;
  bool passes_manysafe = false;  // safe_fraction > 1 - p_c, entropy-case certificate

  double min_neighbor_fraction = 0;
  bool passes_manyadj = false;  // > 1 - p_c/(4(1+p_c)), entropy-case certificate

  bool zero_interaction = false;

  // Ising-only sufficient condition 2*beta*(4-|h|) < log(p_c/(1-p_c)).
  std::optional<double> ising_condition_lhs;
  std::optional<double> ising_condition_rhs;
  std::optional<bool> passes_ising_sufficient;
  std::optional<double> constant_boundary_distance;  // d(all-plus, all-minus)

  std::vector<std::string> notes;

  // Certificate that the approximation hypotheses hold: q_hat < p_c always
  // works; the safe-symbol and neighbor-fraction routes apply only to the
  // zero interaction.
  bool hypothesis_certified() const {
    return passes_qhat || (zero_interaction && (passes_manysafe || passes_manyadj));
  }
};

ApplicabilityReport applicability(const NnInteraction& phi, const NnSft& sft,
                                  double p_c_bound,
                                  const std::optional<IsingParams>& ising = std::nullopt);

// Human-readable report followed by a machine-readable key=value block.
std::string render_report(const ApplicabilityReport& report);

}  // namespace strippress
