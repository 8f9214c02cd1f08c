#include "strippress/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace strippress {

bool is_fillable(const NnSft& sft, const SiteBoundary& b) {
  for (Sym x = 0; x < sft.alphabet.size(); ++x)
    if (sft.e1.contains(b.left, x) && sft.e1.contains(x, b.right) &&
        sft.e2.contains(b.down, x) && sft.e2.contains(x, b.up))
      return true;
  return false;
}

std::vector<SiteBoundary> fillable_boundaries(const NnSft& sft) {
  const int a = sft.alphabet.size();
  std::vector<SiteBoundary> out;
  for (Sym up = 0; up < a; ++up)
    for (Sym down = 0; down < a; ++down)
      for (Sym left = 0; left < a; ++left)
        for (Sym right = 0; right < a; ++right) {
          SiteBoundary b{up, down, left, right};
          if (is_fillable(sft, b)) out.push_back(b);
        }
  return out;
}

SiteDistribution site_distribution(const NnInteraction& phi, const NnSft& sft,
                                   const SiteBoundary& b) {
  const int a = sft.alphabet.size();
  if (phi.alphabet_size != a)
    throw InputError("interaction and shift have different alphabets");
  for (Sym s : {b.up, b.down, b.left, b.right})
    if (s < 0 || s >= a) throw InputError("boundary symbol out of range");

  SiteDistribution dist;
  dist.probs.assign(static_cast<size_t>(a), 0.0);
  double z = 0;
  for (Sym x = 0; x < a; ++x) {
    if (!(sft.e1.contains(b.left, x) && sft.e1.contains(x, b.right) &&
          sft.e2.contains(b.down, x) && sft.e2.contains(x, b.up)))
      continue;
    double energy = phi.vertex_at(x) + phi.hedge_at(b.left, x) + phi.hedge_at(x, b.right) +
                    phi.vedge_at(b.down, x) + phi.vedge_at(x, b.up);
    double w = std::exp(-energy);
    dist.probs[static_cast<size_t>(x)] = w;
    z += w;
  }
  if (z == 0) throw InputError("unfillable boundary");
  for (double& p : dist.probs) p /= z;
  return dist;
}

double variational_distance(const SiteDistribution& mu, const SiteDistribution& nu) {
  if (mu.probs.size() != nu.probs.size())
    throw InputError("variational distance over different alphabets");
  double s = 0;
  for (size_t i = 0; i < mu.probs.size(); ++i) s += std::abs(mu.probs[i] - nu.probs[i]);
  return 0.5 * s;
}

double q_hat(const NnInteraction& phi, const NnSft& sft) {
  auto boundaries = fillable_boundaries(sft);
  if (boundaries.empty()) throw InputError("no fillable boundary");

  // Distinct distributions only; the pairwise max is order-free and
  // distributions coincide for many boundaries.
  std::map<std::vector<double>, int> seen;
  std::vector<SiteDistribution> distinct;
  for (const auto& b : boundaries) {
    SiteDistribution d = site_distribution(phi, sft, b);
    if (seen.emplace(d.probs, 1).second) distinct.push_back(std::move(d));
  }
  double q = 0;
  for (size_t i = 0; i < distinct.size(); ++i)
    for (size_t j = i + 1; j < distinct.size(); ++j)
      q = std::max(q, variational_distance(distinct[i], distinct[j]));
  return q;
}

ApplicabilityReport applicability(const NnInteraction& phi, const NnSft& sft,
                                  double p_c_bound,
                                  const std::optional<IsingParams>& ising) {
  if (!(p_c_bound > 0 && p_c_bound < 1)) throw InputError("p_c bound must lie in (0,1)");

  ApplicabilityReport r;
  r.p_c_bound = p_c_bound;
  r.q_hat_value = q_hat(phi, sft);
  r.passes_qhat = r.q_hat_value < p_c_bound;
  r.zero_interaction = phi.is_zero();

  const int a = sft.alphabet.size();
  r.safe_fraction = static_cast<double>(find_safe_symbols(sft).size()) / a;
  r.passes_manysafe = r.safe_fraction > 1 - p_c_bound;

  double min_frac = 1;
  for (Sym s = 0; s < a; ++s) {
    int right = 0, left = 0, up = 0, down = 0;
    for (Sym x = 0; x < a; ++x) {
      right += sft.e1.contains(s, x) ? 1 : 0;
      left += sft.e1.contains(x, s) ? 1 : 0;
      up += sft.e2.contains(s, x) ? 1 : 0;
      down += sft.e2.contains(x, s) ? 1 : 0;
    }
    int least = std::min(std::min(right, left), std::min(up, down));
    min_frac = std::min(min_frac, static_cast<double>(least) / a);
  }
  r.min_neighbor_fraction = min_frac;
  const double adj_threshold = 1 - p_c_bound / (4 * (1 + p_c_bound));
  r.passes_manyadj = min_frac > adj_threshold;

  if (ising) {
    r.ising_condition_lhs = 2 * ising->beta * (4 - std::abs(ising->h));
    r.ising_condition_rhs = std::log(p_c_bound / (1 - p_c_bound));
    r.passes_ising_sufficient = *r.ising_condition_lhs < *r.ising_condition_rhs;
    // The exhaustive max above ranges over all fillable boundaries; the
    // two constant boundaries are reported separately for comparison.
    SiteBoundary all_plus{0, 0, 0, 0}, all_minus{1, 1, 1, 1};
    r.constant_boundary_distance = variational_distance(
        site_distribution(phi, sft, all_plus), site_distribution(phi, sft, all_minus));
  }

  if (p_c_bound > kDefaultPcBound + 1e-15)
    r.notes.push_back("NON-RIGOROUS: p_c bound above the proven 0.556 lower bound");
  if (std::abs(r.q_hat_value - p_c_bound) <= 1e-9)
    r.notes.push_back("q_hat within 1e-9 of the gate threshold; decision is fragile");
  if (std::abs(r.safe_fraction - (1 - p_c_bound)) <= 1e-9)
    r.notes.push_back("safe fraction within 1e-9 of the gate threshold; decision is fragile");
  if (std::abs(r.min_neighbor_fraction - adj_threshold) <= 1e-9)
    r.notes.push_back("neighbor fraction within 1e-9 of the gate threshold; decision is fragile");
  r.notes.push_back("strong irreducibility of the shift is assumed, not verified");
  return r;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

std::string render_report(const ApplicabilityReport& r) {
  std::ostringstream os;
  os << "applicability\n";
  os << "  q_hat = " << fmt(r.q_hat_value) << " vs p_c bound " << fmt(r.p_c_bound) << " -> "
     << (r.passes_qhat ? "pass" : "fail") << "\n";
  os << "  safe-symbol fraction = " << fmt(r.safe_fraction) << " vs > "
     << fmt(1 - r.p_c_bound) << " -> " << (r.passes_manysafe ? "pass" : "fail")
     << (r.zero_interaction ? "" : " (certificate applies to the zero interaction only)")
     << "\n";
  os << "  min neighbor fraction = " << fmt(r.min_neighbor_fraction) << " vs > "
     << fmt(1 - r.p_c_bound / (4 * (1 + r.p_c_bound))) << " -> "
     << (r.passes_manyadj ? "pass" : "fail")
     << (r.zero_interaction ? "" : " (certificate applies to the zero interaction only)")
     << "\n";
  if (r.passes_ising_sufficient)
    os << "  ising sufficient condition: 2*beta*(4-|h|) = " << fmt(*r.ising_condition_lhs)
       << " vs < " << fmt(*r.ising_condition_rhs) << " -> "
       << (*r.passes_ising_sufficient ? "pass" : "fail") << "\n";
  if (r.constant_boundary_distance)
    os << "  constant-boundary distance = " << fmt(*r.constant_boundary_distance) << "\n";
  os << "  hypotheses " << (r.hypothesis_certified() ? "CERTIFIED" : "NOT certified") << "\n";
  for (const auto& n : r.notes) os << "  note: " << n << "\n";

  os << "q_hat=" << fmt(r.q_hat_value) << "\n";
  os << "p_c_bound=" << fmt(r.p_c_bound) << "\n";
  os << "passes_qhat=" << (r.passes_qhat ? "true" : "false") << "\n";
  os << "safe_fraction=" << fmt(r.safe_fraction) << "\n";
  os << "passes_manysafe=" << (r.passes_manysafe ? "true" : "false") << "\n";
  os << "min_neighbor_fraction=" << fmt(r.min_neighbor_fraction) << "\n";
  os << "passes_manyadj=" << (r.passes_manyadj ? "true" : "false") << "\n";
  if (r.passes_ising_sufficient)
    os << "passes_ising_sufficient=" << (*r.passes_ising_sufficient ? "true" : "false") << "\n";
  os << "certified=" << (r.hypothesis_certified() ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace strippress
