#pragma once

#include <iosfwd>
#include <vector>

#include "strippress/column_system.hpp"
#include "strippress/interaction.hpp"

namespace strippress {

// CSR square matrix with positive entries. Matvec sums each row
// sequentially in storage order, so results are bit-reproducible.
struct SparseMatrix {
  int size = 0;
  std::vector<long> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> val;
};

// Transfer matrix of a trimmed primitive strip: true entry on edge (c, d) is
// exp(-phibar(c,d)). A global shift keeps stored entries in (0, 1]:
// stored * exp(log_scale) recovers the true entry, with
// log_scale = -min(phibar).
struct TransferMatrix {
  ColumnSystem cs;
  std::vector<double> phibar;  // exact strip weights, CSR-parallel
  std::vector<double> stored;  // exp(-(phibar - min)) in (0, 1]
  double log_scale = 0;

  SparseMatrix stored_matrix() const;
};

// Requires cs trimmed (no removable columns) and primitive; raises
// InputError / NumericError ("not mixing") otherwise.
TransferMatrix build_transfer(const NnInteraction& phi, const ColumnSystem& cs);

struct PerronOptions {
  double rel_tol = 1e-12;
  long max_iterations = 1'000'000;
  bool record_history = false;  // per-step enclosures, for soundness checks
};

// Perron eigenvalue enclosure and positive eigenvectors of a primitive
// nonnegative matrix. Power iteration from the all-ones vector; after each
// matvec w = Av the ratio bounds min w/v <= lambda <= max w/v give an
// enclosure, refined until the relative gap drops below rel_tol. The right
// eigenvector is max-entry normalized; the left one satisfies u.v = 1.
struct PerronData {
  double lambda_lo = 0, lambda_hi = 0;          // true scale (may overflow to inf)
  double log_lambda_lo = 0, log_lambda_hi = 0;  // always finite
  double scaled_lo = 0, scaled_hi = 0;          // enclosure of the stored matrix
  std::vector<double> right, left;
  long iterations = 0;
  double residual = 0;  // ||Av - mid*v||_inf on the stored matrix, max|v| = 1
  std::vector<std::pair<double, double>> history;

  double log_lambda_mid() const { return 0.5 * (log_lambda_lo + log_lambda_hi); }
  double rel_gap() const { return (scaled_hi - scaled_lo) / scaled_lo; }
};

PerronData perron_enclosure(const SparseMatrix& a, const PerronOptions& opts = {});
PerronData perron(const TransferMatrix& a, const PerronOptions& opts = {});

// Induced Markov chain of the strip: Pi_{c,d} = A_{c,d} v(d) / (lambda v(c))
// with the enclosure midpoint for lambda, rows renormalized (the defect is
// reported); stationary law pi_c = u_c v_c. The identity
// log lambda = entropy - expected_phi holds exactly in exact arithmetic for
// the weight function f = -phibar.
struct StripChain {
  std::vector<double> pi_values;  // CSR-parallel with the transfer matrix
  std::vector<double> stationary;
  double entropy = 0;
  double expected_phi = 0;
  double log_lambda = 0;
  double identity_residual = 0;   // |log lambda - entropy + expected_phi|
  double max_row_defect = 0;      // pre-normalization |rowsum - 1|
  double stationarity_residual = 0;  // ||pi Pi - pi||_inf
  double lambda_rel_gap = 0;      // first-order error-bar basis per lambda use
};

StripChain markov_chain(const TransferMatrix& a, const PerronData& pd);

struct StripReport {
  TrimDiagnostics trim;
  TransferMatrix transfer;
  PerronData perron;
  StripChain chain;
};

// Full per-strip pipeline: trim, refuse non-primitive systems, build the
// transfer matrix, enclose lambda, derive the chain, verify the pressure
// identity within 10 * rel_tol + 1e-9.
StripReport strip_report(const NnInteraction& phi, const ColumnSystem& untrimmed,
                         const PerronOptions& opts = {});

// Canonical edge order, true-scale log-weights; for external verification.
void dump_transfer(const TransferMatrix& a, std::ostream& os);

}  // namespace strippress
