#include "strippress/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace strippress {

SparseMatrix TransferMatrix::stored_matrix() const {
  SparseMatrix m;
  m.size = cs.num_columns();
  m.row_ptr = cs.row_ptr;
  m.col_idx = cs.col_idx;
  m.val = stored;
  return m;
}

namespace {

TransferMatrix make_transfer(const NnInteraction& phi, const ColumnSystem& trimmed) {
  TransferMatrix tm;
  tm.cs = trimmed;
  tm.phibar = strip_interaction(phi, trimmed).weights;
  double mn = *std::min_element(tm.phibar.begin(), tm.phibar.end());
  tm.log_scale = -mn;
  tm.stored.resize(tm.phibar.size());
  for (size_t i = 0; i < tm.phibar.size(); ++i)
    tm.stored[i] = std::exp(-(tm.phibar[i] - mn));
  return tm;
}

}  // namespace

TransferMatrix build_transfer(const NnInteraction& phi, const ColumnSystem& cs) {
  TrimResult tr = trim_to_essential(cs);
  if (tr.diag.removed_columns > 0)
    throw InputError("column system has inessential columns; trim_to_essential first");
  if (!tr.diag.is_primitive) {
    std::ostringstream msg;
    msg << "strip not mixing (scc_count=" << tr.diag.scc_count << ", period=" << tr.diag.period
        << "): the approximation hypotheses fail for this model/boundary combination";
    throw NumericError(msg.str());
  }
  return make_transfer(phi, cs);
}

namespace {

void matvec(const SparseMatrix& a, const std::vector<double>& x, std::vector<double>& y) {
  for (int r = 0; r < a.size; ++r) {
    double s = 0;
    for (long e = a.row_ptr[static_cast<size_t>(r)]; e < a.row_ptr[static_cast<size_t>(r) + 1]; ++e)
      s += a.val[static_cast<size_t>(e)] * x[static_cast<size_t>(a.col_idx[static_cast<size_t>(e)])];
    y[static_cast<size_t>(r)] = s;
  }
}

SparseMatrix transpose(const SparseMatrix& a) {
  SparseMatrix t;
  t.size = a.size;
  t.row_ptr.assign(static_cast<size_t>(a.size) + 1, 0);
  t.col_idx.resize(a.val.size());
  t.val.resize(a.val.size());
  for (int c : a.col_idx) ++t.row_ptr[static_cast<size_t>(c) + 1];
  for (int r = 0; r < a.size; ++r) t.row_ptr[static_cast<size_t>(r) + 1] += t.row_ptr[static_cast<size_t>(r)];
  std::vector<long> fill = t.row_ptr;
  for (int r = 0; r < a.size; ++r)
    for (long e = a.row_ptr[static_cast<size_t>(r)]; e < a.row_ptr[static_cast<size_t>(r) + 1]; ++e) {
      long slot = fill[static_cast<size_t>(a.col_idx[static_cast<size_t>(e)])]++;
      t.col_idx[static_cast<size_t>(slot)] = r;
      t.val[static_cast<size_t>(slot)] = a.val[static_cast<size_t>(e)];
    }
  return t;
}

// Power iteration with ratio bounds; fills lo/hi/vector/iterations. The
// running bounds only tighten: every per-step ratio pair brackets lambda.
struct IterationOut {
  double lo = 0, hi = 0;
  std::vector<double> vec;
  long iterations = 0;
  double residual = 0;
};

IterationOut iterate(const SparseMatrix& a, const PerronOptions& opts,
                     std::vector<std::pair<double, double>>* history) {
  const size_t n = static_cast<size_t>(a.size);
  std::vector<double> v(n, 1.0), w(n);
  double lo = 0, hi = std::numeric_limits<double>::infinity();
  for (long it = 1; it <= opts.max_iterations; ++it) {
    matvec(a, v, w);
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0;
    for (size_t i = 0; i < n; ++i) {
      double r = w[i] / v[i];
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    lo = std::max(lo, rmin);
    hi = std::min(hi, rmax);
    if (history) history->emplace_back(lo, hi);
    if (hi - lo <= opts.rel_tol * lo) {
      double mid = 0.5 * (lo + hi);
      double vmax = *std::max_element(v.begin(), v.end());
      double res = 0;
      for (size_t i = 0; i < n; ++i) res = std::max(res, std::abs(w[i] - mid * v[i]));
      IterationOut out;
      out.lo = lo;
      out.hi = hi;
      out.residual = res / vmax;
      double wmax = *std::max_element(w.begin(), w.end());
      for (size_t i = 0; i < n; ++i) w[i] /= wmax;
      out.vec = std::move(w);
      out.iterations = it;
      return out;
    }
    double wmax = *std::max_element(w.begin(), w.end());
    for (size_t i = 0; i < n; ++i) v[i] = w[i] / wmax;
  }
  std::ostringstream msg;
  msg << "eigenvalue enclosure did not reach rel_tol=" << opts.rel_tol << " within "
      << opts.max_iterations << " iterations; last relative gap " << (hi - lo) / lo;
  throw NumericError(msg.str());
}

}  // namespace

PerronData perron_enclosure(const SparseMatrix& a, const PerronOptions& opts) {
  if (a.size <= 0) throw InputError("empty matrix");
  if (!(opts.rel_tol > 0)) throw InputError("rel_tol must be positive");
  for (int r = 0; r < a.size; ++r)
    if (a.row_ptr[static_cast<size_t>(r)] == a.row_ptr[static_cast<size_t>(r) + 1])
      throw InputError("matrix has an empty row; not primitive");
  for (double v : a.val)
    if (!(v > 0)) throw InputError("stored entries must be positive");

  PerronData pd;
  IterationOut right = iterate(a, opts, opts.record_history ? &pd.history : nullptr);
  IterationOut leftit = iterate(transpose(a), opts, nullptr);

  pd.scaled_lo = right.lo;
  pd.scaled_hi = right.hi;
  pd.iterations = right.iterations + leftit.iterations;
  pd.residual = right.residual;
  pd.right = std::move(right.vec);
  pd.left = std::move(leftit.vec);

  double dot = 0;
  for (size_t i = 0; i < pd.right.size(); ++i) dot += pd.left[i] * pd.right[i];
  for (double& u : pd.left) u /= dot;

  pd.lambda_lo = pd.scaled_lo;
  pd.lambda_hi = pd.scaled_hi;
  pd.log_lambda_lo = std::log(pd.scaled_lo);
  pd.log_lambda_hi = std::log(pd.scaled_hi);
  return pd;
}

PerronData perron(const TransferMatrix& a, const PerronOptions& opts) {
  PerronData pd = perron_enclosure(a.stored_matrix(), opts);
  pd.log_lambda_lo += a.log_scale;
  pd.log_lambda_hi += a.log_scale;
  pd.lambda_lo = std::exp(pd.log_lambda_lo);
  pd.lambda_hi = std::exp(pd.log_lambda_hi);
  return pd;
}

StripChain markov_chain(const TransferMatrix& a, const PerronData& pd) {
  const int m = a.cs.num_columns();
  const double lambda_s = 0.5 * (pd.scaled_lo + pd.scaled_hi);

  StripChain chain;
  chain.pi_values.resize(a.stored.size());
  chain.lambda_rel_gap = pd.rel_gap();
  chain.log_lambda = pd.log_lambda_mid();

  for (int c = 0; c < m; ++c) {
    double row_sum = 0;
    for (long e = a.cs.row_ptr[static_cast<size_t>(c)]; e < a.cs.row_ptr[static_cast<size_t>(c) + 1]; ++e) {
      double p = a.stored[static_cast<size_t>(e)] *
                 pd.right[static_cast<size_t>(a.cs.col_idx[static_cast<size_t>(e)])] /
                 (lambda_s * pd.right[static_cast<size_t>(c)]);
      chain.pi_values[static_cast<size_t>(e)] = p;
      row_sum += p;
    }
    chain.max_row_defect = std::max(chain.max_row_defect, std::abs(row_sum - 1));
    for (long e = a.cs.row_ptr[static_cast<size_t>(c)]; e < a.cs.row_ptr[static_cast<size_t>(c) + 1]; ++e)
      chain.pi_values[static_cast<size_t>(e)] /= row_sum;
  }

  chain.stationary.resize(static_cast<size_t>(m));
  double total = 0;
  for (int c = 0; c < m; ++c) {
    chain.stationary[static_cast<size_t>(c)] =
        pd.left[static_cast<size_t>(c)] * pd.right[static_cast<size_t>(c)];
    total += chain.stationary[static_cast<size_t>(c)];
  }
  for (double& p : chain.stationary) p /= total;

  std::vector<double> pi_pi(static_cast<size_t>(m), 0.0);
  for (int c = 0; c < m; ++c)
    for (long e = a.cs.row_ptr[static_cast<size_t>(c)]; e < a.cs.row_ptr[static_cast<size_t>(c) + 1]; ++e)
      pi_pi[static_cast<size_t>(a.cs.col_idx[static_cast<size_t>(e)])] +=
          chain.stationary[static_cast<size_t>(c)] * chain.pi_values[static_cast<size_t>(e)];
  for (int c = 0; c < m; ++c)
    chain.stationarity_residual =
        std::max(chain.stationarity_residual,
                 std::abs(pi_pi[static_cast<size_t>(c)] - chain.stationary[static_cast<size_t>(c)]));

  double entropy = 0, expected = 0;
  for (int c = 0; c < m; ++c) {
    double hrow = 0, erow = 0;
    for (long e = a.cs.row_ptr[static_cast<size_t>(c)]; e < a.cs.row_ptr[static_cast<size_t>(c) + 1]; ++e) {
      double p = chain.pi_values[static_cast<size_t>(e)];
      hrow -= p * std::log(p);
      erow += p * a.phibar[static_cast<size_t>(e)];
    }
    entropy += chain.stationary[static_cast<size_t>(c)] * hrow;
    expected += chain.stationary[static_cast<size_t>(c)] * erow;
  }
  chain.entropy = entropy;
  chain.expected_phi = expected;
  chain.identity_residual = std::abs(chain.log_lambda - entropy + expected);
  return chain;
}

StripReport strip_report(const NnInteraction& phi, const ColumnSystem& untrimmed,
                         const PerronOptions& opts) {
  StripReport rep;
  TrimResult tr = trim_to_essential(untrimmed);
  rep.trim = tr.diag;
  if (!tr.diag.is_primitive) {
    std::ostringstream msg;
    msg << "strip not mixing (scc_count=" << tr.diag.scc_count << ", period=" << tr.diag.period
        << "): the approximation hypotheses fail for this model/boundary combination";
    throw NumericError(msg.str());
  }
  rep.transfer = make_transfer(phi, tr.system);
  rep.perron = perron(rep.transfer, opts);
  rep.chain = markov_chain(rep.transfer, rep.perron);
  const double threshold = 10 * opts.rel_tol + 1e-9;
  if (rep.chain.identity_residual > threshold) {
    std::ostringstream msg;
    msg << "identity violation: |log lambda - entropy + expected_phi| = "
        << rep.chain.identity_residual << " exceeds " << threshold
        << "; the identity is exact in exact arithmetic, so this is a bug";
    throw NumericError(msg.str());
  }
  return rep;
}

void dump_transfer(const TransferMatrix& a, std::ostream& os) {
  os << "transfer columns=" << a.cs.num_columns() << " edges=" << a.cs.num_edges()
     << " height=" << a.cs.height << "\n";
  os << "# entry on edge (c, d) is exp(-w) with w listed below\n";
  char buf[64];
  for (int c = 0; c < a.cs.num_columns(); ++c)
    for (long e = a.cs.row_ptr[static_cast<size_t>(c)]; e < a.cs.row_ptr[static_cast<size_t>(c) + 1]; ++e) {
      std::snprintf(buf, sizeof buf, "%.17g", a.phibar[static_cast<size_t>(e)]);
      os << c << " " << a.cs.col_idx[static_cast<size_t>(e)] << " " << buf << "\n";
    }
}

}  // namespace strippress
