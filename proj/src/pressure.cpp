#include "strippress/pressure.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace strippress {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string row_word(const PeriodicRow& r) {
  std::string out;
  for (Sym s : r.word()) out += std::to_string(s) + ",";
  return out;
}

std::string fingerprint(const RunConfig& cfg, int p) {
  std::ostringstream os;
  os << describe(cfg.model) << "bottom=" << row_word(cfg.bottom) << " top=" << row_word(cfg.top)
     << " rel_tol=" << fmt17(cfg.rel_tol) << " period=" << p;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

void check_row_admissible(const NnSft& sft, const PeriodicRow& row, const char* which) {
  const int p = row.period();
  for (int i = 0; i < p; ++i) {
    Sym s = row.at(i);
    if (s < 0 || s >= sft.alphabet.size())
      throw InputError(std::string(which) + " row symbol out of range");
    if (!sft.e1.contains(s, row.at(i + 1)))
      throw InputError(std::string(which) +
                       " row is not horizontally admissible as a periodic row");
  }
}

struct Checkpoint {
  std::string path;
  std::string fp;
  std::map<int, PressureRow> rows;
  bool ignored_mismatch = false;

  void load() {
    std::ifstream in(path);
    if (!in) return;
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception&) {
      ignored_mismatch = true;
      return;
    }
    if (!j.contains("fingerprint") || j["fingerprint"] != fp) {
      ignored_mismatch = j.contains("fingerprint");
      return;
    }
    for (const auto& r : j["rows"]) {
      PressureRow row;
      row.n = r.at("n").get<int>();
      row.columns = r.at("columns").get<long>();
      row.log_lambda = r.at("log_lambda").get<double>();
      row.lambda_lo = r.at("lambda_lo").get<double>();
      row.lambda_hi = r.at("lambda_hi").get<double>();
      row.identity_residual = r.at("identity_residual").get<double>();
      row.wall_ms = r.at("wall_ms").get<double>();
      row.removed_columns = r.value("removed_columns", 0);
      rows[row.n] = row;
    }
  }

  void save() const {
    if (path.empty()) return;
    nlohmann::json j;
    j["fingerprint"] = fp;
    j["rows"] = nlohmann::json::array();
    for (const auto& [n, row] : rows) {
      nlohmann::json r;
      r["n"] = row.n;
      r["columns"] = row.columns;
      r["log_lambda"] = row.log_lambda;
      r["lambda_lo"] = row.lambda_lo;
      r["lambda_hi"] = row.lambda_hi;
      r["identity_residual"] = row.identity_residual;
      r["wall_ms"] = row.wall_ms;
      r["removed_columns"] = row.removed_columns;
      j["rows"].push_back(std::move(r));
    }
    // write-rename so an interrupt never leaves a torn file
    std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp);
      out << j.dump(1);
    }
    std::filesystem::rename(tmp, path);
  }
};

}  // namespace

std::optional<RateFit> fit_rate(const std::vector<std::pair<int, double>>& diffs,
                                std::string* note) {
  if (diffs.size() < 3) {
    if (note) *note = "rate fit needs at least three differences";
    return std::nullopt;
  }
  std::vector<double> xs, ys;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (size_t i = 0; i + 1 < diffs.size(); ++i) {
    double gap = std::abs(diffs[i + 1].second - diffs[i].second);
    double floor = 4 * eps * std::max({1.0, std::abs(diffs[i].second),
                                       std::abs(diffs[i + 1].second)});
    if (gap <= floor) {
      if (note) *note = "rate fit skipped: converged below floating-point resolution";
      return std::nullopt;
    }
    xs.push_back(diffs[i].first);
    ys.push_back(std::log(gap));
  }
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = k * sxx - sx * sx;
  if (denom == 0) {
    if (note) *note = "rate fit skipped: degenerate abscissas";
    return std::nullopt;
  }
  double slope = (k * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / k;
  double ss_res = 0, ss_tot = 0, mean = sy / k;
  for (size_t i = 0; i < xs.size(); ++i) {
    double fit = slope * xs[i] + intercept;
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
  }
  RateFit out;
  out.rate = -slope;
  out.prefactor = std::exp(intercept);
  out.r_squared = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return out;
}

PressureRun run_pressure(const RunConfig& cfg) {
  if (cfg.n_min < 1) throw InputError("n_min must be >= 1");
  if (cfg.n_max < cfg.n_min + 1)
    throw InputError("n_max must be at least n_min + 1 for one difference");
  if (!(cfg.rel_tol > 0)) throw InputError("rel_tol must be positive");
  check_row_admissible(cfg.model.sft, cfg.top, "top");
  check_row_admissible(cfg.model.sft, cfg.bottom, "bottom");

  PressureRun run;
  run.label = cfg.label;
  run.gate = applicability(cfg.model.phi, cfg.model.sft, cfg.p_c_bound, cfg.model.ising);
  if (!run.gate.hypothesis_certified()) {
    if (!cfg.force)
      throw GateError(
          "applicability gate failed (q_hat >= p_c bound and no entropy-case certificate); "
          "rerun with force to proceed anyway");
    run.notes.push_back("hypotheses not certified; run forced");
  }

  const int p = cfg.force_period > 0
                    ? cfg.force_period
                    : std::lcm(cfg.top.period(), cfg.bottom.period());
  run.period = p;

  // Work on the p-block recoding with constant recoded rows; p = 1 is the
  // identity recoding, skipped.
  NnSft work_sft = cfg.model.sft;
  NnInteraction work_phi = cfg.model.phi;
  PeriodicRow work_top = PeriodicRow::constant(0), work_bottom = PeriodicRow::constant(0);
  if (p == 1) {
    work_top = cfg.top;
    work_bottom = cfg.bottom;
  } else {
    HigherPower hp = higher_power_sft(cfg.model.sft, p);
    work_phi = power_interaction(cfg.model.phi, hp);
    auto expand = [&](const PeriodicRow& r) {
      std::vector<Sym> word(static_cast<size_t>(p));
      for (int i = 0; i < p; ++i) word[static_cast<size_t>(i)] = r.at(i);
      Sym idx = hp.block_index(word);
      if (idx < 0) throw InputError("boundary row is not an admissible horizontal block");
      return PeriodicRow::constant(idx);
    };
    work_top = expand(cfg.top);
    work_bottom = expand(cfg.bottom);
    work_sft = hp.sft;
  }

  Checkpoint ckpt;
  if (!cfg.checkpoint_path.empty()) {
    ckpt.path = cfg.checkpoint_path;
    ckpt.fp = fingerprint(cfg, p);
    ckpt.load();
    if (ckpt.ignored_mismatch)
      run.notes.push_back("checkpoint ignored: written by a different configuration");
  }

  int resumed = 0;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    PressureRow row;
    auto it = ckpt.rows.find(n);
    if (it != ckpt.rows.end()) {
      row = it->second;
      ++resumed;
    } else {
      auto start = std::chrono::steady_clock::now();
      ColumnSystem cs;
      StripReport rep = [&] {
        try {
          cs = build_column_system(work_sft, n, work_top, work_bottom, cfg.limits);
          return strip_report(work_phi, cs, PerronOptions{cfg.rel_tol});
        } catch (const InputError& e) {
          throw NumericError("height " + std::to_string(n) + ": " + e.what());
        } catch (const NumericError& e) {
          throw NumericError("height " + std::to_string(n) + ": " + e.what());
        }
      }();
      auto stop = std::chrono::steady_clock::now();
      row.n = n;
      row.columns = rep.transfer.cs.num_columns();
      row.log_lambda = rep.chain.log_lambda;
      row.lambda_lo = rep.perron.lambda_lo;
      row.lambda_hi = rep.perron.lambda_hi;
      row.identity_residual = rep.chain.identity_residual;
      row.removed_columns = rep.trim.removed_columns;
      row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      if (!ckpt.path.empty()) {
        ckpt.rows[n] = row;
        ckpt.save();
      }
    }
    if (row.removed_columns == 0 && !run.trim_stable_from) run.trim_stable_from = n;
    if (row.removed_columns != 0) run.trim_stable_from.reset();
    run.rows.push_back(row);
  }
  if (resumed > 0)
    run.notes.push_back("resumed " + std::to_string(resumed) + " heights from checkpoint");

  for (size_t i = 0; i + 1 < run.rows.size(); ++i)
    run.rows[i].diff = (run.rows[i + 1].log_lambda - run.rows[i].log_lambda) / p;

  run.estimate = *run.rows[run.rows.size() - 2].diff;
  if (run.rows.size() >= 3) {
    double last = *run.rows[run.rows.size() - 2].diff;
    double prev = *run.rows[run.rows.size() - 3].diff;
    run.error_bar = 2 * std::abs(last - prev);
    run.notes.push_back("error bar is 2x the last successive gap: heuristic, not certified");
  }

  std::vector<std::pair<int, double>> diffs;
  for (const auto& r : run.rows)
    if (r.diff) diffs.emplace_back(r.n, *r.diff);
  std::string note;
  run.rate_fit = fit_rate(diffs, &note);
  if (!run.rate_fit && !note.empty()) run.notes.push_back(note);
  if (run.trim_stable_from)
    run.notes.push_back("trim removed nothing from n = " +
                        std::to_string(*run.trim_stable_from) +
                        " on (weak proxy for the filling distance, not an estimate of it)");
  return run;
}

PressureRun run_entropy(RunConfig cfg) {
  cfg.model.phi = NnInteraction::zero(cfg.model.sft.alphabet.size());
  cfg.model.ising.reset();
  cfg.label = "topological entropy";
  return run_pressure(cfg);
}

void write_csv(const PressureRun& run, std::ostream& os) {
  os << "# strippress run\n";
  os << "# label=" << run.label << "\n";
  os << "# period=" << run.period << "\n";
  os << "# estimate=" << fmt17(run.estimate) << "\n";
  if (run.error_bar) os << "# error_bar=" << fmt17(*run.error_bar) << "\n";
  if (run.rate_fit) {
    os << "# rate_R=" << fmt17(run.rate_fit->rate) << "\n";
    os << "# rate_Q=" << fmt17(run.rate_fit->prefactor) << "\n";
    os << "# rate_r2=" << fmt17(run.rate_fit->r_squared) << "\n";
  }
  if (run.trim_stable_from) os << "# trim_stable_from=" << *run.trim_stable_from << "\n";
  const auto& g = run.gate;
  os << "# gate q_hat=" << fmt17(g.q_hat_value) << " p_c_bound=" << fmt17(g.p_c_bound)
     << " passes_qhat=" << g.passes_qhat << " safe_fraction=" << fmt17(g.safe_fraction)
     << " passes_manysafe=" << g.passes_manysafe
     << " min_neighbor_fraction=" << fmt17(g.min_neighbor_fraction)
     << " passes_manyadj=" << g.passes_manyadj << " zero_interaction=" << g.zero_interaction
     << " certified=" << g.hypothesis_certified() << "\n";
  if (g.passes_ising_sufficient)
    os << "# ising lhs=" << fmt17(*g.ising_condition_lhs)
       << " rhs=" << fmt17(*g.ising_condition_rhs) << " passes=" << *g.passes_ising_sufficient
       << " constant_boundary_distance=" << fmt17(*g.constant_boundary_distance) << "\n";
  for (const auto& n : g.notes) os << "# gate_note=" << n << "\n";
  for (const auto& n : run.notes) os << "# note=" << n << "\n";
  os << "n,columns,log_lambda,lambda_lo,lambda_hi,diff,identity_residual,wall_ms\n";
  for (const auto& r : run.rows) {
    os << r.n << "," << r.columns << "," << fmt17(r.log_lambda) << "," << fmt17(r.lambda_lo)
       << "," << fmt17(r.lambda_hi) << ",";
    if (r.diff) os << fmt17(*r.diff);
    os << "," << fmt17(r.identity_residual) << "," << fmt17(r.wall_ms) << "\n";
  }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq != std::string::npos) out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

}  // namespace

PressureRun read_csv(std::istream& is) {
  PressureRun run;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      auto eq = body.find('=');
      if (body.rfind("gate ", 0) == 0) {
        auto kv = parse_kv(body.substr(5));
        run.gate.q_hat_value = std::stod(kv.at("q_hat"));
        run.gate.p_c_bound = std::stod(kv.at("p_c_bound"));
        run.gate.passes_qhat = kv.at("passes_qhat") == "1";
        run.gate.safe_fraction = std::stod(kv.at("safe_fraction"));
        run.gate.passes_manysafe = kv.at("passes_manysafe") == "1";
        run.gate.min_neighbor_fraction = std::stod(kv.at("min_neighbor_fraction"));
        run.gate.passes_manyadj = kv.at("passes_manyadj") == "1";
        run.gate.zero_interaction = kv.at("zero_interaction") == "1";
      } else if (body.rfind("ising ", 0) == 0) {
        auto kv = parse_kv(body.substr(6));
        run.gate.ising_condition_lhs = std::stod(kv.at("lhs"));
        run.gate.ising_condition_rhs = std::stod(kv.at("rhs"));
        run.gate.passes_ising_sufficient = kv.at("passes") == "1";
        run.gate.constant_boundary_distance = std::stod(kv.at("constant_boundary_distance"));
      } else if (eq != std::string::npos) {
        std::string key = body.substr(0, eq), val = body.substr(eq + 1);
        if (key == "label") run.label = val;
        else if (key == "period") run.period = std::stoi(val);
        else if (key == "estimate") run.estimate = std::stod(val);
        else if (key == "error_bar") run.error_bar = std::stod(val);
        else if (key == "rate_R") {
          if (!run.rate_fit) run.rate_fit = RateFit{};
          run.rate_fit->rate = std::stod(val);
        } else if (key == "rate_Q") {
          if (!run.rate_fit) run.rate_fit = RateFit{};
          run.rate_fit->prefactor = std::stod(val);
        } else if (key == "rate_r2") {
          if (!run.rate_fit) run.rate_fit = RateFit{};
          run.rate_fit->r_squared = std::stod(val);
        } else if (key == "trim_stable_from") {
          run.trim_stable_from = std::stoi(val);
        } else if (key == "gate_note") {
          run.gate.notes.push_back(val);
        } else if (key == "note") {
          run.notes.push_back(val);
        }
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // column header row
      continue;
    }
    auto f = split(line, ',');
    if (f.size() != 8) throw InputError("malformed CSV row: " + line);
    PressureRow r;
    r.n = std::stoi(f[0]);
    r.columns = std::stol(f[1]);
    r.log_lambda = std::stod(f[2]);
    r.lambda_lo = std::stod(f[3]);
    r.lambda_hi = std::stod(f[4]);
    if (!f[5].empty()) r.diff = std::stod(f[5]);
    r.identity_residual = std::stod(f[6]);
    r.wall_ms = std::stod(f[7]);
    run.rows.push_back(r);
  }
  return run;
}

std::string render_run(const PressureRun& run) {
  std::ostringstream os;
  os << run.label << " run, period p = " << run.period << "\n";
  os << "   n   |C_n|        log_lambda           diff               identity_resid\n";
  for (const auto& r : run.rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%4d %7ld  %-20.15g %-20.15g %.3g", r.n, r.columns,
                  r.log_lambda, r.diff ? *r.diff : std::nan(""), r.identity_residual);
    os << buf << "\n";
  }
  os << "estimate = " << fmt15(run.estimate);
  if (run.error_bar) os << "  +/- " << fmt15(*run.error_bar) << " (heuristic)";
  os << "\n";
  if (run.rate_fit)
    os << "empirical rate: gap ~ " << fmt15(run.rate_fit->prefactor) << " * exp(-"
       << fmt15(run.rate_fit->rate) << " n), r^2 = " << fmt15(run.rate_fit->r_squared) << "\n";
  for (const auto& n : run.notes) os << "note: " << n << "\n";
  return os.str();
}

}  // namespace strippress
