#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "strippress/model_file.hpp"
#include "strippress/pressure.hpp"

namespace {

using namespace strippress;

constexpr int kExitGateFailed = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitParse = 4;

struct ModelArgs {
  std::string model_spec;
  std::string top_word, bottom_word;
};

PeriodicRow parse_word(const std::string& text, const Alphabet& alphabet) {
  std::vector<Sym> word;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    Sym s = alphabet.index_of(cur);
    if (s < 0) throw ModelParseError("unknown symbol '" + cur + "' in boundary word");
    word.push_back(s);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ')
      flush();
    else
      cur += c;
  }
  flush();
  if (word.empty()) throw ModelParseError("empty boundary word");
  return PeriodicRow(word);
}

// Builtin spec string or path to a model file; explicit row words override
// the model defaults.
struct ResolvedModel {
  Model model;
  PeriodicRow bottom = PeriodicRow::constant(0);
  PeriodicRow top = PeriodicRow::constant(0);
};

ResolvedModel resolve_model(const ModelArgs& args) {
  ResolvedModel out{std::filesystem::exists(args.model_spec)
                        ? load_model_file(args.model_spec).model
                        : parse_builtin(args.model_spec)};
  out.bottom = out.model.default_bottom;
  out.top = out.model.default_top;
  if (!args.bottom_word.empty()) out.bottom = parse_word(args.bottom_word, out.model.sft.alphabet);
  if (!args.top_word.empty()) out.top = parse_word(args.top_word, out.model.sft.alphabet);
  return out;
}

void add_model_options(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("model", args.model_spec,
                  "builtin spec (\"hard_core a=1.5\", \"ising beta=0.02 h=0\", "
                  "\"checkerboard k=12\", \"zero\") or model file path")
      ->required();
  cmd->add_option("--top", args.top_word, "top boundary row word, comma-separated names");
  cmd->add_option("--bottom", args.bottom_word, "bottom boundary row word");
}

int do_run(const ModelArgs& margs, RunConfig cfg, const std::string& out_path, bool entropy) {
  ResolvedModel rm;
  try {
    rm = resolve_model(margs);
  } catch (const ModelParseError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InputError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitParse;
  }
  cfg.model = std::move(rm.model);
  cfg.bottom = rm.bottom;
  cfg.top = rm.top;

  PressureRun run;
  try {
    run = entropy ? run_entropy(cfg) : run_pressure(cfg);
  } catch (const GateError& e) {
    ApplicabilityReport gate =
        applicability(cfg.model.phi, cfg.model.sft, cfg.p_c_bound, cfg.model.ising);
    std::cout << render_report(gate);
    std::cerr << "aborted: " << e.what() << "\n";
    return kExitGateFailed;
  } catch (const std::runtime_error& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kExitNumerical;
  }

  std::cout << render_run(run);
  std::cout << render_report(run.gate);
  if (!out_path.empty()) {
    std::ofstream os(out_path);
    if (!os) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitNumerical;
    }
    write_csv(run, os);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strip transfer-matrix pressure and entropy approximation"};
  app.require_subcommand(1);

  ModelArgs check_args;
  double check_pc = kDefaultPcBound;
  auto* check = app.add_subcommand("check", "applicability gates for a model");
  add_model_options(check, check_args);
  check->add_option("--pc", check_pc, "site-percolation bound (default 0.556, rigorous)");

  ModelArgs run_args;
  RunConfig run_cfg;
  std::string run_out, run_ckpt;
  auto* run = app.add_subcommand("run", "pressure approximation sweep over strip heights");
  add_model_options(run, run_args);
  run->add_option("--n-min", run_cfg.n_min, "smallest strip height")->required();
  run->add_option("--n-max", run_cfg.n_max, "largest strip height")->required();
  run->add_option("--tol", run_cfg.rel_tol, "relative eigenvalue tolerance (default 1e-12)");
  run->add_option("--pc", run_cfg.p_c_bound, "site-percolation bound");
  run->add_flag("--force", run_cfg.force, "run even if the applicability gate fails");
  run->add_option("--period", run_cfg.force_period, "force a recoding period (testing aid)");
  run->add_option("--out", run_out, "CSV output path");
  run->add_option("--checkpoint", run_ckpt, "checkpoint file for resumable sweeps");
  run->add_option("--max-columns", run_cfg.limits.max_columns, "column budget per height");
  run->add_option("--max-edges", run_cfg.limits.max_edges, "edge budget per height");

  ModelArgs ent_args;
  RunConfig ent_cfg;
  std::string ent_out, ent_ckpt;
  auto* ent = app.add_subcommand("entropy", "topological entropy sweep (zero interaction)");
  add_model_options(ent, ent_args);
  ent->add_option("--n-min", ent_cfg.n_min, "smallest strip height")->required();
  ent->add_option("--n-max", ent_cfg.n_max, "largest strip height")->required();
  ent->add_option("--tol", ent_cfg.rel_tol, "relative eigenvalue tolerance");
  ent->add_option("--pc", ent_cfg.p_c_bound, "site-percolation bound");
  ent->add_flag("--force", ent_cfg.force, "run even if the applicability gate fails");
  ent->add_option("--period", ent_cfg.force_period, "force a recoding period");
  ent->add_option("--out", ent_out, "CSV output path");
  ent->add_option("--checkpoint", ent_ckpt, "checkpoint file");
  ent->add_option("--max-columns", ent_cfg.limits.max_columns, "column budget per height");
  ent->add_option("--max-edges", ent_cfg.limits.max_edges, "edge budget per height");

  ModelArgs eig_args;
  int eig_n = 1;
  double eig_tol = 1e-12;
  std::string eig_dump;
  auto* eig = app.add_subcommand("eigen-report", "single-strip eigenvalue report");
  add_model_options(eig, eig_args);
  eig->add_option("--n", eig_n, "strip height")->required();
  eig->add_option("--tol", eig_tol, "relative eigenvalue tolerance");
  eig->add_option("--dump", eig_dump, "write the transfer matrix (text) here");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) {
    try {
      ResolvedModel rm = resolve_model(check_args);
      std::cout << render_report(
          applicability(rm.model.phi, rm.model.sft, check_pc, rm.model.ising));
      return 0;
    } catch (const ModelParseError& e) {
      std::cerr << "model error: " << e.what() << "\n";
      return kExitParse;
    } catch (const InputError& e) {
      std::cerr << "model error: " << e.what() << "\n";
      return kExitParse;
    } catch (const std::runtime_error& e) {
      std::cerr << "check failed: " << e.what() << "\n";
      return kExitNumerical;
    }
  }

  if (run->parsed()) {
    run_cfg.checkpoint_path = run_ckpt;
    return do_run(run_args, run_cfg, run_out, false);
  }
  if (ent->parsed()) {
    ent_cfg.checkpoint_path = ent_ckpt;
    return do_run(ent_args, ent_cfg, ent_out, true);
  }

  // eigen-report
  try {
    ResolvedModel rm = resolve_model(eig_args);
    if (rm.bottom.period() != 1 || rm.top.period() != 1)
      throw InputError("eigen-report takes constant rows; use run for periodic ones");
    ColumnSystem cs = build_column_system(rm.model.sft, eig_n, rm.top, rm.bottom);
    StripReport rep = strip_report(rm.model.phi, cs, PerronOptions{eig_tol});
    std::printf("columns      = %d (removed %d)\n", rep.transfer.cs.num_columns(),
                rep.trim.removed_columns);
    std::printf("edges        = %ld\n", rep.transfer.cs.num_edges());
    std::printf("log_lambda   in [%.15g, %.15g]\n", rep.perron.log_lambda_lo,
                rep.perron.log_lambda_hi);
    std::printf("lambda       in [%.15g, %.15g]\n", rep.perron.lambda_lo, rep.perron.lambda_hi);
    std::printf("iterations   = %ld\n", rep.perron.iterations);
    std::printf("residual     = %.3g\n", rep.perron.residual);
    std::printf("identity_res = %.3g\n", rep.chain.identity_residual);
    std::printf("entropy      = %.15g (error bar %.3g, first order in the enclosure gap)\n",
                rep.chain.entropy, rep.chain.lambda_rel_gap);
    std::printf("expected_phi = %.15g (error bar %.3g)\n", rep.chain.expected_phi,
                rep.chain.lambda_rel_gap);
    std::printf("row defect   = %.3g, stationarity residual = %.3g\n",
                rep.chain.max_row_defect, rep.chain.stationarity_residual);
    std::printf("summation    = sequential CSR rows\n");
    if (!eig_dump.empty()) {
      std::ofstream os(eig_dump);
      dump_transfer(rep.transfer, os);
      std::printf("wrote %s\n", eig_dump.c_str());
    }
    return 0;
  } catch (const ModelParseError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::runtime_error& e) {
    std::cerr << "eigen-report failed: " << e.what() << "\n";
    return kExitNumerical;
  }
}
