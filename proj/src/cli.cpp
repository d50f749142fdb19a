#include "f2reg/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "f2reg/decompose.hpp"
#include "f2reg/errors.hpp"
#include "f2reg/limits.hpp"
#include "f2reg/random.hpp"
#include "f2reg/report.hpp"
#include "f2reg/rounding.hpp"
#include "f2reg/table_io.hpp"
#include "f2reg/witness.hpp"

namespace f2reg::cli {
namespace {

using nlohmann::json;

struct Common {
  std::uint64_t seed = 1;
  int dense = kDefaultDenseLimit;
  unsigned threads = 0;
  std::string report_path;
};

struct InstanceArgs {
  int s = 0;
  std::string eps;
  std::string dims;
  std::uint64_t samples = kDefaultHyperplaneSamples;
};

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw FormatError(FormatError::Kind::kIo, "cannot open " + path + " for writing");
  file << text;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

F2Vector parse_vector(int n, const std::string& text) {
  if (text.starts_with("0x") || text.starts_with("0X")) return F2Vector::from_hex(n, text);
  std::size_t used = 0;
  const std::uint64_t v = std::stoull(text, &used, 10);
  if (used != text.size()) throw PreconditionError("cannot parse vector '" + text + "'");
  return F2Vector::from_index(n, v);
}

TowerParams params_from(const InstanceArgs& a) {
  if (!a.dims.empty()) {
    std::vector<int> dims;
    for (const auto& p : split_list(a.dims)) dims.push_back(std::stoi(p));
    return custom_dims(dims);
  }
  int s = a.s;
  if (s == 0 && !a.eps.empty()) s = blocks_for_epsilon(parse_rational(a.eps));
  if (s < 1) throw PreconditionError("give --s >= 1, --eps <= 1/16, or --dims");
  return block_dims(s);
}

Rational epsilon_from(const InstanceArgs& a, const TowerParams& p) {
  return a.eps.empty() ? p.epsilon_max : parse_rational(a.eps);
}

void add_instance_options(CLI::App* cmd, InstanceArgs& a) {
  cmd->add_option("--s", a.s, "number of blocks");
  cmd->add_option("--eps", a.eps, "epsilon as decimal or p/q; s = floor(1/(16 eps)) when --s is absent");
  cmd->add_option("--dims", a.dims, "custom block sizes, comma separated");
  cmd->add_option("--samples", a.samples, "random hyperplanes for spanning checks beyond the dense limit");
}

double epsilon_double(const std::string& text) {
  const Rational r = parse_rational(text);
  return boost::rational_cast<double>(r);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t a = 0, b = 0;
      const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
      const std::int64_t p = std::stoll(num, &a), q = std::stoll(den, &b);
      if (a != num.size() || b != den.size() || q == 0) throw PreconditionError("bad rational");
      return Rational(p, q);
    }
    const auto dot = text.find('.');
    const std::string whole = text.substr(0, dot);
    const std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (frac.size() > 17 || (whole.empty() && frac.empty())) throw PreconditionError("bad decimal");
    for (char c : whole + frac) {
      if (c < '0' || c > '9') throw PreconditionError("bad decimal");
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t w = whole.empty() ? 0 : std::stoll(whole);
    const std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
    return Rational(w * den + f, den);
  } catch (const std::logic_error&) {
    throw PreconditionError("cannot parse '" + text + "' as a number");
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"f2reglab: arithmetic regularity over F_2^n"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", common.seed, "seed for every random stream");
    cmd->add_option("--dense-limit", common.dense, "largest k for 2^k dense objects");
    cmd->add_option("--threads", common.threads, "worker threads (default F2REGLAB_THREADS or 1)");
    cmd->add_option("--report", common.report_path, "write the JSON report here instead of stdout");
  };

  // gen
  InstanceArgs gen_args;
  std::string gen_table;
  auto* gen = app.add_subcommand("gen", "build an instance; write its table and manifest");
  add_common(gen);
  add_instance_options(gen, gen_args);
  gen->add_option("--out", gen_table, "F2FN table path");

  // eval
  InstanceArgs eval_args;
  std::string eval_x;
  auto* eval = app.add_subcommand("eval", "evaluate f at one point");
  add_common(eval);
  add_instance_options(eval, eval_args);
  eval->add_option("--x", eval_x, "point as decimal or 0x-hex integer encoding")->required();

  // check
  std::string check_in, check_basis, check_eps;
  auto* check = app.add_subcommand("check", "epsilon-regularity of one subspace");
  add_common(check);
  check->add_option("--in", check_in, "F2FN table")->required();
  check->add_option("--basis", check_basis, "spanning vectors of H, comma separated (empty = {0})");
  check->add_option("--eps", check_eps, "epsilon")->required();

  // decompose
  std::string dec_in, dec_eps, dec_csv;
  bool dec_single = false;
  DecomposeGuards dec_guards;
  auto* decompose = app.add_subcommand("decompose", "energy-increment search for a regular subspace");
  add_common(decompose);
  decompose->add_option("--in", dec_in, "F2FN table")->required();
  decompose->add_option("--eps", dec_eps, "epsilon in (0, 1/2)")->required();
  decompose->add_option("--csv", dec_csv, "per-iteration CSV path");
  decompose->add_flag("--single-witness", dec_single, "refine by one character per round");
  decompose->add_option("--max-codim", dec_guards.max_codim, "index guard, as log2");
  decompose->add_option("--max-iterations", dec_guards.max_iterations, "iteration guard (default ceil(1/eps^3))");

  // verify-lowerbound
  InstanceArgs lb_args;
  std::string lb_mode = "exhaustive";
  LowerBoundOptions lb_options;
  auto* verify = app.add_subcommand("verify-lowerbound", "certify that only {0} is epsilon-regular");
  add_common(verify);
  add_instance_options(verify, lb_args);
  verify->add_option("--mode", lb_mode, "exhaustive | structured")->check(CLI::IsMember({"exhaustive", "structured"}));
  verify->add_option("--random-per-dim", lb_options.random_per_dim, "structured mode: random subspaces per dimension");
  verify->add_flag("--codim2", lb_options.include_codim2, "structured mode: add every codimension-2 subspace");

  // spanning
  int sp_d = 0;
  std::int64_t sp_count = 0;
  std::string sp_rho = "3/4";
  int sp_retries = kDefaultRetryCap;
  std::uint64_t sp_samples = kDefaultHyperplaneSamples;
  bool sp_list = false;
  auto* spanning = app.add_subcommand("spanning", "generate and verify a spanning family");
  add_common(spanning);
  spanning->add_option("--d", sp_d, "dimension")->required();
  spanning->add_option("--count", sp_count, "family size (default 8d)");
  spanning->add_option("--rho", sp_rho, "incidence fraction bound");
  spanning->add_option("--retries", sp_retries, "rejection-sampling attempts");
  spanning->add_option("--samples", sp_samples, "random hyperplanes beyond the dense limit");
  spanning->add_flag("--list", sp_list, "include the vectors in the report");

  // round
  std::string rd_in, rd_out, rd_tau;
  DeviationFamilies rd_families;
  auto* round = app.add_subcommand("round", "randomized rounding to a binary function");
  add_common(round);
  round->add_option("--in", rd_in, "F2FN table")->required();
  round->add_option("--out", rd_out, "F2FN path for the rounded table");
  round->add_option("--tau", rd_tau, "deviation bound")->required();
  round->add_option("--pairs", rd_families.random_pairs, "random (coset, character) pairs");
  round->add_option("--max-codim", rd_families.max_codim, "largest codimension sampled");
  round->add_flag("!--no-full-space", rd_families.full_space, "skip the full-space scan");

  // bench-wht
  int bench_n = 20, bench_reps = 5;
  auto* bench = app.add_subcommand("bench-wht", "time the butterfly transform");
  add_common(bench);
  bench->add_option("--n", bench_n, "dimension");
  bench->add_option("--reps", bench_reps, "repetitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    set_dense_limit(common.dense);
    if (common.threads > 0) set_thread_count(common.threads);

    if (*gen) {
      const TowerParams params = params_from(gen_args);
      const Instance inst = build_instance(params, common.seed, gen_args.samples);
      if (!gen_table.empty()) {
        if (!inst.table) throw GuardError("n = " + params.n.text + " exceeds the dense limit; no table to write");
        write_table(gen_table, *inst.table);
      }
      write_output(emit_report(instance_manifest(inst), "instance"), common.report_path, out);
      return kExitOk;
    }

    if (*eval) {
      const TowerParams params = params_from(eval_args);
      require_dense(params.blocks ? params.blocks->prefix(std::max(0, params.s - 1)) : 64, "eval");
      const XiFamily xi = build_xi(params, common.seed, eval_args.samples);
      const F2Vector x = parse_vector(params.blocks->ambient(), eval_x);
      const int count = eval_count(params, xi, x);
      json j = {{"s", params.s},
                {"n", params.blocks->ambient()},
                {"x", vector_json(x)},
                {"value", rational_json(Rational(count, params.s))}};
      write_output(emit_report(j, "eval"), common.report_path, out);
      return kExitOk;
    }

    if (*check) {
      const FunctionTable f = read_table(check_in);
      std::vector<F2Vector> gens;
      for (const auto& p : split_list(check_basis)) gens.push_back(parse_vector(f.n(), p));
      const Subspace h = echelonize(f.n(), gens);
      const RegularityReport r = check_subspace_regularity(f, h, epsilon_double(check_eps));
      write_output(emit_report(json(r), "regularity"), common.report_path, out);
      return kExitOk;
    }

    if (*decompose) {
      const FunctionTable f = read_table(dec_in);
      dec_guards.schedule = dec_single ? Schedule::kSingleWitness : Schedule::kBatched;
      const DecompositionTrace t = find_regular_subspace(f, epsilon_double(dec_eps), dec_guards);
      if (!dec_csv.empty()) write_output(trace_csv(t), dec_csv, out);
      write_output(emit_report(json(t), "decomposition"), common.report_path, out);
      return kExitOk;
    }

    if (*verify) {
      const TowerParams params = params_from(lb_args);
      const Rational eps = epsilon_from(lb_args, params);
      const Instance inst = build_instance(params, common.seed, lb_args.samples);
      lb_options.mode = lb_mode == "structured" ? LowerBoundMode::kStructured : LowerBoundMode::kExhaustive;
      lb_options.seed = common.seed;
      const LowerBoundReport r = exhaustive_lowerbound_check(inst, eps, lb_options);
      write_output(emit_report(json(r), "lowerbound"), common.report_path, out);
      return r.only_zero_regular() && r.bad_fraction_violations == 0 ? kExitOk : kExitClaimFailed;
    }

    if (*spanning) {
      const std::int64_t count = sp_count > 0 ? sp_count : 8 * static_cast<std::int64_t>(sp_d);
      const double rho = boost::rational_cast<double>(parse_rational(sp_rho));
      const SpanningFamily fam = generate_spanning_family(sp_d, count, rho, common.seed, sp_retries, sp_samples);
      json j = {{"d", sp_d}, {"count", count}, {"rho", rho}, {"attempts", fam.attempts}, {"check", fam.check}};
      if (sp_list) {
        json vs = json::array();
        for (const auto& v : fam.vectors) vs.push_back(vector_json(v));
        j["vectors"] = vs;
      }
      write_output(emit_report(j, "spanning"), common.report_path, out);
      return kExitOk;
    }

    if (*round) {
      const FunctionTable f = read_table(rd_in);
      const FunctionTable rounded = round_to_binary(f, common.seed);
      if (!rd_out.empty()) write_table(rd_out, rounded);
      rd_families.seed = common.seed;
      const RoundingReport r = deviation_report(f, rounded, epsilon_double(rd_tau), rd_families);
      write_output(emit_report(json(r), "rounding"), common.report_path, out);
      return kExitOk;
    }

    if (*bench) {
      require_dense(bench_n, "bench-wht");
      const CounterStream rng(common.seed, Stream::kTestData);
      Eigen::VectorXd v(Eigen::Index{1} << bench_n);
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform_at(static_cast<std::uint64_t>(i));
      double best = 1e300;
      for (int r = 0; r < bench_reps; ++r) {
        Eigen::VectorXd w = v;
        const auto t0 = std::chrono::steady_clock::now();
        fwht_inplace(w);
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
      }
      json j = {{"n", bench_n}, {"reps", bench_reps}, {"best_seconds", best},
                {"ns_per_butterfly", best * 1e9 / (static_cast<double>(bench_n) * std::ldexp(0.5, bench_n))}};
      write_output(emit_report(j, "bench-wht"), common.report_path, out);
      return kExitOk;
    }
  } catch (const ClaimViolation& e) {
    err << "claim failed: " << e.what() << "\n";
    return kExitClaimFailed;
  } catch (const RetryCapExceeded& e) {
    err << "claim failed: " << e.what() << "\n";
    return kExitClaimFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace f2reg::cli
