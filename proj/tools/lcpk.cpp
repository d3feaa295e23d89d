// lcpk: classify, solve, generate, and verify linear complementarity
// instances whose matrices carry a block triangular K structure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lcpk/classify.hpp"
#include "lcpk/game.hpp"
#include "lcpk/generate.hpp"
#include "lcpk/io.hpp"
#include "lcpk/lcp.hpp"
#include "lcpk/linalg.hpp"
#include "lcpk/lp.hpp"

using lcpk::operator+;
using lcpk::operator-;
using lcpk::operator*;

namespace {

using nlohmann::json;

constexpr int kExitSolved = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitParseError = 2;
constexpr int kExitDimensionError = 3;
constexpr int kExitPrecondition = 4;

struct CliError {
  int code;
  std::string message;
};

double assert_tolerance() {
  if (const char* env = std::getenv("LCPK_TOL")) {
    try {
      const double v = std::stod(env);
      if (v > 0.0) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring unparsable LCPK_TOL\n";
  }
  return 1e-7;
}

lcpk::SolutionTolerances tolerances() {
  lcpk::SolutionTolerances tol;
  tol.assert_tol = assert_tolerance();
  return tol;
}

lcpk::LcpInstance load_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitParseError, "cannot open " + path};
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return lcpk::parse_instance(text);
  } catch (const json::parse_error& e) {
    throw CliError{kExitParseError, std::string("parse error: ") + e.what()};
  } catch (const lcpk::InstanceFormatError& e) {
    throw CliError{kExitDimensionError, std::string("bad instance: ") + e.what()};
  }
}

void emit_report(const json& report, const std::string& out_path) {
  const std::string text = lcpk::canonical_dump(report);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw CliError{kExitPrecondition, "cannot write " + out_path};
    out << text;
  }
  std::cout << text;
}

class Stopwatch {
 public:
  double ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

json verdicts_to_json(const lcpk::ClassReport& report) {
  json v;
  for (const auto& [name, verdict] : report.verdicts) {
    v[name] = lcpk::to_string(verdict);
  }
  return v;
}

json certificates_to_json(const lcpk::ClassReport& report) {
  json c = json::object();
  if (report.p_failing_minor) {
    c["p_failing_minor"] = {{"indices", report.p_failing_minor->indices},
                            {"value", report.p_failing_minor->value}};
  }
  if (report.p0_failing_minor) {
    c["p0_failing_minor"] = {{"indices", report.p0_failing_minor->indices},
                             {"value", report.p0_failing_minor->value}};
  }
  if (report.s_witness) c["s_witness"] = lcpk::to_json(*report.s_witness);
  if (report.btk_orientation) {
    c["btk_orientation"] = lcpk::to_string(*report.btk_orientation);
  }
  if (report.btk_failing_block) {
    c["btk_failing_block"] = {report.btk_failing_block->first,
                              report.btk_failing_block->second};
  }
  if (report.hidden) {
    c["hidden"] = {{"ok", report.hidden->ok},
                   {"residual", report.hidden->residual},
                   {"reason", report.hidden->reason}};
    if (report.hidden->orientation) {
      c["hidden"]["orientation"] = lcpk::to_string(*report.hidden->orientation);
    }
  }
  return c;
}

int cmd_classify(const std::string& path, std::optional<std::size_t> block_size,
                 bool strict, const std::string& out_path) {
  Stopwatch watch;
  lcpk::LcpInstance inst = load_or_throw(path);
  std::optional<std::size_t> bs = block_size;
  if (!bs && inst.partition) bs = inst.partition->block_size;
  if (bs && (*bs == 0 || inst.m.rows() % *bs != 0)) {
    throw CliError{kExitDimensionError, "block size does not divide dimension"};
  }
  const lcpk::Strictness strictness =
      strict ? lcpk::Strictness::kStrict : lcpk::Strictness::kRelaxed;
  const lcpk::Matrix* x = inst.hidden_x ? &*inst.hidden_x : nullptr;
  const lcpk::Matrix* y = inst.hidden_y ? &*inst.hidden_y : nullptr;
  lcpk::ClassReport report = lcpk::classify_matrix(inst.m, bs, strictness, x, y);

  json out;
  out["command"] = "classify";
  out["instance"] = path;
  out["strictness"] = strict ? "strict" : "relaxed";
  if (bs) out["block_size"] = *bs;
  out["verdicts"] = verdicts_to_json(report);
  out["certificates"] = certificates_to_json(report);
  out["wall_time_ms"] = watch.ms();
  emit_report(out, out_path);
  return kExitSolved;
}

int cmd_solve(const std::string& path, const std::string& method,
              const std::string& p_mode, const std::string& out_path) {
  Stopwatch watch;
  lcpk::LcpInstance inst = load_or_throw(path);
  const lcpk::SolutionTolerances tol = tolerances();

  json out;
  out["command"] = "solve";
  out["instance"] = path;
  out["method"] = method;
  int exit_code = kExitSolved;

  auto check_and_store = [&](const lcpk::LcpSolution& sol) {
    out["solution"] = lcpk::to_json(sol);
    if (!lcpk::meets_invariants(sol.residuals, tol)) {
      out["status"] = "residuals_exceed_tolerance";
      exit_code = kExitNoSolution;
    }
  };

  if (method == "lemke") {
    lcpk::LemkeResult res = lcpk::solve_lemke(inst);
    out["status"] = lcpk::to_string(res.status);
    out["pivots"] = res.pivots;
    if (res.status == lcpk::LemkeStatus::kSolved) {
      check_and_store(*res.solution);
    } else {
      exit_code = kExitNoSolution;
      if (res.ray) {
        out["ray"] = {{"z_base", lcpk::to_json(res.ray->z_base)},
                      {"z_dir", lcpk::to_json(res.ray->z_dir)},
                      {"w_base", lcpk::to_json(res.ray->w_base)},
                      {"w_dir", lcpk::to_json(res.ray->w_dir)},
                      {"z0", res.ray->z0},
                      {"z0_dir", res.ray->z0_dir}};
      }
    }
  } else if (method == "lp") {
    lcpk::Vector p;
    if (p_mode == "derived") {
      if (!inst.hidden_x || !inst.hidden_y || !inst.partition) {
        throw CliError{kExitPrecondition,
                       "--p derived needs X, Y witnesses and block_size in the instance"};
      }
      lcpk::HiddenP hp = lcpk::derive_p_hidden(inst);
      p = hp.p;
      out["p"] = lcpk::to_json(p);
      out["r"] = lcpk::to_json(hp.r);
      out["s"] = lcpk::to_json(hp.s);
    } else {
      p = lcpk::Vector(inst.m.rows(), 1.0);
    }
    lcpk::LpReductionResult res = lcpk::solve_lp_reduction(inst, p);
    out["status"] = lcpk::to_string(res.status);
    if (res.solution) {
      check_and_store(*res.solution);
      out["certificate"] = lcpk::to_json(res.certificate);
    } else {
      exit_code = kExitNoSolution;
    }
  } else if (method == "block") {
    if (!inst.partition) {
      throw CliError{kExitPrecondition,
                     "--method block needs block_size in the instance"};
    }
    lcpk::LemkeResult res = lcpk::solve_block_sequential(inst);
    out["status"] = lcpk::to_string(res.status);
    out["pivots"] = res.pivots;
    if (res.status == lcpk::LemkeStatus::kSolved) {
      check_and_store(*res.solution);
    } else {
      exit_code = kExitNoSolution;
    }
  } else if (method == "oracle") {
    if (inst.m.rows() > lcpk::kBruteforceCap) {
      throw CliError{kExitPrecondition, "oracle capped at dimension 12"};
    }
    auto sols = lcpk::solve_bruteforce(inst);
    out["status"] = sols.empty() ? "no_solution" : "solved";
    json arr = json::array();
    for (const auto& s : sols) arr.push_back(lcpk::to_json(s));
    out["solutions"] = arr;
    if (sols.empty()) exit_code = kExitNoSolution;
  } else if (method == "augmented") {
    if (!inst.hidden_x || !inst.hidden_y || !inst.partition) {
      throw CliError{kExitPrecondition,
                     "--method augmented needs X, Y witnesses and block_size"};
    }
    lcpk::AugmentedSolveResult res = lcpk::solve_augmented(inst);
    out["status"] = lcpk::to_string(res.status);
    out["x_part_valid"] = res.x_part_valid;
    if (res.status == lcpk::LemkeStatus::kSolved && res.x_part_valid) {
      check_and_store(*res.solution);
      out["augmented_solution"] = lcpk::to_json(*res.augmented);
    } else {
      exit_code = kExitNoSolution;
    }
  } else {
    throw CliError{kExitPrecondition, "unknown method: " + method};
  }

  out["wall_time_ms"] = watch.ms();
  emit_report(out, out_path);
  return exit_code;
}

int cmd_gen(const std::string& kind, std::size_t blocks, std::size_t block_size,
            std::uint64_t seed, std::size_t count, const std::string& out_dir) {
  namespace fs = std::filesystem;
  if (blocks == 0 || block_size == 0) {
    throw CliError{kExitPrecondition, "sizes must be positive"};
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) {
    throw CliError{kExitPrecondition, "cannot create output directory " + out_dir};
  }

  json out;
  out["command"] = "gen";
  out["kind"] = kind;
  out["seed"] = seed;
  json files = json::array();
  for (std::size_t idx = 0; idx < count; ++idx) {
    lcpk::Rng rng(seed + idx);
    lcpk::LcpInstance inst;
    if (kind == "k") {
      inst.m = lcpk::gen_k_matrix(block_size * blocks, rng);
      inst.partition =
          lcpk::BlockPartition{inst.m.rows(), 1, lcpk::Orientation::kLower};
    } else if (kind == "block-k") {
      inst.m = lcpk::gen_block_triangular_k(blocks, block_size, rng);
      inst.partition =
          lcpk::BlockPartition{block_size, blocks, lcpk::Orientation::kLower};
    } else if (kind == "hidden") {
      lcpk::HiddenTriple t = lcpk::gen_hidden(blocks, block_size, rng);
      inst.m = t.n;
      inst.hidden_x = t.x;
      inst.hidden_y = t.y;
      inst.partition = t.partition;
    } else {
      throw CliError{kExitPrecondition, "unknown kind: " + kind};
    }
    inst.q = lcpk::sample_q(inst.m.rows(), rng);

    char name[64];
    std::snprintf(name, sizeof(name), "%s_%04zu.json", kind.c_str(), idx);
    const std::string file = (fs::path(out_dir) / name).string();
    try {
      lcpk::save_instance(inst, file);
    } catch (const std::runtime_error& e) {
      throw CliError{kExitPrecondition, e.what()};
    }
    files.push_back(file);
  }
  out["files"] = files;
  emit_report(out, "");
  return kExitSolved;
}

// One property line in a verify report.
json prop(const std::string& name, bool pass, json detail = json::object()) {
  json p;
  p["name"] = name;
  p["pass"] = pass;
  if (!detail.empty()) p["detail"] = detail;
  return p;
}

int cmd_verify(const std::string& path, const std::string& suite,
               std::size_t samples, std::uint64_t seed,
               const std::string& out_path) {
  Stopwatch watch;
  lcpk::LcpInstance inst = load_or_throw(path);
  const std::size_t n = inst.m.rows();
  const std::size_t bs = inst.partition ? inst.partition->block_size : n;
  const bool btk = lcpk::is_block_triangular_k(inst.m, bs).is_btk;
  const bool has_witnesses = inst.hidden_x && inst.hidden_y && inst.partition;

  const bool want_all = suite == "all";
  auto wants = [&](const char* s) { return want_all || suite == s; };
  if (!want_all) {
    if ((suite == "lattice" || suite == "least" || suite == "inverse") && !btk) {
      throw CliError{kExitPrecondition,
                     "suite " + suite + " needs a block triangular K matrix"};
    }
    if (suite == "q0" && n > lcpk::kBruteforceCap) {
      throw CliError{kExitPrecondition, "q0 suite capped at dimension 12"};
    }
    if (suite == "augmented" && !has_witnesses) {
      throw CliError{kExitPrecondition, "augmented suite needs X, Y witnesses"};
    }
  }

  json props = json::array();
  lcpk::Rng rng(seed);

  if (wants("lattice") && btk) {
    bool pass = true;
    json detail;
    auto fr = lcpk::feasible_point(inst.m, inst.q);
    if (fr.feasible) {
      auto minv = lcpk::inverse(inst.m);
      const bool inv_nonneg = minv && lcpk::min_entry(*minv) >= -1e-9;
      std::size_t tested = 0;
      for (std::size_t t = 0; t < samples && pass; ++t) {
        lcpk::Vector a, b;
        if (inv_nonneg) {
          a = lcpk::sample_feasible_point(fr.point, *minv, rng);
          b = lcpk::sample_feasible_point(fr.point, *minv, rng);
        } else {
          break;  // no constructive sampler for this matrix
        }
        lcpk::Vector z = lcpk::meet(a, b);
        lcpk::Vector slack = inst.m * z + inst.q;
        const double floor = std::min(lcpk::min_entry(z), lcpk::min_entry(slack));
        ++tested;
        if (floor < -1e-8) {
          pass = false;
          detail["counterexample"] = {{"x", lcpk::to_json(a)},
                                      {"y", lcpk::to_json(b)},
                                      {"meet", lcpk::to_json(z)},
                                      {"violation", floor}};
        }
      }
      detail["pairs_tested"] = tested;
    } else {
      detail["note"] = "feasible region empty; property vacuous";
    }
    props.push_back(prop("meet_of_feasible_points_is_feasible", pass, detail));
  }

  if (wants("least") && btk) {
    lcpk::LeastElementResult res = lcpk::least_element(inst, samples, seed);
    const bool pass = res.status == lcpk::LeastElementStatus::kFound ||
                      res.status == lcpk::LeastElementStatus::kInfeasible;
    json detail;
    detail["status"] = lcpk::to_string(res.status);
    if (res.status != lcpk::LeastElementStatus::kInfeasible) {
      detail["z"] = lcpk::to_json(res.z);
      detail["residuals"] = lcpk::to_json(res.residuals);
    }
    props.push_back(prop("least_element_solves_lcp", pass, detail));
  }

  if (wants("inverse") && btk) {
    auto minv = lcpk::inverse(inst.m);
    bool pass = false;
    json detail;
    if (minv) {
      const double min_inv = lcpk::min_entry(*minv);
      const double residual =
          lcpk::inf_norm((*minv) * inst.m - lcpk::Matrix::identity(n));
      pass = min_inv >= -1e-9 && residual <= 1e-9 * static_cast<double>(n);
      detail["min_entry"] = min_inv;
      detail["residual"] = residual;
    } else {
      detail["note"] = "matrix singular";
    }
    props.push_back(prop("inverse_exists_and_nonnegative", pass, detail));
  }

  if (wants("q0") && n <= lcpk::kBruteforceCap) {
    lcpk::Q0Report q0 = lcpk::q0_sampling_check(inst.m, samples, seed);
    json detail;
    detail["samples_tested"] = q0.samples_tested;
    if (q0.counterexample_found) {
      detail["counterexample_q"] = lcpk::to_json(q0.q);
      detail["feasible_point"] = lcpk::to_json(q0.feasible_point);
    } else {
      detail["note"] = "no counterexample in sampled q vectors";
    }
    props.push_back(
        prop("feasible_implies_solvable_sampling", !q0.counterexample_found,
             detail));
  }

  if (wants("augmented") && has_witnesses) {
    bool pass = true;
    json detail;
    std::size_t agree = 0;
    const std::size_t rounds = std::max<std::size_t>(1, samples / 10);
    for (std::size_t t = 0; t < rounds && pass; ++t) {
      lcpk::LcpInstance probe = inst;
      if (t > 0) probe.q = lcpk::sample_q(n, rng);
      const bool oracle_solvable = !lcpk::solve_bruteforce(probe).empty();
      lcpk::AugmentedSolveResult res = lcpk::solve_augmented(probe);
      const bool aug_solves = res.status == lcpk::LemkeStatus::kSolved &&
                              res.x_part_valid;
      if (oracle_solvable != aug_solves) {
        pass = false;
        detail["counterexample_q"] = lcpk::to_json(probe.q);
        detail["oracle_solvable"] = oracle_solvable;
        detail["augmented_solves"] = aug_solves;
      } else {
        ++agree;
      }
      const bool feasible = lcpk::feasible_point(probe.m, probe.q).feasible;
      if (feasible) {
        lcpk::HiddenP hp = lcpk::derive_p_hidden(probe);
        lcpk::AugmentedInstance aug =
            lcpk::build_augmented(probe.m, probe.q, hp.r, hp.s);
        if (!lcpk::feasible_point(aug.script_n, aug.q_bar).feasible) {
          pass = false;
          detail["feasibility_lift_failed_q"] = lcpk::to_json(probe.q);
        }
      }
    }
    detail["agreements"] = agree;
    props.push_back(prop("augmented_equivalence", pass, detail));
  }

  bool all_pass = true;
  for (const auto& p : props) {
    if (!p["pass"].get<bool>()) all_pass = false;
  }

  json out;
  out["command"] = "verify";
  out["instance"] = path;
  out["suite"] = suite;
  out["samples"] = samples;
  out["seed"] = seed;
  out["properties"] = props;
  out["all_pass"] = all_pass;
  out["wall_time_ms"] = watch.ms();
  emit_report(out, out_path);
  return all_pass ? kExitSolved : kExitNoSolution;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LCP toolkit for block triangular K-type matrices"};
  app.require_subcommand(1);

  std::string path, out_path;
  std::size_t block_size_opt = 0;
  bool strict = false, relaxed = false;

  auto* classify = app.add_subcommand("classify", "classify an instance matrix");
  classify->add_option("path", path, "instance file")->required();
  classify->add_option("--block-size", block_size_opt, "block size override");
  classify->add_flag("--strict", strict, "require K off-diagonal blocks");
  classify->add_flag("--relaxed", relaxed, "only diagonal blocks must be K (default)");
  classify->add_option("--out", out_path, "write report here as well");

  std::string method = "lemke", p_mode = "e";
  auto* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("path", path, "instance file")->required();
  solve->add_option("--method", method, "lemke|lp|block|oracle|augmented")
      ->check(CLI::IsMember({"lemke", "lp", "block", "oracle", "augmented"}));
  solve->add_option("--p", p_mode, "objective vector for --method lp")
      ->check(CLI::IsMember({"e", "derived"}));
  solve->add_option("--out", out_path, "write report here as well");

  std::string kind = "block-k", out_dir;
  std::size_t blocks = 2, gen_block_size = 2, count = 1;
  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("gen", "generate instance files");
  gen->add_option("--kind", kind, "k|block-k|hidden")
      ->check(CLI::IsMember({"k", "block-k", "hidden"}));
  gen->add_option("--blocks", blocks, "number of diagonal blocks");
  gen->add_option("--block-size", gen_block_size, "block size");
  gen->add_option("--seed", seed, "base seed; file i uses seed+i");
  gen->add_option("--count", count, "number of files");
  gen->add_option("--out", out_dir, "output directory")->required();

  std::string suite = "all";
  std::size_t samples = 100;
  auto* verify = app.add_subcommand("verify", "run property suites on an instance");
  verify->add_option("path", path, "instance file")->required();
  verify->add_option("--suite", suite, "all|lattice|least|inverse|q0|augmented")
      ->check(CLI::IsMember({"all", "lattice", "least", "inverse", "q0", "augmented"}));
  verify->add_option("--samples", samples, "sample count");
  verify->add_option("--seed", seed, "rng seed");
  verify->add_option("--out", out_path, "write report here as well");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) {
      std::optional<std::size_t> bs;
      if (block_size_opt > 0) bs = block_size_opt;
      return cmd_classify(path, bs, strict && !relaxed, out_path);
    }
    if (solve->parsed()) return cmd_solve(path, method, p_mode, out_path);
    if (gen->parsed()) {
      return cmd_gen(kind, blocks, gen_block_size, seed, count, out_dir);
    }
    if (verify->parsed()) {
      return cmd_verify(path, suite, samples, seed, out_path);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimensionError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return 0;
}
