#include "cgkit/cli.hpp"

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgkit/bd.hpp"
#include "cgkit/cg_rmatrix.hpp"
#include "cgkit/io.hpp"
#include "cgkit/modular.hpp"
#include "cgkit/quantum.hpp"

namespace cgkit {
namespace {

void print_report(const Report& rep) {
  int failures = 0;
  for (const auto& c : rep.checks) {
    switch (c.status) {
      case CheckEntry::Status::pass:
        std::cout << "[PASS] " << c.name;
        if (!c.note.empty()) std::cout << " -- " << c.note;
        std::cout << "\n";
        break;
      case CheckEntry::Status::fail:
        ++failures;
        std::cout << "[FAIL] " << c.name;
        if (c.witness_location) std::cout << " at " << *c.witness_location;
        if (c.witness_value) std::cout << ": " << *c.witness_value;
        if (!c.note.empty()) std::cout << " -- " << c.note;
        std::cout << "\n";
        break;
      case CheckEntry::Status::info:
        std::cout << "[INFO] " << c.name;
        if (!c.note.empty()) std::cout << ": " << c.note;
        std::cout << "\n";
        break;
    }
  }
  if (failures == 0)
    std::cout << "result: PASS (" << rep.checks.size() << " entries)\n";
  else
    std::cout << "result: FAIL (" << failures << " of " << rep.checks.size()
              << " entries failed)\n";
}

// Prints the report, optionally writes its JSON form, and maps the verdict
// to an exit code.
int finish(Report& rep, const std::string& command,
           const std::map<std::string, std::string>& params,
           const std::string& out_path) {
  rep.command = command;
  rep.params = params;
  print_report(rep);
  if (!out_path.empty())
    write_text_file(out_path, report_to_json(rep).dump(2) + "\n");
  return rep.all_passed() ? 0 : 1;
}

void merge_with_suffix(Report& rep, const Report& sub, const std::string& suffix) {
  for (auto c : sub.checks) {
    c.name += suffix;
    rep.add(std::move(c));
  }
}

long binomial(long a, long b) {
  if (b < 0 || b > a) return 0;
  long r = 1;
  for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

Rat parse_rat_option(const std::string& text, const char* what) {
  try {
    return rat_from_string(text);
  } catch (const std::exception&) {
    throw std::runtime_error(std::string(what) + " must be a rational number, got '" +
                             text + "'");
  }
}

struct CommonReportOpts {
  std::string out_path;
};

void add_out_option(CLI::App* cmd, CommonReportOpts& opts) {
  cmd->add_option("--out", opts.out_path, "write the report as JSON to this file");
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"exact construction and verification of two-parameter "
               "Cremmer-Gervais structures"};
  app.require_subcommand(1);

  // ---- r ----
  auto* r_cmd = app.add_subcommand("r", "R-matrix construction and identity checks");
  r_cmd->require_subcommand(1);

  int build_n = 2;
  bool build_one_param = false;
  std::string build_out, build_format = "json";
  auto* r_build = r_cmd->add_subcommand("build", "construct an R-matrix and write it out");
  r_build->add_option("--n", build_n, "base dimension")->required()->check(CLI::Range(1, 16));
  r_build->add_flag("--one-param", build_one_param, "specialize the second parameter to 1");
  r_build->add_option("--out", build_out, "output file (default: stdout)");
  r_build->add_option("--format", build_format, "output encoding")
      ->check(CLI::IsMember({"json", "text"}));

  int check_n = 0;
  bool check_one_param = false;
  std::string check_in;
  std::vector<std::string> check_list{"ybe", "hecke", "structure", "twist"};
  CommonReportOpts check_opts;
  auto* r_check = r_cmd->add_subcommand("check", "verify R-matrix identities");
  r_check->add_option("--n", check_n, "base dimension (omit to sweep 2..5)")
      ->check(CLI::Range(1, 8));
  r_check->add_option("--in", check_in, "verify the operator stored in this JSON file");
  r_check
      ->add_option("--checks", check_list,
                   "subset of ybe,hecke,structure,twist (structure and twist "
                   "always use the freshly built two-parameter family)")
      ->delimiter(',')
      ->check(CLI::IsMember({"ybe", "hecke", "structure", "twist"}));
  r_check->add_flag("--one-param", check_one_param,
                    "build the one-parameter specialization instead");
  add_out_option(r_check, check_opts);

  // ---- qa ----
  auto* qa_cmd = app.add_subcommand("qa", "quadratic algebras attached to the R-matrix");
  qa_cmd->require_subcommand(1);

  int det_n = 2;
  std::uint64_t det_modulus = fp::default_prime, det_seed = 0;
  CommonReportOpts det_opts;
  auto* qa_det = qa_cmd->add_subcommand(
      "det", "quantum determinant: pairings against generators and normality");
  qa_det->add_option("--n", det_n, "base dimension")->required()->check(CLI::Range(2, 5));
  qa_det->add_option("--modulus", det_modulus, "prime modulus for specialized checks");
  qa_det->add_option("--seed", det_seed, "random seed for specialization points");
  add_out_option(qa_det, det_opts);

  std::string poin_algebra;
  int poin_n = 2, poin_maxdeg = 3, poin_trials = 3;
  std::uint64_t poin_modulus = fp::default_prime, poin_seed = 0;
  std::string poin_dump;
  CommonReportOpts poin_opts;
  auto* qa_poin = qa_cmd->add_subcommand(
      "poincare", "graded dimensions of the quadratic algebras against classical targets");
  qa_poin->add_option("--algebra", poin_algebra, "which algebra")
      ->required()
      ->check(CLI::IsMember({"lambda", "symmetric", "frt"}));
  qa_poin->add_option("--n", poin_n, "base dimension")->required()->check(CLI::Range(2, 6));
  qa_poin->add_option("--max-deg", poin_maxdeg, "largest degree to measure")
      ->check(CLI::Range(0, 8));
  qa_poin->add_option("--modulus", poin_modulus, "prime modulus for rank counting");
  qa_poin->add_option("--seed", poin_seed, "random seed for evaluation points");
  qa_poin->add_option("--trials", poin_trials, "evaluation points per degree")
      ->check(CLI::Range(1, 16));
  qa_poin->add_option("--dump-relations", poin_dump,
                      "also write the defining relations as JSON to this file");
  add_out_option(qa_poin, poin_opts);

  int norm_n = 2, norm_trials = 3;
  std::uint64_t norm_modulus = fp::default_prime, norm_seed = 0;
  CommonReportOpts norm_opts;
  auto* qa_norm = qa_cmd->add_subcommand(
      "normality", "determinant normality as two-sided ideal membership");
  qa_norm->add_option("--n", norm_n, "base dimension")->required()->check(CLI::Range(2, 3));
  qa_norm->add_option("--modulus", norm_modulus, "prime modulus for specialized runs");
  qa_norm->add_option("--seed", norm_seed, "random seed for specialization points");
  qa_norm->add_option("--trials", norm_trials, "specialization points")
      ->check(CLI::Range(1, 16));
  add_out_option(qa_norm, norm_opts);

  int dual_n = 2, dual_maxdeg = 3;
  CommonReportOpts dual_opts;
  auto* qa_dual = qa_cmd->add_subcommand(
      "dual", "pairing functionals: vanishing, shifts, and determinant images");
  qa_dual->add_option("--n", dual_n, "base dimension")->required()->check(CLI::Range(2, 3));
  qa_dual->add_option("--max-deg", dual_maxdeg, "largest word degree to test")
      ->check(CLI::Range(0, 4));
  add_out_option(qa_dual, dual_opts);

  // ---- bd ----
  auto* bd_cmd = app.add_subcommand("bd", "classical structures from combinatorial triples");
  bd_cmd->require_subcommand(1);

  std::string bd_algebra = "sl", bd_triple = "cg", bd_in, bd_emit;
  int bd_rank = 0;
  CommonReportOpts bd_opts;
  auto* bd_run = bd_cmd->add_subcommand("run", "solve and verify a classical construction");
  bd_run->add_option("--algebra", bd_algebra, "matrix algebra flavor")
      ->check(CLI::IsMember({"sl", "gl"}));
  bd_run->add_option("--rank", bd_rank, "matrix size m")->check(CLI::Range(2, 8));
  bd_run->add_option("--triple", bd_triple, "built-in triple family")
      ->check(CLI::IsMember({"cg"}));
  bd_run->add_option("--in", bd_in, "read the construction problem from this JSON file");
  bd_run->add_option("--emit-data", bd_emit,
                     "write the resolved problem (with solved Cartan block) to this file");
  add_out_option(bd_run, bd_opts);

  std::string bdv_in;
  CommonReportOpts bdv_opts;
  auto* bd_validate =
      bd_cmd->add_subcommand("validate", "structural checks for an input file");
  bd_validate->add_option("--in", bdv_in, "input JSON file")->required();
  add_out_option(bd_validate, bdv_opts);

  // ---- limit ----
  int limit_n = 2;
  std::string limit_dir_q, limit_dir_p = "1";
  CommonReportOpts limit_opts;
  auto* limit_cmd = app.add_subcommand(
      "limit", "first-order degeneration at the identity and its classical identities");
  limit_cmd->add_option("--n", limit_n, "base dimension")->required()->check(CLI::Range(2, 8));
  limit_cmd->add_option("--dir-q", limit_dir_q,
                        "first parameter direction (rational; default n)");
  limit_cmd->add_option("--dir-p", limit_dir_p,
                        "second parameter direction (rational; default 1)");
  add_out_option(limit_cmd, limit_opts);

  // Parse.
  std::vector<const char*> argv;
  argv.push_back("cgkit");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (r_build->parsed()) {
      const LaurentOperator r = build_cg({build_n, build_one_param});
      const std::string payload = build_format == "json"
                                      ? rmatrix_to_json(r).dump(2) + "\n"
                                      : rmatrix_to_text(r);
      if (build_out.empty())
        std::cout << payload;
      else
        write_text_file(build_out, payload);
      return 0;
    }

    if (r_check->parsed()) {
      Report rep;
      auto run_for = [&](const LaurentOperator& r, int nn, const std::string& suffix) {
        for (const auto& which : check_list) {
          Report sub;
          if (which == "ybe")
            sub = check_yang_baxter(r);
          else if (which == "hecke")
            sub = check_hecke(r);
          else if (which == "structure")
            sub = check_structure_identities(nn);
          else
            sub = check_twist_identity(nn);
          merge_with_suffix(rep, sub, suffix);
        }
      };
      std::map<std::string, std::string> params;
      params["checks"] = [&] {
        std::string s;
        for (const auto& c : check_list) s += (s.empty() ? "" : ",") + c;
        return s;
      }();
      if (!check_in.empty()) {
        const LaurentOperator r =
            rmatrix_from_json(nlohmann::json::parse(read_text_file(check_in)));
        params["in"] = check_in;
        run_for(r, r.base_dim(), "");
      } else if (check_n > 0) {
        params["n"] = std::to_string(check_n);
        params["one_param"] = check_one_param ? "true" : "false";
        run_for(build_cg({check_n, check_one_param}), check_n, "");
      } else {
        params["n"] = "2..5";
        params["one_param"] = check_one_param ? "true" : "false";
        for (int nn = 2; nn <= 5; ++nn)
          run_for(build_cg({nn, check_one_param}), nn,
                  " [n=" + std::to_string(nn) + "]");
      }
      return finish(rep, "r check", params, check_opts.out_path);
    }

    if (qa_det->parsed()) {
      Report rep = check_det_properties(det_n, det_modulus, det_seed);
      return finish(rep, "qa det",
                    {{"n", std::to_string(det_n)},
                     {"modulus", std::to_string(det_modulus)},
                     {"seed", std::to_string(det_seed)}},
                    det_opts.out_path);
    }

    if (qa_poin->parsed()) {
      const LaurentOperator r = build_cg({poin_n, false});
      QuadraticPresentation pres = poin_algebra == "lambda"
                                       ? exterior_relations(r)
                                       : poin_algebra == "symmetric"
                                             ? symmetric_relations(r)
                                             : frt_relations(r);
      if (!poin_dump.empty())
        write_text_file(poin_dump, presentation_to_json(pres).dump(2) + "\n");
      Report rep;
      const long gens = poin_algebra == "frt" ? static_cast<long>(poin_n) * poin_n
                                              : static_cast<long>(poin_n);
      for (int d = 0; d <= poin_maxdeg; ++d) {
        Stopwatch sw;
        const GradedDimension gd =
            graded_dimension(pres, d, poin_modulus, poin_seed, poin_trials);
        const long expected = poin_algebra == "lambda" ? binomial(gens, d)
                                                       : binomial(gens + d - 1, d);
        const std::string name =
            "graded-dimension(" + poin_algebra + ",degree " + std::to_string(d) + ")";
        std::string note = "measured " + std::to_string(gd.dimension) + ", expected " +
                           std::to_string(expected);
        if (!gd.unanimous) note += ", trials disagreed";
        if (gd.dimension == expected && gd.unanimous)
          rep.add_pass(name, sw.ms(), note);
        else
          rep.add_fail(name, "degree " + std::to_string(d), note, sw.ms());
      }
      return finish(rep, "qa poincare",
                    {{"algebra", poin_algebra},
                     {"n", std::to_string(poin_n)},
                     {"max_deg", std::to_string(poin_maxdeg)},
                     {"modulus", std::to_string(poin_modulus)},
                     {"seed", std::to_string(poin_seed)},
                     {"trials", std::to_string(poin_trials)}},
                    poin_opts.out_path);
    }

    if (qa_norm->parsed()) {
      Report rep = check_det_normality(norm_n, norm_modulus, norm_seed, norm_trials);
      return finish(rep, "qa normality",
                    {{"n", std::to_string(norm_n)},
                     {"modulus", std::to_string(norm_modulus)},
                     {"seed", std::to_string(norm_seed)},
                     {"trials", std::to_string(norm_trials)}},
                    norm_opts.out_path);
    }

    if (qa_dual->parsed()) {
      Report rep = l_functionals(dual_n);
      rep.merge(psi_phi_check(dual_n, dual_maxdeg));
      return finish(rep, "qa dual",
                    {{"n", std::to_string(dual_n)},
                     {"max_deg", std::to_string(dual_maxdeg)}},
                    dual_opts.out_path);
    }

    if (bd_run->parsed()) {
      std::map<std::string, std::string> params;
      Report rep;
      if (!bd_in.empty()) {
        params["in"] = bd_in;
        const BDInput input = bd_input_from_json(nlohmann::json::parse(read_text_file(bd_in)));
        const ReductiveAlgebra g = build_reductive(input.type, input.rank);
        rep = validate_triple(g, input.triple);
        RatMatrix f0;
        if (input.f0) {
          f0 = *input.f0;
          rep.add_info("f0-source", "taken from the input file");
        } else {
          const F0Solution sol = solve_f0(g, input.triple);
          if (!sol.consistent) {
            rep.add_fail("f0-solvable", "Cartan system", "inconsistent");
            return finish(rep, "bd run", params, bd_opts.out_path);
          }
          rep.add_info("f0-source",
                       "solved, freedom " + std::to_string(sol.freedom));
          f0 = sol.f0;
        }
        const BDQuadruple quad{input.triple, f0};
        const EndoF f = build_f(g, quad);
        rep.merge(check_bialgebra(g, f));
        rep.merge(subalgebra_analysis(g, f, nullptr));
        if (!bd_emit.empty()) {
          BDInput resolved = input;
          resolved.f0 = f0;
          write_text_file(bd_emit, bd_input_to_json(resolved).dump(2) + "\n");
        }
      } else {
        if (bd_rank == 0)
          throw std::runtime_error("bd run needs either --in or --rank");
        params["algebra"] = bd_algebra;
        params["rank"] = std::to_string(bd_rank);
        params["triple"] = bd_triple;
        if (bd_algebra == "sl" && bd_rank >= 3) {
          rep = cg_pipeline(bd_rank, true);
        } else {
          const ReductiveAlgebra g = build_reductive(
              bd_algebra == "sl" ? ReductiveAlgebra::Type::sl : ReductiveAlgebra::Type::gl,
              bd_rank);
          const AdmissibleTriple triple = cg_triple(bd_rank);
          rep = validate_triple(g, triple);
          const F0Solution sol = solve_f0(g, triple);
          if (!sol.consistent) {
            rep.add_fail("f0-solvable", "Cartan system", "inconsistent");
            return finish(rep, "bd run", params, bd_opts.out_path);
          }
          rep.add_info("f0-source", "solved, freedom " + std::to_string(sol.freedom));
          const EndoF f = build_f(g, {triple, sol.f0});
          rep.merge(check_bialgebra(g, f));
          rep.merge(subalgebra_analysis(g, f, nullptr));
        }
        if (!bd_emit.empty()) {
          const ReductiveAlgebra g = build_reductive(
              bd_algebra == "sl" ? ReductiveAlgebra::Type::sl : ReductiveAlgebra::Type::gl,
              bd_rank);
          BDInput resolved;
          resolved.type = bd_algebra == "sl" ? ReductiveAlgebra::Type::sl
                                             : ReductiveAlgebra::Type::gl;
          resolved.rank = bd_rank;
          resolved.triple = cg_triple(bd_rank);
          resolved.f0 = solve_f0(g, resolved.triple).f0;
          write_text_file(bd_emit, bd_input_to_json(resolved).dump(2) + "\n");
        }
      }
      return finish(rep, "bd run", params, bd_opts.out_path);
    }

    if (bd_validate->parsed()) {
      const BDInput input = bd_input_from_json(nlohmann::json::parse(read_text_file(bdv_in)));
      const ReductiveAlgebra g = build_reductive(input.type, input.rank);
      Report rep = validate_triple(g, input.triple);
      return finish(rep, "bd validate", {{"in", bdv_in}}, bdv_opts.out_path);
    }

    if (limit_cmd->parsed()) {
      const Rat uq = limit_dir_q.empty() ? Rat(limit_n)
                                         : parse_rat_option(limit_dir_q, "--dir-q");
      const Rat up = parse_rat_option(limit_dir_p, "--dir-p");
      Report rep = check_semiclassical(limit_n, uq, up, nullptr);
      return finish(rep, "limit",
                    {{"n", std::to_string(limit_n)},
                     {"dir_q", rat_to_string(uq)},
                     {"dir_p", rat_to_string(up)}},
                    limit_opts.out_path);
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::cerr << "error: no command selected\n";
  return 2;
}

}  // namespace cgkit
