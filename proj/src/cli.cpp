#include "pwp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "pwp/errors.hpp"
#include "pwp/format.hpp"
#include "pwp/grover.hpp"
#include "pwp/series.hpp"
#include "pwp/wp.hpp"

namespace pwp::cli {

namespace {

struct Config {
  std::string program_file;
  std::string post;
  std::vector<std::string> binds;
  std::int64_t n = 0;
  std::int64_t c = 0;
  std::int64_t x0 = 0;
  std::int64_t cmax = 0;
  std::int64_t nmax = 0;
  std::uint64_t seed = 0;
  std::int64_t runs = 1;
  double tol = 1e-9;
  std::string out_path;
};

// Usage-level failure: reported on the diagnostic stream with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Env parse_binds(const std::vector<std::string>& binds) {
  Env env;
  for (const auto& b : binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--bind expects name=expr, got '" + b + "'");
    const std::string name = b.substr(0, eq);
    env.set(name, eval(parse_expr(b.substr(eq + 1)), env));
  }
  return env;
}

// Writes to --out when given, else to `out`.
void emit(const Config& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + cfg.out_path + "'");
  f << text;
}

int cmd_wp_run(const Config& cfg, std::ostream& out) {
  const Program p = parse(read_file(cfg.program_file));
  const Expr post = parse_expr(cfg.post);
  out << format_sig(wp(p, post, parse_binds(cfg.binds))) << '\n';
  return kExitOk;
}

int cmd_wp_subst(const Config& cfg, std::ostream& out) {
  const Program p = parse(read_file(cfg.program_file));
  const Expr post = parse_expr(cfg.post);
  out << pretty(wp_subst(p, post, parse_binds(cfg.binds))) << '\n';
  return kExitOk;
}

int cmd_grover_program(const Config& cfg, std::ostream& out) {
  const auto inst = grover::build_grover_program({cfg.n, cfg.x0, cfg.c});
  emit(cfg, out, pretty(inst.program) + "\n");
  return kExitOk;
}

int cmd_grover_prob(const Config& cfg, std::ostream& out) {
  out << "P_recurrence " << format_sig(grover::success_prob_recurrence(cfg.n, cfg.c)) << '\n';
  out << "P_closed " << format_sig(grover::success_prob_closed(cfg.n, cfg.c)) << '\n';
  return kExitOk;
}

int cmd_grover_sweep(const Config& cfg, std::ostream& out, std::ostream& err) {
  std::string csv = "C,P_recurrence,P_closed\n";
  int status = kExitOk;
  for (const auto& row : grover::sweep(cfg.n, cfg.cmax)) {
    csv += std::to_string(row.c) + "," + format_sig(row.p_recurrence) + "," + format_sig(row.p_closed) + "\n";
    if (!(std::abs(row.p_recurrence - row.p_closed) < cfg.tol)) {
      err << "C=" << row.c << ": recurrence and closed form differ by more than " << cfg.tol << '\n';
      status = kExitCheckFailed;
    }
  }
  emit(cfg, out, csv);
  return status;
}

int cmd_grover_optimal(const Config& cfg, std::ostream& out) {
  if (cfg.nmax < 1) throw UsageError("--nmax must be >= 1");
  std::string csv = "N,H_real,C_star,P_at_C_star\n";
  for (std::int64_t n = 1; n <= cfg.nmax; ++n) {
    const std::int64_t c = grover::optimal_iterations(n);
    csv += std::to_string(n) + "," + format_sig(grover::optimal_real(n)) + "," + std::to_string(c) + "," +
           format_sig(grover::success_prob_closed(n, c)) + "\n";
  }
  emit(cfg, out, csv);
  return kExitOk;
}

int cmd_grover_simulate(const Config& cfg, std::ostream& out) {
  if (cfg.runs < 1) throw UsageError("--runs must be >= 1");
  const auto inst = grover::build_grover_program({cfg.n, cfg.x0, cfg.c});
  const Sampler sampler(inst.program, inst.env);
  std::int64_t hits = 0;
  for (std::int64_t k = 0; k < cfg.runs; ++k) {
    const Env final_env = sampler.run(cfg.seed + static_cast<std::uint64_t>(k));
    if (eval(inst.post, final_env).to_real() == 1.0) ++hits;
  }
  out << "runs " << cfg.runs << '\n';
  out << "hits " << hits << '\n';
  out << "frequency " << format_sig(static_cast<double>(hits) / static_cast<double>(cfg.runs)) << '\n';
  return kExitOk;
}

int cmd_series_check(const Config& cfg, std::ostream& out) {
  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  if (cfg.cmax < 0) throw UsageError("--cmax must be >= 0");
  const auto k = static_cast<std::size_t>(cfg.cmax) + 1;
  const auto table = grover::recurrence_table(cfg.n, cfg.cmax);
  const auto [gf_a, gf_b] = series::gf_pair(cfg.n);
  const auto ca = series::series_coeffs(gf_a, k);
  const auto cb = series::series_coeffs(gf_b, k);
  const auto cs = series::series_coeffs(series::gf_sum(cfg.n), k);
  const double th = grover::theta(cfg.n);
  const auto kernel = series::dirichlet_table(cfg.cmax, th);

  bool a_ok = true, b_ok = true, s_ok = true;
  double kernel_err = 0.0, chain_err = 0.0, ab_err = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    a_ok = a_ok && ca[i] == table[i].a;
    b_ok = b_ok && cb[i] == table[i].b;
    s_ok = s_ok && cs[i] == table[i].a + table[i].b;
    const auto& kp = kernel[i];
    kernel_err = std::max(kernel_err, std::abs(kp.sum - kp.kernel));
    const double chain = kp.sum * kp.sum / static_cast<double>(cfg.n);
    chain_err = std::max(chain_err, std::abs(chain - grover::success_prob_closed(cfg.n, static_cast<std::int64_t>(i))));
    ab_err = std::max(ab_err, std::abs(Rational(table[i].a + table[i].b).get_d() - kp.sum));
  }

  bool all = true;
  auto line = [&](bool ok, const std::string& what) {
    all = all && ok;
    out << (ok ? "PASS " : "FAIL ") << what << '\n';
  };
  const std::string range = " (N=" + std::to_string(cfg.n) + ", i<=" + std::to_string(cfg.cmax) + ")";
  line(a_ok, "gf coefficients equal A_i" + range);
  line(b_ok, "gf coefficients equal B_i" + range);
  line(s_ok, "gf coefficients of A+B equal A_i+B_i" + range);
  line(kernel_err < cfg.tol, "Dirichlet kernel identity max_err=" + format_sig(kernel_err, 3) + range);
  line(chain_err < cfg.tol, "(1+2 sum cos)^2/N equals closed form max_err=" + format_sig(chain_err, 3) + range);
  line(ab_err < cfg.tol, "A_C+B_C equals cosine sum max_err=" + format_sig(ab_err, 3) + range);
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Probabilistic weakest preconditions and Grover search analysis", "pwp"};
  app.require_subcommand(1);

  std::function<int()> action;
  auto on = [&](CLI::App* sub, std::function<int()> fn) { sub->callback([&action, fn] { action = fn; }); };

  auto* wp_cmd = app.add_subcommand("wp", "Weakest-precondition queries on .pwp programs");
  wp_cmd->require_subcommand(1);
  for (const char* name : {"run", "subst"}) {
    auto* sub = wp_cmd->add_subcommand(name, std::string(name) == "run"
                                                 ? "Evaluate wp(program, post) in the bound environment"
                                                 : "Print the backward-substituted pre-expectation");
    sub->add_option("file", cfg.program_file, "Program file")->required();
    sub->add_option("--post", cfg.post, "Post-expectation")->required();
    sub->add_option("--bind", cfg.binds, "name=expr binding (repeatable)");
    const bool run = std::string(name) == "run";
    on(sub, [&, run] { return run ? cmd_wp_run(cfg, out) : cmd_wp_subst(cfg, out); });
  }

  auto* gr = app.add_subcommand("grover", "Grover search success probability");
  gr->require_subcommand(1);
  auto* prog = gr->add_subcommand("program", "Print the search program in .pwp syntax");
  prog->add_option("--out", cfg.out_path, "Output file");
  cfg.n = 1;
  on(prog, [&] { return cmd_grover_program(cfg, out); });

  auto* prob = gr->add_subcommand("prob", "P(C,N) by recurrence and by closed form");
  prob->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
  prob->add_option("--c", cfg.c)->required()->check(CLI::NonNegativeNumber);
  on(prob, [&] { return cmd_grover_prob(cfg, out); });

  auto* sw = gr->add_subcommand("sweep", "CSV of P over C = 0..cmax");
  sw->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
  sw->add_option("--cmax", cfg.cmax)->required()->check(CLI::NonNegativeNumber);
  sw->add_option("--tol", cfg.tol, "Allowed |P_recurrence - P_closed|")->check(CLI::PositiveNumber);
  sw->add_option("--out", cfg.out_path, "Output file");
  on(sw, [&] { return cmd_grover_sweep(cfg, out, err); });

  auto* opt = gr->add_subcommand("optimal", "CSV of the optimum iteration count for N = 1..nmax");
  opt->add_option("--nmax", cfg.nmax)->required()->check(CLI::PositiveNumber);
  opt->add_option("--out", cfg.out_path, "Output file");
  on(opt, [&] { return cmd_grover_optimal(cfg, out); });

  auto* sim = gr->add_subcommand("simulate", "Monte-Carlo runs of the search program");
  sim->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
  sim->add_option("--c", cfg.c)->required()->check(CLI::NonNegativeNumber);
  sim->add_option("--x0", cfg.x0, "Marked argument")->check(CLI::NonNegativeNumber);
  sim->add_option("--runs", cfg.runs)->required()->check(CLI::PositiveNumber);
  sim->add_option("--seed", cfg.seed)->required();
  on(sim, [&] { return cmd_grover_simulate(cfg, out); });

  auto* se = app.add_subcommand("series", "Generating-function identities");
  se->require_subcommand(1);
  auto* chk = se->add_subcommand("check", "Coefficient and Dirichlet-kernel checks");
  chk->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
  chk->add_option("--cmax", cfg.cmax)->required()->check(CLI::NonNegativeNumber);
  chk->add_option("--tol", cfg.tol)->check(CLI::PositiveNumber);
  on(chk, [&] { return cmd_series_check(cfg, out); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace pwp::cli
