#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pwp/cli.hpp"
#include "pwp/errors.hpp"
#include "pwp/grover.hpp"
#include "pwp/quantum.hpp"
#include "pwp/series.hpp"
#include "pwp/wp.hpp"

namespace py = pybind11;

namespace {

using Binds = std::vector<std::pair<std::string, std::string>>;

pwp::Env make_env(const Binds& binds) {
  pwp::Env env;
  for (const auto& [name, src] : binds) env.set(name, pwp::eval(pwp::parse_expr(src), env));
  return env;
}

std::map<std::string, std::string> env_to_dict(const pwp::Env& env) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : env) out.emplace(k, pwp::to_string(v));
  return out;
}

py::object fraction(const pwp::Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(q.get_str());
}

pwp::Rational rational(const py::handle& h) { return pwp::Rational(py::str(h).cast<std::string>()); }

py::tuple rf_tuple(const pwp::series::RationalFunction& rf) {
  py::list num, den;
  for (const auto& q : rf.numerator) num.append(fraction(q));
  for (const auto& q : rf.denominator) den.append(fraction(q));
  return py::make_tuple(num, den);
}

pwp::quantum::Matrix to_matrix(const std::vector<std::vector<pwp::Complex>>& rows) {
  pwp::quantum::Matrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw std::invalid_argument("matrix must be square");
    for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<pwp::Complex>> from_matrix(const pwp::quantum::Matrix& m) {
  std::vector<std::vector<pwp::Complex>> rows(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) rows[r].push_back(m(r, c));
  }
  return rows;
}

std::vector<pwp::Complex> amplitudes(const pwp::quantum::QuantumState& s) {
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

}  // namespace

PYBIND11_MODULE(_pwp, m) {
  m.doc() = "Probabilistic wp-calculus interpreter and Grover search analysis.";

  static py::exception<pwp::Error> base_error(m, "PwpError");
  py::register_exception<pwp::ParseError>(m, "ParseError", base_error.ptr());
  py::register_exception<pwp::StaticError>(m, "StaticError", base_error.ptr());
  py::register_exception<pwp::WeightError>(m, "WeightError", base_error.ptr());

  // language and wp engine
  m.def("pretty", [](const std::string& src) { return pwp::pretty(pwp::parse(src)); },
        "Parse a program and print it in canonical form.");
  m.def("pretty_expr", [](const std::string& src) { return pwp::pretty(pwp::parse_expr(src)); });
  m.def("eval", [](const std::string& expr, const Binds& binds) {
    return pwp::to_string(pwp::eval(pwp::parse_expr(expr), make_env(binds)));
  }, py::arg("expr"), py::arg("binds") = Binds{});
  m.def("wp", [](const std::string& src, const std::string& post, const Binds& binds) {
    return pwp::wp(pwp::parse(src), pwp::parse_expr(post), make_env(binds));
  }, py::arg("program"), py::arg("post"), py::arg("binds") = Binds{});
  m.def("wp_subst", [](const std::string& src, const std::string& post, const Binds& binds) {
    return pwp::pretty(pwp::wp_subst(pwp::parse(src), pwp::parse_expr(post), make_env(binds)));
  }, py::arg("program"), py::arg("post"), py::arg("binds") = Binds{});
  m.def("final_distribution", [](const std::string& src, const Binds& binds) {
    std::vector<std::pair<double, std::map<std::string, std::string>>> out;
    for (const auto& o : pwp::final_distribution(pwp::parse(src), make_env(binds)).outcomes) {
      out.emplace_back(o.weight, env_to_dict(o.env));
    }
    return out;
  }, py::arg("program"), py::arg("binds") = Binds{});
  m.def("sample_run", [](const std::string& src, const Binds& binds, std::uint64_t seed) {
    return env_to_dict(pwp::sample_run(pwp::parse(src), make_env(binds), seed));
  }, py::arg("program"), py::arg("binds"), py::arg("seed"));

  // grover
  m.def("grover_program_source", [] { return std::string(pwp::grover::program_source()); });
  m.def("grover_wp", [](std::int64_t n, std::int64_t c, std::int64_t x0) {
    const auto inst = pwp::grover::build_grover_program({n, x0, c});
    return pwp::wp(inst.program, inst.post, inst.env);
  }, py::arg("n"), py::arg("c"), py::arg("x0") = 0);
  m.def("recurrence_ab", [](std::int64_t n, std::int64_t c) {
    const auto ab = pwp::grover::recurrence_AB(n, c);
    return py::make_tuple(fraction(ab.a), fraction(ab.b));
  });
  m.def("success_prob_recurrence", &pwp::grover::success_prob_recurrence);
  m.def("success_prob_closed", &pwp::grover::success_prob_closed);
  m.def("theta", &pwp::grover::theta);
  m.def("optimal_real", &pwp::grover::optimal_real);
  m.def("optimal_iterations", &pwp::grover::optimal_iterations);
  m.def("sweep", [](std::int64_t n, std::int64_t cmax) {
    std::vector<std::tuple<std::int64_t, double, double>> rows;
    for (const auto& r : pwp::grover::sweep(n, cmax)) rows.emplace_back(r.c, r.p_recurrence, r.p_closed);
    return rows;
  });

  // quantum
  m.def("uniform_state", [](std::size_t n) { return amplitudes(pwp::quantum::uniform_state(n)); });
  m.def("classical_state", [](std::size_t i, std::size_t n) {
    return amplitudes(pwp::quantum::classical_state(i, n));
  });
  m.def("state_mean", [](std::vector<pwp::Complex> s) {
    return pwp::quantum::state_mean(pwp::quantum::QuantumState(std::move(s)));
  });
  m.def("measure_probs", [](std::vector<pwp::Complex> s) {
    return pwp::quantum::measure_probs(pwp::quantum::QuantumState(std::move(s), pwp::quantum::kMeasureTolerance));
  });
  m.def("check_unitary", [](const std::vector<std::vector<pwp::Complex>>& u, double tol) {
    return pwp::quantum::check_unitary(to_matrix(u), tol);
  });
  m.def("grover_step_matrix", [](std::size_t n, std::size_t x0) {
    return from_matrix(pwp::quantum::grover_step_matrix(n, x0));
  });

  // series
  m.def("gf_pair", [](std::int64_t n) {
    const auto [a, b] = pwp::series::gf_pair(n);
    return py::make_tuple(rf_tuple(a), rf_tuple(b));
  });
  m.def("series_coeffs", [](const py::sequence& num, const py::sequence& den, std::size_t k) {
    pwp::series::RationalFunction rf;
    for (const auto& h : num) rf.numerator.push_back(rational(h));
    for (const auto& h : den) rf.denominator.push_back(rational(h));
    py::list out;
    for (const auto& q : pwp::series::series_coeffs(rf, k)) out.append(fraction(q));
    return out;
  });
  m.def("dirichlet_check", [](std::int64_t c, double theta) {
    const auto r = pwp::series::dirichlet_check(c, theta);
    return py::make_tuple(r.sum, r.kernel);
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = pwp::cli::run_cli(args, out, err);
    return py::make_tuple(status, out.str(), err.str());
  }, "Run the command-line interface; returns (status, stdout, stderr).");
}
