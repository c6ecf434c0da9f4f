#include "kqm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kqm/cpm.hpp"
#include "kqm/dsl.hpp"
#include "kqm/protocols.hpp"
#include "kqm/rewrite.hpp"
#include "kqm/semantics.hpp"

namespace kqm {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Program load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str(), path);
}

// a binding name or any expression over the file's declarations
Diagram binding(const Program& p, const std::string& text) { return parse_expr(text, p); }

double chop(double x, double tol) { return std::abs(x) <= tol ? 0.0 : x; }

void print_matrix(const Matrix& m, const std::string& format, double tol, std::ostream& out) {
  Matrix c = m;
  for (Eigen::Index r = 0; r < c.rows(); ++r)
    for (Eigen::Index k = 0; k < c.cols(); ++k)
      c(r, k) = Complex{chop(c(r, k).real(), tol), chop(c(r, k).imag(), tol)};
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < c.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index k = 0; k < c.cols(); ++k) row.push_back({c(r, k).real(), c(r, k).imag()});
      rows.push_back(std::move(row));
    }
    nlohmann::json doc = {{"rows", c.rows()}, {"cols", c.cols()}, {"entries", rows}};
    out << doc.dump() << "\n";
  } else {
    out << matrix_to_text(c);
  }
}

EqMode parse_mode(const std::string& s) {
  if (s == "exact") return EqMode::exact;
  if (s == "scalar") return EqMode::up_to_scalar;
  return EqMode::up_to_phase;
}

std::string mode_name(EqMode m) {
  switch (m) {
    case EqMode::exact: return "exact";
    case EqMode::up_to_scalar: return "scalar";
    case EqMode::up_to_phase: return "phase";
  }
  return "exact";
}

std::string verdict_text(const Verdict& v, EqMode mode) {
  if (!v.equal()) return "unequal max_abs_diff=" + format_double(v.max_abs_diff);
  if (mode == EqMode::exact) return "equal";
  return "equal witness=" + format_double(v.witness.real()) + "," + format_double(v.witness.imag());
}

std::string type_text(const Diagram& d) { return d.dom().str() + " -> " + d.cod().str(); }

WireType parse_type(const Program& p, const std::string& text) {
  // id[T] carries exactly the type T.
  return parse_expr("id[" + text + "]", p).dom();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diagram calculus for compact closed quantum mechanics", "kqm"};
  app.require_subcommand(1);

  std::string file, expr, lhs, rhs, mode = "exact", format = "text", ancilla, protocol;
  double tol = 1e-9;
  bool trace = false;

  auto* parse_cmd = app.add_subcommand("parse", "Syntax- and type-check a source file");
  parse_cmd->add_option("file", file)->required();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an expression to a matrix");
  eval_cmd->add_option("file", file)->required();
  eval_cmd->add_option("--expr", expr)->required();
  eval_cmd->add_option("--tol", tol);
  eval_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* norm_cmd = app.add_subcommand("normalize", "Rewrite an expression to normal form");
  norm_cmd->add_option("file", file)->required();
  norm_cmd->add_option("--expr", expr)->required();
  norm_cmd->add_flag("--trace", trace);

  auto* check_cmd = app.add_subcommand("check-eq", "Compare two expressions numerically");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--lhs", lhs)->required();
  check_cmd->add_option("--rhs", rhs)->required();
  check_cmd->add_option("--mode", mode)->check(CLI::IsMember({"exact", "scalar", "phase"}));
  check_cmd->add_option("--tol", tol);

  auto* demo_cmd = app.add_subcommand("demo", "Verify a built-in protocol branch by branch");
  demo_cmd->add_option("protocol", protocol)->required()->check(CLI::IsMember({"teleport", "gate-teleport", "swap"}));

  auto* double_cmd = app.add_subcommand("double", "Evaluate the doubled (CPM) form of an expression");
  double_cmd->add_option("file", file)->required();
  double_cmd->add_option("--expr", expr)->required();
  double_cmd->add_option("--ancilla", ancilla);
  double_cmd->add_option("--tol", tol);
  double_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* phase_cmd = app.add_subcommand("phase-witness", "Find s, t with s f = t g when f, g differ by a phase");
  phase_cmd->add_option("file", file)->required();
  phase_cmd->add_option("--lhs", lhs)->required();
  phase_cmd->add_option("--rhs", rhs)->required();
  phase_cmd->add_option("--tol", tol);

  auto* verify_cmd = app.add_subcommand("verify", "Run every check statement of a source file");
  verify_cmd->add_option("file", file)->required();
  verify_cmd->add_option("--tol", tol);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (parse_cmd->parsed()) {
      const Program p = load(file);
      for (const auto& b : p.lets) out << "let " << b.name << " : " << type_text(b.value) << "\n";
      out << "ok: " << p.model.all_dims().size() << " types, " << p.gens.size() << " generators, " << p.lets.size()
          << " bindings, " << p.checks.size() << " checks\n";
      return kExitOk;
    }
    if (eval_cmd->parsed()) {
      const Program p = load(file);
      print_matrix(eval(binding(p, expr), p.model), format, tol, out);
      return kExitOk;
    }
    if (norm_cmd->parsed()) {
      const Program p = load(file);
      const Normalized n = normalize(binding(p, expr));
      if (trace) out << format_trace(n.trace);
      out << pretty(n.result) << "\n";
      return kExitOk;
    }
    if (check_cmd->parsed()) {
      const Program p = load(file);
      const EqMode m = parse_mode(mode);
      const Verdict v = check_eq(binding(p, lhs), binding(p, rhs), p.model, m, tol);
      out << verdict_text(v, m) << "\n";
      return v.equal() ? kExitOk : kExitUnequal;
    }
    if (demo_cmd->parsed()) {
      const Model m = qubit::model();
      std::vector<Branch> branches;
      if (protocol == "teleport") {
        branches = teleport_branches();
      } else if (protocol == "gate-teleport") {
        branches = gate_teleport_branches(qubit::h(), qubit::hadamard());
      } else {
        branches = entanglement_swap_branches();
      }
      const auto reports = verify_protocol(branches, m);
      bool ok = weights_sum_to_one(reports);
      for (const auto& r : reports) {
        out << format_report(r) << "\n";
        ok = ok && r.ok();
      }
      return ok ? kExitOk : kExitUnequal;
    }
    if (double_cmd->parsed()) {
      const Program p = load(file);
      const Diagram d = binding(p, expr);
      std::optional<WireType> e;
      if (!ancilla.empty()) e = parse_type(p, ancilla);
      const Diagram dd = doubled(d, e);
      const Matrix s = eval(dd, p.model);
      print_matrix(s, format, tol, out);
      const WireType kept = e ? d.cod().slice(0, d.cod().size() - e->size()) : d.cod();
      const bool cp = is_completely_positive(s, p.model.dims(d.dom()), p.model.dims(kept));
      out << "completely-positive: " << (cp ? "true" : "false") << "\n";
      return kExitOk;
    }
    if (phase_cmd->parsed()) {
      const Program p = load(file);
      const auto w = global_phase_witness(binding(p, lhs), binding(p, rhs), p.model, tol);
      if (!w) {
        out << "no witness\n";
        return kExitUnequal;
      }
      out << "witness s=" << format_complex(w->s) << " t=" << format_complex(w->t) << "\n";
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      const Program p = load(file);
      bool ok = true;
      for (const auto& c : p.checks) {
        const Verdict v = check_eq(c.lhs, c.rhs, p.model, c.mode, tol);
        out << c.span.str() << ": check " << mode_name(c.mode) << ": " << verdict_text(v, c.mode) << "\n";
        ok = ok && v.equal();
      }
      out << (ok ? "all " : "failed: ") << p.checks.size() << " checks\n";
      return ok ? kExitOk : kExitUnequal;
    }
  } catch (const DslError& e) {
    err << e.span().str() << ": error: " << e.message() << "\n";
    return kExitError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const TypeError& e) {
    err << "type error: " << e.what() << "\n";
    return kExitError;
  } catch (const EvalError& e) {
    err << "eval error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace kqm
