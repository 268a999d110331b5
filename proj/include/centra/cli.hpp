#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "centra/equivariance.hpp"
#include "centra/errors.hpp"
#include "centra/invariants.hpp"
#include "centra/normal_form.hpp"
#include "centra/serialize.hpp"
#include "centra/superposition.hpp"

namespace centra {

namespace detail {

inline LieAlgebra algebra_of(const ProblemFile& p, int cap) {
  if (p.generators.empty())
    throw std::invalid_argument("problem has no generators");
  return bracket_closure(p.generators, cap);
}

}  // namespace detail

inline Json cmd_centralizer(const ProblemFile& p, int max_degree, int cap) {
  const auto m = detail::algebra_of(p, cap);
  const auto g = centralizer_up_to(m, max_degree);
  Json out;
  out["command"] = "centralizer";
  out["dimension"] = p.dimension;
  out["algebra_dimension"] = m.dim();
  out["max_degree"] = max_degree;
  out["constant_dimension"] = g.dim_at(0);
  Json degrees = Json::array();
  for (int k = 1; k <= max_degree; ++k) {
    Json d;
    d["degree"] = k;
    d["dimension"] = g.dim_at(k);
    Json basis = Json::array();
    for (const auto& f : g.per_degree.at(k)) basis.push_back(to_json(f));
    d["basis"] = std::move(basis);
    degrees.push_back(std::move(d));
  }
  out["degrees"] = std::move(degrees);
  return out;
}

inline Json cmd_invariants(const ProblemFile& p, int max_degree, int cap,
                           const std::optional<std::vector<Rational>>& alpha) {
  const auto m = detail::algebra_of(p, cap);
  std::optional<LinearForm> form;
  if (alpha) {
    if (static_cast<int>(alpha->size()) != m.dim())
      throw std::invalid_argument(
          "alpha needs one value per basis element (" +
          std::to_string(m.dim()) + ")");
    form = LinearForm{*alpha};
  }
  Json out;
  out["command"] = "invariants";
  out["dimension"] = p.dimension;
  out["algebra_dimension"] = m.dim();
  out["max_degree"] = max_degree;
  out["alpha"] = form ? to_json(form->values) : Json(nullptr);
  if (form && !form->is_zero() && is_perfect(m) && m.dim() > 0)
    out["note"] =
        "the algebra is perfect, so every relative invariant with a nonzero "
        "weight vanishes";
  Json degrees = Json::array();
  for (int k = 1; k <= max_degree; ++k) {
    const auto basis =
        form ? relative_invariant_space(m, *form, k) : invariant_space(m, k);
    Json d;
    d["degree"] = k;
    d["dimension"] = static_cast<int>(basis.size());
    Json b = Json::array();
    for (const auto& phi : basis) b.push_back(to_json(phi));
    d["basis"] = std::move(b);
    degrees.push_back(std::move(d));
  }
  out["degrees"] = std::move(degrees);
  return out;
}

inline Json cmd_finiteness(const ProblemFile& p, int max_degree, int cap) {
  const auto m = detail::algebra_of(p, cap);
  const auto verdict = finiteness_report(m, max_degree);
  Json out;
  out["command"] = "finiteness";
  out["dimension"] = p.dimension;
  out["algebra_dimension"] = m.dim();
  out["max_degree"] = max_degree;
  Json v = to_json(verdict);
  if (const auto* inf = std::get_if<InfiniteCertified>(&verdict)) {
    const auto report = infinite_certificate(m, inf->witness, 3);
    v["certificate"]["checks"] = report.notes;
    v["certificate"]["passed"] = report.passed;
  }
  out.update(v);
  return out;
}

inline Json cmd_solve(const ProblemFile& p, const std::vector<Rational>& y0,
                      const Rational& t0, int cap,
                      const std::optional<std::pair<double, int>>& verify,
                      double tol, const char* name = "solve") {
  if (static_cast<int>(y0.size()) != p.dimension)
    throw std::invalid_argument("--y0 needs one rational per coordinate");
  Json out;
  out["command"] = name;
  out["dimension"] = p.dimension;
  out["t0"] = to_json(t0);
  out["initial"] = to_json(y0);

  std::vector<ExpPoly> solution;
  double max_error = 0;
  bool checked = false;
  if (p.system) {
    if (p.seeds.empty())
      throw std::invalid_argument("an elementary system needs seeds");
    const auto m = detail::algebra_of(p, cap);
    const auto fam = close_family(m, p.seeds, cap);
    const auto sys =
        system_from_json(*p.system, static_cast<int>(p.seeds.size()));
    solution = solve_elementary(fam, sys, y0, t0);
    out["mode"] = "elementary";
    bool exact = true;
    for (const auto& r : residual(fam, sys, solution))
      if (!r.is_zero()) exact = false;
    out["residual_zero"] = exact;
    if (verify) {
      max_error =
          verify_numeric(solution, fam, sys, y0, verify->first, verify->second);
      checked = true;
    }
  } else if (p.field) {
    if (t0 != 0)
      throw UnsupportedError("autonomous flows are anchored at t0 = 0");
    const auto m = detail::algebra_of(p, cap);
    const auto flow = solve_autonomous(m, *p.field, y0, cap);
    solution = flow.solution;
    out["mode"] = "autonomous";
    out["linear_part"] = to_json(flow.reduction.linear_part);
    Json fam = Json::array();
    for (const auto& f : flow.reduction.family.fields) fam.push_back(to_json(f));
    out["family"] = std::move(fam);
    out["reduced_system"] = to_json(flow.reduction.system);
    Json transport = Json::array();
    for (const auto& row : flow.reduction.transport) {
      Json r = Json::array();
      for (const auto& e : row) r.push_back(to_json(e));
      transport.push_back(std::move(r));
    }
    out["transport"] = std::move(transport);
    if (verify) {
      max_error =
          verify_numeric(solution, *p.field, y0, verify->first, verify->second);
      checked = true;
    }
  } else {
    throw std::invalid_argument("solve needs a field or a system with seeds");
  }

  Json sol = Json::array();
  for (const auto& comp : solution) sol.push_back(to_json(comp));
  out["solution"] = std::move(sol);
  if (checked) {
    Json v;
    v["t_end"] = verify->first;
    v["steps"] = verify->second;
    v["tol"] = tol;
    v["max_error"] = max_error;
    v["pass"] = max_error <= tol;
    out["verify"] = std::move(v);
  }
  return out;
}

inline Json cmd_normal_form(const ProblemFile& p, int max_degree,
                            bool use_symmetry) {
  if (!p.field)
    throw std::invalid_argument("normal-form needs a field block");
  std::optional<QMatrix> sym;
  if (use_symmetry) {
    if (!p.symmetry)
      throw std::invalid_argument("--symmetry given but the problem has none");
    sym = p.symmetry;
  }
  const auto f = split_field(*p.field, max_degree);
  const auto res = normal_form(f, max_degree, sym);

  Json out;
  out["command"] = "normal-form";
  out["dimension"] = p.dimension;
  out["max_degree"] = max_degree;
  out["convention"] = "new f_k = f_k + [u_k, Bx]";
  out["linear"] = to_json(f.linear);
  out["symmetry"] = sym ? to_json(*sym) : Json(nullptr);
  Json steps = Json::array();
  for (const auto& step : res.steps) {
    Json s;
    s["degree"] = step.degree;
    Json basis = Json::array();
    for (const auto& b : step.resonant_basis) basis.push_back(to_json(b));
    s["resonant_basis"] = std::move(basis);
    s["removed"] = to_json(step.removed);
    s["generator"] = to_json(step.generator);
    steps.push_back(std::move(s));
  }
  out["steps"] = std::move(steps);
  Json nf;
  nf["linear"] = to_json(res.nf.linear);
  Json parts = Json::array();
  for (const auto& [k, part] : res.nf.nonlinear) {
    Json e;
    e["degree"] = k;
    e["part"] = to_json(part);
    parts.push_back(std::move(e));
  }
  nf["nonlinear"] = std::move(parts);
  nf["text"] = res.nf.field().str();
  out["normal_form"] = std::move(nf);
  return out;
}

namespace detail {

inline void emit_error(const char* type, const std::string& message) {
  Json err;
  err["error"]["type"] = type;
  err["error"]["message"] = message;
  std::cerr << err.dump(2) << "\n";
}

inline int write_report(const Json& out, const std::string& path) {
  const std::string text = out.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    emit_error("parse", "cannot write output file: " + path);
    return 2;
  }
  f << text;
  return 0;
}

}  // namespace detail

/// Parses argv, runs one subcommand and reports via JSON. Exit codes:
/// 0 success, 1 failed numeric verification, 2 parse or validation error,
/// 3 resource cap, 4 unsupported input.
inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "exact centralizers, invariants and elementary flows of polynomial "
      "vector fields"};
  app.require_subcommand(1);

  std::string file, output;
  int max_degree = 6, cap = 200;
  std::vector<std::string> alpha_raw, y0_raw, verify_raw;
  std::string t0_raw = "0";
  double tol = 1e-8;
  bool use_symmetry = false;

  auto add_common = [&](CLI::App* cmd, bool degree_flag) {
    cmd->add_option("file", file, "problem file (JSON)")->required();
    if (degree_flag)
      cmd->add_option("--max-degree", max_degree, "degree bound");
    cmd->add_option("--cap", cap, "basis growth cap");
    cmd->add_option("--output", output, "write the report here, not stdout");
  };

  auto* c_centralizer =
      app.add_subcommand("centralizer", "equivariant fields, degree by degree");
  add_common(c_centralizer, true);
  auto* c_invariants =
      app.add_subcommand("invariants", "invariants and relative invariants");
  add_common(c_invariants, true);
  c_invariants->add_option("--alpha", alpha_raw,
                           "weight, one rational per basis element");
  auto* c_finiteness =
      app.add_subcommand("finiteness", "certify the centralizer dimension");
  add_common(c_finiteness, true);
  auto* c_solve = app.add_subcommand("solve", "integrate in closed form");
  add_common(c_solve, false);
  c_solve->add_option("--y0", y0_raw, "initial value, rationals")->required();
  c_solve->add_option("--t0", t0_raw, "initial time, rational");
  c_solve->add_option("--verify", verify_raw, "t_end and step count")
      ->expected(2);
  c_solve->add_option("--tol", tol, "verification tolerance");
  auto* c_normal =
      app.add_subcommand("normal-form", "normalize degree by degree");
  add_common(c_normal, true);
  c_normal->add_flag("--symmetry", use_symmetry,
                     "respect the symmetry matrix from the problem");
  auto* c_verify =
      app.add_subcommand("verify", "integrate, then check against a numeric run");
  add_common(c_verify, false);
  c_verify->add_option("--y0", y0_raw, "initial value, rationals")->required();
  c_verify->add_option("--t0", t0_raw, "initial time, rational");
  c_verify->add_option("--verify", verify_raw, "t_end and step count")
      ->expected(2);
  c_verify->add_option("--tol", tol, "verification tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    detail::emit_error("parse", e.what());
    return 2;
  }

  try {
    const ProblemFile p = load_problem(file);
    CLI::App* cmd = app.get_subcommands().front();
    const auto* deg_opt = cmd->get_option_no_throw("--max-degree");
    if (!deg_opt || deg_opt->count() == 0) max_degree = p.max_degree;
    const auto* cap_opt = cmd->get_option_no_throw("--cap");
    if (!cap_opt || cap_opt->count() == 0) cap = p.cap;

    std::optional<std::pair<double, int>> verify;
    if (!verify_raw.empty()) {
      try {
        verify = {std::stod(verify_raw[0]), std::stoi(verify_raw[1])};
      } catch (const std::exception&) {
        throw ParseError("--verify expects <t_end> <steps>");
      }
      if (verify->second < 1) throw ParseError("--verify needs steps >= 1");
    }

    Json out;
    bool pass = true;
    if (cmd == c_centralizer) {
      out = cmd_centralizer(p, max_degree, cap);
    } else if (cmd == c_invariants) {
      std::optional<std::vector<Rational>> alpha;
      if (c_invariants->count("--alpha")) {
        alpha.emplace();
        for (const auto& s : alpha_raw) alpha->push_back(parse_rational(s));
      }
      out = cmd_invariants(p, max_degree, cap, alpha);
    } else if (cmd == c_finiteness) {
      out = cmd_finiteness(p, max_degree, cap);
    } else if (cmd == c_normal) {
      out = cmd_normal_form(p, max_degree, use_symmetry);
    } else {
      std::vector<Rational> y0;
      for (const auto& s : y0_raw) y0.push_back(parse_rational(s));
      if (cmd == c_solve) {
        out = cmd_solve(p, y0, parse_rational(t0_raw), cap, verify, tol);
      } else {
        if (!verify) verify = {1.0, 1000};
        out = cmd_solve(p, y0, parse_rational(t0_raw), cap, verify, tol,
                        "verify");
        pass = out["verify"]["pass"].get<bool>();
      }
    }
    const int rc = detail::write_report(out, output);
    if (rc != 0) return rc;
    return pass ? 0 : 1;
  } catch (const ParseError& e) {
    detail::emit_error("parse", e.what());
    return 2;
  } catch (const CapError& e) {
    detail::emit_error("cap", e.what());
    return 3;
  } catch (const UnsupportedError& e) {
    detail::emit_error("unsupported", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    detail::emit_error("parse", e.what());
    return 2;
  }
}

}  // namespace centra
