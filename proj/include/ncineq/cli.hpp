// Copyright 2026 The ncineq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ncineq/io.hpp"

namespace ncineq::cli {

enum class Command { build, bounds, evaluate, check, certify, validate_robustness, export_hypergraph };
enum class Format { json, dot, text };

struct RunConfig {
  Command command = Command::bounds;
  std::optional<std::uint32_t> n;
  std::string realization;
  std::string backend = "symbolic";
  std::string stats;
  std::string jordan;
  std::string output;
  std::optional<Format> format;
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  double max_angle = 0.3;
  std::size_t max_blocks = 8;
  unsigned jobs = 1;
  bool brute_force = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

/// Usage or input problem: exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint32_t require_n(const RunConfig& c, const char* command) {
  if (!c.n) throw UsageError(std::string(command) + ": --n is required");
  return *c.n;
}

inline Format format_or(const RunConfig& c, Format fallback) { return c.format.value_or(fallback); }

inline void reject_format(const RunConfig& c, Format f, const char* command) {
  if (c.format == f) throw UsageError(std::string(command) + ": unsupported --format");
}

inline Realization load_realization(const RunConfig& c) {
  if (c.realization.empty()) throw UsageError("--realization is required");
  if (c.realization == "ideal") {
    const std::uint32_t n = require_n(c, "--realization ideal");
    if (c.backend != "symbolic" && c.backend != "dense") throw UsageError("--backend: expected symbolic or dense");
    return ideal_realization(n, c.backend == "dense" ? Backend::dense : Backend::symbolic);
  }
  if (c.realization == "alt3") {
    if (c.n && *c.n != 3) throw UsageError("--realization alt3 requires --n 3");
    return alternative_realization_3();
  }
  Realization r = io::realization_from_json(io::load_json(c.realization));
  if (c.n && *c.n != r.n()) {
    throw DimensionError("--n " + std::to_string(*c.n) + " does not match realization n = " + std::to_string(r.n()));
  }
  return r;
}

inline std::string num(double v) { return io::format_double(v); }

inline void text_report(std::ostream& out, const RobustnessReport& r) {
  out << "n = " << r.n << "\n";
  out << "epsilon = " << num(r.epsilon) << "\n";
  out << "eps0 = " << num(r.bounds.eps0) << ", eps1 = " << num(r.bounds.eps1) << ", eps2 = " << num(r.bounds.eps2)
      << "\n";
  out << "state fidelity >= " << num(r.fid_state_bound) << "\n";
  out << "fixed-operator fidelity >= " << num(r.fid_A_bound) << "\n";
  out << "rotated-operator fidelity >= " << num(r.fid_B_bound) << "\n";
  if (r.vacuous) out << "bounds are vacuous at this epsilon\n";
  if (r.actual_fid_state) out << "actual state fidelity = " << num(*r.actual_fid_state) << "\n";
  if (r.actual_fid_A) {
    for (std::size_t j = 0; j < r.actual_fid_A->size(); ++j) {
      out << "actual F(A" << j + 1 << ") = " << num((*r.actual_fid_A)[j]) << ", F(B" << j + 1
          << ") = " << num((*r.actual_fid_B)[j]) << "\n";
    }
  }
  if (r.anticommutator_residuals) {
    for (std::size_t j = 0; j < r.anticommutator_residuals->size(); ++j) {
      out << "||{A" << j + 1 << ",B" << j + 1 << "}psi|| = " << num((*r.anticommutator_residuals)[j]) << "\n";
    }
  }
  out << "violations: " << r.violations.size() << "\n";
  for (const auto& v : r.violations) out << "  " << v << "\n";
}

inline int cmd_build(const RunConfig& c, std::ostream& out) {
  const Inequality ineq = build(require_n(c, "build"));
  const Format f = format_or(c, Format::json);
  if (f == Format::dot) {
    out << to_dot(hypergraph(ineq));
  } else if (f == Format::text) {
    out << "I_" << ineq.n << " (alpha = " << ineq.alpha << ", classical <= " << ineq.classical_bound
        << ", quantum = " << ineq.quantum_bound << ")\n";
    for (const auto& t : ineq.terms) out << (t.coefficient() > 0 ? "+" : "") << t.coefficient() << " " << t.correlator_string() << "\n";
  } else {
    out << io::to_json(ineq).dump(2) << "\n";
  }
  return kExitOk;
}

inline int cmd_bounds(const RunConfig& c, std::ostream& out) {
  reject_format(c, Format::dot, "bounds");
  const std::uint32_t n = require_n(c, "bounds");
  require_family_size(n, "bounds");
  io::Json j{{"n", n}, {"classical", classical_bound_fast(n)}, {"quantum", quantum_bound(n)}};
  int status = kExitOk;
  if (c.brute_force) {
    const std::int64_t brute = classical_bound_bruteforce(build(n), c.jobs);
    j["classical_bruteforce"] = brute;
    if (brute != j["classical"].get<std::int64_t>()) status = kExitViolation;
  }
  if (format_or(c, Format::json) == Format::text) {
    out << "classical " << j["classical"].get<std::int64_t>() << "\n";
    out << "quantum " << j["quantum"].get<std::int64_t>() << "\n";
    if (c.brute_force) out << "classical (brute force) " << j["classical_bruteforce"].get<std::int64_t>() << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
  return status;
}

inline int cmd_evaluate(const RunConfig& c, std::ostream& out) {
  reject_format(c, Format::dot, "evaluate");
  const Realization r = load_realization(c);
  const Inequality ineq = build(r.n());
  const double value = evaluate(ineq, r);
  if (format_or(c, Format::json) == Format::text) {
    out << num(value) << "\n";
  } else {
    io::Json j{{"n", r.n()},
               {"backend", r.is_symbolic() ? "symbolic" : "dense"},
               {"value", value},
               {"classical_bound", ineq.classical_bound},
               {"quantum_bound", ineq.quantum_bound}};
    out << j.dump(2) << "\n";
  }
  return kExitOk;
}

inline int cmd_check(const RunConfig& c, std::ostream& out) {
  reject_format(c, Format::dot, "check");
  const Realization r = load_realization(c);
  const CompatibilityReport compat = compatibility_report(r);
  io::Json j{{"n", r.n()}, {"compatibility", io::to_json(compat)}};
  bool ok = compat.admissible;
  std::optional<CanonicalFormReport> canon;
  if (ok) {
    const double value = evaluate(build(r.n()), r);
    const bool maximal = std::abs(value - static_cast<double>(quantum_bound(r.n()))) <= 1e-9;
    j["value"] = value;
    j["maximal"] = maximal;
    // The canonical form is only implied by a maximal violation.
    if (maximal && !r.is_symbolic() && r.dense_data().state.size() <= static_cast<Eigen::Index>(kSpectralDimCap)) {
      canon = canonical_form_check(r);
      j["canonical_form"] = io::to_json(*canon);
      ok = canon->all_hold();
    }
  }
  if (format_or(c, Format::json) == Format::text) {
    out << "admissible " << (compat.admissible ? "yes" : "no") << "\n";
    out << "max commutator residual " << num(compat.max_commutator()) << "\n";
    out << "max anticommutator residual " << num(compat.max_anticommutator()) << "\n";
    if (j.contains("value")) out << "value " << num(j["value"].get<double>()) << "\n";
    if (canon) {
      for (const auto& p : canon->predicates) out << p.name << " " << (p.holds ? "holds" : "fails") << " " << num(p.residual) << "\n";
    }
  } else {
    out << j.dump(2) << "\n";
  }
  return ok ? kExitOk : kExitViolation;
}

inline int cmd_certify(const RunConfig& c, std::ostream& out) {
  reject_format(c, Format::dot, "certify");
  if (c.stats.empty() == c.jordan.empty()) throw UsageError("certify: give exactly one of --stats or --jordan");
  RobustnessReport rep;
  if (!c.stats.empty()) {
    const std::uint32_t n = require_n(c, "certify --stats");
    const Statistics s = io::statistics_from_json(io::load_json(c.stats));
    if (s.n != n) throw DimensionError("statistics.n = " + std::to_string(s.n) + " does not match --n " + std::to_string(n));
    rep = certify(s);
  } else {
    const JordanBlockSpec spec = io::jordan_spec_from_json(io::load_json(c.jordan));
    if (c.n && *c.n != spec.n) throw DimensionError("jordan.n = " + std::to_string(spec.n) + " does not match --n");
    rep = certify(spec);
  }
  if (format_or(c, Format::json) == Format::text) {
    text_report(out, rep);
  } else {
    out << io::to_json(rep).dump(2) << "\n";
  }
  return rep.violations.empty() ? kExitOk : kExitViolation;
}

inline int cmd_validate(const RunConfig& c, std::ostream& out) {
  reject_format(c, Format::dot, "validate-robustness");
  const std::uint32_t n = c.n.value_or(3);
  if (n > 5) throw CapacityError("validate-robustness: n must be at most 5 (dense Jordan realizations)");
  if (c.max_blocks == 0) throw UsageError("--max-blocks must be positive");
  const ValidationSummary s = validate_robustness(n, c.trials, c.max_angle, c.seed, c.jobs, c.max_blocks);
  if (format_or(c, Format::json) == Format::text) {
    out << "n = " << s.n << ", trials = " << s.trials << ", max angle = " << num(s.max_angle) << ", seed = " << s.seed
        << "\n";
    out << "violations: " << s.violations() << " (state " << s.state_violations << ", operator "
        << s.operator_violations << ", anticommutator " << s.anticommutator_violations << ")\n";
    out << "vacuous trials: " << s.vacuous << "\n";
    out << "max epsilon: " << num(s.max_epsilon) << "\n";
    out << "min margins: state " << num(s.min_state_margin) << ", operator " << num(s.min_operator_margin)
        << ", anticommutator " << num(s.min_anticommutator_margin) << "\n";
  } else {
    out << io::to_json(s).dump(2) << "\n";
  }
  return s.violations() == 0 ? kExitOk : kExitViolation;
}

inline int cmd_export_hypergraph(const RunConfig& c, std::ostream& out) {
  reject_format(c, Format::text, "export-hypergraph");
  const Hypergraph h = hypergraph(build(require_n(c, "export-hypergraph")));
  if (format_or(c, Format::dot) == Format::dot) {
    out << to_dot(h);
  } else {
    out << io::to_json(h).dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace detail

/// Runs one command. Output goes to `out` (or the --output file), error
/// messages to `err`.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream buffer;
    int status = kExitOk;
    switch (c.command) {
      case Command::build: status = detail::cmd_build(c, buffer); break;
      case Command::bounds: status = detail::cmd_bounds(c, buffer); break;
      case Command::evaluate: status = detail::cmd_evaluate(c, buffer); break;
      case Command::check: status = detail::cmd_check(c, buffer); break;
      case Command::certify: status = detail::cmd_certify(c, buffer); break;
      case Command::validate_robustness: status = detail::cmd_validate(c, buffer); break;
      case Command::export_hypergraph: status = detail::cmd_export_hypergraph(c, buffer); break;
    }
    if (c.output.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(c.output, std::ios::binary);
      if (!file || !(file << buffer.str())) throw std::runtime_error("cannot write '" + c.output + "'");
    }
    return status;
  } catch (const CompatibilityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

/// Parses argv into a RunConfig and runs it.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Noncontextuality inequalities over graph states: bounds, realizations and robustness"};
  app.require_subcommand(1);
  RunConfig c;
  std::uint32_t n = 0;
  std::string format;
  bool json_flag = false;
  bool dot_flag = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", c.output, "Write output to FILE instead of stdout");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--jobs,-j", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", n, "Number of observable pairs")->check(CLI::PositiveNumber); };

  auto* build_cmd = app.add_subcommand("build", "Emit the inequality I_n");
  add_n(build_cmd);
  add_common(build_cmd);
  auto* json_opt = build_cmd->add_flag("--json", json_flag, "JSON term list (default)");
  build_cmd->add_flag("--dot", dot_flag, "Hypergraph in DOT")->excludes(json_opt);

  auto* bounds_cmd = app.add_subcommand("bounds", "Classical and quantum bounds");
  add_n(bounds_cmd);
  add_common(bounds_cmd);
  bounds_cmd->add_flag("--brute-force", c.brute_force, "Also enumerate all assignments");

  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate I_n on a realization");
  auto* check_cmd = app.add_subcommand("check", "Compatibility and canonical-form checks");
  for (auto* sub : {eval_cmd, check_cmd}) {
    add_n(sub);
    add_common(sub);
    sub->add_option("--realization", c.realization, "FILE, ideal or alt3")->required();
    sub->add_option("--backend", c.backend, "Backend for the ideal realization")->check(CLI::IsMember({"symbolic", "dense"}));
  }

  auto* certify_cmd = app.add_subcommand("certify", "Fidelity bounds from statistics or a block spec");
  add_n(certify_cmd);
  add_common(certify_cmd);
  auto* stats_opt = certify_cmd->add_option("--stats", c.stats, "Statistics JSON");
  certify_cmd->add_option("--jordan", c.jordan, "Block spec JSON")->excludes(stats_opt);

  auto* validate_cmd = app.add_subcommand("validate-robustness", "Seeded Monte-Carlo check of the robustness bounds");
  add_n(validate_cmd);
  add_common(validate_cmd);
  validate_cmd->add_option("--trials", c.trials, "Number of random block specs");
  validate_cmd->add_option("--max-angle", c.max_angle, "Largest |angle|");
  validate_cmd->add_option("--seed", c.seed, "Generator seed");
  validate_cmd->add_option("--max-blocks", c.max_blocks, "Largest number of blocks");

  auto* export_cmd = app.add_subcommand("export-hypergraph", "Compatibility hypergraph of I_n");
  add_n(export_cmd);
  add_common(export_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "build") c.command = Command::build;
  else if (name == "bounds") c.command = Command::bounds;
  else if (name == "evaluate") c.command = Command::evaluate;
  else if (name == "check") c.command = Command::check;
  else if (name == "certify") c.command = Command::certify;
  else if (name == "validate-robustness") c.command = Command::validate_robustness;
  else c.command = Command::export_hypergraph;

  if (sub->count("--n") > 0) c.n = n;
  if (format == "json") c.format = Format::json;
  else if (format == "dot") c.format = Format::dot;
  else if (format == "text") c.format = Format::text;
  if (json_flag || dot_flag) {
    const Format f = dot_flag ? Format::dot : Format::json;
    if (c.format && *c.format != f) {
      err << "error: --format conflicts with --" << (dot_flag ? "dot" : "json") << "\n";
      return kExitUsage;
    }
    c.format = f;
  }
  return run(c, out, err);
}

}  // namespace ncineq::cli
