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

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "ncineq/errors.hpp"
#include "ncineq/graph_state.hpp"
#include "ncineq/inequality.hpp"
#include "ncineq/realization.hpp"
#include "ncineq/robustness.hpp"

namespace ncineq::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw DomainError("cannot format number");
  return std::string(buf, ptr);
}

namespace detail {

inline const Json& field(const Json& j, const std::string& name, const std::string& where) {
  if (!j.is_object()) throw DomainError(where + ": expected an object");
  const auto it = j.find(name);
  if (it == j.end()) throw DomainError(where + ": missing field '" + name + "'");
  return *it;
}

template <class T>
T get_as(const Json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(where + ": " + e.what());
  }
}

inline std::uint32_t get_count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw DomainError(where + ": expected a non-negative integer");
  return j.get<std::uint32_t>();
}

inline double get_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw DomainError(where + ": expected a number");
  return j.get<double>();
}

inline Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw DomainError(where + ": expected [re, im]");
  return {get_number(j[0], where + "[0]"), get_number(j[1], where + "[1]")};
}

inline Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v(k)));
  return out;
}

inline Vector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw DomainError(where + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k], where + "[" + std::to_string(k) + "]");
  }
  return v;
}

inline std::vector<ObservableLabel> labels_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw DomainError(where + ": expected an array of labels");
  std::vector<ObservableLabel> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    if (!j[k].is_string()) throw DomainError(w + ": expected a string");
    try {
      out.push_back(ObservableLabel::parse(j[k].get<std::string>()));
    } catch (const DomainError& e) {
      throw DomainError(w + ": " + e.what());
    }
  }
  return out;
}

inline Json labels_to_json(const CorrelatorTerm& t) {
  Json out = Json::array();
  for (const auto& l : t.labels()) out.push_back(l.to_string());
  return out;
}

}  // namespace detail

// --- files -----------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(where + ": invalid JSON: " + e.what());
  }
}

inline Json load_json(const std::string& path) { return parse_json(read_file(path), path); }

// --- inequality --------------------------------------------------------------

inline Json to_json(const Inequality& ineq) {
  Json terms = Json::array();
  for (const auto& t : ineq.terms) {
    terms.push_back(Json{{"coeff", t.coefficient()}, {"labels", detail::labels_to_json(t)}});
  }
  return Json{{"n", ineq.n},
              {"alpha", ineq.alpha},
              {"terms", std::move(terms)},
              {"classical_bound", ineq.classical_bound},
              {"quantum_bound", ineq.quantum_bound}};
}

inline Inequality inequality_from_json(const Json& j) {
  const std::string where = "inequality";
  Inequality ineq;
  ineq.n = detail::get_count(detail::field(j, "n", where), where + ".n");
  ineq.alpha = detail::get_as<std::int64_t>(detail::field(j, "alpha", where), where + ".alpha");
  ineq.classical_bound = detail::get_as<std::int64_t>(detail::field(j, "classical_bound", where), where + ".classical_bound");
  ineq.quantum_bound = detail::get_as<std::int64_t>(detail::field(j, "quantum_bound", where), where + ".quantum_bound");
  const Json& terms = detail::field(j, "terms", where);
  if (!terms.is_array()) throw DomainError(where + ".terms: expected an array");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string w = where + ".terms[" + std::to_string(k) + "]";
    const auto coeff = detail::get_as<std::int64_t>(detail::field(terms[k], "coeff", w), w + ".coeff");
    const auto labels = detail::labels_from_json(detail::field(terms[k], "labels", w), w + ".labels");
    if (labels.size() != ineq.n) throw DomainError(w + ".labels: expected " + std::to_string(ineq.n) + " labels");
    try {
      ineq.terms.push_back(CorrelatorTerm::from_labels(coeff, labels));
    } catch (const DomainError& e) {
      throw DomainError(w + ": " + e.what());
    }
  }
  return ineq;
}

inline Json to_json(const Hypergraph& h) {
  Json vertices = Json::array();
  for (const auto& v : h.vertices) vertices.push_back(v.to_string());
  Json edges = Json::array();
  for (const auto& e : h.edges) {
    Json members = Json::array();
    for (std::size_t v : e.vertices) members.push_back(h.vertices[v].to_string());
    edges.push_back(Json{{"sign", e.sign() > 0 ? "+" : "-"}, {"coeff", e.coefficient}, {"vertices", std::move(members)}});
  }
  return Json{{"vertices", std::move(vertices)}, {"hyperedges", std::move(edges)}};
}

// --- graphs ------------------------------------------------------------------

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
  return Json{{"n", g.size()}, {"edges", std::move(edges)}};
}

/// Accepts {"n": int, "edges": [[i, j], ...]} or a named spec string.
inline Graph graph_from_json(const Json& j) {
  const std::string where = "graph";
  if (j.is_string()) return Graph::named(j.get<std::string>());
  const std::uint32_t n = detail::get_count(detail::field(j, "n", where), where + ".n");
  const Json& edges = detail::field(j, "edges", where);
  if (!edges.is_array()) throw DomainError(where + ".edges: expected an array");
  Graph g(n);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string w = where + ".edges[" + std::to_string(k) + "]";
    if (!edges[k].is_array() || edges[k].size() != 2) throw DomainError(w + ": expected [i, j]");
    try {
      g.add_edge(detail::get_count(edges[k][0], w), detail::get_count(edges[k][1], w));
    } catch (const DomainError& e) {
      throw DomainError(w + ": " + e.what());
    }
  }
  return g;
}

// --- realizations ------------------------------------------------------------

inline Json to_json(const Realization& r) {
  const std::uint32_t n = r.n();
  Json observables = Json::object();
  if (r.is_symbolic()) {
    for (auto kind : {ObservableLabel::Kind::A, ObservableLabel::Kind::B}) {
      for (std::uint32_t i = 1; i <= n; ++i) {
        const ObservableLabel l{kind, i};
        observables[l.to_string()] = r.pauli(l).to_literal();
      }
    }
    Json stabilizers = Json::array();
    for (const auto& g : r.symbolic_data().state.generators()) stabilizers.push_back(g.to_literal());
    return Json{{"n", n}, {"backend", "symbolic"}, {"observables", std::move(observables)}, {"stabilizers", std::move(stabilizers)}};
  }
  const auto& d = r.dense_data();
  const auto dim = d.state.size();
  for (auto kind : {ObservableLabel::Kind::A, ObservableLabel::Kind::B}) {
    for (std::uint32_t i = 1; i <= n; ++i) {
      const ObservableLabel l{kind, i};
      const Matrix m(r.matrix(l));
      Json flat = Json::array();
      for (Eigen::Index row = 0; row < dim; ++row) {
        for (Eigen::Index col = 0; col < dim; ++col) flat.push_back(detail::complex_to_json(m(row, col)));
      }
      observables[l.to_string()] = std::move(flat);
    }
  }
  return Json{{"n", n}, {"backend", "dense"}, {"dim", dim}, {"observables", std::move(observables)}, {"state", detail::vector_to_json(d.state)}};
}

/// Symbolic: observables are Pauli literals, the state is given by
/// "stabilizers" (literal list) or "graph". Dense: "dim", row-major
/// matrices of [re, im] entries, and "state".
inline Realization realization_from_json(const Json& j) {
  const std::string where = "realization";
  const std::uint32_t n = detail::get_count(detail::field(j, "n", where), where + ".n");
  if (n == 0) throw DomainError(where + ".n: must be positive");
  const std::string backend = detail::get_as<std::string>(detail::field(j, "backend", where), where + ".backend");
  const Json& obs = detail::field(j, "observables", where);
  if (backend == "symbolic") {
    std::vector<PauliString> a;
    std::vector<PauliString> b;
    for (auto kind : {ObservableLabel::Kind::A, ObservableLabel::Kind::B}) {
      for (std::uint32_t i = 1; i <= n; ++i) {
        const std::string name = ObservableLabel{kind, i}.to_string();
        const std::string w = where + ".observables." + name;
        const auto lit = detail::get_as<std::string>(detail::field(obs, name, where + ".observables"), w);
        try {
          (kind == ObservableLabel::Kind::A ? a : b).push_back(PauliString::from_literal(lit));
        } catch (const DomainError& e) {
          throw DomainError(w + ": " + e.what());
        }
      }
    }
    StabilizerGroup state;
    try {
      if (j.contains("stabilizers")) {
        const Json& list = j["stabilizers"];
        if (!list.is_array()) throw DomainError("expected an array");
        std::vector<PauliString> gens;
        for (const auto& g : list) gens.push_back(PauliString::from_literal(detail::get_as<std::string>(g, where + ".stabilizers")));
        state = StabilizerGroup(std::move(gens));
      } else if (j.contains("graph")) {
        state = stabilizer_generators(graph_from_json(j["graph"]));
      } else {
        throw DomainError("missing field 'stabilizers' (or 'graph')");
      }
    } catch (const DomainError& e) {
      throw DomainError(where + ".stabilizers: " + e.what());
    }
    return Realization::symbolic(std::move(a), std::move(b), std::move(state));
  }
  if (backend != "dense") throw DomainError(where + ".backend: expected 'symbolic' or 'dense', got '" + backend + "'");
  const std::uint32_t dim = detail::get_count(detail::field(j, "dim", where), where + ".dim");
  if (dim == 0 || dim > kDenseRealizationDimCap) {
    throw CapacityError(where + ".dim: " + std::to_string(dim) + " outside 1.." + std::to_string(kDenseRealizationDimCap));
  }
  Vector state = detail::vector_from_json(detail::field(j, "state", where), where + ".state");
  if (state.size() != static_cast<Eigen::Index>(dim)) throw DimensionError(where + ".state: expected " + std::to_string(dim) + " amplitudes");
  std::vector<SparseMatrix> a;
  std::vector<SparseMatrix> b;
  for (auto kind : {ObservableLabel::Kind::A, ObservableLabel::Kind::B}) {
    for (std::uint32_t i = 1; i <= n; ++i) {
      const std::string name = ObservableLabel{kind, i}.to_string();
      const std::string w = where + ".observables." + name;
      const Json& flat = detail::field(obs, name, where + ".observables");
      if (!flat.is_array() || flat.size() != std::size_t{dim} * dim) {
        throw DimensionError(w + ": expected " + std::to_string(std::size_t{dim} * dim) + " row-major entries");
      }
      std::vector<Eigen::Triplet<Complex>> entries;
      for (std::size_t k = 0; k < flat.size(); ++k) {
        const Complex c = detail::complex_from_json(flat[k], w + "[" + std::to_string(k) + "]");
        if (c != Complex{}) entries.emplace_back(static_cast<Eigen::Index>(k / dim), static_cast<Eigen::Index>(k % dim), c);
      }
      SparseMatrix m(dim, dim);
      m.setFromTriplets(entries.begin(), entries.end());
      (kind == ObservableLabel::Kind::A ? a : b).push_back(std::move(m));
    }
  }
  try {
    return Realization::dense(std::move(a), std::move(b), std::move(state));
  } catch (const DomainError& e) {
    throw DomainError(where + ": " + e.what());
  }
}

// --- robustness inputs -------------------------------------------------------

inline Json to_json(const Statistics& s) {
  Json values = Json::array();
  for (const auto& e : s.values) values.push_back(Json{{"labels", detail::labels_to_json(e.term)}, {"value", e.value}});
  return Json{{"n", s.n}, {"values", std::move(values)}};
}

inline Statistics statistics_from_json(const Json& j) {
  const std::string where = "statistics";
  Statistics s;
  s.n = detail::get_count(detail::field(j, "n", where), where + ".n");
  const Json& values = detail::field(j, "values", where);
  if (!values.is_array()) throw DomainError(where + ".values: expected an array");
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::string w = where + ".values[" + std::to_string(k) + "]";
    const auto labels = detail::labels_from_json(detail::field(values[k], "labels", w), w + ".labels");
    const double value = detail::get_number(detail::field(values[k], "value", w), w + ".value");
    if (labels.size() != s.n) throw DomainError(w + ".labels: expected " + std::to_string(s.n) + " labels");
    try {
      s.values.push_back({CorrelatorTerm::from_labels(0, labels), value});
    } catch (const DomainError& e) {
      throw DomainError(w + ": " + e.what());
    }
  }
  return s;
}

inline Json to_json(const JordanBlockSpec& spec) {
  Json blocks = Json::array();
  for (const auto& b : spec.blocks) {
    blocks.push_back(Json{{"weight", b.weight}, {"angles", b.angles}, {"amplitudes", detail::vector_to_json(b.amplitudes)}});
  }
  return Json{{"n", spec.n}, {"blocks", std::move(blocks)}};
}

inline JordanBlockSpec jordan_spec_from_json(const Json& j) {
  const std::string where = "jordan";
  JordanBlockSpec spec;
  spec.n = detail::get_count(detail::field(j, "n", where), where + ".n");
  const Json& blocks = detail::field(j, "blocks", where);
  if (!blocks.is_array()) throw DomainError(where + ".blocks: expected an array");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string w = where + ".blocks[" + std::to_string(k) + "]";
    JordanBlock b;
    b.weight = detail::get_number(detail::field(blocks[k], "weight", w), w + ".weight");
    const Json& angles = detail::field(blocks[k], "angles", w);
    if (!angles.is_array()) throw DomainError(w + ".angles: expected an array");
    for (std::size_t a = 0; a < angles.size(); ++a) b.angles.push_back(detail::get_number(angles[a], w + ".angles[" + std::to_string(a) + "]"));
    b.amplitudes = detail::vector_from_json(detail::field(blocks[k], "amplitudes", w), w + ".amplitudes");
    spec.blocks.push_back(std::move(b));
  }
  spec.validate();
  return spec;
}

// --- reports -----------------------------------------------------------------

inline Json to_json(const RobustnessReport& r) {
  Json out{{"n", r.n},
           {"epsilon", r.epsilon},
           {"eps0", r.bounds.eps0},
           {"eps1", r.bounds.eps1},
           {"eps2", r.bounds.eps2},
           {"fid_state_bound", r.fid_state_bound},
           {"fid_A_bound", r.fid_A_bound},
           {"fid_B_bound", r.fid_B_bound},
           {"vacuous", r.vacuous}};
  if (r.actual_fid_state) out["actual_fid_state"] = *r.actual_fid_state;
  if (r.actual_fid_A) out["actual_fid_A"] = *r.actual_fid_A;
  if (r.actual_fid_B) out["actual_fid_B"] = *r.actual_fid_B;
  if (r.anticommutator_residuals) out["anticommutator_residuals"] = *r.anticommutator_residuals;
  out["violations"] = r.violations;
  return out;
}

inline RobustnessReport robustness_report_from_json(const Json& j) {
  const std::string where = "report";
  auto num = [&](const char* name) { return detail::get_number(detail::field(j, name, where), where + "." + name); };
  auto list = [&](const char* name) {
    return detail::get_as<std::vector<double>>(detail::field(j, name, where), where + "." + name);
  };
  RobustnessReport r;
  r.n = detail::get_count(detail::field(j, "n", where), where + ".n");
  r.epsilon = num("epsilon");
  r.bounds = {num("eps0"), num("eps1"), num("eps2")};
  r.fid_state_bound = num("fid_state_bound");
  r.fid_A_bound = num("fid_A_bound");
  r.fid_B_bound = num("fid_B_bound");
  r.vacuous = detail::get_as<bool>(detail::field(j, "vacuous", where), where + ".vacuous");
  if (j.contains("actual_fid_state")) r.actual_fid_state = num("actual_fid_state");
  if (j.contains("actual_fid_A")) r.actual_fid_A = list("actual_fid_A");
  if (j.contains("actual_fid_B")) r.actual_fid_B = list("actual_fid_B");
  if (j.contains("anticommutator_residuals")) r.anticommutator_residuals = list("anticommutator_residuals");
  r.violations = detail::get_as<std::vector<std::string>>(detail::field(j, "violations", where), where + ".violations");
  return r;
}

inline Json to_json(const ValidationSummary& s) {
  return Json{{"n", s.n},
              {"trials", s.trials},
              {"max_angle", s.max_angle},
              {"seed", s.seed},
              {"violations", s.violations()},
              {"state_violations", s.state_violations},
              {"operator_violations", s.operator_violations},
              {"anticommutator_violations", s.anticommutator_violations},
              {"vacuous", s.vacuous},
              {"max_epsilon", s.max_epsilon},
              {"min_state_margin", s.min_state_margin},
              {"min_operator_margin", s.min_operator_margin},
              {"min_anticommutator_margin", s.min_anticommutator_margin}};
}

inline Json to_json(const CompatibilityReport& r) {
  auto entries = [](const std::vector<ResidualEntry>& list) {
    Json out = Json::array();
    for (const auto& e : list) {
      out.push_back(Json{{"pair", Json::array({e.first.to_string(), e.second.to_string()})}, {"residual", e.residual}});
    }
    return out;
  };
  return Json{{"admissible", r.admissible},
              {"max_commutator", r.max_commutator()},
              {"max_anticommutator", r.max_anticommutator()},
              {"commutators", entries(r.commutators)},
              {"anticommutators", entries(r.anticommutators)}};
}

inline Json to_json(const CanonicalFormReport& r) {
  Json preds = Json::array();
  for (const auto& p : r.predicates) preds.push_back(Json{{"name", p.name}, {"holds", p.holds}, {"residual", p.residual}});
  return Json{{"dimension", r.dimension}, {"all_hold", r.all_hold()}, {"predicates", std::move(preds)}};
}

}  // namespace ncineq::io
