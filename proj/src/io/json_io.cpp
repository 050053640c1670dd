#include <cmath>
#include <fstream>
#include <sstream>

#include "freespec/io.hpp"

namespace freespec::io {

namespace {

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string key_at(const std::string& path, const char* key) { return path + "." + key; }

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(key_at(path, key), "missing field");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "number is not finite");
  return v;
}

std::size_t positive_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    throw SchemaError(path, "expected a positive integer");
  }
  return j.get<std::size_t>();
}

std::size_t index_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw SchemaError(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

// Library errors raised while building an object are reported at its path.
template <class F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(path, e.what(), e.code());
  }
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json vertices(const std::vector<graph::Vertex>& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("$", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw SchemaError("$", std::string("malformed JSON: ") + e.what());
  }
}

Complex complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [re, im]");
  return {number(j[0], at(path, std::size_t{0})), number(j[1], at(path, std::size_t{1}))};
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  array(j, path);
  if (j.empty()) throw SchemaError(path, "matrix needs at least one row");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Complex> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = at(path, i);
    array(j[i], rp);
    if (i == 0) {
      cols = j[i].size();
      if (cols == 0) throw SchemaError(rp, "matrix needs at least one column");
    } else if (j[i].size() != cols) {
      throw SchemaError(rp, "row has " + std::to_string(j[i].size()) + " entries, expected " +
                                std::to_string(cols));
    }
    for (std::size_t k = 0; k < cols; ++k) entries.push_back(complex_from_json(j[i][k], at(rp, k)));
  }
  return Matrix(rows, cols, std::move(entries));
}

MatrixTuple tuple_from_json(const Json& j, const std::string& path) {
  const std::size_t n = positive_int(field(j, "n", path), key_at(path, "n"));
  const std::string mp = key_at(path, "mats");
  const Json& mats = array(field(j, "mats", path), mp);
  if (mats.empty()) throw SchemaError(mp, "tuple needs at least one matrix");
  std::vector<Matrix> out;
  for (std::size_t s = 0; s < mats.size(); ++s) {
    Matrix m = matrix_from_json(mats[s], at(mp, s));
    if (m.rows() != n || m.cols() != n) {
      throw SchemaError(at(mp, s), "expected " + std::to_string(n) + " x " + std::to_string(n));
    }
    out.push_back(std::move(m));
  }
  return MatrixTuple(std::move(out));
}

Pencil pencil_from_json(const Json& j, const std::string& path) {
  const std::size_t d = positive_int(field(j, "d", path), key_at(path, "d"));
  const std::size_t g = positive_int(field(j, "g", path), key_at(path, "g"));
  const std::string ap = key_at(path, "A");
  const Json& a = array(field(j, "A", path), ap);
  if (a.size() != g) {
    throw SchemaError(ap, "expected " + std::to_string(g) + " coefficients, got " +
                              std::to_string(a.size()));
  }
  std::vector<Matrix> out;
  for (std::size_t s = 0; s < g; ++s) {
    Matrix m = matrix_from_json(a[s], at(ap, s));
    if (m.rows() != d || m.cols() != d) {
      throw SchemaError(at(ap, s), "expected " + std::to_string(d) + " x " + std::to_string(d));
    }
    out.push_back(std::move(m));
  }
  return Pencil(std::move(out));
}

ETuple etuple_from_json(const Json& j, const std::string& path, double tol) {
  Matrix c1 = matrix_from_json(field(j, "C1", path), key_at(path, "C1"));
  Matrix c2 = matrix_from_json(field(j, "C2", path), key_at(path, "C2"));
  if (c1.cols() != c2.rows()) {
    throw SchemaError(path, "C1 has " + std::to_string(c1.cols()) + " columns but C2 has " +
                                std::to_string(c2.rows()) + " rows");
  }
  return wrap(path, [&] { return ETuple(c1, c2, tol); });
}

graph::LabeledDag graph_from_json(const Json& j, const std::string& path) {
  const std::size_t m = positive_int(field(j, "vertices", path), key_at(path, "vertices"));
  const std::size_t g = positive_int(field(j, "labels", path), key_at(path, "labels"));
  const std::string ep = key_at(path, "edges");
  const Json& edges = array(field(j, "edges", path), ep);
  std::vector<graph::Edge> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = at(ep, i);
    if (!edges[i].is_array() || edges[i].size() != 3) {
      throw SchemaError(p, "expected [tail, head, label]");
    }
    const std::size_t tail = index_int(edges[i][0], at(p, std::size_t{0}));
    const std::size_t head = index_int(edges[i][1], at(p, std::size_t{1}));
    const std::size_t label = positive_int(edges[i][2], at(p, std::size_t{2}));
    if (tail >= m) throw SchemaError(at(p, std::size_t{0}), "vertex out of range");
    if (head >= m) throw SchemaError(at(p, std::size_t{1}), "vertex out of range");
    if (label > g) throw SchemaError(at(p, std::size_t{2}), "label out of range");
    out.push_back({tail, head, static_cast<int>(label)});
  }
  return wrap(path, [&] { return graph::LabeledDag(m, g, std::move(out)); });
}

reinhardt::BlockDecomposition blocks_from_json(const Json& j, const std::string& path) {
  const std::string sp = key_at(path, "sizes");
  const Json& sizes = array(field(j, "sizes", path), sp);
  reinhardt::BlockDecomposition b;
  for (std::size_t i = 0; i < sizes.size(); ++i) b.sizes.push_back(positive_int(sizes[i], at(sp, i)));
  if (b.sizes.empty()) throw SchemaError(sp, "need at least one block");
  return b;
}

std::vector<double> angles_from_json(const Json& j, const std::string& path) {
  array(j, path);
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at(path, i)));
  return out;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const MatrixTuple& x) {
  Json mats = Json::array();
  for (const Matrix& m : x.mats()) mats.push_back(to_json(m));
  return Json{{"n", x.n()}, {"mats", std::move(mats)}};
}

Json to_json(const Pencil& p) {
  Json a = Json::array();
  for (const Matrix& m : p.coefficients()) a.push_back(to_json(m));
  return Json{{"d", p.d()}, {"g", p.g()}, {"A", std::move(a)}};
}

std::string region_name(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::Boundary: return "boundary";
    case Region::Outside: return "outside";
  }
  return "unknown";
}

Json to_json(const MembershipVerdict& v) {
  return Json{{"region", region_name(v.region)}, {"margin", number_or_null(v.margin)},
              {"tol", v.tol}};
}

Json to_json(const graph::LabeledDag& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(Json::array({e.tail, e.head, e.label}));
  return Json{{"vertices", g.num_vertices()}, {"labels", g.num_labels()}, {"edges", std::move(edges)}};
}

Json to_json(const graph::Potential& p) {
  Json out = Json::array();
  for (const auto& v : p.p) out.push_back(v);
  return out;
}

Json to_json(const graph::CycleWitness& w) {
  return Json{{"cycle", vertices(w.vertices)}, {"net", w.net}};
}

Json to_json(const reinhardt::CircularReport& r) {
  return Json{{"ok", r.ok},
              {"acyclic", r.acyclic},
              {"out_degree_violations", vertices(r.out_degree_violations)},
              {"in_degree_violations", vertices(r.in_degree_violations)},
              {"minimality_violations", vertices(r.isolated)}};
}

Json to_json(const reinhardt::StructureReport& r) {
  Json out{{"graph", to_json(r.graph)},
           {"is_dag", r.is_dag},
           {"is_reinhardt_partition", r.is_reinhardt_partition},
           {"is_connected", r.is_connected},
           {"is_circular_path_form", r.is_circular_path_form}};
  if (r.is_dag) out["order"] = vertices(r.order);
  out["witness"] = r.cycle ? to_json(*r.cycle) : Json(nullptr);
  out["circular"] = to_json(r.circular);
  return out;
}

Json to_json(const reinhardt::ReinhardtCertificate& c) {
  Json diag = Json::array();
  for (std::size_t i = 0; i < c.u.rows(); ++i) diag.push_back(to_json(c.u(i, i)));
  Json phases = Json::array();
  for (Complex z : c.block_phase) phases.push_back(to_json(z));
  return Json{{"gamma", c.gamma.angles},
              {"U_diag", std::move(diag)},
              {"block_phase", std::move(phases)},
              {"residual", c.residual},
              {"residual_bound", c.residual_bound},
              {"order", vertices(c.order)},
              {"potential", to_json(c.potential)}};
}

Json to_json(const reinhardt::FalsifyWitness& w) {
  return Json{{"sample_index", w.sample_index},
              {"gamma", w.gamma.angles},
              {"X", to_json(w.x)},
              {"margin_X", w.margin_x},
              {"margin_gamma_X", w.margin_rotated}};
}

Json to_json(const reinhardt::BlockRef& b) {
  return Json{{"row", b.row}, {"col", b.col}, {"label", b.label}, {"norm", b.norm}};
}

Json to_json(const rigidity::RigidityReport& r) {
  using rigidity::CaseKind;
  Json out{{"case", r.kind == rigidity::RigidityCase::Bidisk ? "bidisk" : "rigid"},
           {"gram_sum_max_eig", r.gram_sum_max_eig}};
  if (r.critical) {
    Json g = Json::array();
    for (Complex z : r.critical->gamma) g.push_back(to_json(z));
    out["critical_t"] = r.critical->t;
    out["gamma_vec"] = std::move(g);
    out["C1_gamma_norm"] = r.critical->c1_gamma_norm;
    out["C2star_gamma_norm"] = r.critical->c2star_gamma_norm;
  } else {
    out["critical_t"] = nullptr;
    out["gamma_vec"] = nullptr;
  }
  out["swap_violation"] = r.swap_violation;
  Json rows = Json::array();
  for (const auto& row : r.defects) {
    rows.push_back(Json{{"case", row.kind == CaseKind::Diagonal ? "diagonal" : "swap"},
                        {"b", Json::array({to_json(row.b[0]), to_json(row.b[1])})},
                        {"theta", Json::array({row.theta[0], row.theta[1]})},
                        {"value", number_or_null(row.value)},
                        {"intersection_dim", row.intersection_dim},
                        {"ok", row.ok}});
  }
  out["defects"] = std::move(rows);
  out["failed_rows"] = r.failed_rows;
  out["consistent"] = r.consistent;
  out["conclusion"] = r.conclusion;
  out["notes"] = Json::array(
      {"swap case uses e_2 = e^{i theta_2}(|b_2|^2 - 1), the same squared form as every other "
       "coefficient",
       "diagonal rows at b = 0 are expected at 1; swap rows at b = 0 equal "
       "lambda_max(C1*C1 + C2C2*), the same value as swap_violation",
       "defect values are grid evidence, not a proof"});
  return out;
}

Json to_json(const rigidity::LemmaCheck& c) {
  return Json{{"name", c.name},
              {"passed", c.passed},
              {"cases", c.cases},
              {"worst", number_or_null(c.worst)},
              {"detail", c.detail}};
}

}  // namespace freespec::io
