#include "freespec/cli.hpp"

#include <cmath>
#include <optional>

#include <CLI11.hpp>

#include "freespec/io.hpp"

namespace freespec::cli {

namespace {

using io::Json;
using io::SchemaError;

struct Flags {
  std::string input;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::vector<std::size_t> levels{1, 2, 3};
  std::vector<std::size_t> blocks;
  std::vector<double> gamma;
  std::string grid;
};

struct Outcome {
  int code;
  Json report;
};

Json header(const std::string& command) {
  return Json{{"schema_version", io::kSchemaVersion}, {"command", command}};
}

// Looks up key; when absent and bare_key is present at top level, the whole
// document is taken as the section.
std::pair<const Json*, std::string> section(const Json& doc, const char* key,
                                            const char* bare_key = nullptr) {
  if (!doc.is_object()) throw SchemaError("$", "expected an object");
  if (auto it = doc.find(key); it != doc.end()) return {&*it, std::string("$.") + key};
  if (bare_key != nullptr && doc.contains(bare_key)) return {&doc, "$"};
  throw SchemaError(std::string("$.") + key, "missing field");
}

graph::TorusPoint choose_gamma(const Flags& f, const Json& doc, std::size_t g) {
  std::vector<double> angles;
  std::string where = "--gamma";
  if (!f.gamma.empty()) {
    angles = f.gamma;
  } else if (doc.is_object() && doc.contains("gamma")) {
    angles = io::angles_from_json(doc["gamma"], "$.gamma");
    where = "$.gamma";
  } else {
    return graph::sample_independent_torus(g, f.seed);
  }
  if (angles.size() != g) {
    throw SchemaError(where, "expected " + std::to_string(g) + " angles, got " +
                                 std::to_string(angles.size()));
  }
  for (double a : angles) {
    if (!std::isfinite(a)) throw SchemaError(where, "angle is not finite");
  }
  return graph::TorusPoint::from_angles(std::move(angles));
}

std::optional<reinhardt::BlockDecomposition> choose_blocks(const Flags& f, const Json& doc) {
  if (!f.blocks.empty()) return reinhardt::BlockDecomposition{f.blocks};
  if (doc.is_object() && doc.contains("blocks")) return io::blocks_from_json(doc["blocks"], "$.blocks");
  return std::nullopt;
}

Outcome membership_cmd(const Flags& f, const Json& doc) {
  Json r = header("membership");
  auto [xs, xpath] = section(doc, "X");
  const MatrixTuple x = io::tuple_from_json(*xs, xpath);
  MembershipVerdict v{};
  if (doc.contains("spectraball")) {
    const Json& e = doc["spectraball"];
    if (!e.is_array()) throw SchemaError("$.spectraball", "expected an array of matrices");
    std::vector<Matrix> mats;
    for (std::size_t s = 0; s < e.size(); ++s) {
      mats.push_back(io::matrix_from_json(e[s], "$.spectraball[" + std::to_string(s) + "]"));
    }
    if (mats.size() != x.g()) throw SchemaError("$.X.mats", "tuple length differs from the number of matrices");
    try {
      v = spectraball_membership(mats, x, f.tol);
    } catch (const Error& err) {
      throw SchemaError("$.spectraball", err.what(), err.code());
    }
    r["domain"] = "spectraball";
  } else {
    auto [ps, ppath] = section(doc, "pencil");
    const Pencil p = io::pencil_from_json(*ps, ppath);
    if (p.g() != x.g()) throw SchemaError("$.X.mats", "tuple length differs from pencil g");
    v = membership(p, x, f.tol);
    r["domain"] = "pencil";
  }
  r.update(io::to_json(v));
  r["member"] = v.region != Region::Outside;
  return {v.region != Region::Outside ? kTrue : kFalse, std::move(r)};
}

Outcome e_membership_cmd(const Flags& f, const Json& doc) {
  Json r = header("e-membership");
  auto [es, epath] = section(doc, "etuple");
  const ETuple e = io::etuple_from_json(*es, epath, f.tol);
  const Matrix x1 = io::matrix_from_json(section(doc, "X1").first[0], "$.X1");
  const Matrix x2 = io::matrix_from_json(section(doc, "X2").first[0], "$.X2");
  if (x1.rows() != x1.cols() || x2.rows() != x2.cols() || x1.rows() != x2.rows()) {
    throw SchemaError("$.X2", "X1 and X2 must be square of equal size");
  }
  const MembershipVerdict v = e_membership(e, x1, x2, f.tol);
  r.update(io::to_json(v));
  r["member"] = v.region != Region::Outside;
  return {v.region != Region::Outside ? kTrue : kFalse, std::move(r)};
}

Outcome graph_check_cmd(const Flags&, const Json& doc) {
  Json r = header("graph-check");
  auto [gs, gpath] = section(doc, "graph", "vertices");
  const auto g = io::graph_from_json(*gs, gpath);
  const auto report = reinhardt::structure_report(g);
  r.update(io::to_json(report));
  if (report.is_reinhardt_partition) {
    r["potential"] = io::to_json(std::get<graph::Potential>(graph::compute_potential(g)));
  }
  return {report.is_reinhardt_partition ? kTrue : kFalse, std::move(r)};
}

Outcome phase_cmd(const Flags& f, const Json& doc) {
  Json r = header("phase");
  auto [gs, gpath] = section(doc, "graph", "vertices");
  const auto g = io::graph_from_json(*gs, gpath);
  const auto gamma = choose_gamma(f, doc, g.num_labels());
  r["gamma"] = gamma.angles;
  const auto pot = graph::compute_potential(g);
  if (const auto* w = std::get_if<graph::CycleWitness>(&pot)) {
    r["potential"] = nullptr;
    r["witness"] = io::to_json(*w);
    return {kFalse, std::move(r)};
  }
  const auto& p = std::get<graph::Potential>(pot);
  const auto phases = graph::phase_assignment(p, gamma);
  Json delta = Json::array();
  for (Complex z : phases.delta) delta.push_back(io::to_json(z));
  r["potential"] = io::to_json(p);
  r["delta"] = std::move(delta);
  r["residual"] = graph::phase_residual(g, phases, gamma);
  return {kTrue, std::move(r)};
}

Json structure_failure(const reinhardt::StructureError& e) {
  Json blocks = Json::array();
  for (const auto& b : e.blocks()) blocks.push_back(io::to_json(b));
  return Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}, {"blocks", std::move(blocks)}};
}

Outcome certify_cmd(const Flags& f, const Json& doc) {
  Json r = header("certify-reinhardt");
  auto [ps, ppath] = section(doc, "pencil", "A");
  const Pencil p = io::pencil_from_json(*ps, ppath);
  const auto gamma = choose_gamma(f, doc, p.g());
  r["gamma"] = gamma.angles;

  auto blocks = choose_blocks(f, doc);
  Pencil target = p;
  if (blocks) {
    try {
      reinhardt::validate_blocks(*blocks, p.d());
    } catch (const Error& e) {
      throw SchemaError(f.blocks.empty() ? "$.blocks" : "--blocks", e.what(), e.code());
    }
    r["blocks_source"] = "input";
  } else {
    // No partition given: look for the symmetry and split along its eigenspaces.
    const auto search = reinhardt::find_symmetry_unitary(p, gamma, f.tol, f.seed);
    r["blocks_source"] = "symmetry-search";
    r["search"] = Json{{"nullspace_dim", search.nullspace_dim},
                       {"attempts", search.attempts},
                       {"residual", search.residual}};
    if (!search.u) {
      r["status"] = "inconclusive";
      return {kFalse, std::move(r)};
    }
    auto split = reinhardt::block_split_from_unitary(p, *search.u, std::sqrt(f.tol));
    blocks = split.blocks;
    target = std::move(split.pencil);
    r["basis"] = io::to_json(split.basis);
  }
  r["blocks"] = Json{{"sizes", blocks->sizes}};

  try {
    const auto ex = reinhardt::extract_graph(target, *blocks);
    Json borderline = Json::array();
    for (const auto& b : ex.borderline) borderline.push_back(io::to_json(b));
    r["borderline"] = std::move(borderline);
    auto result = reinhardt::certify_reinhardt(target, *blocks, gamma);
    if (auto* cert = std::get_if<reinhardt::ReinhardtCertificate>(&result)) {
      r["status"] = "certified";
      r["certificate"] = io::to_json(*cert);
      return {kTrue, std::move(r)};
    }
    r["status"] = "refused";
    r["report"] = io::to_json(std::get<reinhardt::StructureReport>(result));
    return {kFalse, std::move(r)};
  } catch (const reinhardt::StructureError& e) {
    if (e.code() == ErrorCode::ZeroCoefficient) throw SchemaError(ppath, e.what(), e.code());
    r["status"] = "refused";
    r["failure"] = structure_failure(e);
    return {kFalse, std::move(r)};
  }
}

Outcome falsify_cmd(const Flags& f, const Json& doc) {
  Json r = header("falsify-reinhardt");
  auto [ps, ppath] = section(doc, "pencil", "A");
  const Pencil p = io::pencil_from_json(*ps, ppath);
  reinhardt::FalsifyOptions opts;
  opts.levels = f.levels;
  opts.samples = f.samples;
  opts.seed = f.seed;
  opts.tol = f.tol;
  r["samples"] = opts.samples;
  r["levels"] = opts.levels;
  r["seed"] = opts.seed;
  const auto w = reinhardt::falsify_reinhardt(p, opts);
  r["witness"] = w ? io::to_json(*w) : Json(nullptr);
  return {w ? kFalse : kTrue, std::move(r)};
}

Outcome circular_cmd(const Flags& f, const Json& doc) {
  Json r = header("circular-form");
  std::optional<graph::LabeledDag> g;
  if (doc.is_object() && (doc.contains("graph") || doc.contains("vertices"))) {
    auto [gs, gpath] = section(doc, "graph", "vertices");
    g = io::graph_from_json(*gs, gpath);
  } else {
    auto [ps, ppath] = section(doc, "pencil", "A");
    const Pencil p = io::pencil_from_json(*ps, ppath);
    auto blocks = choose_blocks(f, doc);
    if (!blocks) throw SchemaError("$.blocks", "missing field (or pass --blocks)");
    try {
      reinhardt::validate_blocks(*blocks, p.d());
    } catch (const Error& e) {
      throw SchemaError(f.blocks.empty() ? "$.blocks" : "--blocks", e.what(), e.code());
    }
    try {
      g = reinhardt::extract_graph(p, *blocks).graph;
    } catch (const reinhardt::StructureError& e) {
      if (e.code() == ErrorCode::ZeroCoefficient) throw SchemaError(ppath, e.what(), e.code());
      r["ok"] = false;
      r["failure"] = structure_failure(e);
      return {kFalse, std::move(r)};
    }
  }
  const auto report = reinhardt::check_circular_path_form(*g);
  r["graph"] = io::to_json(*g);
  r.update(io::to_json(report));
  return {report.ok ? kTrue : kFalse, std::move(r)};
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = spec.find(':', start);
    const std::string tok = spec.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || !std::isfinite(v)) {
      throw SchemaError("--grid", "expected START:STOP:STEP, got '" + spec + "'");
    }
    parts.push_back(v);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw SchemaError("--grid", "expected START:STOP:STEP, got '" + spec + "'");
  const double lo = parts[0], hi = parts[1], step = parts[2];
  if (step <= 0.0 || lo < 0.0 || hi < lo || hi >= 1.0) {
    throw SchemaError("--grid", "need 0 <= START <= STOP < 1 and STEP > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 1000) throw SchemaError("--grid", "more than 1000 grid points");
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return out;
}

Outcome rigidity_cmd(const Flags& f, const Json& doc) {
  Json r = header("rigidity");
  auto [es, epath] = section(doc, "etuple", "C1");
  const ETuple e = io::etuple_from_json(*es, epath, f.tol);
  rigidity::RigidityOptions opts;
  opts.b_grid = f.grid.empty() ? rigidity::default_b_grid() : parse_grid(f.grid);
  opts.seed = f.seed;
  opts.tol = f.tol;
  const auto report = rigidity::rigidity_report(e, opts);
  r["b_grid"] = opts.b_grid;
  r["theta_grid"] = opts.theta_grid;
  r.update(io::to_json(report));
  return {report.consistent ? kTrue : kFalse, std::move(r)};
}

Outcome lemma_cmd(const Flags& f, const Json& doc) {
  Json r = header("lemma-suite");
  std::optional<ETuple> e;
  if (doc.is_null()) {
    e.emplace(Matrix::identity(1), Matrix::identity(1), f.tol);
  } else {
    auto [es, epath] = section(doc, "etuple", "C1");
    e.emplace(io::etuple_from_json(*es, epath, f.tol));
  }
  const auto checks = rigidity::lemma_suite(*e, f.seed);
  Json list = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    list.push_back(io::to_json(c));
    all = all && c.passed;
  }
  r["seed"] = f.seed;
  r["checks"] = std::move(list);
  r["passed"] = all;
  return {all ? kTrue : kFalse, std::move(r)};
}

using Handler = Outcome (*)(const Flags&, const Json&);

struct Command {
  const char* name;
  const char* help;
  Handler handler;
  bool input_required;
  bool tol, seed, samples, levels, blocks, gamma, grid;
};

constexpr Command kCommands[] = {
    {"membership", "Classify a tuple against a pencil or spectraball domain", membership_cmd,
     true, true, false, false, false, false, false, false},
    {"e-membership", "Classify (X1, X2) against the domain of (C1, C2)", e_membership_cmd, true,
     true, false, false, false, false, false, false},
    {"graph-check", "Acyclicity, potential and cycle witness for a labeled graph",
     graph_check_cmd, true, false, false, false, false, false, false, false},
    {"phase", "Block phases delta_v for a labeled graph and a torus point", phase_cmd, true,
     false, true, false, false, false, true, false},
    {"certify-reinhardt", "Certify or refuse the torus symmetry of a pencil", certify_cmd, true,
     true, true, false, false, true, true, false},
    {"falsify-reinhardt", "Search for a torus-action violation by sampling", falsify_cmd, true,
     true, true, true, true, false, false, false},
    {"circular-form", "Check the disjoint-directed-paths form of a graph", circular_cmd, true,
     false, false, false, false, true, false, false},
    {"rigidity", "Boundary-defect grid and case classification for (C1, C2)", rigidity_cmd,
     true, true, true, false, false, false, false, true},
    {"lemma-suite", "Numeric checks of the rigidity building blocks", lemma_cmd, false, true,
     true, false, false, false, false, false},
};

void print(std::ostream& out, const Json& report) { out << report.dump(2) << '\n'; }

int input_error(std::ostream& out, std::ostream& err, const std::string& command,
                const std::string& code, const std::string& path, const std::string& message) {
  Json r = header(command);
  r["error"] = Json{{"code", code}, {"path", path}, {"message", message}};
  print(out, r);
  err << "freespec " << command << ": " << message << '\n';
  return kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free spectrahedra: membership, torus symmetry and rigidity checks", "freespec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "freespec 0.1.0");

  Flags flags;
  const Command* chosen = nullptr;
  for (const Command& c : kCommands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    auto* in = sub->add_option("input", flags.input, "JSON input file")->check(CLI::ExistingFile);
    if (c.input_required) in->required();
    if (c.tol) sub->add_option("--tol", flags.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
    if (c.seed) sub->add_option("--seed", flags.seed, "Random seed");
    if (c.samples) sub->add_option("--samples", flags.samples, "Sample count")->check(CLI::PositiveNumber);
    if (c.levels) {
      sub->add_option("--levels", flags.levels, "Matrix levels, comma separated")
          ->delimiter(',')
          ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    }
    if (c.blocks) {
      sub->add_option("--blocks", flags.blocks, "Block sizes, comma separated")
          ->delimiter(',')
          ->check(CLI::PositiveNumber);
    }
    if (c.gamma) sub->add_option("--gamma", flags.gamma, "Torus angles, comma separated")->delimiter(',');
    if (c.grid) sub->add_option("--grid", flags.grid, "b grid as START:STOP:STEP");
    sub->callback([&chosen, &c] { chosen = &c; });
  }

  std::vector<const char*> argv{"freespec"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kTrue;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kTrue;
  } catch (const CLI::ParseError& e) {
    err << "freespec: " << e.what() << '\n';
    return kInputError;
  }
  if (chosen == nullptr) return kInputError;

  const std::string name = chosen->name;
  try {
    Json doc;
    if (!flags.input.empty()) doc = io::read_json_file(flags.input);
    Outcome o = chosen->handler(flags, doc);
    print(out, o.report);
    return o.code;
  } catch (const SchemaError& e) {
    return input_error(out, err, name, std::string(to_string(e.code())), e.path(), e.what());
  } catch (const Error& e) {
    return input_error(out, err, name, std::string(to_string(e.code())), "$", e.what());
  }
}

}  // namespace freespec::cli
