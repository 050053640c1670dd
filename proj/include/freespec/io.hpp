#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "freespec/error.hpp"
#include "freespec/graph.hpp"
#include "freespec/pencil.hpp"
#include "freespec/reinhardt.hpp"
#include "freespec/rigidity.hpp"

namespace freespec::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// Input that does not match the expected layout; path is a JSONPath-like
/// pointer such as $.pencil.A[0][1].
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& what,
              ErrorCode code = ErrorCode::Schema)
      : Error(code, path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

Json read_json_file(const std::string& path);

// Parsing. `path` names where j sits in the document.
Complex complex_from_json(const Json& j, const std::string& path);
Matrix matrix_from_json(const Json& j, const std::string& path);
MatrixTuple tuple_from_json(const Json& j, const std::string& path);
Pencil pencil_from_json(const Json& j, const std::string& path);
ETuple etuple_from_json(const Json& j, const std::string& path, double tol = kDefaultTol);
graph::LabeledDag graph_from_json(const Json& j, const std::string& path);
reinhardt::BlockDecomposition blocks_from_json(const Json& j, const std::string& path);
std::vector<double> angles_from_json(const Json& j, const std::string& path);

// Serialization.
Json to_json(Complex z);
Json to_json(const Matrix& m);
Json to_json(const MatrixTuple& x);
Json to_json(const Pencil& p);
Json to_json(const MembershipVerdict& v);
Json to_json(const graph::LabeledDag& g);
Json to_json(const graph::Potential& p);
Json to_json(const graph::CycleWitness& w);
Json to_json(const reinhardt::StructureReport& r);
Json to_json(const reinhardt::CircularReport& r);
Json to_json(const reinhardt::ReinhardtCertificate& c);
Json to_json(const reinhardt::FalsifyWitness& w);
Json to_json(const reinhardt::BlockRef& b);
Json to_json(const rigidity::RigidityReport& r);
Json to_json(const rigidity::LemmaCheck& c);

std::string region_name(Region r);

}  // namespace freespec::io
