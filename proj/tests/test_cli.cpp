#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "freespec/cli.hpp"
#include "freespec/io.hpp"

using namespace freespec;
using io::Json;

namespace {

const std::string kData = FREESPEC_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(JsonIo, MatrixRoundTrip) {
  const Matrix m = Matrix::from_rows({{1.0, Complex(0.5, -2.0)}, {Complex(0, 1), 0.25}});
  EXPECT_EQ(io::matrix_from_json(io::to_json(m), "$"), m);
  // plain numbers are read as real entries
  EXPECT_EQ(io::matrix_from_json(Json::parse("[[1, 2]]"), "$"), Matrix::from_rows({{1.0, 2.0}}));
}

TEST(JsonIo, PencilRoundTrip) {
  const Pencil p({Matrix::unit(2, 2, 0, 1), Matrix::from_rows({{Complex(0, 1), 0.0}, {0.0, 2.0}})});
  const Pencil q = io::pencil_from_json(io::to_json(p), "$");
  EXPECT_EQ(q.coefficients(), p.coefficients());
}

TEST(JsonIo, SchemaErrorsCarryPath) {
  auto path_of = [](const char* text, auto parse) {
    try {
      parse(Json::parse(text));
    } catch (const io::SchemaError& e) {
      return e.path();
    }
    return std::string("<none>");
  };
  auto pencil = [](const Json& j) { io::pencil_from_json(j, "$.pencil"); };
  EXPECT_EQ(path_of(R"({"d":2,"g":1,"A":[[[1,0],[0]]]})", pencil), "$.pencil.A[0][1]");
  EXPECT_EQ(path_of(R"({"d":2,"g":1,"A":[[[1,0],[0,"x"]]]})", pencil), "$.pencil.A[0][1][1]");
  EXPECT_EQ(path_of(R"({"d":2,"g":2,"A":[[[1,0],[0,0]]]})", pencil), "$.pencil.A");
  EXPECT_EQ(path_of(R"({"g":1,"A":[]})", pencil), "$.pencil.d");
  auto graph = [](const Json& j) { io::graph_from_json(j, "$.graph"); };
  EXPECT_EQ(path_of(R"({"vertices":2,"labels":1,"edges":[[0,3,1]]})", graph), "$.graph.edges[0][1]");
  EXPECT_EQ(path_of(R"({"vertices":2,"labels":1,"edges":[[0,0,1]]})", graph), "$.graph");
}

TEST(Cli, SpectraballMemberExitsZero) {
  const auto r = run({"membership", kData + "/spectraball_interior.json"});
  EXPECT_EQ(r.code, 0);
  const Json j = r.json();
  EXPECT_EQ(j["schema_version"], "1");
  EXPECT_EQ(j["region"], "interior");
}

TEST(Cli, TriangleIsRefusedWithCycle) {
  const auto r = run({"certify-reinhardt", kData + "/triangle_pencil.json"});
  EXPECT_EQ(r.code, 1);
  const Json j = r.json();
  EXPECT_EQ(j["status"], "refused");
  EXPECT_EQ(j["report"]["witness"]["net"], Json::parse("[1, 1, -1]"));
}

TEST(Cli, EPencilIsCertified) {
  const auto r = run({"certify-reinhardt", kData + "/e_pencil_unit.json", "--seed", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_LE(r.json()["certificate"]["residual"].get<double>(), 1e-12);
  // without blocks the symmetry search supplies them
  const auto s = run({"certify-reinhardt", temp_file("noblocks.json", R"({"pencil":{"d":3,"g":2,"A":[
      [[0,1,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,1],[0,0,0]]]}})")});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.json()["blocks_source"], "symmetry-search");
}

TEST(Cli, StructureFailuresAndZeroCoefficient) {
  const auto self = run({"certify-reinhardt", kData + "/e_pencil_unit.json", "--blocks", "3"});
  EXPECT_EQ(self.code, 1);
  EXPECT_EQ(self.json()["failure"]["code"], "SelfLoop");
  const auto zero = run({"certify-reinhardt", temp_file("zero.json", R"({"pencil":{"d":2,"g":2,"A":[
      [[0,1],[0,0]],[[0,0],[0,0]]]},"blocks":{"sizes":[1,1]}})")});
  EXPECT_EQ(zero.code, 2);
  EXPECT_EQ(zero.json()["error"]["code"], "ZeroCoefficient");
}

TEST(Cli, RigidityUnitPair) {
  const auto r = run({"rigidity", kData + "/etuple_unit.json"});
  EXPECT_EQ(r.code, 0);
  const Json j = r.json();
  EXPECT_EQ(j["case"], "rigid");
  EXPECT_DOUBLE_EQ(j["swap_violation"].get<double>(), 2.0);
  EXPECT_EQ(j["failed_rows"], 0);
}

TEST(Cli, FalsifyExitCodes) {
  EXPECT_EQ(run({"falsify-reinhardt", kData + "/scalar_pencil.json"}).code, 1);
  EXPECT_EQ(run({"falsify-reinhardt", kData + "/e_pencil_unit.json", "--samples", "200"}).code, 0);
}

TEST(Cli, GraphCommands) {
  EXPECT_EQ(run({"graph-check", kData + "/triangle_graph.json"}).code, 1);
  const auto d = run({"graph-check", kData + "/diamond_graph.json"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.json()["potential"], Json::parse("[[1,1],[0,1],[1,0],[0,0]]"));
  const auto p = run({"phase", kData + "/diamond_graph.json"});
  EXPECT_EQ(p.code, 0);
  EXPECT_LE(p.json()["residual"].get<double>(), 1e-12);
  EXPECT_EQ(run({"phase", kData + "/diamond_graph.json", "--gamma", "0.1"}).code, 2);
  EXPECT_EQ(run({"circular-form", kData + "/triangle_graph.json"}).code, 1);
  EXPECT_EQ(run({"circular-form", kData + "/e_pencil_unit.json"}).code, 0);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"membership", kData + "/spectraball_interior.json", "--bogus"}).code, 2);
  EXPECT_EQ(run({"graph-check", kData + "/triangle_graph.json", "--seed", "1"}).code, 2);  // not a graph-check flag
  EXPECT_EQ(run({"membership", kData + "/missing.json"}).code, 2);
  const auto bad = run({"membership", temp_file("bad.json", "{\"X\": ")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.json()["error"]["path"], "$");
  const auto norm = run({"rigidity", temp_file("norm.json", R"({"etuple":{"C1":[[2]],"C2":[[1]]}})")});
  EXPECT_EQ(norm.code, 2);
  EXPECT_EQ(norm.json()["error"]["code"], "NormNotOne");
  EXPECT_EQ(run({"rigidity", kData + "/etuple_unit.json", "--grid", "0:1.5:0.1"}).code, 2);
  EXPECT_EQ(run({"falsify-reinhardt", kData + "/scalar_pencil.json", "--levels", "0"}).code, 2);
}

TEST(Cli, ReportsAreByteIdenticalAcrossRuns) {
  const std::vector<std::vector<std::string>> cmds{
      {"falsify-reinhardt", kData + "/scalar_pencil.json", "--seed", "5", "--samples", "300"},
      {"certify-reinhardt", kData + "/e_pencil_unit.json", "--seed", "8"},
      {"rigidity", kData + "/etuple_unit.json", "--seed", "2", "--grid", "0:0.6:0.3"},
      {"lemma-suite", "--seed", "4"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << c[0];
    EXPECT_NO_THROW(Json::parse(a.out));
  }
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }
