#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mimkit/cli.hpp"

using namespace mimkit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

SweepTable csv_of(const Run& r) {
  std::istringstream is(r.out);
  return read_csv(is);
}

double cell(const SweepTable& t, std::size_t row, const std::string& col) {
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    if (t.columns[j] == col) return std::get<double>(t.rows.at(row)[j]);
  }
  FAIL("missing column " << col);
  return NAN;
}

std::string text(const SweepTable& t, std::size_t row, const std::string& col) {
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    if (t.columns[j] == col) return std::get<std::string>(t.rows.at(row)[j]);
  }
  FAIL("missing column " << col);
  return {};
}

}  // namespace

TEST_CASE("milc command") {
  const Run bsc = run({"milc", "--family", "bsc", "--varpi", "1", "--beta", "0.1"});
  REQUIRE(bsc.code == kExitOk);
  CHECK(std::abs(cell(csv_of(bsc), 0, "capacity") - 0.4081) <= 5e-4);
  const Run bec = run({"milc", "--family", "bec", "--varpi", "1", "--beta", "1.0"});
  CHECK(cell(csv_of(bec), 0, "capacity") == 0.0);
  const Run ks = run({"milc", "--family", "ksym", "--varpi", "2", "--k", "10", "--beta", "0"});
  CHECK(std::abs(cell(csv_of(ks), 0, "capacity") - 5.0496) <= 5e-4);
  const Run grid = run({"milc", "--family", "bsc", "--beta-grid", "0:1:0.25", "--numeric"});
  const SweepTable g = csv_of(grid);
  REQUIRE(g.rows.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(cell(g, i, "capacity") - cell(g, i, "capacity_numeric")) <= 1e-5);
  }
  const Run loss = run({"milc", "--family", "bsc", "--beta", "0.1", "--p-grid", "0:0.5:0.1"});
  const SweepTable l = csv_of(loss);
  CHECK(l.rows.size() == 6);
  CHECK(cell(l, 0, "loss") == 0.0);
  CHECK(cell(l, 5, "loss") == cell(l, 5, "capacity"));
}

TEST_CASE("midf command") {
  const Run r = run({"midf", "--p", "0.4", "--varpi", "0.2", "--d-grid", "0:0.5:0.1", "--shannon"});
  REQUIRE(r.code == kExitOk);
  const SweepTable t = csv_of(r);
  REQUIRE(t.rows.size() == 6);
  CHECK(std::abs(cell(t, 0, "rate") - 0.1010) <= 5e-4);
  CHECK(std::abs(cell(t, 4, "rate")) <= 1e-12);
  CHECK(text(t, 4, "status") == "ok");
  CHECK(text(t, 5, "status") == "infeasible");
  CHECK(std::holds_alternative<std::monostate>(t.rows[5][4]));
  const Run e = run({"midf", "--p", "0.3", "--varpi", "0.2", "--d", "0.1"});
  CHECK(std::abs(cell(csv_of(e), 0, "rate") - 0.05046) <= 1e-5);
  CHECK(std::abs(cell(csv_of(e), 0, "alpha") - 0.25) <= 1e-6);
}

TEST_CASE("maxrate command") {
  const Run bsc = run({"maxrate", "--family", "bsc", "--beta", "0.4", "--varpi", "0.1", "--eps", "1"});
  REQUIRE(bsc.code == kExitOk);
  const SweepTable b = csv_of(bsc);
  CHECK(std::abs(cell(b, 0, "rate") - 0.0290) <= 5e-4);
  CHECK(text(b, 0, "regime") == "capacity_plateau");
  const Run bec = run({"maxrate", "--family", "bec", "--beta", "0.4", "--varpi", "0.1", "--eps", "1"});
  CHECK(std::abs(cell(csv_of(bec), 0, "rate") - 0.6) <= 1e-10);
  for (const std::string fam : {"bsc", "bec"}) {
    const Run tiny = run({"maxrate", "--family", fam, "--beta", "0.1", "--eps", "1e-9"});
    const SweepTable t = csv_of(tiny);
    CHECK(cell(t, 0, "rate") < 1e-3);
    CHECK(text(t, 0, "regime") == "loss_limited");
  }
  const Run zero = run({"maxrate", "--family", "bsc", "--eps-grid", "0:0.01:0.005"});
  const SweepTable z = csv_of(zero);
  CHECK(text(z, 0, "status") == "infeasible");
  CHECK(text(z, 1, "status") == "ok");
}

TEST_CASE("mim command") {
  const Run r = run({"mim", "--p", "0.1", "--varpi", "0.2"});
  REQUIRE(r.code == kExitOk);
  CHECK(std::abs(cell(csv_of(r), 0, "mim") - 1.03790) <= 1e-5);
  const Run c = run({"mim", "--p", "0.5", "--varpi", "1", "--family", "bsc", "--beta", "0.1"});
  CHECK(std::abs(cell(csv_of(c), 0, "loss") - 0.4081) <= 5e-4);
}

TEST_CASE("json and csv carry the same payload") {
  const std::vector<std::string> base = {"maxrate", "--family", "bsc", "--eps-grid",
                                         "0.001:0.05:0.007"};
  std::vector<std::string> json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  const Run csv = run(base);
  const Run json = run(json_args);
  std::istringstream is(json.out);
  CHECK(read_json(is) == csv_of(csv));
}

TEST_CASE("precision flag") {
  const Run r = run({"milc", "--family", "bsc", "--beta", "0.1", "--precision", "3"});
  CHECK(r.out.find("0.408,") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"milc", "--family", "nope"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"milc", "--beta", "0.1", "--beta-grid", "0:1:0.5"}).code == kExitUsage);
  CHECK(run({"milc", "--varpi", "3"}).code == kExitUsage);
  CHECK(run({"milc", "--beta-grid", "1:0:0.1"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"verify", "--suite", "nope"}).code == kExitUsage);
  const Run help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("maxrate") != std::string::npos);
  const Run golden = run({"verify", "--suite", "golden"});
  CHECK(golden.code == kExitOk);
  CHECK(golden.out.find("FAIL") == std::string::npos);
  const Run golden_json = run({"verify", "--suite", "golden", "--format", "json"});
  CHECK(golden_json.out.find("\"passed\": true") != std::string::npos);
}
