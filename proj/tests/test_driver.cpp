#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "delam/checkpoint.hpp"
#include "delam/driver.hpp"
#include "helpers.hpp"

using namespace delam;
namespace fs = std::filesystem;
using testutil::referenceMaterial;

namespace {

RunConfig smallFatigueRun(long cycles) {
  RunConfig rc;
  rc.material = referenceMaterial();
  rc.scenario.specimen = "dcb2d";
  rc.scenario.length = 80.0;
  rc.scenario.insert_length = 25.0;
  rc.scenario.le = 0.5;
  rc.scenario.thickness_elems = 2;
  rc.scenario.da_target = 0.5;

  LoadStep ramp;
  ramp.kind = LoadStep::Kind::Static;
  ramp.target = 1.4;  // past onset, crack growing
  rc.steps.push_back(ramp);

  LoadStep fat;
  fat.kind = LoadStep::Kind::Fatigue;
  fat.target = 1.4;
  fat.R = 0.1;
  fat.cycles = cycles;
  rc.steps.push_back(fat);
  return rc;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("delam_test_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("driver") {

TEST_CASE("repeated runs are bit-identical") {
  TempDir a("det_a"), b("det_b");
  const RunConfig rc = smallFatigueRun(4000);
  {
    Driver d(rc, {a.path.string(), false, -1, 0});
    d.run();
  }
  {
    Driver d(rc, {b.path.string(), false, -1, 0});
    d.run();
  }
  for (const char* f : {"force_displacement.csv", "fatigue_history.csv"}) {
    CAPTURE(f);
    CHECK(slurp(a.path / f) == slurp(b.path / f));
  }
}

TEST_CASE("resume reproduces the uninterrupted run") {
  TempDir full("res_full"), split("res_split");
  RunConfig rc = smallFatigueRun(4000);
  // A programmed stop at the interruption point keeps the cycle-jump
  // boundaries of both runs aligned.
  rc.steps[1].checkpoints = {1200};

  Driver d1(rc, {full.path.string(), false, -1, 0});
  d1.run();

  // Interrupted run: stop after a cycle budget, then resume to the end.
  {
    Driver d(rc, {split.path.string(), false, 1200, 0});
    d.run();
  }
  Driver d2(rc, {split.path.string(), true, -1, 0});
  d2.run();

  CHECK(d2.totalCycles() == d1.totalCycles());
  const AnalysisState& s1 = d1.state();
  const AnalysisState& s2 = d2.state();
  REQUIRE(s1.u.size() == s2.u.size());
  CHECK((s1.u - s2.u).cwiseAbs().maxCoeff() < 1e-10);
  REQUIRE(s1.points.size() == s2.points.size());
  for (size_t i = 0; i < s1.points.size(); ++i) {
    CHECK(std::abs(s1.points[i].DK - s2.points[i].DK) < 1e-10);
    CHECK(std::abs(s1.points[i].De - s2.points[i].De) < 1e-10);
  }
}

TEST_CASE("checkpoint round-trip preserves the full state") {
  TempDir dir("ckpt");
  const RunConfig rc = smallFatigueRun(1500);
  Driver d(rc, {dir.path.string(), false, -1, 0});
  d.run();

  const fs::path latest = dir.path / "checkpoint_latest.ckpt";
  REQUIRE(fs::exists(latest));
  const Checkpoint ck = load_checkpoint(latest.string());
  CHECK(ck.scenario.specimen == "dcb2d");
  CHECK(ck.material.iface.G_Ic == rc.material.iface.G_Ic);
  CHECK(ck.total_cycles == d.totalCycles());
  REQUIRE(ck.state.u.size() == d.state().u.size());
  CHECK((ck.state.u - d.state().u).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(ck.state.points.size() == d.state().points.size());
  for (size_t i = 0; i < ck.state.points.size(); ++i)
    CHECK(ck.state.points[i].De == d.state().points[i].De);

  // Truncated files are rejected.
  const std::string raw = slurp(latest);
  const fs::path bad = dir.path / "truncated.ckpt";
  std::ofstream(bad, std::ios::binary).write(raw.data(), raw.size() / 2);
  CHECK_THROWS_AS(load_checkpoint(bad.string()), std::runtime_error);
  CHECK_THROWS_AS(load_checkpoint((dir.path / "nope.ckpt").string()),
                  std::runtime_error);
}

TEST_CASE("an arrested front spends the whole budget in one jump") {
  TempDir dir("arrest");
  RunConfig rc = smallFatigueRun(50000);
  // Envelope low enough that G_max stays below the threshold everywhere.
  rc.steps[0].target = 0.15;
  rc.steps[1].target = 0.15;
  Driver d(rc, {dir.path.string(), false, -1, 0});
  d.run();
  CHECK(d.totalCycles() == 50000);

  // One fatigue record, no measured growth.
  std::ifstream in(dir.path / "fatigue_history.csv");
  REQUIRE(in.good());
  std::string line;
  int records = 0;
  while (std::getline(in, line))
    if (!line.empty() && line.find("step") == std::string::npos) ++records;
  CHECK(records == 1);
}

TEST_CASE("fatigue growth produces a monotone cycle history") {
  TempDir dir("hist");
  const RunConfig rc = smallFatigueRun(3000);
  Driver d(rc, {dir.path.string(), false, -1, 0});
  d.run();
  CHECK(d.totalCycles() == 3000);
  CHECK(fs::exists(dir.path / "force_displacement.csv"));

  std::ifstream in(dir.path / "fatigue_history.csv");
  std::string header;
  REQUIRE(std::getline(in, header));
  const auto cycle_col = [&] {
    int col = 0;
    std::stringstream ss(header);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name == "cycle") return col;
      ++col;
    }
    FAIL("fatigue_history.csv has no 'cycle' column");
    return -1;
  }();
  long prev = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    for (int c = 0; c <= cycle_col; ++c) REQUIRE(std::getline(ss, cell, ','));
    const long cyc = std::stol(cell);
    CHECK(cyc > prev);
    prev = cyc;
  }
  CHECK(prev == 3000);
}

}  // TEST_SUITE
