// Copyright 2026 The aebsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end tests of the aebsim binary: exit codes, output files, config
// precedence and reproducibility.

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Workspace {
 public:
  Workspace() {
    static int counter = 0;
    root_ = fs::temp_directory_path() /
            ("aebsim_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  ~Workspace() { fs::remove_all(root_); }

  fs::path path(const std::string& name) const { return root_ / name; }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  Result run(const std::string& args) const {
    const auto out = path("stdout.txt");
    const auto err = path("stderr.txt");
    const std::string cmd = std::string("\"") + AEB_CLI_PATH + "\" " + args + " >\"" +
                            out.string() + "\" 2>\"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out), slurp(err)};
  }

 private:
  fs::path root_;
};

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

std::string out_dir(const Workspace& ws, const std::string& name) {
  return " --out-dir \"" + ws.path(name).string() + "\"";
}

}  // namespace

TEST_CASE("brake with defaults") {
  Workspace ws;
  const auto r = ws.run("brake --defaults" + out_dir(ws, "run"));
  REQUIRE(r.code == 0);
  const auto dir = ws.path("run");
  CHECK(fs::exists(dir / "trajectory.csv"));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "config.yaml"));

  const auto summary = read_json(dir / "summary.json");
  CHECK(summary["final_gap"].get<double>() == doctest::Approx(5.0).epsilon(0.02));
  CHECK(summary["converged"].get<bool>());
  CHECK(summary["label"] == "brake");
  CHECK(summary.contains("peak_decel"));
  CHECK(summary.contains("stop_time"));
  CHECK(summary.contains("seed"));

  const auto manifest = read_json(dir / "manifest.json");
  CHECK(manifest["subcommand"] == "brake");
  CHECK(manifest["seed"] == 1);
  CHECK(manifest["tool_version"] == AEB_VERSION);
  CHECK(manifest["wall_clock_seconds"].get<double>() >= 0.0);

  const std::string csv = slurp(dir / "trajectory.csv");
  CHECK(csv.rfind("t,x,v,ped_true,ped_meas,r,e1,r_v,e2,u,brake_cmd\n", 0) == 0);
}

TEST_CASE("global flags are accepted after the subcommand") {
  Workspace ws;
  CHECK(ws.run("--defaults --seed 3 brake" + out_dir(ws, "a")).code == 0);
  CHECK(ws.run("brake --seed 3 --defaults" + out_dir(ws, "b")).code == 0);
  CHECK(slurp(ws.path("a/trajectory.csv")) == slurp(ws.path("b/trajectory.csv")));
}

TEST_CASE("vehicle already at rest") {
  Workspace ws;
  const auto r = ws.run("brake --initial-speed 0" + out_dir(ws, "run"));
  REQUIRE(r.code == 0);
  const auto summary = read_json(ws.path("run/summary.json"));
  CHECK(summary["final_gap"].get<double>() == doctest::Approx(25.0));
  CHECK(summary["peak_decel"].get<double>() == 0.0);
}

TEST_CASE("seeded noisy runs are byte-identical") {
  Workspace ws;
  REQUIRE(ws.run("brake --noise --seed 42" + out_dir(ws, "a")).code == 0);
  REQUIRE(ws.run("brake --noise --seed 42" + out_dir(ws, "b")).code == 0);
  REQUIRE(ws.run("brake --noise --seed 43" + out_dir(ws, "c")).code == 0);
  const auto a = slurp(ws.path("a/trajectory.csv"));
  CHECK(!a.empty());
  CHECK(a == slurp(ws.path("b/trajectory.csv")));
  CHECK(a != slurp(ws.path("c/trajectory.csv")));
}

TEST_CASE("config errors exit 1 with a line number") {
  Workspace ws;
  SUBCASE("unknown key") {
    ws.write("bad.yaml", "seed: 4\nbrake:\n  dt: 0.01\n  bogus: 3\n");
    const auto r = ws.run("brake --config \"" + ws.path("bad.yaml").string() + "\"" +
                          out_dir(ws, "run"));
    CHECK(r.code == 1);
    CHECK(r.err.find("line 4") != std::string::npos);
  }
  SUBCASE("wrong type") {
    ws.write("bad.yaml", "brake:\n  initial_speed: fast\n");
    const auto r = ws.run("brake --config \"" + ws.path("bad.yaml").string() + "\"" +
                          out_dir(ws, "run"));
    CHECK(r.code == 1);
    CHECK(r.err.find("line 2") != std::string::npos);
  }
  SUBCASE("malformed yaml") {
    ws.write("bad.yaml", "brake:\n  dt: [0.01\n");
    const auto r = ws.run("brake --config \"" + ws.path("bad.yaml").string() + "\"" +
                          out_dir(ws, "run"));
    CHECK(r.code == 1);
    CHECK(r.err.find("line") != std::string::npos);
  }
  SUBCASE("missing file") {
    const auto r = ws.run("brake --config \"" + ws.path("none.yaml").string() + "\"");
    CHECK(r.code == 1);
  }
}

TEST_CASE("usage errors exit 1") {
  Workspace ws;
  CHECK(ws.run("").code == 1);
  CHECK(ws.run("fly").code == 1);
  CHECK(ws.run("brake --no-such-flag").code == 1);
  CHECK(ws.run("brake --dt abc").code == 1);
  CHECK(ws.run("brake --dt 0.5" + out_dir(ws, "run")).code == 1);
  CHECK(ws.run("brake --dt 0" + out_dir(ws, "run")).code == 1);
  CHECK(ws.run("brake --gains 1,2" + out_dir(ws, "run")).code == 1);
  CHECK(ws.run("sweep-kp --kp 0.4,-0.2" + out_dir(ws, "run")).code == 1);
  ws.write("c.yaml", "seed: 2\n");
  CHECK(ws.run("brake --defaults --config \"" + ws.path("c.yaml").string() + "\"").code == 1);
  CHECK(ws.run("--help").code == 0);
}

TEST_CASE("non-converged run exits 2") {
  Workspace ws;
  const auto r = ws.run("brake --horizon 2" + out_dir(ws, "run"));
  CHECK(r.code == 2);
  CHECK(fs::exists(ws.path("run/trajectory.csv")));
  const auto summary = read_json(ws.path("run/summary.json"));
  CHECK_FALSE(summary["converged"].get<bool>());
}

TEST_CASE("precedence: flag beats file beats default") {
  Workspace ws;
  ws.write("c.yaml", "seed: 9\nbrake:\n  initial_speed: 7.0\n  label: from-file\n");
  const std::string cfg = " --config \"" + ws.path("c.yaml").string() + "\"";

  // default only
  REQUIRE(ws.run("brake --defaults" + out_dir(ws, "d")).code == 0);
  // file only
  REQUIRE(ws.run("brake" + cfg + out_dir(ws, "f")).code == 0);
  // file and flags
  REQUIRE(ws.run("brake" + cfg + " --initial-speed 6 --seed 11 --label from-flag" +
                 out_dir(ws, "ff"))
              .code == 0);

  auto first_speed = [&](const std::string& dir) {
    std::istringstream csv(slurp(ws.path(dir + "/trajectory.csv")));
    std::string header, row;
    std::getline(csv, header);
    std::getline(csv, row);
    row = row.substr(row.find(',') + 1);
    row = row.substr(row.find(',') + 1);
    return std::stod(row.substr(0, row.find(',')));
  };
  CHECK(first_speed("d") == doctest::Approx(8.13));
  CHECK(first_speed("f") == doctest::Approx(7.0));
  CHECK(first_speed("ff") == doctest::Approx(6.0));

  CHECK(read_json(ws.path("d/summary.json"))["seed"] == 1);
  CHECK(read_json(ws.path("f/summary.json"))["seed"] == 9);
  CHECK(read_json(ws.path("ff/summary.json"))["seed"] == 11);
  CHECK(read_json(ws.path("f/summary.json"))["label"] == "from-file");
  CHECK(read_json(ws.path("ff/summary.json"))["label"] == "from-flag");

  // The resolved snapshot replays to the same run.
  REQUIRE(ws.run("brake --config \"" + ws.path("ff/config.yaml").string() + "\"" +
                 out_dir(ws, "replay"))
              .code == 0);
  CHECK(slurp(ws.path("replay/trajectory.csv")) == slurp(ws.path("ff/trajectory.csv")));
}

TEST_CASE("sweep-kp writes one trajectory per gain and a table") {
  Workspace ws;
  const auto r = ws.run("sweep-kp" + out_dir(ws, "run"));
  REQUIRE(r.code == 0);
  for (const char* kp : {"0.4", "0.6", "0.8"}) {
    CHECK(fs::exists(ws.path(std::string("run/trajectory_kp") + kp + ".csv")));
  }
  const std::string table = slurp(ws.path("run/summary.csv"));
  CHECK(table.rfind("label,k_p,final_gap,peak_decel,stop_time,converged,seed\n", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 4);

  const auto runs = read_json(ws.path("run/summary.json"));
  REQUIRE(runs.size() == 3);
  CHECK(runs[0]["peak_decel"].get<double>() < runs[1]["peak_decel"].get<double>());
  CHECK(runs[1]["peak_decel"].get<double>() < runs[2]["peak_decel"].get<double>());
}

TEST_CASE("brake Monte Carlo") {
  Workspace ws;
  const auto r = ws.run("brake --noise --runs 8 --seed 5" + out_dir(ws, "run"));
  REQUIRE(r.code == 0);
  const auto summary = read_json(ws.path("run/summary.json"));
  CHECK(summary["monte_carlo"]["runs"] == 8);
  CHECK(summary["runs"].size() == 8);
  CHECK(summary["runs"][0]["seed"] == 5);
  CHECK(summary["runs"][7]["seed"] == 12);
  CHECK(fs::exists(ws.path("run/trajectory_seed12.csv")));
}

TEST_CASE("lateral") {
  Workspace ws;
  const auto r = ws.run("lateral --step 1" + out_dir(ws, "run"));
  REQUIRE(r.code == 0);
  const std::string csv = slurp(ws.path("run/lateral.csv"));
  CHECK(csv.rfind("t,y_ref,y,psi,psi_dot,v_y,r_psidot,delta_f\n", 0) == 0);
  const auto summary = read_json(ws.path("run/summary.json"));
  CHECK(summary["final_y"].get<double>() == doctest::Approx(1.0).epsilon(0.02));
  CHECK_FALSE(summary["diverged"].get<bool>());
}

TEST_CASE("characterize") {
  Workspace ws;
  const auto r = ws.run("characterize --ranges 5,15,25 --dwell 2" + out_dir(ws, "run"));
  REQUIRE(r.code == 0);
  CHECK(slurp(ws.path("run/detection.csv")).rfind("t,range,measured\n", 0) == 0);
  const std::string summary = slurp(ws.path("run/detection_summary.csv"));
  CHECK(summary.rfind("range,samples,detections,mean,std\n", 0) == 0);
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 4);
}

TEST_CASE("analyze") {
  Workspace ws;
  SUBCASE("stdout report") {
    const auto r = ws.run("analyze");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("(1725, 1000, 18000)") != std::string::npos);
    CHECK(r.out.find("stable") != std::string::npos);
    CHECK(r.out.find("-0.2899 +/- 3.217i") != std::string::npos);
    CHECK(r.out.find("0.1725") != std::string::npos);
  }
  SUBCASE("json report") {
    REQUIRE(ws.run("analyze" + out_dir(ws, "run")).code == 0);
    const auto j = read_json(ws.path("run/stability.json"));
    CHECK(j["stable"].get<bool>());
    CHECK(j["ramp_error_bound"].get<double>() == doctest::Approx(0.1725));
  }
  SUBCASE("unstable gains") {
    const auto r = ws.run("analyze --gains -2,0.1,10000");
    CHECK(r.code == 0);
    CHECK(r.out.find("not stable") != std::string::npos);
  }
}
