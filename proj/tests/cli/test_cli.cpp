// Drives the installed command-line tool as a subprocess.

#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::path(MAJDYN_TEST_DATA_DIR) / "cli_work";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli(const std::string& args) {
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string("cd '") + work_dir().string() + "' && '" + MAJDYN_CLI_PATH + "' " + args +
                          " 2>'" + err.string() + "'";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

json cli_json(const std::string& args) {
  const Outcome r = cli(args);
  INFO(args << "\n" << r.err);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

void write(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

}  // namespace

TEST_CASE("simulate examples") {
  const json a = cli_json("simulate --model mm --graph cycle:11 --coloring extreme");
  CHECK(a["rounds"] == 5);
  CHECK(a["outcome"] == "fixed-coloring");

  const json b = cli_json("simulate --model mm --graph cycle:4 --coloring alternating:0");
  CHECK(b["rounds"] == 0);
  CHECK(b["outcome"] == "period-two-cycle");

  const json c = cli_json("simulate --model mm --graph cycle:6 --coloring bw:BBWWBW");
  CHECK(c["rounds"] == 1);

  const json d = cli_json("simulate --model rmm --graph cycle:4 --coloring alternating:0 --seed 1");
  CHECK(d["outcome"] == "blinking");

  const json r1 = cli_json("simulate --model rmm --graph cycle:31 --coloring random:0.5 --seed 7");
  const json r2 = cli_json("simulate --model rmm --graph cycle:31 --coloring random:0.5 --seed 7");
  CHECK(r1 == r2);

  const Outcome t = cli("simulate --model rmm --graph cycle:9 --coloring density:4 --seed 2 --trace t.jsonl");
  CHECK(t.code == 0);
  CHECK(fs::exists(work_dir() / "t.jsonl"));
}

TEST_CASE("analyze examples") {
  CHECK(cli_json("analyze --what stable --graph cycle:4")["count"] == 6);
  const json mw = cli_json("analyze --what min-winning --graph cycle:8");
  CHECK(mw["size"] == 5);
  CHECK(cli_json("analyze --what markov --graph cycle:4")["absorbing_sizes"] == json::array({1, 1, 2}));
  const json h = cli_json("analyze --what hitting --graph expstab:9 --coloring expstab --set nodes:7,8 --model rmm");
  CHECK(std::stod(h["expected"].get<std::string>()) == doctest::Approx(4.0));
  const Outcome o = cli("analyze --what stable --graph cycle:4 --out stable.json");
  CHECK(o.code == 0);
  CHECK(json::parse(slurp(work_dir() / "stable.json"))["count"] == 6);
}

TEST_CASE("exit codes") {
  const Outcome cap = cli("analyze --what markov --graph cycle:20");
  CHECK(cap.code == 3);
  CHECK(cap.err.find("size-cap") != std::string::npos);
  CHECK(cli("simulate --model rmm --graph cycle:9 --coloring random:0.5").code == 2);
  CHECK(cli("simulate --model mm --graph cycle:2 --coloring blue").code == 2);
  CHECK(cli("simulate --model mm --graph nowhere.txt --coloring blue").code == 2);
  CHECK(cli("simulate --model xx --graph cycle:5 --coloring blue").code == 2);
  CHECK(cli("simulate --graph cycle:5 --coloring blue").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("--help").code == 0);
  CHECK(cli("--version").out.find("0.1.0") != std::string::npos);
}

TEST_CASE("generate") {
  const json g = cli_json("generate --graph cycle:5 --coloring extreme");
  CHECK(g["nodes"] == 5);
  CHECK(g["edges"] == 5);
  CHECK(g["coloring_string"] == "wwbwb");
  CHECK(g["graph"]["edges"].size() == 5);

  const json w = cli_json("generate --graph twocycle:7 --format edgelist --out g.txt");
  CHECK(w["written"] == "g.txt");
  CHECK(slurp(work_dir() / "g.txt").rfind("7\n", 0) == 0);
  // The written file is accepted back as a graph.
  CHECK(cli_json("generate --graph g.txt")["edges"] == 14);
  CHECK(cli_json("generate --graph double:g.txt")["nodes"] == 14);
  CHECK(cli("generate --graph cycle:5 --format edgelist").code == 2);
}

TEST_CASE("experiments rerun byte-identically") {
  write(work_dir() / "exp-config.json",
        R"({"experiment":"fig2-right","output":"exp.csv","master_seed":12,"trials":6,"sizes":[40],"p_values":[0.3,0.7],"models":["mm","rmm"]})");
  const Outcome a = cli("experiment exp-config.json --jobs 1");
  REQUIRE(a.code == 0);
  const std::string first = slurp(work_dir() / "exp.csv");
  const Outcome b = cli("experiment exp-config.json --jobs 3 --out again.csv");
  REQUIRE(b.code == 0);
  CHECK(slurp(work_dir() / "again.csv") == first);
  CHECK(json::parse(b.out)["csv_path"] == "again.csv");
  CHECK(fs::exists(work_dir() / "again.json"));
  CHECK_FALSE(a.err.empty());

  write(work_dir() / "bad.json", R"({"experiment":"fig2-right","output":"x.csv"})");
  CHECK(cli("experiment bad.json").code == 2);
}
