#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "majdyn/cycle_theory.hpp"
#include "majdyn/error.hpp"
#include "majdyn/experiments.hpp"

using namespace majdyn;

namespace {

ExperimentConfig config_from(const std::string& text) { return parse_experiment_config(Json::parse(text)); }

Errc config_error(const std::string& text) {
  try {
    config_from(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("config accepted: " << text);
  return Errc::io;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Small grids for every experiment; each runs in well under a second.
const char* const kSmallConfigs[] = {
    R"({"experiment":"fig2-left","output":"a.csv","master_seed":1,"trials":4,"sizes":[20,40]})",
    R"({"experiment":"fig2-middle","output":"a.csv","master_seed":2,"trials":3,"sizes":[8,10],"models":["mm","rmm"]})",
    R"({"experiment":"fig2-right","output":"a.csv","master_seed":3,"trials":5,"sizes":[64],"p_values":[0.2,0.5],"models":["mm","rmm"],"families":["cycle","two-cycle"]})",
    R"({"experiment":"quadratic-growth","output":"a.csv","master_seed":4,"trials":6,"sizes":[13,21]})",
    R"({"experiment":"martingale","output":"a.csv","master_seed":5,"trials":8,"sizes":[31],"b0":[10],"horizon":5})",
    R"({"experiment":"absorption","output":"a.csv","master_seed":6,"trials":8,"sizes":[31,32],"p_values":[0.5]})",
};

}  // namespace

TEST_CASE("config parsing and defaults") {
  const auto c = config_from(R"({"experiment":"fig2-right","output":"r.csv","master_seed":9})");
  CHECK(c.trials == 1000);
  CHECK(c.sizes == std::vector<std::size_t>{2000});
  CHECK(c.p_values.size() == 21);
  CHECK(c.families.size() == 3);
  CHECK(c.coloring == "random");
  CHECK(c.to_json()["master_seed"] == 9);

  const auto m = config_from(R"({"experiment":"martingale","output":"m.csv","master_seed":1})");
  CHECK(m.b0 == std::vector<std::size_t>{167});
  CHECK(m.trials == 2000);
  CHECK(config_from(R"({"experiment":"absorption","output":"m.csv","master_seed":1})").trials == 10000);
  CHECK(config_from(R"({"experiment":"fig2-middle","output":"m.csv","master_seed":1})").models ==
        std::vector<Model>{Model::mm});

  CHECK(config_error(R"({"experiment":"fig2-left","output":"a.csv","master_seed":1,"bogus":1})") == Errc::parse);
  CHECK(config_error(R"({"experiment":"fig2-left","output":"a.csv"})") == Errc::parse);
  CHECK(config_error(R"({"experiment":"nope","output":"a.csv","master_seed":1})") == Errc::parse);
  CHECK(config_error(R"({"experiment":"fig2-left","output":"a.csv","master_seed":"x"})") == Errc::parse);
  CHECK(config_error(R"({"experiment":"fig2-left","output":"a.csv","master_seed":1,"trials":0})") ==
        Errc::invalid_parameter);
  CHECK(config_error(R"({"experiment":"quadratic-growth","output":"a.csv","master_seed":1,"families":["two-cycle"]})") ==
        Errc::invalid_parameter);
  CHECK(config_error(R"({"experiment":"fig2-left","output":"a.csv","master_seed":1,"models":["rmm"]})") ==
        Errc::invalid_parameter);
  CHECK(config_error(R"({"experiment":"absorption","output":"a.csv","master_seed":1,"b0":[3],"p_values":[0.5]})") ==
        Errc::invalid_parameter);
  CHECK(config_error(R"({"experiment":"fig2-right","output":"a.csv","master_seed":1,"p_values":[1.5]})") ==
        Errc::invalid_parameter);
  CHECK(config_error(R"({"experiment":"fig2-left","output":"a.csv","master_seed":1,"coloring":"random"})") ==
        Errc::invalid_parameter);
  CHECK(config_error(R"({"experiment":"fig2-left","output":"a.csv","master_seed":1,"horizon":3})") ==
        Errc::invalid_parameter);
  CHECK(config_error(R"({"experiment":"martingale","output":"a.csv","master_seed":1,"sizes":[10],"b0":[11]})") ==
        Errc::invalid_parameter);
}

TEST_CASE("trial seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::size_t point = 0; point < 20; ++point) {
    for (std::size_t trial = 0; trial < 200; ++trial) seen.insert(trial_seed(7, point, trial));
  }
  CHECK(seen.size() == 4000);
  CHECK(trial_seed(7, 1, 2) == trial_seed(7, 1, 2));
  CHECK(trial_seed(7, 1, 2) != trial_seed(8, 1, 2));
}

TEST_CASE("summaries and slope fits") {
  const auto s = summarize({1.0, 2.0, 3.0, 4.0}, "x", 2.0);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
  CHECK(s.trials == 4);
  CHECK(summarize({5.0}).std_error == 0.0);
  CHECK(std::isnan(summarize({}).mean));

  CHECK(fit_loglog_slope({1, 2, 4, 8}, {3, 12, 48, 192}) == doctest::Approx(2.0));
  CHECK(fit_loglog_slope({10, 100, 1000}, {5, 50, 500}) == doctest::Approx(1.0));
}

TEST_CASE("parallel map keeps index order and propagates errors") {
  const std::function<std::size_t(std::size_t)> square = [](std::size_t i) { return i * i; };
  for (unsigned jobs : {1U, 3U, 8U}) {
    const auto out = parallel_map<std::size_t>(100, jobs, square);
    REQUIRE(out.size() == 100);
    for (std::size_t i = 0; i < 100; ++i) CHECK(out[i] == i * i);
  }
  CHECK(parallel_map<std::size_t>(0, 4, square).empty());
  const std::function<int(std::size_t)> boom = [](std::size_t i) -> int {
    if (i == 17) throw Error(Errc::invalid_parameter, "boom");
    return 0;
  };
  CHECK_THROWS_AS(parallel_map<int>(50, 4, boom), Error);
}

TEST_CASE("every experiment is reproducible across worker counts") {
  for (const char* text : kSmallConfigs) {
    const auto config = config_from(text);
    CAPTURE(config.experiment);
    std::atomic<int> lines{0};
    RunnerOptions one{1, [&](const std::string&) { ++lines; }};
    const auto a = run_experiment(config, one);
    const auto b = run_experiment(config, RunnerOptions{4, {}});
    CHECK(a.csv() == b.csv());
    CHECK(lines.load() > 0);
    const auto rows = split_lines(a.csv());
    REQUIRE(rows.size() == a.rows.size() + 1);
    CHECK(a.columns.back() == "point");
    CHECK(a.columns[a.columns.size() - 2] == "master_seed");
    for (const auto& r : a.rows) CHECK(r.size() == a.columns.size());
    const Json side = a.sidecar(config);
    CHECK(side["version"] == kVersion);
    CHECK(side["config"] == config.to_json());
  }
}

TEST_CASE("experiment values are sensible") {
  const auto left = run_experiment(config_from(kSmallConfigs[0]), RunnerOptions{1, {}});
  // Cycle rows carry the exact tight value in both the mean and the bound.
  for (const auto& r : left.rows) {
    if (r[0] != "cycle") continue;
    const auto n = std::stoul(r[1]);
    CHECK(std::stod(r[3]) == static_cast<double>((n + 1) / 2 - 1));
  }

  const auto middle = run_experiment(config_from(kSmallConfigs[1]), RunnerOptions{1, {}});
  for (const auto& r : middle.rows) {
    if (r[0] != "cycle") continue;
    const auto n = std::stoul(r[2]);
    const double expect = r[1] == "mm" ? static_cast<double>(stable_count_exact(n)) : 2.0;
    CHECK(std::stod(r[4]) == expect);
  }

  const auto growth = run_experiment(config_from(kSmallConfigs[3]), RunnerOptions{1, {}});
  CHECK(growth.extra.contains("fitted_exponent"));
}

TEST_CASE("writing reports") {
  const auto dir = std::filesystem::temp_directory_path() / "majdyn_exp_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto config = config_from(kSmallConfigs[4]);
  const auto report = run_experiment(config, RunnerOptions{1, {}});
  const auto [csv, json] = write_experiment(config, report, (dir / "m.csv").string());
  CHECK(json == (dir / "m.json").string());
  CHECK(read_file(csv) == report.csv());
  const Json side = Json::parse(read_file(json));
  CHECK(side["experiment"] == "martingale");
  CHECK_THROWS_AS(write_experiment(config, report, (dir / "m.json").string()), Error);

  write_file((dir / "cfg.json").string(), kSmallConfigs[0]);
  CHECK(load_experiment_config((dir / "cfg.json").string()).experiment == "fig2-left");
  write_file((dir / "bad.json").string(), "{");
  CHECK_THROWS_AS(load_experiment_config((dir / "bad.json").string()), Error);
  std::filesystem::remove_all(dir);
}
