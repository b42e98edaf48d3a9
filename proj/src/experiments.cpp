#include "majdyn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <set>

#include "majdyn/cycle_theory.hpp"
#include "majdyn/dynamics.hpp"
#include "majdyn/error.hpp"
#include "majdyn/exact.hpp"
#include "majdyn/rng.hpp"

namespace majdyn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ExperimentKind {
  const char* id;
  std::vector<std::string> families;
  std::vector<Model> models;
  /// First entry is the default; empty means the key does not apply.
  std::vector<std::string> colorings;
  std::size_t trials;
};

const std::vector<ExperimentKind>& kinds() {
  static const std::vector<ExperimentKind> table = {
      {"fig2-left", {"cycle", "two-cycle", "cycle-random"}, {Model::mm}, {"extreme"}, 1000},
      {"fig2-middle", {"cycle", "cycle-random"}, {Model::mm, Model::rmm}, {}, 1000},
      {"fig2-right", {"cycle", "two-cycle", "cycle-random"}, {Model::mm, Model::rmm}, {"random"}, 1000},
      {"quadratic-growth", {"cycle"}, {Model::rmm}, {"witness"}, 1000},
      {"martingale", {"cycle"}, {Model::rmm}, {"density"}, 2000},
      {"absorption", {"cycle"}, {Model::rmm}, {"density"}, 10000},
  };
  return table;
}

const ExperimentKind& find_kind(const std::string& id) {
  for (const auto& k : kinds()) {
    if (id == k.id) return k;
  }
  throw Error(Errc::parse, "unknown experiment '" + id + "'");
}

std::vector<Model> default_models(const std::string& id) {
  if (id == "fig2-middle") return {Model::mm};
  return find_kind(id).models;
}

std::vector<std::string> default_families(const std::string& id) { return find_kind(id).families; }

std::vector<std::size_t> default_sizes(const std::string& id) {
  if (id == "fig2-left") return {100, 178, 316, 562, 1000, 1778, 3162, 5623, 10000};
  if (id == "fig2-middle") {
    std::vector<std::size_t> out;
    for (std::size_t n = 6; n <= 22; ++n) out.push_back(n);
    return out;
  }
  if (id == "fig2-right") return {2000};
  if (id == "quadratic-growth") return {51, 101, 201, 401};
  if (id == "martingale") return {501};
  return {1999, 2000};
}

std::vector<double> default_p_values(const std::string& id) {
  if (id == "fig2-right") {
    std::vector<double> out;
    for (int i = 0; i <= 20; ++i) out.push_back(i / 20.0);
    return out;
  }
  if (id == "absorption") return {0.3, 0.5};
  return {};
}

Model parse_model(const std::string& s) {
  if (s == "mm") return Model::mm;
  if (s == "rmm") return Model::rmm;
  throw Error(Errc::parse, "unknown model '" + s + "'");
}

template <class T>
T get_field(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(Errc::parse, std::string("config field '") + key + "' has the wrong type");
  }
}

Graph family_graph(const std::string& family, std::size_t n, std::uint64_t seed) {
  if (family == "cycle") return make_cycle(n);
  if (family == "two-cycle") return make_two_cycle(n);
  return make_cycle_plus_random(n, seed);
}

bool random_family(const std::string& family) { return family == "cycle-random"; }

std::string num(double v) { return format_number(v, 9); }
std::string num(std::size_t v) { return std::to_string(v); }

std::uint64_t cap_for(const ExperimentConfig& config, Model model, const Graph& g) {
  return config.max_rounds ? *config.max_rounds : default_max_rounds(model, g);
}

std::size_t resolve_b0(double p, std::size_t n) {
  return static_cast<std::size_t>(std::floor(p * static_cast<double>(n) + 1e-9));
}

/// (n, b0) grid for the density-seeded studies.
std::vector<std::pair<std::size_t, std::size_t>> density_grid(const ExperimentConfig& config) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t n : config.sizes) {
    if (!config.b0.empty()) {
      for (std::size_t b : config.b0) {
        if (b > n) throw Error(Errc::invalid_parameter, "b0 = " + std::to_string(b) + " exceeds n = " + std::to_string(n));
        out.emplace_back(n, b);
      }
    } else {
      for (double p : config.p_values) out.emplace_back(n, resolve_b0(p, n));
    }
  }
  return out;
}

class Emitter {
 public:
  Emitter(const ExperimentConfig& config, const RunnerOptions& options, ExperimentReport& report)
      : config_(config), options_(options), report_(report) {}

  void row(std::vector<std::string> cells, std::size_t point) {
    cells.push_back(std::to_string(config_.master_seed));
    cells.push_back(std::to_string(point));
    report_.rows.push_back(std::move(cells));
  }

  void point(SummaryPoint p) {
    if (options_.progress) {
      options_.progress(report_.experiment + " " + p.label + " x=" + num(p.x) + " trials=" + std::to_string(p.trials) +
                        " mean=" + num(p.mean) + " stderr=" + num(p.std_error) + " min=" + num(p.min) +
                        " max=" + num(p.max));
    }
    report_.points.push_back(std::move(p));
  }

 private:
  const ExperimentConfig& config_;
  const RunnerOptions& options_;
  ExperimentReport& report_;
};

struct TrialRun {
  std::optional<std::uint64_t> rounds;
  Outcome outcome = Outcome::undetermined;
  std::size_t final_blue = 0;
  bool all_blue = false;
  bool all_white = false;
};

TrialRun to_trial(const RunResult& r) {
  TrialRun t;
  t.rounds = r.rounds;
  t.outcome = r.outcome;
  t.final_blue = r.final_coloring.blue_count();
  t.all_blue = t.final_blue == r.final_coloring.size();
  t.all_white = t.final_blue == 0;
  return t;
}

std::vector<double> rounds_of(const std::vector<TrialRun>& runs) {
  std::vector<double> out;
  for (const auto& r : runs) {
    if (r.rounds) out.push_back(static_cast<double>(*r.rounds));
  }
  return out;
}

std::size_t count_undetermined(const std::vector<TrialRun>& runs) {
  return static_cast<std::size_t>(std::count_if(runs.begin(), runs.end(), [](const TrialRun& r) { return !r.rounds; }));
}

// ---- experiments ---------------------------------------------------------------

void fig2_left(const ExperimentConfig& config, const RunnerOptions& options, ExperimentReport& report) {
  report.columns = {"family", "n", "trials", "mean_rounds", "stderr", "min_rounds", "max_rounds",
                    "bound", "cap_exceeded", "master_seed", "point"};
  Emitter emit(config, options, report);
  std::size_t point = 0;
  for (const auto& family : config.families) {
    for (std::size_t n : config.sizes) {
      const std::size_t trials = random_family(family) ? config.trials : 1;
      const auto runs = parallel_map<TrialRun>(trials, options.jobs, [&](std::size_t i) {
        const Graph g = family_graph(family, n, derive_seed(trial_seed(config.master_seed, point, i), 1));
        return to_trial(run(Model::mm, g, extreme_tight_coloring(n), cap_for(config, Model::mm, g)));
      });
      const auto s = summarize(rounds_of(runs), family, static_cast<double>(n));
      emit.row({family, num(n), num(trials), num(s.mean), num(s.std_error), num(s.min), num(s.max),
                family == "cycle" ? num((n + 1) / 2 - 1) : "", num(count_undetermined(runs))},
               point);
      auto p = s;
      p.trials = trials;
      emit.point(p);
      ++point;
    }
  }
}

void fig2_middle(const ExperimentConfig& config, const RunnerOptions& options, ExperimentReport& report) {
  report.columns = {"family",    "model",     "n",     "trials",      "mean_count", "stderr", "min_count",
                    "max_count", "exact_count", "phi_pow_n", "ratio",  "master_seed", "point"};
  Emitter emit(config, options, report);
  std::size_t point = 0;
  for (const auto& family : config.families) {
    for (Model model : config.models) {
      for (std::size_t n : config.sizes) {
        const std::size_t trials = random_family(family) ? config.trials : 1;
        const auto counts = parallel_map<double>(trials, options.jobs, [&](std::size_t i) {
          const Graph g = family_graph(family, n, derive_seed(trial_seed(config.master_seed, point, i), 1));
          return static_cast<double>(count_stable_colorings(g, model));
        });
        const auto s = summarize(counts, family + "/" + to_string(model), static_cast<double>(n));
        const double phi_n = std::pow(std::numbers::phi, static_cast<double>(n));
        std::string exact;
        if (family == "cycle" && model == Model::mm) exact = stable_count_exact(n).str();
        if (family == "cycle" && model == Model::rmm) exact = "2";
        emit.row({family, to_string(model), num(n), num(trials), num(s.mean), num(s.std_error), num(s.min), num(s.max),
                  exact, num(phi_n), num(s.mean / phi_n)},
                 point);
        emit.point(s);
        ++point;
      }
    }
  }
}

void fig2_right(const ExperimentConfig& config, const RunnerOptions& options, ExperimentReport& report) {
  report.columns = {"family",    "model",      "n",          "p",
                    "trials",    "mean_ratio", "stderr",     "min_ratio",
                    "max_ratio", "predicted",  "frac_blue",  "frac_white",
                    "frac_blinking", "frac_undetermined", "mean_rounds", "master_seed",
                    "point"};
  Emitter emit(config, options, report);
  std::size_t point = 0;
  for (const auto& family : config.families) {
    for (Model model : config.models) {
      for (std::size_t n : config.sizes) {
        const bool shared_graph = !random_family(family);
        const std::optional<Graph> fixed = shared_graph ? std::optional<Graph>(family_graph(family, n, 0)) : std::nullopt;
        for (double p : config.p_values) {
          const auto runs = parallel_map<TrialRun>(config.trials, options.jobs, [&](std::size_t i) {
            const std::uint64_t s = trial_seed(config.master_seed, point, i);
            const Graph g = shared_graph ? *fixed : family_graph(family, n, derive_seed(s, 1));
            const Coloring c0 = p_random_coloring(n, p, derive_seed(s, 2));
            std::optional<TieRng> rng;
            if (model == Model::rmm) rng.emplace(derive_seed(s, 3));
            return to_trial(run(model, g, c0, cap_for(config, model, g), rng));
          });
          std::vector<double> ratios;
          std::size_t blue = 0, white = 0, blinking = 0;
          for (const auto& r : runs) {
            ratios.push_back(static_cast<double>(r.final_blue) / static_cast<double>(n));
            blue += r.all_blue;
            white += r.all_white;
            blinking += r.outcome == Outcome::blinking;
          }
          const double t = static_cast<double>(config.trials);
          const auto s = summarize(ratios, family + "/" + to_string(model) + "/n=" + std::to_string(n), p);
          const auto rounds = summarize(rounds_of(runs));
          std::string predicted;
          if (family == "cycle") predicted = num(model == Model::mm ? predicted_final_density(p).p_f : p);
          emit.row({family, to_string(model), num(n), num(p), num(config.trials), num(s.mean), num(s.std_error),
                    num(s.min), num(s.max), predicted, num(blue / t), num(white / t), num(blinking / t),
                    num(count_undetermined(runs) / t), num(rounds.mean)},
                   point);
          emit.point(s);
          ++point;
        }
      }
    }
  }
}

void quadratic_growth(const ExperimentConfig& config, const RunnerOptions& options, ExperimentReport& report) {
  report.columns = {"n",          "k",           "trials",      "mean_rounds", "stderr", "min_rounds",
                    "max_rounds", "lower_bound", "exact",       "fitted_exponent", "master_seed", "point"};
  Emitter emit(config, options, report);
  std::vector<SummaryPoint> stats;
  std::vector<std::vector<std::string>> pending;
  for (std::size_t point = 0; point < config.sizes.size(); ++point) {
    const std::size_t n = config.sizes[point];
    const Coloring c0 = rmm_quadratic_witness(n);
    const Graph g = make_cycle(n);
    const auto runs = parallel_map<TrialRun>(config.trials, options.jobs, [&](std::size_t i) {
      return to_trial(run(Model::rmm, g, c0, cap_for(config, Model::rmm, g), TieRng(trial_seed(config.master_seed, point, i))));
    });
    auto s = summarize(rounds_of(runs), "cycle/rmm", static_cast<double>(n));
    const std::string exact = n <= kMarkovMaxNodes ? format_number(expected_stabilization_exact(g, c0), 12) : "";
    pending.push_back({num(n), num(rmm_quadratic_witness_k(n)), num(config.trials), num(s.mean), num(s.std_error),
                       num(s.min), num(s.max), num(rmm_quadratic_lower_bound(n)), exact});
    if (count_undetermined(runs) > 0) s.mean = kNaN;
    stats.push_back(s);
    emit.point(s);
  }
  std::vector<double> xs, ys;
  for (const auto& s : stats) {
    xs.push_back(s.x);
    ys.push_back(s.mean);
  }
  const double slope = fit_loglog_slope(xs, ys);
  report.extra["fitted_exponent"] = num(slope);
  for (std::size_t point = 0; point < pending.size(); ++point) {
    pending[point].push_back(num(slope));
    emit.row(std::move(pending[point]), point);
  }
}

void martingale(const ExperimentConfig& config, const RunnerOptions& options, ExperimentReport& report) {
  report.columns = {"n", "b0", "t", "trials", "mean_blue", "stderr", "min_blue", "max_blue", "z", "master_seed", "point"};
  Emitter emit(config, options, report);
  const auto grid = density_grid(config);
  const std::size_t len = config.horizon + 1;
  for (std::size_t point = 0; point < grid.size(); ++point) {
    const auto [n, b0] = grid[point];
    const Graph g = make_cycle(n);
    RunOptions ro;
    ro.record_blue_counts = true;
    const auto paths = parallel_map<std::vector<std::size_t>>(config.trials, options.jobs, [&](std::size_t i) {
      const std::uint64_t s = trial_seed(config.master_seed, point, i);
      auto r = run(Model::rmm, g, exact_density_coloring(n, b0, derive_seed(s, 1)), config.horizon,
                   TieRng(derive_seed(s, 2)), ro);
      auto counts = std::move(r.blue_counts);
      // Absorbed runs keep their blue count from then on.
      if (counts.size() < len) counts.resize(len, counts.back());
      counts.resize(len);
      return counts;
    });
    double worst = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      std::vector<double> values;
      values.reserve(paths.size());
      for (const auto& path : paths) values.push_back(static_cast<double>(path[t]));
      const auto s = summarize(values);
      const double diff = s.mean - static_cast<double>(b0);
      const double z = s.std_error > 0 ? diff / s.std_error : (diff == 0 ? 0.0 : kNaN);
      worst = std::max(worst, std::abs(z));
      emit.row({num(n), num(b0), num(t), num(config.trials), num(s.mean), num(s.std_error), num(s.min), num(s.max),
                num(z)},
               point);
    }
    SummaryPoint p;
    p.label = "cycle/rmm/b0=" + std::to_string(b0) + "/max|z|";
    p.x = static_cast<double>(n);
    p.mean = p.min = p.max = worst;
    p.trials = config.trials;
    emit.point(p);
  }
}

void absorption(const ExperimentConfig& config, const RunnerOptions& options, ExperimentReport& report) {
  report.columns = {"n",          "b0",          "trials",        "frac_blue",   "frac_white",
                    "frac_blinking", "frac_undetermined", "pred_blue", "pred_white", "pred_blinking",
                    "mean_rounds", "stderr_rounds", "master_seed", "point"};
  Emitter emit(config, options, report);
  const auto grid = density_grid(config);
  for (std::size_t point = 0; point < grid.size(); ++point) {
    const auto [n, b0] = grid[point];
    const Graph g = make_cycle(n);
    const auto runs = parallel_map<TrialRun>(config.trials, options.jobs, [&](std::size_t i) {
      const std::uint64_t s = trial_seed(config.master_seed, point, i);
      return to_trial(run(Model::rmm, g, exact_density_coloring(n, b0, derive_seed(s, 1)),
                          cap_for(config, Model::rmm, g), TieRng(derive_seed(s, 2))));
    });
    std::size_t blue = 0, white = 0, blinking = 0;
    for (const auto& r : runs) {
      blue += r.outcome == Outcome::blue;
      white += r.outcome == Outcome::white;
      blinking += r.outcome == Outcome::blinking;
    }
    const double t = static_cast<double>(config.trials);
    const auto pred = absorption_probabilities(n, b0);
    const auto rounds = summarize(rounds_of(runs), "cycle/rmm/b0=" + std::to_string(b0), static_cast<double>(n));
    emit.row({num(n), num(b0), num(config.trials), num(blue / t), num(white / t), num(blinking / t),
              num(count_undetermined(runs) / t), num(pred.blue), num(pred.white), num(pred.blinking), num(rounds.mean),
              num(rounds.std_error)},
             point);
    emit.point(rounds);
  }
}

}  // namespace

// ---- config --------------------------------------------------------------------

Json ExperimentConfig::to_json() const {
  Json j;
  j["experiment"] = experiment;
  j["output"] = output;
  j["master_seed"] = master_seed;
  j["trials"] = trials;
  j["families"] = families;
  j["sizes"] = sizes;
  Json models_json = Json::array();
  for (Model m : models) models_json.push_back(to_string(m));
  j["models"] = std::move(models_json);
  j["p_values"] = p_values;
  j["b0"] = b0;
  j["coloring"] = coloring;
  j["max_rounds"] = max_rounds ? Json(*max_rounds) : Json(nullptr);
  j["horizon"] = horizon;
  return j;
}

ExperimentConfig parse_experiment_config(const Json& j) {
  if (!j.is_object()) throw Error(Errc::parse, "experiment config must be a JSON object");
  static const std::set<std::string> known = {"experiment", "output", "master_seed", "trials",   "families", "sizes",
                                              "models",     "p_values", "b0",        "coloring", "max_rounds", "horizon"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw Error(Errc::parse, "unknown config key '" + key + "'");
  }
  for (const char* key : {"experiment", "output", "master_seed"}) {
    if (!j.contains(key)) throw Error(Errc::parse, std::string("config is missing '") + key + "'");
  }
  ExperimentConfig c;
  c.experiment = get_field<std::string>(j, "experiment");
  const ExperimentKind& kind = find_kind(c.experiment);
  c.output = get_field<std::string>(j, "output");
  if (c.output.empty()) throw Error(Errc::invalid_parameter, "output path is empty");
  c.master_seed = get_field<std::uint64_t>(j, "master_seed");

  c.trials = kind.trials;
  if (j.contains("trials")) {
    const auto t = get_field<std::int64_t>(j, "trials");
    if (t < 1) throw Error(Errc::invalid_parameter, "trials must be >= 1");
    c.trials = static_cast<std::size_t>(t);
  }

  c.families = j.contains("families") ? get_field<std::vector<std::string>>(j, "families") : default_families(c.experiment);
  for (const auto& f : c.families) {
    if (std::find(kind.families.begin(), kind.families.end(), f) == kind.families.end()) {
      throw Error(Errc::invalid_parameter, "family '" + f + "' is not available for " + c.experiment);
    }
  }

  c.sizes = j.contains("sizes") ? get_field<std::vector<std::size_t>>(j, "sizes") : default_sizes(c.experiment);
  if (c.sizes.empty()) throw Error(Errc::invalid_parameter, "sizes is empty");

  if (j.contains("models")) {
    for (const auto& m : get_field<std::vector<std::string>>(j, "models")) {
      const Model model = parse_model(m);
      if (std::find(kind.models.begin(), kind.models.end(), model) == kind.models.end()) {
        throw Error(Errc::invalid_parameter, "model '" + m + "' is not available for " + c.experiment);
      }
      c.models.push_back(model);
    }
  } else {
    c.models = default_models(c.experiment);
  }

  c.p_values = j.contains("p_values") ? get_field<std::vector<double>>(j, "p_values") : std::vector<double>{};
  c.b0 = j.contains("b0") ? get_field<std::vector<std::size_t>>(j, "b0") : std::vector<std::size_t>{};
  for (double p : c.p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_parameter, "p_values must lie in [0,1]");
  }
  const bool uses_b0 = c.experiment == "martingale" || c.experiment == "absorption";
  if (!c.b0.empty() && !uses_b0) throw Error(Errc::invalid_parameter, "b0 does not apply to " + c.experiment);
  if (!c.b0.empty() && !c.p_values.empty()) throw Error(Errc::invalid_parameter, "give b0 or p_values, not both");
  if (!c.p_values.empty() && !uses_b0 && c.experiment != "fig2-right") {
    throw Error(Errc::invalid_parameter, "p_values does not apply to " + c.experiment);
  }
  if (c.p_values.empty() && c.b0.empty()) {
    if (c.experiment == "martingale") {
      c.b0 = {167};
    } else {
      c.p_values = default_p_values(c.experiment);
    }
  }

  c.coloring = kind.colorings.empty() ? "" : kind.colorings.front();
  if (j.contains("coloring")) {
    const auto given = get_field<std::string>(j, "coloring");
    if (!given.empty() && std::find(kind.colorings.begin(), kind.colorings.end(), given) == kind.colorings.end()) {
      throw Error(Errc::invalid_parameter, "coloring '" + given + "' is not available for " + c.experiment);
    }
  }

  if (j.contains("max_rounds") && !j.at("max_rounds").is_null()) {
    c.max_rounds = get_field<std::uint64_t>(j, "max_rounds");
  }
  if (j.contains("horizon")) {
    if (c.experiment != "martingale") throw Error(Errc::invalid_parameter, "horizon applies to martingale only");
    c.horizon = get_field<std::size_t>(j, "horizon");
  }
  for (const auto b : c.b0) {
    for (const auto n : c.sizes) {
      if (b > n) {
        throw Error(Errc::invalid_parameter, "b0 = " + std::to_string(b) + " exceeds n = " + std::to_string(n));
      }
    }
  }
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  const std::string text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, "config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_experiment_config(j);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t point, std::size_t trial) {
  return derive_seed(master_seed, point, trial);
}

// ---- statistics ----------------------------------------------------------------

SummaryPoint summarize(const std::vector<double>& values, std::string label, double x) {
  SummaryPoint s;
  s.label = std::move(label);
  s.x = x;
  s.trials = values.size();
  if (values.empty()) {
    s.mean = s.std_error = s.min = s.max = kNaN;
    return s;
  }
  double sum = 0.0;
  s.min = s.max = values.front();
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  const double count = static_cast<double>(values.size());
  s.mean = sum / count;
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(sq / (count - 1)) / std::sqrt(count);
  }
  // Rounding can leave the mean a hair outside [min, max] on constant data.
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0 && y[i] > 0 && std::isfinite(y[i])) pts.emplace_back(std::log(x[i]), std::log(y[i]));
  }
  if (pts.size() < 2) return kNaN;
  double mx = 0, my = 0;
  for (const auto& [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (const auto& [a, b] : pts) {
    sxy += (a - mx) * (b - my);
    sxx += (a - mx) * (a - mx);
  }
  return sxx > 0 ? sxy / sxx : kNaN;
}

// ---- reports -------------------------------------------------------------------

std::string ExperimentReport::csv() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out;
}

Json ExperimentReport::sidecar(const ExperimentConfig& config) const {
  Json j;
  j["experiment"] = experiment;
  j["version"] = kVersion;
  j["config"] = config.to_json();
  j["columns"] = columns;
  j["rows"] = rows.size();
  Json points_json = Json::array();
  for (const auto& p : points) {
    points_json.push_back({{"label", p.label},
                           {"x", format_number(p.x)},
                           {"mean", format_number(p.mean)},
                           {"stderr", format_number(p.std_error)},
                           {"trials", p.trials},
                           {"min", format_number(p.min)},
                           {"max", format_number(p.max)}});
  }
  j["summary"] = std::move(points_json);
  for (const auto& [key, value] : extra.items()) j[key] = value;
  return j;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const RunnerOptions& options) {
  ExperimentReport report;
  report.experiment = config.experiment;
  if (config.experiment == "fig2-left") {
    fig2_left(config, options, report);
  } else if (config.experiment == "fig2-middle") {
    fig2_middle(config, options, report);
  } else if (config.experiment == "fig2-right") {
    fig2_right(config, options, report);
  } else if (config.experiment == "quadratic-growth") {
    quadratic_growth(config, options, report);
  } else if (config.experiment == "martingale") {
    martingale(config, options, report);
  } else if (config.experiment == "absorption") {
    absorption(config, options, report);
  } else {
    throw Error(Errc::parse, "unknown experiment '" + config.experiment + "'");
  }
  return report;
}

std::pair<std::string, std::string> write_experiment(const ExperimentConfig& config, const ExperimentReport& report,
                                                     const std::optional<std::string>& output_override) {
  const std::string csv_path = output_override ? *output_override : config.output;
  const std::string json_path = std::filesystem::path(csv_path).replace_extension(".json").string();
  if (json_path == csv_path) throw Error(Errc::invalid_parameter, "output path must not end in .json");
  write_file(csv_path, report.csv());
  write_file(json_path, report.sidecar(config).dump(2) + "\n");
  return {csv_path, json_path};
}

}  // namespace majdyn
