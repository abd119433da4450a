#include "uavvlc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace uavvlc::cli {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view field, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(field), "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_uint(std::string_view field, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(field),
                      "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_number(values[i]);
  }
  return out;
}

std::string join_schemes(const std::vector<Scheme>& schemes) {
  std::string out;
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (i) out += ",";
    out += to_string(schemes[i]);
  }
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

ScenarioSpec spec_at_height(const RunConfig& config, double height) {
  ScenarioSpec spec = config.spec;
  spec.params.uav_height = height;
  return spec;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json solution_json(const DeploymentSolution& sol) {
  json j;
  j["feasible"] = sol.feasible;
  j["total_power_w"] = number_or_null(sol.total_power);
  j["uav_positions"] = json::array();
  for (const auto& p : sol.uav_positions) j["uav_positions"].push_back({p.x(), p.y()});
  j["per_uav_power_w"] = json::array();
  for (double p : sol.per_uav_power) j["per_uav_power_w"].push_back(number_or_null(p));
  j["association"] = sol.association.clusters;
  j["trace"] = json::array();
  for (const auto& t : sol.trace) {
    j["trace"].push_back({{"round", t.round}, {"step", to_string(t.step)}, {"total_power_w", t.total_power}});
  }
  j["rounds"] = sol.rounds;
  j["rejected_round_power_w"] =
      sol.rejected_round_power ? number_or_null(*sol.rejected_round_power) : json(nullptr);
  j["violations"] = json::array();
  for (const auto& v : sol.violations) {
    j["violations"].push_back({{"uav", v.uav}, {"user", v.user ? json(*v.user) : json(nullptr)}});
  }
  j["uncovered_user"] = sol.uncovered_user ? json(*sol.uncovered_user) : json(nullptr);
  return j;
}

void write_user_csv(const std::filesystem::path& path, const DeploymentSolution& sol,
                    const Scenario& sc) {
  auto f = open_output(path);
  f << "user_index,x_m,y_m,serving_uav,achieved_rate_bits,achieved_illum,rate_threshold,illum_threshold\n";
  for (const auto& r : per_user_report(sol, sc.users, sc.params, sc.reqs)) {
    const auto& p = sc.users[r.user_index];
    f << r.user_index << ',' << format_number(p.x()) << ',' << format_number(p.y()) << ','
      << r.serving_uav << ',' << format_number(r.achieved_rate) << ','
      << format_number(r.achieved_illum) << ',' << format_number(sc.reqs.rate_threshold) << ','
      << format_number(sc.reqs.illum_threshold) << '\n';
  }
}

std::string describe(const DeploymentSolution& sol) {
  std::ostringstream s;
  std::size_t active = 0;
  for (const auto& c : sol.association.clusters) active += !c.empty();
  s << (sol.feasible ? "feasible" : "INFEASIBLE") << ", total power " << format_number(sol.total_power)
    << " W, " << active << "/" << sol.uav_positions.size() << " UAVs serving";
  if (sol.uncovered_user) s << ", user " << *sol.uncovered_user << " uncovered";
  for (const auto& v : sol.violations) {
    s << ", UAV " << v.uav << " cannot reach "
      << (v.user ? "user " + std::to_string(*v.user) : std::string("its sub-area corner"));
  }
  return s.str();
}

// Library validation messages start with the struct field name; report the
// config key instead.
[[noreturn]] void rethrow_as_config_error(const std::invalid_argument& e) {
  const std::string what = e.what();
  std::string field = what.substr(0, what.find(' '));
  if (field == "detector_area") field = "detector_area_m2";
  else if (field == "tx_semi_angle") field = "tx_semi_angle_deg";
  else if (field == "fov_semi_angle") field = "fov_semi_angle_deg";
  else if (field == "uav_height") field = "height";
  throw ConfigError(field, what);
}

RunConfig binding_case(const RunConfig& base, const std::optional<std::filesystem::path>& file,
                      double rate, double illum) {
  RunConfig c = base;
  c.spec.reqs.rate_threshold = rate;
  c.spec.reqs.illum_threshold = illum;
  if (file) load_config_file(c, *file);
  return c;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::single: return "single";
    case Mode::sweep: return "sweep";
    case Mode::montecarlo: return "montecarlo";
    case Mode::binding: return "binding";
  }
  return "unknown";
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<double> SweepRange::values() const {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  for (std::size_t k = 0; k < n; ++k) out.push_back(from + static_cast<double>(k) * step);
  return out;
}

void RunConfig::validate() const {
  if (!(spec.area_size > 0)) throw ConfigError("area_size", "must be > 0");
  if (spec.grid_x == 0) throw ConfigError("grid_x", "must be >= 1");
  if (spec.grid_y == 0) throw ConfigError("grid_y", "must be >= 1");
  if (spec.num_users == 0) throw ConfigError("users", "must be >= 1");
  if (runs == 0) throw ConfigError("runs", "must be >= 1");
  if (schemes.empty()) throw ConfigError("schemes", "must name at least one scheme");
  if (heights.empty()) throw ConfigError("height", "at least one height is required");
  if (mode == Mode::single && heights.size() != 1)
    throw ConfigError("height", "single mode takes exactly one height");
  if (optimizer.max_iters == 0) throw ConfigError("max_iters", "must be >= 1");
  if (!(optimizer.rel_tol >= 0)) throw ConfigError("rel_tol", "must be >= 0");
  if (cth_sweep) {
    if (!(cth_sweep->step > 0)) throw ConfigError("cth_sweep", "step must be > 0");
    if (!(cth_sweep->to >= cth_sweep->from)) throw ConfigError("cth_sweep", "range is empty");
    if (!(cth_sweep->from >= 0)) throw ConfigError("cth_sweep", "thresholds must be >= 0");
  }
  for (double h : heights) {
    VlcParamsd p = spec.params;
    p.uav_height = h;
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      rethrow_as_config_error(e);
    }
  }
  try {
    spec.reqs.validate();
  } catch (const std::invalid_argument& e) {
    rethrow_as_config_error(e);
  }
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  const std::string k(key);
  if (key == "mode") {
    if (value == "single") c.mode = Mode::single;
    else if (value == "sweep") c.mode = Mode::sweep;
    else if (value == "montecarlo") c.mode = Mode::montecarlo;
    else if (value == "binding") c.mode = Mode::binding;
    else throw ConfigError(k, "expected single, sweep, montecarlo or binding");
  } else if (key == "seed") {
    c.seed = parse_uint(key, value);
  } else if (key == "runs") {
    c.runs = parse_uint(key, value);
  } else if (key == "users") {
    c.spec.num_users = parse_uint(key, value);
  } else if (key == "area_size") {
    c.spec.area_size = parse_double(key, value);
  } else if (key == "grid_x") {
    c.spec.grid_x = parse_uint(key, value);
  } else if (key == "grid_y") {
    c.spec.grid_y = parse_uint(key, value);
  } else if (key == "detector_area_m2") {
    c.spec.params.detector_area = parse_double(key, value);
  } else if (key == "refractive_index") {
    c.spec.params.refractive_index = parse_double(key, value);
  } else if (key == "tx_semi_angle_deg") {
    c.spec.params.tx_semi_angle = deg_to_rad(parse_double(key, value));
  } else if (key == "fov_semi_angle_deg") {
    c.spec.params.fov_semi_angle = deg_to_rad(parse_double(key, value));
  } else if (key == "noise_std") {
    c.spec.params.noise_std = parse_double(key, value);
  } else if (key == "illum_factor") {
    c.spec.params.illum_factor = parse_double(key, value);
  } else if (key == "height") {
    c.heights.clear();
    for (auto part : split(value, ',')) c.heights.push_back(parse_double(key, part));
  } else if (key == "rate_threshold") {
    c.spec.reqs.rate_threshold = parse_double(key, value);
  } else if (key == "illum_threshold") {
    c.spec.reqs.illum_threshold = parse_double(key, value);
  } else if (key == "cth_sweep") {
    if (value.empty() || value == "none") {
      c.cth_sweep.reset();
      return;
    }
    const auto parts = split(value, ':');
    if (parts.size() != 3) throw ConfigError(k, "expected FROM:TO:STEP");
    c.cth_sweep = SweepRange{parse_double(key, parts[0]), parse_double(key, parts[1]),
                             parse_double(key, parts[2])};
  } else if (key == "schemes") {
    c.schemes.clear();
    for (auto part : split(value, ',')) {
      auto s = parse_scheme(part);
      if (!s) throw ConfigError(k, "unknown scheme '" + std::string(part) + "'");
      if (std::find(c.schemes.begin(), c.schemes.end(), *s) == c.schemes.end()) c.schemes.push_back(*s);
    }
  } else if (key == "out") {
    c.out = std::string(value);
  } else if (key == "max_iters") {
    c.optimizer.max_iters = parse_uint(key, value);
  } else if (key == "rel_tol") {
    c.optimizer.rel_tol = parse_double(key, value);
  } else if (key == "opening_cost") {
    if (value == "full") c.optimizer.opening = OpeningCost::full;
    else if (value == "above_floor") c.optimizer.opening = OpeningCost::above_floor;
    else throw ConfigError(k, "expected full or above_floor");
  } else if (key == "threads") {
    c.threads = std::max<std::size_t>(1, parse_uint(key, value));
  } else if (key == "case1") {
    c.case1 = std::string(value);
  } else if (key == "case2") {
    c.case2 = std::string(value);
  } else {
    throw ConfigError(k, "unknown setting");
  }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot read " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::string_view view(line);
    view = trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config", path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(config, view.substr(0, eq), view.substr(eq + 1));
  }
}

std::string to_key_values(const RunConfig& c) {
  std::ostringstream s;
  const auto& p = c.spec.params;
  s << "mode = " << to_string(c.mode) << '\n'
    << "seed = " << c.seed << '\n'
    << "runs = " << c.runs << '\n'
    << "users = " << c.spec.num_users << '\n'
    << "area_size = " << format_number(c.spec.area_size) << '\n'
    << "grid_x = " << c.spec.grid_x << '\n'
    << "grid_y = " << c.spec.grid_y << '\n'
    << "detector_area_m2 = " << format_number(p.detector_area) << '\n'
    << "refractive_index = " << format_number(p.refractive_index) << '\n'
    << "tx_semi_angle_deg = " << format_number(rad_to_deg(p.tx_semi_angle)) << '\n'
    << "fov_semi_angle_deg = " << format_number(rad_to_deg(p.fov_semi_angle)) << '\n'
    << "noise_std = " << format_number(p.noise_std) << '\n'
    << "illum_factor = " << format_number(p.illum_factor) << '\n'
    << "height = " << join_numbers(c.heights) << '\n'
    << "rate_threshold = " << format_number(c.spec.reqs.rate_threshold) << '\n'
    << "illum_threshold = " << format_number(c.spec.reqs.illum_threshold) << '\n';
  if (c.cth_sweep) {
    s << "cth_sweep = " << format_number(c.cth_sweep->from) << ':' << format_number(c.cth_sweep->to)
      << ':' << format_number(c.cth_sweep->step) << '\n';
  }
  s << "schemes = " << join_schemes(c.schemes) << '\n'
    << "max_iters = " << c.optimizer.max_iters << '\n'
    << "rel_tol = " << format_number(c.optimizer.rel_tol) << '\n'
    << "opening_cost = " << (c.optimizer.opening == OpeningCost::full ? "full" : "above_floor") << '\n';
  return s.str();
}

int run_single(const RunConfig& config, std::ostream& log) {
  config.validate();
  const Scenario sc = generate_scenario(config.seed, spec_at_height(config, config.heights.front()));

  json record;
  record["config"] = to_key_values(config);
  record["seed"] = config.seed;
  record["height_m"] = sc.params.uav_height;
  record["users"] = json::array();
  for (const auto& u : sc.users) record["users"].push_back({u.x(), u.y()});
  record["schemes"] = json::object();

  auto uavs = open_output(config.out / "uavs.csv");
  uavs << "scheme,uav_index,x_m,y_m,height_m,power_w,num_users\n";

  bool all_feasible = true;
  std::ostringstream summary;
  summary << "seed " << config.seed << ", " << sc.users.size() << " users, height "
          << format_number(sc.params.uav_height) << " m, " << sc.sub_areas.size() << " UAVs\n";
  for (Scheme scheme : config.schemes) {
    const auto sol = run_scheme(sc, scheme, config.optimizer);
    const std::string name(to_string(scheme));
    record["schemes"][name] = solution_json(sol);
    for (std::size_t i = 0; i < sol.uav_positions.size(); ++i) {
      uavs << name << ',' << i << ',' << format_number(sol.uav_positions[i].x()) << ','
           << format_number(sol.uav_positions[i].y()) << ',' << format_number(sc.params.uav_height)
           << ',' << format_number(sol.per_uav_power[i]) << ','
           << sol.association.clusters[i].size() << '\n';
    }
    if (sol.feasible) write_user_csv(config.out / ("users_" + name + ".csv"), sol, sc);
    all_feasible = all_feasible && sol.feasible;
    summary << "  " << name << ": " << describe(sol) << '\n';
  }

  auto f = open_output(config.out / "result.json");
  f << record.dump(2) << '\n';
  auto s = open_output(config.out / "summary.txt");
  s << summary.str();
  log << summary.str();
  return all_feasible ? kExitFeasible : kExitInfeasible;
}

int run_sweep(const RunConfig& config, std::ostream& log) {
  config.validate();
  const std::vector<double> axis =
      config.cth_sweep ? config.cth_sweep->values()
                       : std::vector<double>{config.spec.reqs.rate_threshold};

  auto f = open_output(config.out / "sweep.csv");
  f << "axis_name,axis_value,scheme,height_m,mean_total_power_w,std_total_power_w,runs\n";
  bool all_feasible = true;
  for (double height : config.heights) {
    for (double cth : axis) {
      MonteCarloConfig mc;
      mc.spec = spec_at_height(config, height);
      mc.spec.reqs.rate_threshold = cth;
      mc.base_seed = config.seed;
      mc.num_runs = config.runs;
      mc.schemes = config.schemes;
      mc.optimizer = config.optimizer;
      mc.threads = config.threads;
      const auto result = run_monte_carlo(mc);
      for (const auto& st : result.stats) {
        f << "rate_threshold," << format_number(cth) << ',' << to_string(st.scheme) << ','
          << format_number(height) << ',' << format_number(st.mean) << ','
          << format_number(st.stddev) << ',' << st.feasible_runs << '\n';
        if (st.infeasible_runs > 0) {
          all_feasible = false;
          log << "height " << format_number(height) << " m, C_th " << format_number(cth) << ": "
              << to_string(st.scheme) << " infeasible in " << st.infeasible_runs << " runs\n";
        }
      }
    }
  }
  log << "wrote " << (config.out / "sweep.csv").string() << '\n';
  return all_feasible ? kExitFeasible : kExitInfeasible;
}

int run_montecarlo(const RunConfig& config, std::ostream& log) {
  config.validate();
  auto stats = open_output(config.out / "montecarlo.csv");
  stats << "scheme,height_m,mean_total_power_w,std_total_power_w,feasible_runs,infeasible_runs\n";
  auto red = open_output(config.out / "reductions.csv");
  red << "height_m,scheme,baseline,reduction_of_means_pct,mean_reduction_pct\n";

  bool all_feasible = true;
  for (double height : config.heights) {
    MonteCarloConfig mc;
    mc.spec = spec_at_height(config, height);
    mc.base_seed = config.seed;
    mc.num_runs = config.runs;
    mc.schemes = config.schemes;
    mc.optimizer = config.optimizer;
    mc.threads = config.threads;
    const auto result = run_monte_carlo(mc);
    log << "height " << format_number(height) << " m, " << config.runs << " runs\n";
    for (const auto& st : result.stats) {
      stats << to_string(st.scheme) << ',' << format_number(height) << ',' << format_number(st.mean)
            << ',' << format_number(st.stddev) << ',' << st.feasible_runs << ','
            << st.infeasible_runs << '\n';
      log << "  " << to_string(st.scheme) << ": mean " << format_number(st.mean) << " W, std "
          << format_number(st.stddev) << " W";
      if (st.infeasible_runs) log << ", " << st.infeasible_runs << " infeasible runs";
      log << '\n';
      all_feasible = all_feasible && st.infeasible_runs == 0;
    }
    for (const auto& r : result.reductions) {
      red << format_number(height) << ',' << to_string(r.scheme) << ',' << to_string(r.baseline)
          << ',' << format_number(100.0 * r.of_means) << ',' << format_number(100.0 * r.mean_of_runs)
          << '\n';
      if (r.scheme == Scheme::proposed) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  proposed vs %s: %.2f%% less power\n",
                      std::string(to_string(r.baseline)).c_str(), 100.0 * r.of_means);
        log << buf;
      }
    }
  }
  return all_feasible ? kExitFeasible : kExitInfeasible;
}

int run_binding(const RunConfig& case1, const RunConfig& case2, const std::filesystem::path& out,
                std::ostream& log) {
  bool all_feasible = true;
  int index = 1;
  for (const RunConfig* c : {&case1, &case2}) {
    c->validate();
    const Scenario sc = generate_scenario(c->seed, spec_at_height(*c, c->heights.front()));
    const auto sol = run_scheme(sc, Scheme::proposed, c->optimizer);
    const auto coeffs = ConstraintCoefficientsd::from(sc.params, sc.reqs);
    log << "case " << index << " (C_th " << format_number(sc.reqs.rate_threshold) << ", eta_th "
        << format_number(sc.reqs.illum_threshold) << "): "
        << (coeffs.rate_binding() ? "rate" : "illumination") << " constraint binds, "
        << describe(sol) << '\n';
    if (sol.feasible) {
      write_user_csv(out / ("binding_case" + std::to_string(index) + ".csv"), sol, sc);
    } else {
      all_feasible = false;
    }
    ++index;
  }
  return all_feasible ? kExitFeasible : kExitInfeasible;
}

int run(const RunConfig& config, std::ostream& log) {
  switch (config.mode) {
    case Mode::single: return run_single(config, log);
    case Mode::sweep: return run_sweep(config, log);
    case Mode::montecarlo: return run_montecarlo(config, log);
    case Mode::binding: {
      RunConfig base = config;
      base.heights.resize(1);
      const auto c1 = binding_case(base, config.case1, 1.2, 0.1);
      const auto c2 = binding_case(base, config.case2, 1.8, 0.6);
      return run_binding(c1, c2, config.out, log);
    }
  }
  return kExitUsage;
}

}  // namespace uavvlc::cli
