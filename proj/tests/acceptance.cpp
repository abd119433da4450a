// Acceptance gate: one PASS/FAIL line per criterion. The exit status covers the
// hard criteria; the published-percentage check (6) is reported but advisory.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "uavvlc/geometry.hpp"
#include "uavvlc/optimizer.hpp"
#include "uavvlc/scenario.hpp"

using namespace uavvlc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int hard_failures = 0;

void report(int id, bool pass, const std::string& detail, bool hard = true) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : (hard ? "FAIL" : "FAIL (advisory)"),
              detail.c_str());
  if (!pass && hard) ++hard_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void sed_oracle() {
  Rng rng(101);
  const auto t0 = Clock::now();
  double worst = 0.0;
  bool covered = true;
  for (int t = 0; t < 200; ++t) {
    const auto pts = oracle::random_points(rng, 1 + rng.index(12));
    const auto d = smallest_enclosing_disk(pts, static_cast<std::uint64_t>(t));
    worst = std::max(worst, std::abs(d.radius - sed_bruteforce(pts).radius));
    for (const auto& p : pts) covered = covered && (p - d.center).norm() <= d.radius + 1e-9;
  }
  const double secs = seconds_since(t0);
  report(1, worst <= 1e-9 && covered && secs < 2.0,
         fmt("max radius gap %.3g m, coverage %s, %.3f s", worst, covered ? "ok" : "BROKEN", secs));
}

void sed_uniqueness() {
  Rng rng(202);
  double worst = 0.0;
  for (int set = 0; set < 50; ++set) {
    auto pts = oracle::random_points(rng, 2 + rng.index(30));
    const auto ref = smallest_enclosing_disk(pts, 0);
    for (int s = 0; s < 20; ++s) {
      rng.shuffle(std::span<Point2d>(pts));
      worst = std::max(worst, (smallest_enclosing_disk(pts, rng.next()).center - ref.center).norm());
    }
  }
  report(2, worst <= 1e-9, fmt("max center spread %.3g m over 1000 shuffles", worst));
}

void tightness() {
  bool pass = true;
  std::string detail;
  for (double noise : {1e-10, 0.05}) {
    for (auto [cth, eta] : {std::pair{1.2, 0.1}, std::pair{1.8, 0.6}}) {
      ScenarioSpec spec;
      spec.params.noise_std = noise;
      spec.reqs.rate_threshold = cth;
      spec.reqs.illum_threshold = eta;
      const bool rate_binds = ConstraintCoefficientsd::from(spec.params, spec.reqs).rate_binding();
      double worst_slack = 0.0;
      double worst_tight = 0.0;
      for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto sc = generate_scenario(seed, spec);
        const auto sol = run_scheme(sc, Scheme::proposed);
        if (!sol.feasible) {
          pass = false;
          continue;
        }
        const auto rep = per_user_report(sol, sc.users, sc.params, sc.reqs);
        for (const auto& r : rep) {
          worst_slack = std::min({worst_slack, r.achieved_rate / cth - 1, r.achieved_illum / eta - 1});
        }
        for (std::size_t i = 0; i < sol.uav_positions.size(); ++i) {
          const auto& cl = sol.association.clusters[i];
          if (cl.empty()) continue;
          std::size_t far = cl.front();
          for (auto u : cl) {
            if ((sc.users[u] - sol.uav_positions[i]).norm() >
                (sc.users[far] - sol.uav_positions[i]).norm()) {
              far = u;
            }
          }
          const double rel = rate_binds ? rep[far].achieved_rate / cth - 1 : rep[far].achieved_illum / eta - 1;
          worst_tight = std::max(worst_tight, std::abs(rel));
        }
      }
      pass = pass && worst_slack >= -1e-9 && worst_tight <= 1e-6;
      detail += fmt("[sigma %g, C_th %.1f, eta_th %.1f: %s binds, tight to %.1e] ", noise, cth, eta,
                    rate_binds ? "rate" : "illum", worst_tight);
    }
  }
  report(3, pass, detail);
}

void monotone_and_ordering() {
  const ScenarioSpec spec;
  bool monotone = true;
  bool ordered = true;
  std::size_t max_rounds = 0;
  int bad_order = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto sc = generate_scenario(seed, spec);
    const auto p = run_scheme(sc, Scheme::proposed);
    for (std::size_t k = 1; k < p.trace.size(); ++k) {
      monotone = monotone && p.trace[k].total_power <= p.trace[k - 1].total_power;
    }
    max_rounds = std::max(max_rounds, p.rounds);
    const double o = run_scheme(sc, Scheme::uavoo).total_power;
    const double s1 = run_scheme(sc, Scheme::sa1).total_power;
    const double s2 = run_scheme(sc, Scheme::sa2).total_power;
    const bool ok = p.feasible && p.total_power <= o && o <= s1 && s1 <= s2;
    ordered = ordered && ok;
    bad_order += !ok;
  }
  report(4, monotone && max_rounds <= 20,
         fmt("traces %s, at most %zu rounds", monotone ? "non-increasing" : "INCREASE", max_rounds));
  report(5, ordered, fmt("%d of 100 scenarios out of order", bad_order));
}

MonteCarloResult monte_carlo(double height) {
  MonteCarloConfig mc;
  mc.num_runs = 1000;
  mc.spec.params.uav_height = height;
  mc.spec.reqs.rate_threshold = 2.0;
  mc.threads = 1;
  return run_monte_carlo(mc);
}

void percentages_and_height() {
  const auto t0 = Clock::now();
  const auto at8 = monte_carlo(8.0);
  const double secs = seconds_since(t0);
  const auto at12 = monte_carlo(12.0);

  const std::pair<Scheme, double> published[] = {
      {Scheme::uavoo, 53.8}, {Scheme::sa1, 57.14}, {Scheme::sa2, 60.0}};
  bool within = secs < 60.0;
  std::string detail;
  for (auto [baseline, target] : published) {
    const double got = 100.0 * at8.reduction(Scheme::proposed, baseline)->of_means;
    within = within && std::abs(got - target) <= 10.0;
    detail += fmt("vs %s %.2f%% (target %.2f%%) ", std::string(to_string(baseline)).c_str(), got, target);
  }
  report(6, within, detail + fmt("in %.2f s", secs), false);

  bool higher = true;
  detail.clear();
  for (auto [baseline, target] : published) {
    const double a = 100.0 * at8.reduction(Scheme::proposed, baseline)->of_means;
    const double b = 100.0 * at12.reduction(Scheme::proposed, baseline)->of_means;
    higher = higher && b >= a;
    detail += fmt("vs %s %.2f%% -> %.2f%% ", std::string(to_string(baseline)).c_str(), a, b);
  }
  report(7, higher, detail + "(8 m -> 12 m)");
}

void channel_checks() {
  VlcParamsd p;
  const double m = p.lambertian();
  const double g = concentrator_gain(0.0, p);
  const double h = channel_gain_at(0.0, p);
  const double want_h = 2e-4 * 3.0 / (128.0 * std::numbers::pi);
  const double h_rel = std::abs(h - want_h) / want_h;

  Rng rng(808);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    VlcParamsd q;
    q.noise_std = std::pow(10.0, rng.uniform(-12, -1));
    q.illum_factor = rng.uniform(0.1, 5);
    Requirementsd r;
    r.rate_threshold = rng.uniform(0.05, 6);
    const double gain = std::pow(10.0, rng.uniform(-8, -3));
    const double c = capacity_lower_bound(*min_power_rate(gain, r, q), gain, q);
    worst = std::max(worst, std::abs(c - r.rate_threshold) / r.rate_threshold);
  }
  report(8, m == 1.0 && std::abs(g - 3.0) <= 1e-14 && h_rel <= 1e-10 && worst <= 1e-12,
         fmt("m %.17g, g %.17g, nadir h %.10e (rel %.1e), round-trip %.1e", m, g, h, h_rel, worst));
}

void greedy_vs_exhaustive() {
  constexpr double exponent = 4.0;
  constexpr double height = 8.0;
  Rng rng(909);
  int below = 0;
  int matched = 0;
  for (int t = 0; t < 200; ++t) {
    const auto centers = oracle::random_points(rng, 2);
    const auto users = oracle::random_points(rng, 1 + rng.index(8));
    const double greedy = cluster_cost(greedy_min_size_clustering(centers, users, exponent, height),
                                       centers, users, exponent, height);
    const double best = oracle::exhaustive_min_cost(centers, users, exponent, height);
    below += greedy < best * (1 - 1e-12);
    matched += greedy <= best * (1 + 1e-12);
  }
  int separated_mismatch = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<Point2d> centers;
    while (centers.size() < 2) {
      const Point2d c(rng.uniform(0, 60), rng.uniform(0, 60));
      if (centers.empty() || (centers[0] - c).norm() >= 15.0) centers.push_back(c);
    }
    std::vector<Point2d> users;
    const std::size_t n = 1 + rng.index(8);
    for (std::size_t j = 0; j < n; ++j) {
      const double a = rng.uniform(0, 2 * std::numbers::pi);
      users.push_back(centers[rng.index(2)] + rng.uniform(0, 1) * Point2d(std::cos(a), std::sin(a)));
    }
    const double greedy = cluster_cost(greedy_min_size_clustering(centers, users, exponent, height),
                                       centers, users, exponent, height);
    const double best = oracle::exhaustive_min_cost(centers, users, exponent, height);
    separated_mismatch += std::abs(greedy - best) > 1e-9 * best;
  }
  report(9, below == 0 && separated_mismatch == 0,
         fmt("random: %d below optimum, %d/200 optimal; separated: %d/200 mismatches", below,
             matched, separated_mismatch));
}

}  // namespace

int main() {
  sed_oracle();
  sed_uniqueness();
  tightness();
  monotone_and_ordering();
  percentages_and_height();
  channel_checks();
  greedy_vs_exhaustive();
  std::printf("%s (%d hard failures)\n", hard_failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED",
              hard_failures);
  return hard_failures ? 1 : 0;
}
