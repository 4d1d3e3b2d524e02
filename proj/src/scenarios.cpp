/*
 * Copyright 2026 The normlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "normlab/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "normlab/probes.hpp"

namespace normlab {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// RNG stream owned by one check of one scenario.
std::uint64_t check_seed(const ScenarioConfig& cfg, const std::string& check) {
  return stream_seed(cfg.seed, fnv1a(cfg.name + "/" + check));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string delta_tag(double d) {
  std::ostringstream os;
  os << d;
  return os.str();
}

double sq(double v) { return v * v; }

class Recorder {
 public:
  explicit Recorder(ScenarioReport& report) : report_(report) {}

  // Runs body on a fresh check; library errors turn into a failed check
  // carrying the message.
  void run(const std::string& name, const std::string& anchor, Expected expected, double tol,
           const std::function<void(Check&)>& body) {
    Check c;
    c.name = report_.scenario + "." + name;
    c.anchor = anchor;
    c.expected = std::move(expected);
    c.tol = tol;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.status = CheckStatus::kFail;
      c.note = e.what();
    }
    report_.checks.push_back(std::move(c));
  }

 private:
  ScenarioReport& report_;
};

void set(Check& c, bool ok) { c.status = ok ? CheckStatus::kPass : CheckStatus::kFail; }

ScenarioReport start(const ScenarioConfig& cfg, const char* base) {
  ScenarioReport r;
  r.scenario = cfg.name;
  r.config = {{"dim", static_cast<std::int64_t>(cfg.dim)},
              {"eps", cfg.eps},
              {"lambda", cfg.lambda},
              {"tol_bracketed", cfg.bracket_tol()},
              {"tol_closed_form", cfg.closed_tol()},
              {"samples", static_cast<std::int64_t>(cfg.samples)},
              {"seed", static_cast<std::int64_t>(cfg.seed)},
              {"base", std::string(base)}};
  if (cfg.delta) r.config.emplace_back("delta", *cfg.delta);
  return r;
}

Table witness_table(const WitnessReport& w) {
  Table t{{"n", "a", "b", "g"}, {}};
  for (const auto& row : w.rows) t.rows.push_back({static_cast<double>(row.n), row.a, row.b, row.g});
  return t;
}

Vector unit_sample(const NormHandle& norm, std::mt19937_64& rng) {
  return normalized(norm, random_gaussian(rng, norm.dim()));
}

// Random y in the kernel of the first coordinate functional with
// |y|_2 <= radius; every fourth sample sits on the boundary.
Vector kernel_sample(std::mt19937_64& rng, std::size_t dim, double radius, std::size_t i) {
  Vector y = random_gaussian(rng, dim);
  y[0] = 0.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = i % 4 == 0 ? 1.0 : unit(rng);
  return y * (radius * r / euclidean_norm(y.span()));
}

std::vector<Vector> unit_directions(std::size_t count, std::size_t dim, std::uint64_t seed) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(stream_seed(seed, i));
    Vector d = random_gaussian(rng, dim);
    out.push_back(d / euclidean_norm(d.span()));
  }
  return out;
}

// Sampled sphere points times direction nets; records the worst discrepancy.
void gateaux_check(Check& c, const NormHandle& norm, std::size_t points, std::size_t directions,
                   std::uint64_t seed, double limit) {
  double worst = 0.0;
  double min_side_gap = 0.0;
  const auto dirs = unit_directions(directions, norm.dim(), seed ^ 0xd1ULL);
  for (std::size_t p = 0; p < points; ++p) {
    std::mt19937_64 rng(stream_seed(seed, p));
    const Vector x = unit_sample(norm, rng);
    const GateauxScan scan = gateaux_scan(norm, x, dirs);
    worst = std::max(worst, scan.max_discrepancy);
    min_side_gap = std::min(min_side_gap, scan.max_discrepancy);
  }
  c.value = worst;
  c.note = std::to_string(points) + " points x " + std::to_string(directions) + " directions";
  set(c, worst <= limit && min_side_gap >= -1e-6);
}

void rotundity_check(Check& c, const NormHandle& norm, std::size_t samples, std::uint64_t seed) {
  const double margin = rotundity_scan(norm, samples, seed);
  c.value = margin;
  set(c, margin > 0.0);
}

std::vector<std::pair<Vector, Vector>> unit_pairs(const NormHandle& norm, std::size_t count,
                                                  std::uint64_t seed) {
  std::vector<std::pair<Vector, Vector>> pairs;
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(stream_seed(seed, i));
    Vector x = unit_sample(norm, rng);
    Vector y = unit_sample(norm, rng);
    pairs.emplace_back(std::move(x), std::move(y));
  }
  return pairs;
}

// xs = x + s e'_n, ys = x - s e'_n for 0-based n = 1..count-1 (index n + 1).
void plus_minus(const BiorthogonalSystem& sys, const Vector& x, double s, std::vector<Vector>& xs,
                std::vector<Vector>& ys, std::vector<int>& ns) {
  for (std::size_t n = 1; n < sys.count(); ++n) {
    xs.push_back(x + s * sys.e(n));
    ys.push_back(x - s * sys.e(n));
    ns.push_back(static_cast<int>(n + 1));
  }
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), cfg.name) == names.end()) {
    raise(ErrorCode::kInvalidParameter, "unknown scenario '" + cfg.name + "'");
  }
  if (cfg.dim < 4 || cfg.dim > 64) raise(ErrorCode::kInvalidParameter, "dim must lie in [4, 64]");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) raise(ErrorCode::kInvalidParameter, "eps must lie in (0, 1)");
  if (!(cfg.lambda > 0.0 && cfg.lambda < 1.0)) {
    raise(ErrorCode::kInvalidParameter, "lambda must lie in (0, 1)");
  }
  if (cfg.delta && !(*cfg.delta > 0.0 && *cfg.delta < 1.0)) {
    raise(ErrorCode::kInvalidParameter, "delta must lie in (0, 1)");
  }
  if (cfg.tol && !(*cfg.tol > 0.0)) raise(ErrorCode::kInvalidParameter, "tol must be positive");
  if (cfg.samples < 1) raise(ErrorCode::kInvalidParameter, "samples must be positive");
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"draga",    "main-g", "main-f",
                                                 "porosity", "ell1",   "lur-sum"};
  return names;
}

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
  validate(cfg);
  const auto t0 = Clock::now();
  ScenarioReport r;
  if (cfg.name == "draga") r = scenario_draga(cfg);
  if (cfg.name == "main-g") r = scenario_main_g(cfg);
  if (cfg.name == "main-f") r = scenario_main_f(cfg);
  if (cfg.name == "porosity") r = scenario_porosity(cfg);
  if (cfg.name == "ell1") r = scenario_ell1(cfg);
  if (cfg.name == "lur-sum") r = scenario_lur_sum(cfg);
  r.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return r;
}

// ---------------------------------------------------------------------------

ScenarioReport scenario_draga(const ScenarioConfig& cfg) {
  ScenarioReport report = start(cfg, "sup");
  Recorder rec(report);
  const std::size_t d = cfg.dim;
  const AmbientSpec spec = AmbientSpec::make(d, BaseKind::kSup);
  const BiorthogonalSystem sys = canonical_system(spec);
  const NormHandle norm = quad_perturb(draga_base(base_norm(spec), sys), sys);
  const Vector e1 = Vector::unit(d, 0);

  rec.run("e1_squared", "Draga norm: squared value at e1", 1.25, 1e-12, [&](Check& c) {
    const double v = sq(norm.eval(e1).mid());
    c.value = v;
    set(c, std::abs(v - 1.25) <= c.tol);
  });

  rec.run("pm_squares", "Draga norm: squared values at e1 +- en", 0.0, 1e-12, [&](Check& c) {
    double worst = 0.0;
    for (std::size_t n = 1; n < d; ++n) {
      const double expect = 1.25 + std::ldexp(1.0, -2 * static_cast<int>(n + 1));
      for (double s : {1.0, -1.0}) {
        worst = std::max(worst, std::abs(sq(norm.eval(e1 + s * Vector::unit(d, n)).mid()) - expect));
      }
    }
    c.value = worst;
    c.note = "max over n = 2.." + std::to_string(d) + " of |N(e1 +- en)^2 - 5/4 - 4^-n|";
    set(c, worst <= c.tol);
  });

  rec.run("mlur_witness", "Draga norm: non-MLUR witness e1 +- en", std::string(">= 2"), 1e-12,
          [&](Check& c) {
            std::vector<Vector> xs, ys;
            std::vector<int> ns;
            plus_minus(sys, e1, 1.0, xs, ys, ns);
            WitnessOptions opts;
            opts.gap = 2.0;
            opts.tol = c.tol;
            opts.indices = ns;
            const WitnessReport w = mlur_witness_check(norm, e1, xs, ys, opts);
            report.witness_tables.emplace_back("draga.mlur", w.rows);
            report.primary = witness_table(w);
            c.value = w.min_gap;
            c.note = "envelope constant C = " + fmt(w.envelope_constant);
            set(c, w.non_mlur);
          });

  const Vector x = e1 + Vector::unit(d, 1);
  const double root21 = std::sqrt(21.0);
  rec.run("gateaux.left", "Draga norm: left derivative at e1 + e2 along e1", root21 / 21.0, 1e-3,
          [&](Check& c) {
            const double v = one_sided_derivative(norm, x, e1, Side::kLeft).value;
            c.value = v;
            set(c, std::abs(v - root21 / 21.0) <= c.tol);
          });
  rec.run("gateaux.right", "Draga norm: right derivative at e1 + e2 along e1", 5.0 * root21 / 21.0,
          1e-3, [&](Check& c) {
            const double v = one_sided_derivative(norm, x, e1, Side::kRight).value;
            c.value = v;
            set(c, std::abs(v - 5.0 * root21 / 21.0) <= c.tol);
          });
  rec.run("gateaux.discrepancy", "Draga norm: failure of Gateaux smoothness",
          std::string(">= ") + fmt(4.0 / root21 - 1e-3), 1e-3, [&](Check& c) {
            const GateauxScan scan = gateaux_scan(norm, x, {e1});
            c.value = scan.max_discrepancy;
            set(c, scan.max_discrepancy >= 4.0 / root21 - c.tol);
          });

  rec.run("rotundity", "Draga norm: rotundity", std::string("> 0"), 0.0, [&](Check& c) {
    rotundity_check(c, norm, cfg.samples, check_seed(cfg, "rotundity"));
  });

  rec.run("wur_defect", "Draga norm: WUR defect inequality", std::string("<= 1e-10"), 1e-10,
          [&](Check& c) {
            const auto pairs = unit_pairs(norm, cfg.samples, check_seed(cfg, "wur"));
            const double v = wur_defect_check(norm, pairs, sys.count());
            c.value = v;
            set(c, v <= c.tol);
          });
  return report;
}

// ---------------------------------------------------------------------------

ScenarioReport scenario_main_g(const ScenarioConfig& cfg) {
  ScenarioReport report = start(cfg, "euclidean");
  Recorder rec(report);
  const std::size_t d = cfg.dim;
  const double eps = cfg.eps;
  const double delta = std::sqrt(2.0 * eps - eps * eps);
  const double gap = 2.0 * delta / (1.0 + eps);
  report.config.emplace_back("slab_level", 1.0 - eps);
  report.config.emplace_back("delta_flat", delta);
  report.config.emplace_back("gap", gap);

  const AmbientSpec spec = AmbientSpec::make(d, BaseKind::kEuclidean);
  const NormHandle base = base_norm(spec);
  const Vector e1 = Vector::unit(d, 0);
  EvalOptions opts;
  opts.tol = cfg.bracket_tol();
  const NormHandle slice = slice_restrict(base, Functional::unit(d, 0), 1.0 - eps);
  const NormHandle triple = mink_sum(slice, base, eps, opts);
  const BiorthogonalSystem sys = normalize_system(canonical_system(spec), triple);
  const NormHandle norm = quad_perturb(triple, sys);

  rec.run("x1_norm", "slice removal and Minkowski sum: value at x1", 1.0, cfg.bracket_tol(),
          [&](Check& c) {
            const Bracket b = triple.eval(e1);
            c.bracket = b;
            set(c, b.contains(1.0) && b.width() <= c.tol);
          });

  rec.run("flat_face", "slice removal and Minkowski sum: flat face around x1", 1.0,
          cfg.bracket_tol(), [&](Check& c) {
            double worst = 0.0;
            for (std::size_t i = 0; i < 100; ++i) {
              std::mt19937_64 rng(stream_seed(check_seed(cfg, "flat"), i));
              const Vector y = kernel_sample(rng, d, delta, i);
              const Bracket b = triple.eval(e1 + y);
              worst = std::max({worst, std::abs(b.lower - 1.0), std::abs(b.upper - 1.0)});
            }
            c.value = worst + 1.0;
            c.note = "100 kernel vectors with |y| <= delta = " + fmt(delta) + "; value is 1 + max deviation";
            set(c, worst <= c.tol);
          });

  rec.run("sandwich", "slice removal and Minkowski sum: equivalence with the original norm", 0.0,
          cfg.bracket_tol(), [&](Check& c) {
            std::size_t bad = 0;
            for (std::size_t i = 0; i < cfg.samples; ++i) {
              std::mt19937_64 rng(stream_seed(check_seed(cfg, "sandwich"), i));
              std::uniform_real_distribution<double> scale(0.1, 10.0);
              const Vector x = scale(rng) * random_gaussian(rng, d);
              const Bracket b = triple.eval(x);
              const double n = base.eval(x).mid();
              if (b.lower > n + c.tol || n > (1.0 + eps) * b.upper + c.tol) ++bad;
            }
            c.value = static_cast<double>(bad);
            c.note = "violations of N(x) <= |x| <= (1 + eps) N(x) on " + std::to_string(cfg.samples) +
                     " vectors";
            set(c, bad == 0);
          });

  rec.run("mlur_witness", "main renorming: non-MLUR witness e1 +- (delta / (1 + eps)) e'n",
          std::string(">= ") + fmt(gap), cfg.bracket_tol(), [&](Check& c) {
            std::vector<Vector> xs, ys;
            std::vector<int> ns;
            plus_minus(sys, e1, delta / (1.0 + eps), xs, ys, ns);
            WitnessOptions w_opts;
            w_opts.gap = gap;
            w_opts.tol = c.tol;
            w_opts.indices = ns;
            const WitnessReport w = mlur_witness_check(norm, e1, xs, ys, w_opts);
            report.witness_tables.emplace_back("main-g.mlur", w.rows);
            report.primary = witness_table(w);
            c.value = w.min_gap;
            c.note = "envelope constant C = " + fmt(w.envelope_constant);
            set(c, w.non_mlur);
          });

  rec.run("gateaux", "slice removal and Minkowski sum: Gateaux smoothness", std::string("<= 1e-3"),
          1e-3, [&](Check& c) { gateaux_check(c, norm, 20, 50, check_seed(cfg, "gateaux"), c.tol); });

  rec.run("rotundity", "main renorming: rotundity", std::string("> 0"), 0.0, [&](Check& c) {
    rotundity_check(c, norm, cfg.samples, check_seed(cfg, "rotundity"));
  });

  rec.run("ured", "main renorming: rotundity in every direction", std::string("> 0"), 0.0,
          [&](Check& c) {
            double worst = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < 5; ++i) {
              std::mt19937_64 rng(stream_seed(check_seed(cfg, "ured"), i));
              const Vector z = unit_sample(norm, rng);
              worst = std::min(worst, ured_direction_modulus(norm, z, std::max<std::size_t>(cfg.samples / 10, 10),
                                                             stream_seed(check_seed(cfg, "ured-c"), i)));
            }
            c.value = worst;
            c.note = "5 unit directions";
            set(c, worst > 0.0);
          });
  return report;
}

// ---------------------------------------------------------------------------

namespace {

// Dual route for the squared inf-convolution over the slab-cut Euclidean
// ball: the symmetry fixing e1 puts an optimal functional in span{e1, x_perp},
// so sup { g(x) : sqrt(N1*(g)^2 + eps |g|^2) <= 1 } is a search over one angle.
// N1*(g) = min_s |g - s e1|_2 + c |s| is minimized by golden section.
Bracket main_f_dual_bracket(const Vector& x, double eps, double c) {
  const std::size_t d = x.dim();
  Vector perp = x;
  perp[0] = 0.0;
  const double r = euclidean_norm(perp.span());
  auto dual_norm = [&](double g0, double g1) {
    // g = g0 e1 + g1 perp_hat; |g - s e1| = sqrt((g0 - s)^2 + g1^2)
    const double span = std::hypot(g0, g1) / c + 1.0;
    const ScalarMinimum m = golden_section(
        [&](double s) { return std::hypot(g0 - s, g1) + c * std::abs(s); }, -span, span, 300);
    const double n1 = std::min(m.value, std::hypot(g0, g1));
    return std::sqrt(n1 * n1 + eps * (g0 * g0 + g1 * g1));
  };
  auto ratio = [&](double phi) {
    const double g0 = std::cos(phi);
    const double g1 = r > 0.0 ? std::sin(phi) : 0.0;
    return (g0 * x[0] + g1 * r) / dual_norm(g0, g1);
  };
  const int grid = 720;
  double best_phi = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * k / grid;
    const double v = ratio(phi);
    if (v > best) best = v, best_phi = phi;
  }
  const double h = 2.0 * std::numbers::pi / grid;
  const ScalarMinimum m = golden_section([&](double phi) { return -ratio(phi); }, best_phi - h,
                                         best_phi + h, 200);
  const double lower = std::max(best, -m.value);
  // Refinement slack from the curvature at the final resolution.
  const double probe = 1e-7;
  const double slack = std::abs(ratio(m.argmin + probe) - lower) + std::abs(ratio(m.argmin - probe) - lower);
  (void)d;
  return {lower, lower + slack};
}

}  // namespace

ScenarioReport scenario_main_f(const ScenarioConfig& cfg) {
  ScenarioReport report = start(cfg, "euclidean");
  Recorder rec(report);
  const std::size_t d = cfg.dim;
  const double eps = cfg.eps;
  const double c_level = std::sqrt(1.0 - eps);
  const double delta = std::sqrt(eps / (1.0 - eps));
  const double theta = 1.0 - eps;
  const double gamma = theta * delta;
  const double gap = 2.0 * gamma / std::sqrt(1.0 + eps);
  report.config.emplace_back("slab_level", c_level);
  report.config.emplace_back("delta_flat", delta);
  report.config.emplace_back("theta_min", theta);
  report.config.emplace_back("gamma", gamma);
  report.config.emplace_back("gap", gap);

  const AmbientSpec spec = AmbientSpec::make(d, BaseKind::kEuclidean);
  const NormHandle base = base_norm(spec);
  const Vector e1 = Vector::unit(d, 0);
  EvalOptions opts;
  opts.tol = cfg.bracket_tol();
  const NormHandle slice = slice_restrict(base, Functional::unit(d, 0), c_level);
  const NormHandle triple = sq_infconv(slice, base, eps, opts);
  const BiorthogonalSystem sys = normalize_system(canonical_system(spec), triple);
  const NormHandle norm = quad_perturb(triple, sys);

  rec.run("x1_norm", "squared inf-convolution: value at x1", 1.0, cfg.bracket_tol(), [&](Check& c) {
    const Bracket b = triple.eval(e1);
    c.bracket = b;
    set(c, b.contains(1.0) && b.width() <= c.tol);
  });

  rec.run("theta_min", "squared inf-convolution: optimal splitting weight", theta, cfg.bracket_tol(),
          [&](Check& c) {
            const auto split = triple.best_splitting(e1);
            if (!split) raise(ErrorCode::kInternal, "no splitting reported");
            c.value = split->u[0];
            set(c, std::abs(split->u[0] - theta) <= c.tol);
          });

  rec.run("theta_split_value", "squared inf-convolution: value of the theta splitting", 1.0,
          cfg.closed_tol(), [&](Check& c) {
            const double a = slice.eval(theta * e1).mid();
            const double b = base.eval((1.0 - theta) * e1).mid();
            const double v = std::sqrt(a * a + b * b / eps);
            c.value = v;
            set(c, std::abs(v - 1.0) <= c.tol);
          });

  rec.run("flat_face", "squared inf-convolution: flat face around x1", 1.0, cfg.bracket_tol(),
          [&](Check& c) {
            double worst = 0.0;
            for (std::size_t i = 0; i < 100; ++i) {
              std::mt19937_64 rng(stream_seed(check_seed(cfg, "flat"), i));
              const Vector y = kernel_sample(rng, d, gamma, i);
              const Bracket b = triple.eval(e1 + y);
              worst = std::max({worst, std::abs(b.lower - 1.0), std::abs(b.upper - 1.0)});
            }
            c.value = 1.0 + worst;
            c.note = "100 kernel vectors with |y| <= gamma = " + fmt(gamma) + "; value is 1 + max deviation";
            set(c, worst <= c.tol);
          });

  rec.run("kernel_lower_bound", "squared inf-convolution: x1*(x) = 1 forces value >= 1", 0.0,
          cfg.bracket_tol(), [&](Check& c) {
            std::size_t bad = 0;
            for (std::size_t i = 0; i < 100; ++i) {
              std::mt19937_64 rng(stream_seed(check_seed(cfg, "kernel"), i));
              const Vector y = kernel_sample(rng, d, 2.0, i);
              if (triple.eval(e1 + y).upper < 1.0 - c.tol) ++bad;
            }
            c.value = static_cast<double>(bad);
            c.note = "violations among 100 kernel perturbations with |y| <= 2";
            set(c, bad == 0);
          });

  rec.run("dual_consistency", "squared inf-convolution: dual norm formula", 2.0 * cfg.bracket_tol(),
          2.0 * cfg.bracket_tol(), [&](Check& c) {
            double widest = 0.0;
            std::size_t disjoint = 0;
            for (std::size_t i = 0; i < 100; ++i) {
              std::mt19937_64 rng(stream_seed(check_seed(cfg, "dual"), i));
              const Vector x = random_gaussian(rng, d);
              const Bracket primal = triple.eval(x);
              const Bracket dual = main_f_dual_bracket(x, eps, c_level);
              widest = std::max(widest, primal.width() + dual.width());
              if (!primal.overlaps(dual, 1e-12 * std::max(1.0, primal.upper))) ++disjoint;
            }
            c.value = widest;
            c.note = "max combined width over 100 vectors; non-overlapping pairs: " + std::to_string(disjoint);
            set(c, disjoint == 0 && widest <= c.tol);
          });

  rec.run("sandwich", "squared inf-convolution: equivalence with the original norm", 0.0,
          cfg.bracket_tol(), [&](Check& c) {
            std::size_t bad = 0;
            const double lo = std::sqrt(1.0 - eps);
            const double hi = std::sqrt(1.0 + eps);
            for (std::size_t i = 0; i < cfg.samples; ++i) {
              std::mt19937_64 rng(stream_seed(check_seed(cfg, "sandwich"), i));
              std::uniform_real_distribution<double> scale(0.1, 10.0);
              const Vector x = scale(rng) * random_gaussian(rng, d);
              const Bracket b = triple.eval(x);
              const double n = base.eval(x).mid();
              if (lo * b.lower > n + c.tol || n > hi * b.upper + c.tol) ++bad;
            }
            c.value = static_cast<double>(bad);
            c.note = "violations of sqrt(1 - eps) N(x) <= |x| <= sqrt(1 + eps) N(x) on " +
                     std::to_string(cfg.samples) + " vectors";
            set(c, bad == 0);
          });

  rec.run("mlur_witness", "WUR Frechet smooth renorming: non-MLUR witness",
          std::string(">= ") + fmt(gap), cfg.bracket_tol(), [&](Check& c) {
            std::vector<Vector> xs, ys;
            std::vector<int> ns;
            plus_minus(sys, e1, gamma / std::sqrt(1.0 + eps), xs, ys, ns);
            WitnessOptions w_opts;
            w_opts.gap = gap;
            w_opts.tol = c.tol;
            w_opts.indices = ns;
            const WitnessReport w = mlur_witness_check(norm, e1, xs, ys, w_opts);
            report.witness_tables.emplace_back("main-f.mlur", w.rows);
            report.primary = witness_table(w);
            c.value = w.min_gap;
            c.note = "envelope constant C = " + fmt(w.envelope_constant);
            set(c, w.non_mlur);
          });

  rec.run("wur_defect", "WUR Frechet smooth renorming: WUR defect inequality",
          std::string("<= ") + fmt(cfg.bracket_tol()), cfg.bracket_tol(), [&](Check& c) {
            const auto pairs = unit_pairs(norm, std::min<std::size_t>(cfg.samples, 200),
                                          check_seed(cfg, "wur"));
            const double v = wur_defect_check(norm, pairs, sys.count());
            c.value = v;
            set(c, v <= c.tol);
          });

  rec.run("frechet", "WUR Frechet smooth renorming: uniform smoothness over a direction net",
          std::string("<= 1e-3"), 1e-3,
          [&](Check& c) { gateaux_check(c, norm, 10, 100, check_seed(cfg, "frechet"), c.tol); });

  rec.run("euclidean_smoke", "squared inf-convolution of two Euclidean norms", 0.0, cfg.bracket_tol(),
          [&](Check& c) {
            const NormHandle both = sq_infconv(base, base, eps, opts);
            double worst = 0.0;
            for (std::size_t i = 0; i < 100; ++i) {
              std::mt19937_64 rng(stream_seed(check_seed(cfg, "smoke"), i));
              const Vector x = random_gaussian(rng, d);
              const double expect = base.eval(x).mid() / std::sqrt(1.0 + eps);
              const Bracket b = both.eval(x);
              worst = std::max({worst, std::abs(b.lower - expect), std::abs(b.upper - expect)});
            }
            c.value = worst;
            c.note = "max deviation from |x|_2 / sqrt(1 + eps)";
            set(c, worst <= c.tol);
          });
  return report;
}

// ---------------------------------------------------------------------------

ScenarioReport scenario_porosity(const ScenarioConfig& cfg) {
  ScenarioReport report = start(cfg, "sup");
  Recorder rec(report);
  const std::size_t d = cfg.dim;
  const AmbientSpec spec = AmbientSpec::make(d, BaseKind::kSup);
  const BiorthogonalSystem sys = canonical_system(spec);
  const NormHandle sup = base_norm(spec);
  const NormHandle norm = quad_perturb(sup, sys);
  const std::vector<double> deltas =
      cfg.delta ? std::vector<double>{*cfg.delta} : std::vector<double>{0.05, 0.1, 0.2};
  const std::size_t ball_samples = 50;

  for (double delta : deltas) {
    const double radius = delta * (1.0 - cfg.lambda) / 2.0;
    rec.run("certificates.delta_" + delta_tag(delta), "porosity of MLUR points: ball inside a face",
            0.0, 0.0, [&](Check& c) {
              std::size_t violations = 0;
              std::size_t bad_geometry = 0;
              const std::uint64_t seed = check_seed(cfg, "cert-" + delta_tag(delta));
              for (std::size_t i = 0; i < cfg.samples; ++i) {
                std::mt19937_64 rng(stream_seed(seed, i));
                const Vector x = unit_sample(sup, rng);
                const PorosityCertificate cert =
                    porosity_certificate(spec, x, delta, cfg.lambda, ball_samples, stream_seed(seed ^ 1, i));
                violations += cert.violations;
                if (cert.radius != radius || cert.distance_wx > 3.0 * delta + 1e-9) ++bad_geometry;
              }
              c.value = static_cast<double>(violations);
              c.note = std::to_string(cfg.samples) + " sphere points x " + std::to_string(ball_samples) +
                       " ball samples, radius " + fmt(radius) +
                       "; certificates with wrong geometry: " + std::to_string(bad_geometry);
              set(c, violations == 0 && bad_geometry == 0);
            });
  }

  rec.run("e1_certificate", "porosity of MLUR points: certificate at e1", 0.0, 1e-15, [&](Check& c) {
    const Vector e1 = Vector::unit(d, 0);
    const double delta = deltas.size() > 1 ? 0.1 : deltas[0];
    const PorosityCertificate cert =
        porosity_certificate(spec, e1, delta, cfg.lambda, ball_samples, check_seed(cfg, "e1"));
    const double err = sup.eval(cert.w - e1).mid();
    c.value = err;
    c.note = "|w - e1| with face " + std::to_string(cert.n_face) + ", radius " + fmt(cert.radius);
    set(c, err <= c.tol && cert.n_face == 1 && cert.violations == 0 &&
               cert.radius == delta * (1.0 - cfg.lambda) / 2.0);
  });

  rec.run("face_witness", "porosity of MLUR points: non-MLUR witness v_N on a face",
          std::string("<= 2(1+eps)^2 sum_{n>N} 4^-n + 1e-9"), 1e-9, [&](Check& c) {
            const double eps = 0.1;
            std::vector<int> ns;
            for (int n = 1; n <= static_cast<int>(d) - 2; ++n) ns.push_back(n);
            double worst = -std::numeric_limits<double>::infinity();
            bool flagged = true;
            Table table{{"point", "N", "defect", "bound", "g"}, {}};
            for (std::size_t p = 0; p < 10; ++p) {
              std::mt19937_64 rng(stream_seed(check_seed(cfg, "face"), p));
              std::uniform_real_distribution<double> coord(-0.8, 0.8);
              std::uniform_int_distribution<std::size_t> pick(0, d - 1);
              Vector x(d);
              for (std::size_t k = 0; k < d; ++k) x[k] = coord(rng);
              const std::size_t n0 = p == 0 ? 0 : pick(rng);
              if (p == 0) x = Vector::unit(d, 0);
              x[n0] = (p % 2 == 0) ? 1.0 : -1.0;
              const WitnessReport w = face_mlur_witness(norm, x, eps, ns, c.tol);
              for (std::size_t i = 0; i < w.rows.size(); ++i) {
                worst = std::max(worst, w.rows[i].a - w.bound[i]);
              }
              flagged = flagged && w.non_mlur;
              if (p == 0) report.witness_tables.emplace_back("porosity.face", w.rows);
            }
            c.value = worst;
            c.note = "max of defect - envelope over 10 face points, N = 1.." + std::to_string(d - 2) +
                     ", eps = 0.1";
            set(c, worst <= c.tol && flagged);
          });

  // CSV: delta, radius, certificate count
  report.primary = Table{{"delta", "radius", "points", "ball_samples"}, {}};
  for (double delta : deltas) {
    report.primary.rows.push_back({delta, delta * (1.0 - cfg.lambda) / 2.0,
                                   static_cast<double>(cfg.samples), static_cast<double>(ball_samples)});
  }

  rec.run("rotundity", "porosity renorming: rotundity", std::string("> 0"), 0.0, [&](Check& c) {
    rotundity_check(c, norm, cfg.samples, check_seed(cfg, "rotundity"));
  });
  return report;
}

// ---------------------------------------------------------------------------

ScenarioReport scenario_ell1(const ScenarioConfig& cfg) {
  ScenarioReport report = start(cfg, "ell1");
  Recorder rec(report);
  const std::size_t d = cfg.dim;
  const AmbientSpec spec = AmbientSpec::make(d, BaseKind::kEll1);
  EvalOptions opts;
  opts.tol = cfg.bracket_tol();
  const NormHandle q = quotient_T(spec, opts);
  std::vector<double> w(d);
  for (std::size_t k = 0; k < d; ++k) w[k] = std::ldexp(1.0, -static_cast<int>(k + 1));
  const NormHandle tail = base_norm(AmbientSpec::make(d, BaseKind::kEuclidean, w));
  const NormHandle triple = sum(q, tail);
  auto unit_value = [](std::size_t n) {  // 2^n / (1 + 2^n), 1-based n
    const double p = std::ldexp(1.0, static_cast<int>(n));
    return p / (1.0 + p);
  };

  const double tol = cfg.bracket_tol();
  auto point_check = [&](const std::string& name, const std::string& anchor, const NormHandle& n,
                         std::size_t k, double expect) {
    rec.run(name, anchor, expect, tol, [&](Check& c) {
      const Bracket b = n.eval(Vector::unit(d, k));
      c.bracket = b;
      set(c, std::abs(b.lower - expect) <= c.tol && std::abs(b.upper - expect) <= c.tol);
    });
  };
  point_check("e1", "quotient norm on l1: value at e1", q, 0, 2.0 / 3.0);
  point_check("e2", "quotient norm on l1: value at e2", q, 1, 4.0 / 5.0);
  point_check("e1_triple", "quotient plus weighted l2: value at e1", triple, 0, 7.0 / 6.0);

  report.primary = Table{{"n", "norm_en", "expected"}, {}};
  rec.run("unit_norms", "quotient norm on l1: values at en", 0.0, tol, [&](Check& c) {
    double worst = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double v = q.eval(Vector::unit(d, k)).mid();
      report.primary.rows.push_back({static_cast<double>(k + 1), v, unit_value(k + 1)});
      worst = std::max(worst, std::abs(v - unit_value(k + 1)));
    }
    c.value = worst;
    c.note = "max over n <= dim of |norm(en) - 2^n/(1+2^n)|";
    set(c, worst <= c.tol);
  });
  rec.run("triple_units", "quotient plus weighted l2: values at en", 0.0, tol, [&](Check& c) {
    double worst = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double expect = unit_value(k + 1) + std::ldexp(1.0, -static_cast<int>(k + 1));
      worst = std::max(worst, std::abs(triple.eval(Vector::unit(d, k)).mid() - expect));
    }
    c.value = worst;
    c.note = "max over n <= dim of |N(en) - 2^n/(1+2^n) - 2^-n|";
    set(c, worst <= c.tol);
  });

  rec.run("dual_formula", "quotient norm on l1: dual norm |g|_inf + |T*g|_2", 0.0, tol, [&](Check& c) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 20; ++i) {
      std::mt19937_64 rng(stream_seed(check_seed(cfg, "dual"), i));
      const Vector gv = random_gaussian(rng, d);
      const Functional g = to_functional(gv);
      double sup = 0.0, t2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        sup = std::max(sup, std::abs(g[k]));
        t2 += sq(g[k] * std::ldexp(1.0, -static_cast<int>(k + 1)));
      }
      const double formula = sup + std::sqrt(t2);
      const Bracket b = dual_eval(q, g, tol);
      worst = std::max({worst, std::abs(b.lower - formula), std::abs(b.upper - formula)});
    }
    c.value = worst;
    c.note = "max deviation over 20 functionals";
    set(c, worst <= c.tol);
  });

  const std::vector<double> deltas =
      cfg.delta ? std::vector<double>{*cfg.delta} : std::vector<double>{0.7, 0.8, 0.9};
  for (double delta : deltas) {
    const double threshold = 3.0 * delta - 1.0 - delta * (1.0 - delta);
    rec.run("no_lur.delta_" + delta_tag(delta), "l1 example: no LUR point, lower bound at x + e_n0",
            std::string(">= ") + fmt(threshold), 1e-3, [&](Check& c) {
              double worst = std::numeric_limits<double>::infinity();
              std::size_t used = 0;
              std::size_t largest_n0 = 0;
              const std::size_t support = std::min<std::size_t>(4, d);
              for (std::size_t i = 0; i < 20; ++i) {
                std::mt19937_64 rng(stream_seed(check_seed(cfg, "nolur-" + delta_tag(delta)), i));
                Vector x(d);
                std::normal_distribution<double> gauss;
                for (std::size_t k = 0; k < support; ++k) x[k] = gauss(rng);
                x = normalized(triple, x);
                std::size_t n0 = 0;
                for (std::size_t n = 1; n <= d && n0 == 0; ++n) {
                  const double p = std::ldexp(1.0, static_cast<int>(n));
                  if (!(std::sqrt(1.0 - 1.0 / sq(static_cast<double>(n))) > delta)) continue;
                  if (!(p / (p + static_cast<double>(n)) > delta)) continue;
                  const Vector head = x[n - 1] * Vector::unit(d, n - 1);
                  if (!(triple.eval(head).upper < 1.0 - delta)) continue;
                  n0 = n;
                }
                if (n0 == 0) continue;
                ++used;
                largest_n0 = std::max(largest_n0, n0);
                worst = std::min(worst, triple.eval(x + Vector::unit(d, n0 - 1)).lower);
              }
              if (used == 0) {
                c.status = CheckStatus::kSkipped;
                c.note = "no admissible n0 within the truncation";
                return;
              }
              c.value = worst;
              c.note = std::to_string(used) + " sampled points, largest n0 = " + std::to_string(largest_n0);
              set(c, worst >= threshold - c.tol);
            });
  }
  return report;
}

// ---------------------------------------------------------------------------

ScenarioReport scenario_lur_sum(const ScenarioConfig& cfg) {
  ScenarioReport report = start(cfg, "sup");
  Recorder rec(report);
  const std::size_t d = cfg.dim;
  const AmbientSpec sup_spec = AmbientSpec::make(d, BaseKind::kSup);
  const NormHandle sup = base_norm(sup_spec);
  const NormHandle euclid = base_norm(AmbientSpec::make(d, BaseKind::kEuclidean));
  const NormHandle norm = sum(sup, euclid);
  const std::vector<double> seps = {0.25, 0.5, 1.0};
  const std::size_t points = 20;
  LurOptions lur;
  lur.samples = std::max<std::size_t>(cfg.samples / 5, 20);

  report.primary = Table{{"point", "sep", "gap"}, {}};
  for (double sep : seps) {
    rec.run("gap.sep_" + delta_tag(sep), "LUR sum: positive LUR modulus", std::string("> 0.01"), 0.01,
            [&](Check& c) {
              double worst = std::numeric_limits<double>::infinity();
              for (std::size_t p = 0; p < points; ++p) {
                std::mt19937_64 rng(stream_seed(check_seed(cfg, "points"), p));
                const Vector x = unit_sample(norm, rng);
                LurOptions o = lur;
                o.seed = stream_seed(check_seed(cfg, "dirs-" + delta_tag(sep)), p);
                const double g = lur_gap_estimate(norm, x, sep, o).value;
                report.primary.rows.push_back({static_cast<double>(p), sep, g});
                worst = std::min(worst, g);
              }
              c.value = worst;
              c.note = "min over " + std::to_string(points) + " sampled unit points";
              set(c, worst > c.tol);
            });
  }

  rec.run("sup_control", "LUR sum: the sup norm alone has flat faces", 0.0, 1e-6, [&](Check& c) {
    double worst = 0.0;
    for (std::size_t p = 0; p < 5; ++p) {
      std::mt19937_64 rng(stream_seed(check_seed(cfg, "control"), p));
      const Vector x = p == 0 ? Vector::unit(d, 0) : unit_sample(sup, rng);
      for (double sep : seps) {
        LurOptions o = lur;
        o.samples = 20;
        o.refine = 0;
        o.seed = stream_seed(check_seed(cfg, "control-dirs"), p);
        worst = std::max(worst, lur_gap_estimate(sup, x, sep, o).value);
      }
    }
    c.value = worst;
    c.note = "max over 5 face points and the three separations";
    set(c, worst <= c.tol);
  });

  rec.run("fact_normalize", "LUR sum: normalized sum inequality", 0.0, cfg.closed_tol(), [&](Check& c) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      std::mt19937_64 rng(stream_seed(check_seed(cfg, "fact22"), i));
      std::uniform_real_distribution<double> scale(0.1, 3.0);
      Vector x = scale(rng) * random_gaussian(rng, d);
      Vector y = scale(rng) * random_gaussian(rng, d);
      double nx = norm.eval(x).mid();
      double ny = norm.eval(y).mid();
      if (ny > nx) std::swap(x, y), std::swap(nx, ny);
      if (!(ny < nx)) continue;
      const double mid = norm.eval(x / nx + y / ny).mid();
      const double lower = 2.0 - (nx + ny - norm.eval(x + y).mid()) / ny;
      if (mid > 2.0 + 1e-12 || mid < lower - 4.0 * c.tol) ++bad;
    }
    c.value = static_cast<double>(bad);
    c.note = "violations on " + std::to_string(cfg.samples) + " random pairs";
    set(c, bad == 0);
  });

  rec.run("fact_limits", "LUR sum: |x_n - t_n x| -> 0 forces x_n -> x", 0.0, 1e-12, [&](Check& c) {
    // |x_n - x| <= |x_n - t_n x| + |t_n - 1| and |t_n - 1| = ||x_n| - |t_n x|| <= |x_n - t_n x|.
    std::size_t bad = 0;
    double envelope = 0.0;
    for (std::size_t p = 0; p < 10; ++p) {
      std::mt19937_64 rng(stream_seed(check_seed(cfg, "fact23"), p));
      const Vector x = unit_sample(norm, rng);
      const Vector r = random_gaussian(rng, d);
      std::uniform_real_distribution<double> side(-1.0, 1.0);
      for (int n = 1; n <= 30; ++n) {
        const double t = 1.0 + 0.5 * side(rng) * std::ldexp(1.0, -n);  // t_n in [1/2, 3/2]
        const Vector xn = normalized(norm, t * x + std::ldexp(1.0, -n) * r);
        const double e = norm.eval(xn - t * x).mid();
        const double dist = norm.eval(xn - x).mid();
        envelope = std::max(envelope, e * std::ldexp(1.0, n));
        if (dist > 2.0 * e + c.tol) ++bad;
      }
    }
    c.value = static_cast<double>(bad);
    c.note = "violations of |x_n - x| <= 2 |x_n - t_n x| on 10 constructed sequences; envelope C = " +
             fmt(envelope);
    set(c, bad == 0);
  });
  return report;
}

}  // namespace normlab
