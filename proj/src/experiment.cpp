#include "betadens/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "betadens/csv.hpp"
#include "betadens/depcoeff.hpp"
#include "betadens/errors.hpp"
#include "betadens/estimators.hpp"
#include "betadens/process.hpp"
#include "betadens/risk.hpp"
#include "betadens/rng.hpp"
#include "betadens/schedules.hpp"
#include "betadens/svg.hpp"

namespace betadens {

namespace {

std::string default_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::KernelGaussianFigure:
      return "kernel_gaussian_figure";
    case ExperimentKind::HistogramTwoLevelFigure:
      return "histogram_two_level_figure";
    case ExperimentKind::RiskTableSweep:
      return "risk_table_sweep";
    case ExperimentKind::RiskSlopePlot:
      return "risk_slope_plot";
    case ExperimentKind::LsvHistogramFigure:
      return "lsv_histogram_figure";
    case ExperimentKind::CoefficientReport:
      return "coefficient_report";
  }
  return "experiment";
}

// Resolved settings shared by every experiment.
struct Context {
  const ExperimentConfig& config;
  std::filesystem::path out_dir;
  std::string name;
  std::uint64_t seed;
  std::int64_t burn_in;
  int threads;
  std::optional<int> trials_override;
  bool write_files;
  RunResult result;

  std::filesystem::path path(const std::string& suffix, const std::string& ext) const {
    return out_dir / (name + suffix + ext);
  }

  void write(const std::filesystem::path& file, const std::string& text) {
    if (!write_files) return;
    write_text_file(file, text);
    result.files.push_back(file);
  }

  std::int64_t at_least(const std::string& key, std::int64_t fallback, std::int64_t min) const {
    const std::int64_t v = config.get_int(key, fallback);
    if (v < min) {
      throw ConfigError("key '" + key + "' must be >= " + std::to_string(min) + ", got " +
                        std::to_string(v));
    }
    return v;
  }

  int trials(std::int64_t fallback) const {
    const auto t = trials_override ? *trials_override : at_least("trials", fallback, 1);
    if (t < 1) throw ConfigError("trials must be >= 1");
    return static_cast<int>(t);
  }
};

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.begin(), v.end()}; }

double nice_upper(double v) { return v > 0.0 ? 1.1 * v : 1.0; }

// ---------------------------------------------------------------------------

void run_kernel_gaussian(Context& ctx) {
  const auto& cfg = ctx.config;
  const std::int64_t n = ctx.at_least("n", 1000, 2);
  const double mu = cfg.get_real("mu", 10.0);
  const double sigma2 = cfg.get_real("sigma2", 2.0);
  if (!(sigma2 > 0.0)) throw ConfigError("key 'sigma2' must be > 0");
  const KernelSpec kernel = make_kernel(kernel_name_from_string(cfg.get_text("kernel", "epanechnikov")));
  const auto grid_points = ctx.at_least("grid_points", 512, 2);

  const Sample sample = generate(ProcessSpec::ar1_gaussian(n, mu, sigma2, ctx.seed, ctx.burn_in));
  const auto fixed_h = cfg.get_real_or_auto("bandwidth");
  const double h = fixed_h ? *fixed_h : silverman_bandwidth(sample);
  if (!(h > 0.0)) throw ConfigError("key 'bandwidth' must be > 0");
  const DensityEstimate estimate = kernel_estimate(sample, kernel, h);
  const ReferenceDensity truth = ReferenceDensity::gaussian(mu, sigma2);
  const double l1 = lp_distance(estimate, truth, 1.0, truth.support());

  const double sigma = std::sqrt(sigma2);
  const Eigen::VectorXd xs = Eigen::VectorXd::LinSpaced(grid_points, mu - 4 * sigma, mu + 4 * sigma);
  const Eigen::VectorXd fn = evaluate(estimate, xs);
  const Eigen::VectorXd f = xs.unaryExpr([&](double x) { return truth(x); });

  CsvTable grid{{"x", "estimate", "density"}, {}};
  for (Eigen::Index i = 0; i < xs.size(); ++i) grid.rows.push_back({xs[i], fn[i], f[i]});
  ctx.result.primary_csv = grid.to_string();
  ctx.write(ctx.path("", ".csv"), ctx.result.primary_csv);

  CsvTable summary{{"n", "mu", "sigma2", "kernel", "bandwidth", "l1_distance"},
                   {{n, mu, sigma2, std::string(to_string(kernel.name)), h, l1}}};
  ctx.write(ctx.path("_summary", ".csv"), summary.to_string());

  SvgFigure fig;
  fig.set_title("Kernel estimate, n = " + std::to_string(n));
  fig.set_labels("y", "density");
  fig.set_x_range(xs[0], xs[xs.size() - 1]);
  fig.set_y_range(0.0, nice_upper(std::max(fn.maxCoeff(), f.maxCoeff())));
  fig.add_line(to_std(xs), to_std(fn), "#000000", 1.5);
  fig.add_line(to_std(xs), to_std(f), "#d62728", 1.5, true);
  fig.add_legend("estimate", "#000000");
  fig.add_legend("N(mu, sigma2)", "#d62728");
  ctx.write(ctx.path("", ".svg"), fig.render());
}

// Bars of a histogram over [0, 1].
void add_histogram_bars(SvgFigure& fig, const Eigen::VectorXd& heights) {
  const auto m = heights.size();
  std::vector<double> lefts, rights;
  for (Eigen::Index j = 0; j < m; ++j) {
    lefts.push_back(static_cast<double>(j) / m);
    rights.push_back(static_cast<double>(j + 1) / m);
  }
  fig.add_bars(lefts, rights, to_std(heights));
}

void run_histogram_two_level(Context& ctx) {
  const auto& cfg = ctx.config;
  const std::int64_t n = ctx.at_least("n", 1000, 1);
  const double c = cfg.get_real("bins_constant", 1.0);
  if (!(c > 0.0)) throw ConfigError("key 'bins_constant' must be > 0");
  const auto bins_opt = cfg.get_int_or_auto("bins");
  if (bins_opt && *bins_opt < 1) throw ConfigError("key 'bins' must be >= 1");
  const int m = bins_opt ? static_cast<int>(*bins_opt) : histogram_bins_bv(n, c);

  const Sample sample = generate(ProcessSpec::ar1_piecewise(n, ctx.seed, ctx.burn_in));
  const DensityEstimate estimate = projection_estimate(sample, m, PolyBasis(0));
  const ReferenceDensity truth = ReferenceDensity::piecewise_two_level();
  const double l1 = lp_distance(estimate, truth, 1.0, {0.0, 1.0});
  const Eigen::VectorXd heights = std::get<PiecewisePolyEstimate>(estimate).heights();

  CsvTable bins{{"bin", "left", "right", "height", "density_at_mid"}, {}};
  for (int j = 0; j < m; ++j) {
    const double left = static_cast<double>(j) / m, right = static_cast<double>(j + 1) / m;
    bins.rows.push_back({std::int64_t{j + 1}, left, right, heights[j], truth(0.5 * (left + right))});
  }
  ctx.result.primary_csv = bins.to_string();
  ctx.write(ctx.path("", ".csv"), ctx.result.primary_csv);
  CsvTable summary{{"n", "m", "l1_distance"}, {{n, std::int64_t{m}, l1}}};
  ctx.write(ctx.path("_summary", ".csv"), summary.to_string());

  SvgFigure fig;
  fig.set_title("Histogram, n = " + std::to_string(n) + ", m = " + std::to_string(m));
  fig.set_labels("y", "density");
  fig.set_x_range(0.0, 1.0);
  fig.set_y_range(0.0, nice_upper(std::max(heights.maxCoeff(), 1.5)));
  add_histogram_bars(fig, heights);
  fig.add_line({0.0, 0.25, 0.25, 0.75, 0.75, 1.0}, {0.5, 0.5, 1.5, 1.5, 0.5, 0.5}, "#d62728", 2.0);
  fig.add_legend("true density", "#d62728");
  ctx.write(ctx.path("", ".svg"), fig.render());
}

void run_risk_sweep(Context& ctx, bool plot) {
  const auto& cfg = ctx.config;
  const std::int64_t n_start = ctx.at_least("n_start", 5000, 1);
  const std::int64_t n_stop = ctx.at_least("n_stop", 110000, n_start);
  const std::int64_t n_step = ctx.at_least("n_step", 5000, 1);
  const int trials = ctx.trials(300);
  const double p = cfg.get_real("p", 1.0);
  if (!(p >= 1.0)) throw ConfigError("key 'p' must be >= 1");
  const int degree = static_cast<int>(ctx.at_least("degree", 0, 0));
  if (degree > kMaxPolyDegree) throw ConfigError("key 'degree' must be <= 10");

  EstimatorConfig estimator = EstimatorConfig::histogram(std::nullopt, cfg.get_real("bins_constant", 1.0));
  if (!(estimator.bins_constant > 0.0)) throw ConfigError("key 'bins_constant' must be > 0");
  if (degree > 0) {
    estimator.kind = EstimatorConfig::Kind::Projection;
    estimator.degree = degree;
  }
  const ProcessSpec process = ProcessSpec::ar1_piecewise(n_start, ctx.seed, ctx.burn_in);
  const ReferenceDensity truth = ReferenceDensity::piecewise_two_level();

  std::vector<RiskReport> reports;
  for (std::int64_t n = n_start; n <= n_stop; n += n_step) {
    reports.push_back(monte_carlo_risk(process, estimator, truth, {0.0, 1.0}, n, trials, p,
                                       ctx.seed, MonteCarloOptions{ctx.threads}));
  }

  ctx.result.primary_csv = risk_table(reports).to_string();
  ctx.write(ctx.path("", ".csv"), ctx.result.primary_csv);

  CsvTable per_trial{{"n", "trial", "risk"}, {}};
  for (const auto& r : reports) {
    for (std::size_t t = 0; t < r.per_trial.size(); ++t) {
      per_trial.rows.push_back({r.n, static_cast<std::int64_t>(t + 1), r.per_trial[t]});
    }
  }
  ctx.write(ctx.path("_trials", ".csv"), per_trial.to_string());

  std::vector<std::pair<double, double>> points;
  for (const auto& r : reports) points.emplace_back(static_cast<double>(r.n), r.mean_risk);
  if (points.size() >= 3 && std::all_of(points.begin(), points.end(),
                                        [](const auto& pt) { return pt.second > 0.0; })) {
    CsvTable slope{{"slope", "reference_slope"}, {{loglog_slope(points), -1.0 / 3.0}}};
    ctx.write(ctx.path("_slope", ".csv"), slope.to_string());
  }

  if (!plot) return;
  const bool loglog = cfg.get_bool("loglog", false);
  const double rate_c = cfg.get_real("rate_constant", 1.0);
  std::vector<double> ns, risks, rate;
  for (const auto& r : reports) {
    ns.push_back(static_cast<double>(r.n));
    risks.push_back(r.mean_risk);
  }
  const Eigen::VectorXd curve_n = Eigen::VectorXd::LinSpaced(200, ns.front(), ns.back());
  for (double x : curve_n) rate.push_back(rate_c * std::pow(x, -1.0 / 3.0));
  const double y_max = std::max(*std::max_element(risks.begin(), risks.end()),
                                *std::max_element(rate.begin(), rate.end()));
  const double y_min = std::min(*std::min_element(risks.begin(), risks.end()),
                                *std::min_element(rate.begin(), rate.end()));

  SvgFigure fig;
  fig.set_title("Integrated risk against n");
  fig.set_labels("n", "L" + svg_number(p) + " integrated risk");
  fig.set_log_log(loglog);
  if (loglog) {
    fig.set_x_range(ns.front() * 0.9, ns.back() * 1.1);
    fig.set_y_range(y_min * 0.8, y_max * 1.25);
  } else {
    fig.set_x_range(0.0, ns.back() * 1.05);
    fig.set_y_range(0.0, nice_upper(y_max));
  }
  fig.add_line(ns, risks, "#000000", 1.0);
  fig.add_points(ns, risks, "#000000", 3.0);
  fig.add_line(to_std(curve_n), rate, "#d62728", 1.5);
  fig.add_legend("Monte Carlo risk", "#000000");
  fig.add_legend("C n^(-1/3)", "#d62728");
  ctx.write(ctx.path("", ".svg"), fig.render());
}

void run_lsv_histogram(Context& ctx) {
  const auto& cfg = ctx.config;
  const std::int64_t n = ctx.at_least("n", 60000, 1);
  const double gamma = cfg.get_real("gamma", 0.25);
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("key 'gamma' must lie in (0, 1)");
  const auto bins_opt = cfg.get_int_or_auto("bins");
  if (bins_opt && *bins_opt < 1) throw ConfigError("key 'bins' must be >= 1");
  const int m = bins_opt ? static_cast<int>(*bins_opt) : histogram_bins_lsv(n, gamma);
  const int skip = static_cast<int>(ctx.at_least("skip_bins", 1, 0));
  if (skip >= m) throw ConfigError("key 'skip_bins' must be smaller than the bin count");

  const Sample sample = generate(ProcessSpec::lsv(n, gamma, ctx.seed, ctx.burn_in));
  const DensityEstimate estimate = projection_estimate(sample, m, PolyBasis(0));
  const Eigen::VectorXd heights = std::get<PiecewisePolyEstimate>(estimate).heights();
  const EnvelopeRatios env = envelope_check(estimate, gamma, skip);

  CsvTable bins{{"bin", "left", "right", "height", "equivalent_density_at_mid"}, {}};
  for (int j = 0; j < m; ++j) {
    const double left = static_cast<double>(j) / m, right = static_cast<double>(j + 1) / m;
    bins.rows.push_back({std::int64_t{j + 1}, left, right, heights[j],
                         equivalent_density(0.5 * (left + right), gamma)});
  }
  ctx.result.primary_csv = bins.to_string();
  ctx.write(ctx.path("", ".csv"), ctx.result.primary_csv);
  CsvTable summary{{"n", "gamma", "m", "skip_bins", "min_ratio", "max_ratio", "bins_used"},
                   {{n, gamma, std::int64_t{m}, std::int64_t{skip}, env.min_ratio, env.max_ratio,
                     std::int64_t{env.bins_used}}}};
  ctx.write(ctx.path("_summary", ".csv"), summary.to_string());

  // Equivalent density on a grid that is geometric near the singularity.
  std::vector<double> xs, fs;
  const double x_first = 0.25 / m;
  for (int k = 0; k <= 400; ++k) {
    const double x = x_first * std::pow(1.0 / x_first, k / 400.0);
    xs.push_back(x);
    fs.push_back(equivalent_density(x, gamma));
  }
  SvgFigure fig;
  fig.set_title("T_gamma histogram, gamma = " + svg_number(gamma) + ", n = " + std::to_string(n));
  fig.set_labels("x", "density");
  fig.set_x_range(0.0, 1.0);
  fig.set_y_range(0.0, nice_upper(heights.maxCoeff()));
  add_histogram_bars(fig, heights);
  fig.add_line(xs, fs, "#d62728", 2.0);
  fig.add_legend("equivalent density", "#d62728");
  ctx.write(ctx.path("", ".svg"), fig.render());
}

void run_coefficients(Context& ctx) {
  const int k_max = static_cast<int>(ctx.at_least("k_max", 20, 1));
  if (k_max > kMaxClosedFormLag) throw ConfigError("key 'k_max' must be <= 40");
  const auto samples = ctx.at_least("x0_samples", 10000, 1);
  const int panels = static_cast<int>(ctx.at_least("quad_panels", 64, 16));
  const int grid = static_cast<int>(ctx.at_least("pair_grid", 256, 2));
  const int pair_max = static_cast<int>(ctx.at_least("pair_max_lag", 8, 0));
  if (pair_max > 12) throw ConfigError("key 'pair_max_lag' must be <= 12");

  Rng rng(ctx.seed);
  std::vector<double> x0s(static_cast<std::size_t>(samples));
  for (double& x : x0s) x = rng.uniform();

  CsvTable table{{"k", "bound", "max_b0_sampled", "beta1", "pair_grid_lower_bound"}, {}};
  for (int k = 1; k <= k_max; ++k) {
    double max_b0 = 0.0;
    for (double x0 : x0s) max_b0 = std::max(max_b0, b0_exact(x0, k));
    std::vector<CsvCell> row{std::int64_t{k}, std::ldexp(1.0, -k), max_b0};
    row.emplace_back(k <= kMaxEnumeratedLag ? CsvCell{beta1_estimate(k, panels)}
                                            : CsvCell{std::string()});
    if (k + 1 <= pair_max) {
      // E over X_0 by the midpoint rule on 16 cells.
      double mean = 0.0;
      for (int c = 0; c < 16; ++c) mean += b0_pair_grid_lower_bound((c + 0.5) / 16, k + 1, k, grid);
      row.emplace_back(mean / 16);
    } else {
      row.emplace_back(std::string());
    }
    table.rows.push_back(std::move(row));
  }
  ctx.result.primary_csv = table.to_string();
  ctx.write(ctx.path("", ".csv"), ctx.result.primary_csv);
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const int threads = options.threads ? *options.threads
                                      : static_cast<int>(config.get_int("threads", 1));
  if (threads < 1) throw ConfigError("threads must be >= 1");
  const std::int64_t burn_in = config.get_int("burn_in", kDefaultBurnIn);
  if (burn_in < 0) throw ConfigError("key 'burn_in' must be >= 0");
  if (options.trials && *options.trials < 1) throw ConfigError("trials must be >= 1");

  Context ctx{config,
              options.out_dir ? *options.out_dir
                              : std::filesystem::path(config.get_text("out_dir", ".")),
              config.get_text("name", default_name(config.kind())),
              options.seed ? *options.seed : config.get_uint("seed", kDefaultSeed),
              burn_in,
              threads,
              options.trials,
              options.write_files,
              {}};
  if (ctx.write_files) {
    std::error_code ec;
    std::filesystem::create_directories(ctx.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + ctx.out_dir.string() + "'");
  }

  switch (config.kind()) {
    case ExperimentKind::KernelGaussianFigure:
      run_kernel_gaussian(ctx);
      break;
    case ExperimentKind::HistogramTwoLevelFigure:
      run_histogram_two_level(ctx);
      break;
    case ExperimentKind::RiskTableSweep:
      run_risk_sweep(ctx, false);
      break;
    case ExperimentKind::RiskSlopePlot:
      run_risk_sweep(ctx, true);
      break;
    case ExperimentKind::LsvHistogramFigure:
      run_lsv_histogram(ctx);
      break;
    case ExperimentKind::CoefficientReport:
      run_coefficients(ctx);
      break;
  }
  return std::move(ctx.result);
}

}  // namespace betadens
