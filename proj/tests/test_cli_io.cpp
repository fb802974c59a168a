#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "betadens/config.hpp"
#include "betadens/csv.hpp"
#include "betadens/errors.hpp"
#include "betadens/experiment.hpp"
#include "betadens/svg.hpp"

using namespace betadens;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("betadens_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.0477) == "0.04770000000");
  CHECK(format_number(1.0) == "1.000000000");
  CHECK(format_number(-2.5e-7) == "-2.500000000e-07");
}

TEST_CASE("risk table layout") {
  RiskReport r = summarize(5000, 17, 1.0, {0.0477});
  CsvTable t = risk_table({r});
  const std::string text = t.to_string();
  CHECK(text.rfind("n,mean_risk,std_error,m,trials,p\n", 0) == 0);
  CHECK(text.find("\n5000,0.04770000000,") != std::string::npos);
  CHECK(risk_table({}).to_string() == "n,mean_risk,std_error,m,trials,p\n");
}

TEST_CASE("empty table writes a header-only file") {
  const fs::path dir = scratch_dir("empty");
  emit_csv({}, dir / "t.csv");
  CHECK(slurp(dir / "t.csv") == "n,mean_risk,std_error,m,trials,p\n");
}

TEST_CASE("CSV round trip") {
  CsvTable t{{"a", "b,c", "d"}, {{std::int64_t{1}, 0.25, std::string("x \"y\"")},
                                 {std::int64_t{-3}, 1e-12, std::string()}}};
  const std::string text = t.to_string();
  const auto rows = parse_csv(text);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][1] == "b,c");
  CHECK(rows[1][2] == "x \"y\"");
  CHECK(std::stod(rows[2][1]) == doctest::Approx(1e-12).epsilon(1e-10));
  CsvTable again{rows[0], {}};
  for (std::size_t k = 1; k < rows.size(); ++k) {
    std::vector<CsvCell> row(rows[k].begin(), rows[k].end());
    again.rows.push_back(row);
  }
  CHECK(again.to_string() == text);
}

TEST_CASE("write failures raise IoError") {
  const fs::path dir = scratch_dir("ioerr");
  write_text_file(dir / "file", "x");
  CHECK_THROWS_AS(write_text_file(dir / "file" / "sub.csv", "x"), IoError);
}

TEST_CASE("config parsing and canonical form") {
  const std::string text =
      "# sweep\n"
      "trials = 5\n"
      "experiment = RiskTableSweep\n"
      "\n"
      "  n_start=5000  \n"
      "n_stop = 15000\n";
  const ExperimentConfig cfg = ExperimentConfig::parse(text);
  CHECK(cfg.kind() == ExperimentKind::RiskTableSweep);
  CHECK(cfg.get_int("n_start", 0) == 5000);
  CHECK(cfg.get_int("n_step", 5000) == 5000);
  const std::string canon = cfg.serialize();
  CHECK(canon.rfind("experiment = RiskTableSweep\n", 0) == 0);
  CHECK(ExperimentConfig::parse(canon).serialize() == canon);
  CHECK(ExperimentConfig::parse(
            "n_stop = 15000\nn_start = 5000\nexperiment = RiskTableSweep\ntrials = 5\n")
            .serialize() == canon);
}

TEST_CASE("config validation") {
  try {
    ExperimentConfig::parse("experiment = RiskTableSweep\nbandwith = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("bandwith") != std::string::npos);
  }
  CHECK_THROWS_AS(ExperimentConfig::parse("n = 5\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("experiment = Nope\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("experiment = RiskTableSweep\ntrials = 2\ntrials = 3\n"),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("experiment = RiskTableSweep\ntrials = many\n"),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("experiment = KernelGaussianFigure\nkernel = box\n"),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("experiment = RiskTableSweep\nno equals sign\n"),
                  ConfigError);
  CHECK_NOTHROW(ExperimentConfig::parse("experiment = KernelGaussianFigure\nbandwidth = auto\n"));
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/betadens.cfg"), IoError);
}

TEST_CASE("risk sweep writes one row per grid point") {
  const fs::path dir = scratch_dir("sweep");
  const ExperimentConfig cfg = ExperimentConfig::parse(
      "experiment = RiskTableSweep\nn_start = 5000\nn_stop = 110000\nn_step = 5000\n"
      "trials = 300\n");
  RunOptions opts;
  opts.out_dir = dir;
  opts.trials = 2;
  const RunResult res = run_experiment(cfg, opts);
  CHECK(count_lines(res.primary_csv) == 23);
  const auto rows = parse_csv(res.primary_csv);
  CHECK(rows[1][0] == "5000");
  CHECK(rows[1][3] == "17");
  CHECK(rows[22][0] == "110000");
  CHECK(rows[22][4] == "2");
  CHECK(fs::exists(dir / "risk_table_sweep.csv"));
  CHECK(fs::exists(dir / "risk_table_sweep_trials.csv"));
  CHECK(fs::exists(dir / "risk_table_sweep_slope.csv"));
  CHECK(slurp(dir / "risk_table_sweep.csv") == res.primary_csv);
}

TEST_CASE("intermittent-map histogram figure") {
  const fs::path dir = scratch_dir("lsv");
  const ExperimentConfig cfg = ExperimentConfig::parse(
      "experiment = LsvHistogramFigure\nname = lsv34\ngamma = 0.75\nn = 10000000\n");
  RunOptions opts;
  opts.out_dir = dir;
  const RunResult res = run_experiment(cfg, opts);
  CHECK(count_lines(res.primary_csv) == 36);
  const std::string svg = slurp(dir / "lsv34.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("#d62728") != std::string::npos);
  CHECK(fs::exists(dir / "lsv34_summary.csv"));
}

TEST_CASE("other experiments produce their files") {
  const fs::path dir = scratch_dir("others");
  RunOptions opts;
  opts.out_dir = dir;
  for (const char* text : {"experiment = KernelGaussianFigure\nn = 2000\n",
                           "experiment = HistogramTwoLevelFigure\nn = 2000\n",
                           "experiment = RiskSlopePlot\nn_start = 1000\nn_stop = 3000\n"
                           "n_step = 1000\ntrials = 3\nloglog = true\n",
                           "experiment = CoefficientReport\nk_max = 6\nx0_samples = 100\n"
                           "pair_max_lag = 4\npair_grid = 32\n"}) {
    const ExperimentConfig cfg = ExperimentConfig::parse(text);
    const RunResult res = run_experiment(cfg, opts);
    CHECK(!res.files.empty());
    for (const auto& f : res.files) CHECK(fs::file_size(f) > 0);
    CHECK(!res.primary_csv.empty());
  }
}

TEST_CASE("experiments are byte-deterministic") {
  const ExperimentConfig cfg = ExperimentConfig::parse(
      "experiment = RiskSlopePlot\nn_start = 2000\nn_stop = 6000\nn_step = 2000\ntrials = 9\n");
  const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
  RunOptions oa, ob;
  oa.out_dir = a;
  oa.threads = 1;
  ob.out_dir = b;
  ob.threads = 8;
  const RunResult ra = run_experiment(cfg, oa);
  const RunResult rb = run_experiment(cfg, ob);
  REQUIRE(ra.files.size() == rb.files.size());
  for (std::size_t k = 0; k < ra.files.size(); ++k) {
    CHECK(ra.files[k].filename() == rb.files[k].filename());
    CHECK(slurp(ra.files[k]) == slurp(rb.files[k]));
  }
}

TEST_CASE("svg output is deterministic") {
  auto build = [] {
    SvgFigure fig;
    fig.set_title("t");
    fig.add_bars({0.0, 0.5}, {0.5, 1.0}, {1.0, 2.0});
    fig.add_line({0.0, 1.0}, {0.0, 2.0}, "#d62728");
    fig.set_y_range(0.0, 2.0);
    return fig.render();
  };
  CHECK(build() == build());
  CHECK(build().find("</svg>") != std::string::npos);
  CHECK(svg_number(0.1) == "0.1");
}
