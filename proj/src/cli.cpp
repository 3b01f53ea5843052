#include "tfbm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "tfbm/error.hpp"
#include "tfbm/parallel.hpp"
#include "tfbm/qlines.hpp"
#include "tfbm/rng.hpp"
#include "tfbm/simulate.hpp"
#include "tfbm/svg.hpp"
#include "tfbm/testing.hpp"
#include "tfbm/textio.hpp"
#include "tfbm/version.hpp"

namespace tfbm::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct SpecArgs {
  std::string kind;
  double hurst = 0.5;
  double lambda = 0.0;
  bool tau_star = false;
};

struct GridArgs {
  double dt = 1.0;
  double horizon = 0.0;

  double step(std::size_t n) const { return horizon > 0.0 ? horizon / static_cast<double>(n) : dt; }
};

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out = ".";
  std::string replay;
};

struct SimulateArgs {
  SpecArgs spec;
  GridArgs grid;
  std::size_t n = 0;
  std::size_t m = 1;
  std::string method = "auto";
};

struct TestArgs {
  std::string input;
  SpecArgs spec;
  GridArgs grid;
  std::string stat = "tamsd";
  int tau = -1;
  double significance = 0.05;
  std::size_t draws = 10000;
};

struct PowerArgs {
  std::string preset;
  bool list_presets = false;
  SpecArgs spec;
  GridArgs grid;
  std::string stats = "acvf,dma,tamsd";
  int tau = -1;
  std::string alt_kinds;
  std::string alt_hurst;
  std::string alt_lambda;
  std::string sample_sizes = "1000";
  std::size_t m = 500;
  std::size_t draws = 10000;
  double significance = 0.05;
  std::string method = "auto";
  bool no_svg = false;
};

struct QlinesArgs {
  SpecArgs spec;
  GridArgs grid;
  std::size_t n = 1000;
  std::size_t m = 1000;
  std::string probs;
  std::string method = "auto";
};

std::string upper_snake(std::string s) {
  for (char& c : s) c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

void add_spec_options(CLI::App* app, SpecArgs& s, bool required) {
  auto* kind = app->add_option("--kind", s.kind, "Process kind: tfbm1, tfbm2, tfbm3 or fbm");
  auto* hurst = app->add_option("--hurst", s.hurst, "Hurst index H");
  if (required) {
    kind->required();
    hurst->required();
  }
  app->add_option("--lambda", s.lambda, "Tempering rate lambda (ignored for fbm)");
  app->add_flag("--lambda-is-tau-star", s.tau_star,
                "Read --lambda of tfbm3 as the relaxation time tau* = 1/lambda");
}

void add_grid_options(CLI::App* app, GridArgs& g) {
  auto* dt = app->add_option("--dt", g.dt, "Sampling step between observations")
                 ->check(CLI::PositiveNumber);
  app->add_option("--horizon", g.horizon, "Time horizon T; sets the step to T / n")
      ->check(CLI::PositiveNumber)
      ->excludes(dt);
}

ProcessSpec resolve_spec(const SpecArgs& a) {
  ProcessSpec s{parse_kind(a.kind), a.hurst, a.lambda};
  if (a.tau_star && s.kind == ProcessKind::TFBM_III) {
    if (!(a.lambda > 0.0)) throw DomainError("--lambda-is-tau-star needs a positive tau*");
    s.lambda = 1.0 / a.lambda;
  }
  s.validate();
  return s;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& f : textio::split(text, ',')) {
    const auto t = textio::trim(f);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::vector<std::size_t> parse_sizes(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& f : split_list(text)) {
    const double v = textio::parse_double(f);
    if (!(v >= 1.0) || v != std::floor(v)) throw DomainError("bad sample size '" + f + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw DomainError("empty sample-size list");
  return out;
}

struct OutputSet {
  fs::path dir;
  std::vector<std::string> files;

  std::ofstream open(const std::string& name) {
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    files.push_back(p.string());
    return os;
  }
};

void finish(std::ofstream& os) {
  os.flush();
  if (!os) throw std::runtime_error("write failed");
}

// Resolved options of the global app and the chosen subcommand, in a form
// that parses back to the same run.
std::vector<std::string> canonical_args(CLI::App& app, CLI::App* sub,
                                        const std::set<const CLI::Option*>& flags) {
  std::vector<std::string> args{sub->get_name()};
  auto emit = [&](CLI::App* a) {
    for (const CLI::Option* opt : a->get_options()) {
      if (opt->get_lnames().empty() || opt->count() == 0) continue;
      const std::string name = "--" + opt->get_lnames().front();
      if (name == "--help" || name == "--replay") continue;
      if (flags.count(opt)) {
        if (opt->as<bool>()) args.push_back(name);
        continue;
      }
      args.push_back(name);
      args.push_back(opt->results().back());
    }
  };
  emit(&app);
  emit(sub);
  return args;
}

void write_manifest(OutputSet& outputs, const std::string& command,
                    const std::vector<std::string>& args, std::uint64_t seed, double seconds) {
  json m;
  m["command"] = command;
  m["argv"] = args;
  json params = json::object();
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i].rfind("--", 0) != 0) continue;
    const std::string key = args[i].substr(2);
    if (i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0) {
      params[key] = args[++i];
    } else {
      params[key] = true;
    }
  }
  m["parameters"] = params;
  m["seed"] = seed;
  json versions = json::object();
  for (const auto& [k, v] : component_versions()) versions[k] = v;
  m["versions"] = versions;
  m["outputs"] = outputs.files;
  m["duration_seconds"] = seconds;
  fs::create_directories(outputs.dir);
  const fs::path p = outputs.dir / (command + ".manifest.json");
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << m.dump(2) << '\n';
  finish(os);
}

// ---------------------------------------------------------------- commands

void cmd_simulate(const SimulateArgs& a, const Globals& g, OutputSet& outputs, std::ostream& out) {
  const ProcessSpec spec = resolve_spec(a.spec);
  if (a.n < 1) throw DomainError("--n must be at least 1");
  if (a.m < 1) throw DomainError("--m must be at least 1");
  const TrajectoryBatch batch =
      simulate_process(spec, a.n, a.m, parse_method(a.method), g.seed, a.grid.step(a.n));
  auto os = outputs.open("trajectories.csv");
  write_csv(os, batch);
  finish(os);
  out << "simulated " << a.m << " paths of " << describe(spec) << ", n=" << a.n
      << ", dt=" << textio::fmt(batch.time_step) << " (" << to_string(batch.method_used)
      << ")\n";
}

void cmd_test(const TestArgs& a, const Globals& g, bool grid_given, OutputSet& outputs,
              std::ostream& out) {
  std::ifstream in(a.input);
  if (!in) throw DomainError("cannot read " + a.input);
  const TrajectoryBatch batch = read_trajectory_csv(in);
  const auto n = static_cast<std::size_t>(batch.n());

  TestConfig config;
  config.null_spec = resolve_spec(a.spec);
  config.statistic.kind = parse_statistic(a.stat);
  config.statistic.tau = a.tau >= 0 ? a.tau : default_tau(config.statistic.kind);
  config.n = n;
  config.significance = a.significance;
  config.null_draws = a.draws;
  config.seed = g.seed;
  config.time_step = grid_given ? a.grid.step(n) : batch.time_step;
  const NullModel model(config);
  const AcceptanceRegion& region = model.region();

  out << "null: " << describe(config.null_spec) << ", N=" << n
      << ", dt=" << textio::fmt(config.time_step) << '\n';
  out << "statistic: " << to_string(config.statistic.kind) << ", tau=" << config.statistic.tau;
  if (config.statistic.kind == StatisticKind::ACVF) {
    out << " (computed on the increments X(i) - X(i-1) with X(0) = 0)";
  }
  out << '\n';
  out << "acceptance region [" << textio::fmt(region.lower) << ", " << textio::fmt(region.upper)
      << "] at c=" << textio::fmt(config.significance) << " from L=" << config.null_draws
      << " null draws\n";

  auto os = outputs.open("test.csv");
  os << "# null_kind=" << to_string(config.null_spec.kind)
     << ",null_H=" << textio::fmt(config.null_spec.hurst)
     << ",null_lambda=" << textio::fmt(config.null_spec.lambda) << ",n=" << n
     << ",dt=" << textio::fmt(config.time_step) << ",c=" << textio::fmt(config.significance)
     << ",L=" << config.null_draws << ",seed=" << config.seed << '\n';
  os << "path,statistic,tau,value,lower,upper,decision\n";
  std::size_t rejected = 0;
  for (Eigen::Index k = 0; k < batch.m(); ++k) {
    std::vector<double> path(n);
    for (std::size_t i = 0; i < n; ++i) path[i] = batch.values(k, static_cast<Eigen::Index>(i));
    const TestOutcome t = model.test(path);
    rejected += t.rejected ? 1 : 0;
    os << k + 1 << ',' << to_string(config.statistic.kind) << ',' << config.statistic.tau << ','
       << textio::fmt(t.statistic_value) << ',' << textio::fmt(region.lower) << ','
       << textio::fmt(region.upper) << ',' << (t.rejected ? "reject" : "accept") << '\n';
    if (batch.m() <= 10) {
      out << "path " << k + 1 << ": value " << textio::fmt(t.statistic_value) << " -> "
          << (t.rejected ? "reject" : "accept") << '\n';
    }
  }
  finish(os);
  out << "rejected " << rejected << " of " << batch.m() << " paths\n";
}

void apply_preset(PowerArgs& a, CLI::App* sub) {
  const auto& all = presets();
  const auto it = std::find_if(all.begin(), all.end(),
                               [&](const Preset& p) { return p.name == a.preset; });
  if (it == all.end()) throw DomainError("unknown preset '" + a.preset + "' (see --list-presets)");
  auto unset = [&](const char* name) { return sub->get_option(name)->count() == 0; };
  if (unset("--kind")) a.spec.kind = it->kind;
  if (unset("--hurst")) a.spec.hurst = it->hurst;
  if (unset("--lambda")) a.spec.lambda = it->lambda;
  if (unset("--alt-kinds")) a.alt_kinds = it->alt_kinds;
  if (unset("--alt-hurst")) a.alt_hurst = it->alt_hurst;
  if (unset("--alt-lambda")) a.alt_lambda = it->alt_lambda;
  if (unset("--n")) a.sample_sizes = it->sample_sizes;
  if (unset("--horizon") && unset("--dt")) a.grid.horizon = it->horizon;
}

void cmd_power(PowerArgs a, CLI::App* sub, const Globals& g, OutputSet& outputs,
               std::ostream& out, std::ostream& err) {
  if (a.list_presets) {
    for (const Preset& p : presets()) out << p.name << "  " << p.description << '\n';
    return;
  }
  if (!a.preset.empty()) apply_preset(a, sub);
  if (a.spec.kind.empty()) throw DomainError("power: --kind and --hurst (or --preset) are required");
  if (a.m < 1) throw DomainError("--m must be at least 1");
  const ProcessSpec null_spec = resolve_spec(a.spec);

  std::vector<StatisticKind> stats;
  for (const auto& s : split_list(a.stats)) stats.push_back(parse_statistic(s));
  if (stats.empty()) throw DomainError("no statistic given");
  const std::vector<std::string> kinds =
      a.alt_kinds.empty() ? std::vector<std::string>{std::string(to_string(null_spec.kind))}
                          : split_list(a.alt_kinds);
  const std::vector<double> hs =
      a.alt_hurst.empty() ? std::vector<double>{null_spec.hurst} : parse_grid(a.alt_hurst);
  const std::vector<double> ls =
      a.alt_lambda.empty() ? std::vector<double>{a.spec.lambda} : parse_grid(a.alt_lambda);
  const std::vector<std::size_t> sizes = parse_sizes(a.sample_sizes);

  std::vector<ProcessSpec> alternatives;
  std::size_t skipped = 0;
  for (const auto& k : kinds) {
    const ProcessKind kind = parse_kind(k);
    for (double h : hs) {
      for (double l : ls) {
        SpecArgs sa{std::string(to_string(kind)), h, l, a.spec.tau_star};
        try {
          alternatives.push_back(resolve_spec(sa));
        } catch (const DomainError&) {
          ++skipped;
        }
      }
    }
  }
  if (alternatives.empty()) throw DomainError("no admissible alternative in the grid");
  if (skipped > 0) err << "note: skipped " << skipped << " inadmissible alternatives\n";
  const bool lambda_axis = hs.size() == 1 && ls.size() > 1;

  std::ostringstream rows;
  svg::Plot plot;
  plot.title = "Power against " + describe(null_spec) + ", c=" + textio::fmt(a.significance);
  plot.x_label = lambda_axis ? "lambda" : "H";
  plot.y_label = "power";
  plot.markers = true;

  for (std::size_t ni = 0; ni < sizes.size(); ++ni) {
    const std::size_t n = sizes[ni];
    for (std::size_t si = 0; si < stats.size(); ++si) {
      TestConfig config;
      config.null_spec = null_spec;
      config.statistic = {stats[si], a.tau >= 0 ? a.tau : default_tau(stats[si])};
      config.n = n;
      config.significance = a.significance;
      config.null_draws = a.draws;
      config.seed = stream_seed(g.seed, {0, n, static_cast<std::uint64_t>(stats[si])});
      config.time_step = a.grid.step(n);
      const NullModel model(config);
      const PowerCurve curve = power_study(model, alternatives, a.m, stream_seed(g.seed, {1, n}),
                                           parse_method(a.method));
      write_power_rows(rows, curve);
      out << "N=" << n << " " << to_string(stats[si]) << " tau=" << config.statistic.tau
          << ": region [" << textio::fmt(model.region().lower) << ", "
          << textio::fmt(model.region().upper) << "]\n";
      std::map<ProcessKind, svg::Series> by_kind;
      for (const PowerPoint& p : curve.points) {
        if (p.failed) {
          err << "failed: " << describe(p.alternative) << ": " << p.failure << '\n';
        }
        svg::Series& s = by_kind[p.alternative.kind];
        s.label = std::string(to_string(p.alternative.kind)) + " " +
                  std::string(to_string(stats[si])) + " N=" + std::to_string(n);
        s.x.push_back(lambda_axis ? p.alternative.lambda : p.alternative.hurst);
        s.y.push_back(p.power);
      }
      for (auto& [kind, s] : by_kind) plot.series.push_back(std::move(s));
    }
  }

  auto os = outputs.open("power.csv");
  os << "# null_kind=" << to_string(null_spec.kind) << ",null_H=" << textio::fmt(null_spec.hurst)
     << ",null_lambda=" << textio::fmt(null_spec.lambda) << ",c=" << textio::fmt(a.significance)
     << ",L=" << a.draws << ",seed=" << g.seed;
  if (a.grid.horizon > 0.0) {
    os << ",horizon=" << textio::fmt(a.grid.horizon);
  } else {
    os << ",dt=" << textio::fmt(a.grid.dt);
  }
  if (!a.preset.empty()) os << ",preset=" << a.preset;
  os << '\n';
  write_power_header(os);
  os << rows.str();
  finish(os);
  if (!a.no_svg) {
    auto svg_os = outputs.open("power.svg");
    svg::write(svg_os, plot);
    finish(svg_os);
  }
}

void cmd_qlines(const QlinesArgs& a, const Globals& g, OutputSet& outputs, std::ostream& out) {
  const ProcessSpec spec = resolve_spec(a.spec);
  const std::vector<double> probs = a.probs.empty() ? default_probabilities() : parse_grid(a.probs);
  validate_probabilities(probs);
  if (a.m < 100) throw DomainError("quantile lines need --m >= 100");
  if (a.n < 1) throw DomainError("--n must be at least 1");
  const TrajectoryBatch batch =
      simulate_process(spec, a.n, a.m, parse_method(a.method), g.seed, a.grid.step(a.n));
  const QuantileLines q = quantile_lines(batch, probs);
  auto csv = outputs.open("qlines.csv");
  write_csv(csv, q);
  finish(csv);
  auto svg_os = outputs.open("qlines.svg");
  write_svg(svg_os, q);
  finish(svg_os);
  out << probs.size() << " quantile lines of " << describe(spec) << " from " << a.m
      << " paths, n=" << a.n << ", dt=" << textio::fmt(batch.time_step) << '\n';
}

int run_once(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             int depth);

int replay(const Globals& g, bool out_given, std::ostream& out, std::ostream& err, int depth) {
  if (depth > 0) throw DomainError("a replayed manifest cannot itself request a replay");
  std::ifstream in(g.replay);
  if (!in) throw DomainError("cannot read manifest " + g.replay);
  json m;
  try {
    in >> m;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed manifest: ") + e.what());
  }
  if (!m.contains("argv") || !m["argv"].is_array()) throw DomainError("manifest has no argv");
  std::vector<std::string> args = m["argv"].get<std::vector<std::string>>();
  if (out_given) {
    const auto it = std::find(args.begin(), args.end(), "--out");
    if (it != args.end() && it + 1 != args.end()) {
      *(it + 1) = g.out;
    } else {
      args.push_back("--out");
      args.push_back(g.out);
    }
  }
  out << "replaying " << g.replay << '\n';
  return run_once(args, out, err, depth + 1);
}

int run_once(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             int depth) {
  CLI::App app{"Simulation and goodness-of-fit testing for tempered fractional Brownian motions",
               "tfbm"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  Globals g;
  std::set<const CLI::Option*> flags;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--replay", g.replay, "Re-run the command recorded in a manifest");

  SimulateArgs sim;
  auto* s_sim = app.add_subcommand("simulate", "Simulate trajectories");
  add_spec_options(s_sim, sim.spec, true);
  add_grid_options(s_sim, sim.grid);
  s_sim->add_option("--n", sim.n, "Points per path")->required();
  s_sim->add_option("--m", sim.m, "Number of paths");
  s_sim->add_option("--method", sim.method, "auto, cholesky or davies-harte");

  TestArgs tst;
  auto* s_test = app.add_subcommand("test", "Test trajectories against a null process");
  s_test->add_option("--input", tst.input, "Trajectory CSV")->required();
  add_spec_options(s_test, tst.spec, true);
  add_grid_options(s_test, tst.grid);
  s_test->add_option("--stat", tst.stat, "acvf, dma or tamsd");
  s_test->add_option("--tau", tst.tau, "Lag (window for dma); default 1, 2, 1");
  s_test->add_option("--c,--significance", tst.significance, "Significance level");
  s_test->add_option("--draws", tst.draws, "Null Monte Carlo draws L");

  PowerArgs pw;
  auto* s_power = app.add_subcommand("power", "Power study over a grid of alternatives");
  s_power->add_option("--preset", pw.preset, "Published figure configuration");
  s_power->add_flag("--list-presets", pw.list_presets, "List presets and exit");
  add_spec_options(s_power, pw.spec, false);
  add_grid_options(s_power, pw.grid);
  s_power->add_option("--stat", pw.stats, "Comma-separated statistics");
  s_power->add_option("--tau", pw.tau, "Lag for every statistic; default per statistic");
  s_power->add_option("--alt-kinds", pw.alt_kinds, "Alternative kinds (default: null kind)");
  s_power->add_option("--alt-hurst", pw.alt_hurst, "Alternative H grid, a:b:step or list");
  s_power->add_option("--alt-lambda", pw.alt_lambda, "Alternative lambda grid, a:b:step or list");
  s_power->add_option("--n", pw.sample_sizes, "Sample length(s), comma-separated");
  s_power->add_option("--m", pw.m, "Replicates per alternative");
  s_power->add_option("--draws", pw.draws, "Null Monte Carlo draws L");
  s_power->add_option("--c,--significance", pw.significance, "Significance level");
  s_power->add_option("--method", pw.method, "auto, cholesky or davies-harte");
  s_power->add_flag("--no-svg", pw.no_svg, "Skip the SVG plot");

  QlinesArgs ql;
  auto* s_ql = app.add_subcommand("qlines", "Quantile lines of simulated trajectories");
  add_spec_options(s_ql, ql.spec, true);
  add_grid_options(s_ql, ql.grid);
  s_ql->add_option("--n", ql.n, "Points per path");
  s_ql->add_option("--m", ql.m, "Number of paths (>= 100)");
  s_ql->add_option("--probs", ql.probs, "Probability levels, list or a:b:step");
  s_ql->add_option("--method", ql.method, "auto, cholesky or davies-harte");

  for (CLI::App* a : {&app, s_sim, s_test, s_power, s_ql}) {
    for (CLI::Option* opt : a->get_options()) {
      if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
      opt->envname("TFBM_" + upper_snake(opt->get_lnames().front()));
      if (opt->get_type_size() == 0) flags.insert(opt);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }

  set_thread_count(g.threads);
  if (!g.replay.empty()) return replay(g, app.get_option("--out")->count() > 0, out, err, depth);
  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    err << "a subcommand is required: simulate, test, power or qlines\n";
    return kInvalidInput;
  }
  CLI::App* sub = chosen.front();
  OutputSet outputs{fs::path(g.out), {}};
  const auto start = std::chrono::steady_clock::now();
  if (sub == s_sim) {
    cmd_simulate(sim, g, outputs, out);
  } else if (sub == s_test) {
    const bool grid_given =
        s_test->get_option("--dt")->count() > 0 || s_test->get_option("--horizon")->count() > 0;
    cmd_test(tst, g, grid_given, outputs, out);
  } else if (sub == s_power) {
    cmd_power(pw, s_power, g, outputs, out, err);
    if (pw.list_presets) return kOk;
  } else {
    cmd_qlines(ql, g, outputs, out);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(outputs, sub->get_name(), canonical_args(app, sub, flags), g.seed, seconds);
  for (const auto& f : outputs.files) out << "wrote " << f << '\n';
  return kOk;
}

std::string label(double v) {
  // 0.3 -> "03", 2 -> "2"
  std::string s = textio::fmt(v);
  s.erase(std::remove(s.begin(), s.end(), '.'), s.end());
  return s;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  const auto t = textio::trim(text);
  std::vector<double> out;
  if (t.find(':') != std::string_view::npos) {
    const auto parts = textio::split(t, ':');
    if (parts.size() != 3) throw DomainError("range must look like a:b:step");
    const double a = textio::parse_double(parts[0]);
    const double b = textio::parse_double(parts[1]);
    const double step = textio::parse_double(parts[2]);
    if (!(step > 0.0) || b < a) throw DomainError("range needs a <= b and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(std::round((a + static_cast<double>(i) * step) * 1e10) / 1e10);
    }
    return out;
  }
  for (const auto& f : split_list(t)) out.push_back(textio::parse_double(f));
  if (out.empty()) throw DomainError("empty value list");
  return out;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = [] {
    std::vector<Preset> v;
    const std::string lambda_grid = "0.1,0.25,0.5,0.75,1,1.5,2,2.5,3";
    const std::vector<std::pair<std::string, std::vector<double>>> nulls = {
        {"tfbm1", {0.3, 0.7}}, {"tfbm2", {0.3, 0.7}}, {"tfbm3", {0.7, 0.9}}};
    for (const auto& [kind, hursts] : nulls) {
      for (double h : hursts) {
        for (double l : {0.3, 2.0}) {
          Preset p;
          p.kind = kind;
          p.hurst = h;
          p.lambda = l;
          p.name = "paper-fig-" + kind + "-H" + label(h) + "-l" + label(l);
          p.description = kind + " null H0=" + textio::fmt(h) + ", lambda0=" + textio::fmt(l) +
                          "; tfbm1/tfbm2/tfbm3/fbm alternatives over H";
          p.alt_kinds = "tfbm1,tfbm2,tfbm3,fbm";
          p.alt_hurst = "0.1:0.9:0.1";
          p.alt_lambda = textio::fmt(l);
          v.push_back(p);

          p.name = "paper-fig-" + kind + "-lambda-H" + label(h) + "-l" + label(l);
          p.description = kind + " null H0=" + textio::fmt(h) + ", lambda0=" + textio::fmt(l) +
                          "; " + kind + " alternatives over lambda";
          p.alt_kinds = kind;
          p.alt_hurst = textio::fmt(h);
          p.alt_lambda = lambda_grid;
          v.push_back(p);
        }
      }
    }
    return v;
  }();
  return all;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_once(args, out, err, 0);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace tfbm::cli
