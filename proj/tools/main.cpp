// Command-line surface for the harmonic-mean limit-law toolkit.  Every
// subcommand runs one experiment, writes CSV or JSON, and drops a manifest
// with parameter values and output digests so runs can be reproduced
// bit-exactly.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hml/charfn.hpp"
#include "hml/digest.hpp"
#include "hml/distribution.hpp"
#include "hml/errors.hpp"
#include "hml/harmonic.hpp"
#include "hml/inversion.hpp"
#include "hml/learner.hpp"
#include "hml/overlap.hpp"
#include "hml/secular.hpp"
#include "hml/stream.hpp"

using nlohmann::json;

namespace {

constexpr const char* kArtifactVersion = "1.0.0";
constexpr int kSchemaVersion = 1;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw hml::domain_error(std::string("invalid ") + what +
                              " list entry: '" + item + "'");
    }
  }
  if (out.empty())
    throw hml::domain_error(std::string("empty ") + what + " list");
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text,
                                         const char* what) {
  std::vector<std::int64_t> out;
  for (const double v : parse_double_list(text, what)) {
    const auto i = static_cast<std::int64_t>(v);
    if (static_cast<double>(i) != v)
      throw hml::domain_error(std::string(what) + " entries must be integers");
    out.push_back(i);
  }
  return out;
}

struct GridSpec {
  double lo = 0.0, hi = 0.0, step = 0.0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  const auto c1 = text.find(':');
  const auto c2 = text.rfind(':');
  if (c1 == std::string::npos || c2 == c1)
    throw hml::domain_error("grid must be lo:hi:step");
  try {
    g.lo = std::stod(text.substr(0, c1));
    g.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    g.step = std::stod(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw hml::domain_error("grid must be lo:hi:step with numeric fields");
  }
  if (!(g.step > 0.0) || !(g.hi > g.lo))
    throw hml::domain_error("grid requires hi > lo and step > 0");
  return g;
}

// Family flags shared by sampling subcommands.
struct FamilyOpts {
  std::optional<double> beta;
  std::optional<double> plateau_c0;
  std::optional<double> plateau_t;

  void attach(CLI::App* cmd) {
    cmd->add_option("--beta", beta,
                    "Power family exponent in (-1, 1] (density (1+b)x^b)");
    cmd->add_option("--plateau-c0", plateau_c0,
                    "Plateau family: density value on (0, t]");
    cmd->add_option("--plateau-t", plateau_t,
                    "Plateau family: breakpoint t in (0, 1)");
  }

  bool specified() const {
    return beta.has_value() || plateau_c0.has_value() || plateau_t.has_value();
  }

  hml::DistributionSpec resolve() const {
    if (beta.has_value()) {
      if (plateau_c0.has_value() || plateau_t.has_value())
        throw hml::domain_error("--beta conflicts with --plateau-*");
      return hml::make_power(*beta);
    }
    if (plateau_c0.has_value() != plateau_t.has_value())
      throw hml::domain_error("plateau family needs both --plateau-c0 and --plateau-t");
    if (plateau_c0.has_value())
      return hml::make_plateau(*plateau_c0, *plateau_t);
    throw hml::domain_error("choose a family: --beta or --plateau-c0/--plateau-t");
  }

  json describe() const {
    json j;
    if (beta) j["beta"] = *beta;
    if (plateau_c0) j["plateau_c0"] = *plateau_c0;
    if (plateau_t) j["plateau_t"] = *plateau_t;
    return j;
  }
};

struct CommonOpts {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string format = "csv";

  void attach(CLI::App* cmd, const std::string& default_out) {
    out = default_out;
    cmd->add_option("--seed", seed, "Master seed (default 1)");
    cmd->add_option("--threads", threads,
                    "Worker cap; 0 = hardware. Never changes results");
    cmd->add_option("--out", out, "Output path (default " + default_out + ")");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
};

// A simple column table that can serialize as CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::initializer_list<std::string> cells) {
    rows.emplace_back(cells);
  }

  void write(const std::string& path, const std::string& format) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw hml::state_error("cannot open output file: " + path);
    if (format == "csv") {
      for (std::size_t c = 0; c < columns.size(); ++c)
        f << columns[c] << (c + 1 == columns.size() ? "\n" : ",");
      for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
          f << row[c] << (c + 1 == row.size() ? "\n" : ",");
    } else {
      json j;
      j["columns"] = columns;
      auto& jr = j["rows"] = json::array();
      for (const auto& row : rows) jr.push_back(row);
      f << j.dump(2) << "\n";
    }
    if (!f) throw hml::state_error("failed writing output file: " + path);
  }
};

void write_manifest(const std::string& command, const json& parameters,
                    std::uint64_t seed, double wall_s,
                    const std::vector<std::string>& outputs) {
  json m;
  m["schema_version"] = kSchemaVersion;
  m["command"] = command;
  m["parameters"] = parameters;
  m["master_seed"] = seed;
  m["artifact_version"] = kArtifactVersion;
  m["wall_time_s"] = wall_s;
  auto& outs = m["outputs"] = json::array();
  for (const auto& path : outputs)
    outs.push_back({{"path", path}, {"sha256", hml::sha256_file(path)}});
  const std::string mpath = outputs.empty()
                                ? command + ".manifest.json"
                                : outputs.front() + ".manifest.json";
  std::ofstream f(mpath, std::ios::binary);
  if (!f) throw hml::state_error("cannot open manifest file: " + mpath);
  f << m.dump(2) << "\n";
}

double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

hml::StableLawSpec resolve_law(const FamilyOpts& family, double alpha,
                               double scale, double shift) {
  if (family.specified()) return hml::limit_law(family.resolve());
  return hml::make_stable_law(alpha, scale, shift);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Harmonic-mean limit laws: sampling, characteristic-function inversion,\n"
      "derivative root solvers, structured spectra, and learner convergence."};
  app.require_subcommand(1);

  // ----- sample -------------------------------------------------------
  auto* c_sample = app.add_subcommand("sample", "Draw sorted samples");
  FamilyOpts f_sample;
  CommonOpts o_sample;
  std::int64_t sample_n = 100, sample_reps = 1;
  f_sample.attach(c_sample);
  o_sample.attach(c_sample, "sample.csv");
  c_sample->add_option("--n", sample_n, "Sample size");
  c_sample->add_option("--reps", sample_reps, "Independent replicates");

  // ----- harmonic -----------------------------------------------------
  auto* c_harm = app.add_subcommand(
      "harmonic", "Monte Carlo estimate of a harmonic-mean statistic");
  FamilyOpts f_harm;
  CommonOpts o_harm;
  std::int64_t harm_n = 100000, harm_reps = 4000;
  std::string harm_stat = "H_log_n";
  f_harm.attach(c_harm);
  o_harm.attach(c_harm, "harmonic.json");
  o_harm.format = "json";
  c_harm->add_option("--n", harm_n, "Sample size per replicate");
  c_harm->add_option("--reps", harm_reps, "Replicates");
  c_harm->add_option("--stat", harm_stat,
                     "One of H, X, Y, H_log_n, n_H, T");

  // ----- scan ---------------------------------------------------------
  auto* c_scan = app.add_subcommand(
      "scan", "Statistic means over a ladder of sample sizes");
  FamilyOpts f_scan;
  CommonOpts o_scan;
  std::string scan_ns = "1000,10000,100000";
  std::int64_t scan_reps = 1000;
  std::string scan_stat = "H_log_n";
  f_scan.attach(c_scan);
  o_scan.attach(c_scan, "scan.csv");
  c_scan->add_option("--ns", scan_ns, "Comma-separated sample sizes");
  c_scan->add_option("--reps", scan_reps, "Replicates per size");
  c_scan->add_option("--stat", scan_stat, "One of H, X, Y, H_log_n, n_H, T");

  // ----- stable-density ----------------------------------------------
  auto* c_sd = app.add_subcommand(
      "stable-density", "Invert a limit-law characteristic function");
  FamilyOpts f_sd;
  CommonOpts o_sd;
  double sd_alpha = 1.0, sd_scale = 1.0, sd_shift = 0.0, sd_eps = 1e-8;
  std::string sd_grid = "-5:60:0.05";
  bool sd_cdf = false;
  f_sd.attach(c_sd);
  o_sd.attach(c_sd, "stable-density.csv");
  c_sd->add_option("--alpha", sd_alpha, "Stability exponent in (0, 2)");
  c_sd->add_option("--scale", sd_scale, "Exponent coefficient");
  c_sd->add_option("--shift", sd_shift, "Location (alpha = 1 only)");
  c_sd->add_option("--grid", sd_grid, "Evaluation grid lo:hi:step");
  c_sd->add_option("--eps", sd_eps, "Inversion error target");
  c_sd->add_flag("--cdf", sd_cdf, "Also tabulate the distribution function");

  // ----- finite-n-density --------------------------------------------
  auto* c_fd = app.add_subcommand(
      "finite-n-density", "Invert the exact n-sample characteristic function");
  FamilyOpts f_fd;
  CommonOpts o_fd;
  std::int64_t fd_n = 100;
  double fd_eps = 1e-7;
  std::string fd_grid = "-5:60:0.05";
  f_fd.attach(c_fd);
  o_fd.attach(c_fd, "finite-n-density.csv");
  c_fd->add_option("--n", fd_n, "Sample size");
  c_fd->add_option("--grid", fd_grid, "Evaluation grid lo:hi:step");
  c_fd->add_option("--eps", fd_eps, "Inversion error target");

  // ----- density-gap --------------------------------------------------
  auto* c_gap = app.add_subcommand(
      "density-gap", "Sup-norm gap between n-sample and limit densities");
  FamilyOpts f_gap;
  CommonOpts o_gap;
  std::string gap_ns = "100,1000,10000";
  std::string gap_grid = "-5:60:0.05";
  double gap_eps = 1e-6;
  f_gap.attach(c_gap);
  o_gap.attach(c_gap, "density-gap.csv");
  c_gap->add_option("--ns", gap_ns, "Comma-separated sample sizes");
  c_gap->add_option("--grid", gap_grid, "Common grid lo:hi:step");
  c_gap->add_option("--eps", gap_eps, "Inversion error target");

  // ----- zolotarev ----------------------------------------------------
  auto* c_zol = app.add_subcommand(
      "zolotarev", "Density duality between exponents alpha and 1/alpha");
  CommonOpts o_zol;
  double zol_alpha = 1.5, zol_eps = 1e-8;
  std::string zol_xs = "0.5,1,2,3";
  o_zol.attach(c_zol, "zolotarev.csv");
  c_zol->add_option("--alpha", zol_alpha, "Exponent in (1, 2)");
  c_zol->add_option("--xs", zol_xs, "Comma-separated evaluation points");
  c_zol->add_option("--eps", zol_eps, "Inversion error target");

  // ----- poly-roots ---------------------------------------------------
  auto* c_pr = app.add_subcommand(
      "poly-roots", "Roots of the derivative of a product polynomial");
  FamilyOpts f_pr;
  CommonOpts o_pr;
  std::string pr_points;
  std::int64_t pr_n = 100;
  f_pr.attach(c_pr);
  o_pr.attach(c_pr, "poly-roots.csv");
  c_pr->add_option("--points", pr_points,
                   "Explicit comma-separated base roots (else sampled)");
  c_pr->add_option("--n", pr_n, "Sampled base-root count");

  // ----- matrix-spectrum ---------------------------------------------
  auto* c_ms = app.add_subcommand(
      "matrix-spectrum", "Eigenvalues of an equal-off-diagonal stochastic matrix");
  FamilyOpts f_ms;
  CommonOpts o_ms;
  std::string ms_overlaps;
  std::int64_t ms_n = 10;
  bool ms_learner = false;
  f_ms.attach(c_ms);
  o_ms.attach(c_ms, "matrix-spectrum.csv");
  c_ms->add_option("--overlaps", ms_overlaps,
                   "Explicit comma-separated diagonal entries");
  c_ms->add_option("--n", ms_n, "Sampled instance size");
  c_ms->add_flag("--learner", ms_learner,
                 "Sampled instance gets an absorbing first state");

  // ----- cn -----------------------------------------------------------
  auto* c_cn = app.add_subcommand(
      "cn", "Leading decay coefficient of the absorbing chain");
  FamilyOpts f_cn;
  CommonOpts o_cn;
  std::string cn_overlaps;
  std::int64_t cn_n = 500, cn_reps = 200;
  f_cn.attach(c_cn);
  o_cn.attach(c_cn, "cn.csv");
  c_cn->add_option("--overlaps", cn_overlaps,
                   "Explicit comma-separated diagonal entries (single instance)");
  c_cn->add_option("--n", cn_n, "Sampled instance size");
  c_cn->add_option("--reps", cn_reps, "Sampled instances");

  // ----- learner ------------------------------------------------------
  auto* c_lr = app.add_subcommand(
      "learner", "Convergence-time experiments for the absorbing chain");
  FamilyOpts f_lr;
  CommonOpts o_lr;
  std::string lr_overlaps, lr_ns, lr_mode = "exact";
  double lr_delta = 0.01;
  std::int64_t lr_reps = 50, lr_steps = 100, lr_sim_reps = 100000;
  std::int64_t lr_max_steps = 10'000'000;
  f_lr.attach(c_lr);
  o_lr.attach(c_lr, "learner.csv");
  c_lr->add_option("--overlaps", lr_overlaps,
                   "Explicit diagonal entries: single-instance mode");
  c_lr->add_option("--ns", lr_ns, "Comma-separated sizes: scaling-table mode");
  c_lr->add_option("--delta", lr_delta, "Failure-probability threshold");
  c_lr->add_option("--reps", lr_reps, "Replicates per size (scaling mode)");
  c_lr->add_option("--mode", lr_mode, "exact or simulate (single instance)")
      ->check(CLI::IsMember({"exact", "simulate"}));
  c_lr->add_option("--steps", lr_steps, "Horizon for simulate mode");
  c_lr->add_option("--sim-reps", lr_sim_reps, "Chains for simulate mode");
  c_lr->add_option("--max-steps", lr_max_steps,
                   "Propagation step cap (exact mode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints usage/help text
    return code == 0 ? 0 : 1;      // any parse failure is a parameter error
  }

  try {
    const double t0 = now_s();

    if (c_sample->parsed()) {
      const auto dist = f_sample.resolve();
      if (sample_n < 1 || sample_reps < 1)
        throw hml::domain_error("--n and --reps must be positive");
      const hml::StreamKey key{o_sample.seed, {}};
      Table t;
      t.columns = {"rep", "index", "value"};
      for (std::int64_t r = 0; r < sample_reps; ++r) {
        const auto s = hml::sample_sorted(dist, sample_n,
                                          hml::substream(key, r));
        for (Eigen::Index i = 0; i < s.size(); ++i)
          t.add_row({std::to_string(r), std::to_string(i),
                     fmt(s.values[i])});
      }
      t.write(o_sample.out, o_sample.format);
      json p = f_sample.describe();
      p["n"] = sample_n;
      p["reps"] = sample_reps;
      p["threads"] = o_sample.threads;
      p["format"] = o_sample.format;
      write_manifest("sample", p, o_sample.seed, now_s() - t0,
                     {o_sample.out});
      return 0;
    }

    if (c_harm->parsed()) {
      const auto dist = f_harm.resolve();
      hml::ScalarStat stat;
      if (!hml::parse_scalar_stat(harm_stat, &stat))
        throw hml::domain_error("unknown statistic: " + harm_stat);
      const hml::StreamKey key{o_harm.seed, {}};
      const auto summary = hml::mc_estimate(stat, dist, harm_n, harm_reps,
                                            key, o_harm.threads);
      if (o_harm.format == "json") {
        json j;
        j["statistic"] = summary.statistic_id;
        j["n"] = summary.n;
        j["reps"] = summary.reps;
        j["mean"] = summary.mean;
        j["std_error"] = summary.std_error;
        j["master_seed"] = summary.master_seed;
        std::ofstream f(o_harm.out, std::ios::binary);
        if (!f) throw hml::state_error("cannot open output file: " + o_harm.out);
        f << j.dump(2) << "\n";
      } else {
        Table t;
        t.columns = {"statistic", "n", "reps", "mean", "std_error"};
        t.add_row({summary.statistic_id, std::to_string(summary.n),
                   std::to_string(summary.reps), fmt(summary.mean),
                   fmt(summary.std_error)});
        t.write(o_harm.out, o_harm.format);
      }
      json p = f_harm.describe();
      p["n"] = harm_n;
      p["reps"] = harm_reps;
      p["stat"] = harm_stat;
      p["threads"] = o_harm.threads;
      p["format"] = o_harm.format;
      write_manifest("harmonic", p, o_harm.seed, now_s() - t0, {o_harm.out});
      return 0;
    }

    if (c_scan->parsed()) {
      const auto dist = f_scan.resolve();
      hml::ScalarStat stat;
      if (!hml::parse_scalar_stat(scan_stat, &stat))
        throw hml::domain_error("unknown statistic: " + scan_stat);
      const auto ns = parse_int_list(scan_ns, "size");
      const hml::StreamKey key{o_scan.seed, {}};
      const auto rows = hml::limit_constant_scan(stat, dist, ns, scan_reps,
                                                 key, o_scan.threads);
      Table t;
      t.columns = {"n", "mean", "std_error"};
      for (const auto& s : rows)
        t.add_row({std::to_string(s.n), fmt(s.mean), fmt(s.std_error)});
      t.write(o_scan.out, o_scan.format);
      json p = f_scan.describe();
      p["ns"] = scan_ns;
      p["reps"] = scan_reps;
      p["stat"] = scan_stat;
      p["threads"] = o_scan.threads;
      p["format"] = o_scan.format;
      write_manifest("scan", p, o_scan.seed, now_s() - t0, {o_scan.out});
      return 0;
    }

    if (c_sd->parsed()) {
      const auto law = resolve_law(f_sd, sd_alpha, sd_scale, sd_shift);
      const auto F = hml::CharFunction::stable(law);
      const GridSpec g = parse_grid(sd_grid);
      const auto grid = hml::invert_to_density(F, g.lo, g.hi, g.step, sd_eps);
      Table t;
      if (sd_cdf) {
        const auto cdf = hml::cdf_with_tails(grid, F, sd_eps);
        t.columns = {"x", "density", "cdf"};
        for (Eigen::Index i = 0; i < grid.x.size(); ++i)
          t.add_row({fmt(grid.x[i]), fmt(grid.g[i]), fmt(cdf.G()[i])});
      } else {
        t.columns = {"x", "density"};
        for (Eigen::Index i = 0; i < grid.x.size(); ++i)
          t.add_row({fmt(grid.x[i]), fmt(grid.g[i])});
      }
      t.write(o_sd.out, o_sd.format);
      json p = f_sd.describe();
      p["alpha"] = law.alpha;
      p["scale"] = law.scale;
      p["shift"] = law.shift;
      p["grid"] = sd_grid;
      p["eps"] = sd_eps;
      p["cdf"] = sd_cdf;
      p["error_bound"] = grid.error_bound;
      p["truncation_K"] = grid.truncation_K;
      p["format"] = o_sd.format;
      write_manifest("stable-density", p, o_sd.seed, now_s() - t0, {o_sd.out});
      return 0;
    }

    if (c_fd->parsed()) {
      const auto dist = f_fd.resolve();
      const auto F = hml::CharFunction::finite_n(dist, fd_n);
      const GridSpec g = parse_grid(fd_grid);
      const auto grid = hml::invert_to_density(F, g.lo, g.hi, g.step, fd_eps);
      Table t;
      t.columns = {"x", "density"};
      for (Eigen::Index i = 0; i < grid.x.size(); ++i)
        t.add_row({fmt(grid.x[i]), fmt(grid.g[i])});
      t.write(o_fd.out, o_fd.format);
      json p = f_fd.describe();
      p["n"] = fd_n;
      p["grid"] = fd_grid;
      p["eps"] = fd_eps;
      p["error_bound"] = grid.error_bound;
      p["truncation_K"] = grid.truncation_K;
      p["format"] = o_fd.format;
      write_manifest("finite-n-density", p, o_fd.seed, now_s() - t0,
                     {o_fd.out});
      return 0;
    }

    if (c_gap->parsed()) {
      const auto dist = f_gap.resolve();
      const auto ns = parse_int_list(gap_ns, "size");
      const GridSpec g = parse_grid(gap_grid);
      const auto rows =
          hml::density_gap_experiment(dist, ns, g.lo, g.hi, g.step, gap_eps);
      Table t;
      t.columns = {"n", "sup_gap", "rate", "ratio"};
      for (const auto& r : rows)
        t.add_row({std::to_string(r.n), fmt(r.sup_gap), fmt(r.rate),
                   fmt(r.ratio)});
      t.write(o_gap.out, o_gap.format);
      json p = f_gap.describe();
      p["ns"] = gap_ns;
      p["grid"] = gap_grid;
      p["eps"] = gap_eps;
      p["format"] = o_gap.format;
      write_manifest("density-gap", p, o_gap.seed, now_s() - t0, {o_gap.out});
      return 0;
    }

    if (c_zol->parsed()) {
      const auto xs = parse_double_list(zol_xs, "evaluation-point");
      const auto pts = hml::zolotarev_duality(xs, zol_alpha, zol_eps);
      Table t;
      t.columns = {"x", "lhs", "rhs", "abs_diff"};
      for (const auto& pt : pts)
        t.add_row({fmt(pt.x), fmt(pt.lhs), fmt(pt.rhs),
                   fmt(std::fabs(pt.lhs - pt.rhs))});
      t.write(o_zol.out, o_zol.format);
      json p;
      p["alpha"] = zol_alpha;
      p["xs"] = zol_xs;
      p["eps"] = zol_eps;
      p["format"] = o_zol.format;
      write_manifest("zolotarev", p, o_zol.seed, now_s() - t0, {o_zol.out});
      return 0;
    }

    if (c_pr->parsed()) {
      hml::RootSet base;
      if (!pr_points.empty()) {
        const auto pts = parse_double_list(pr_points, "base-root");
        base.values =
            Eigen::Map<const Eigen::ArrayXd>(pts.data(), pts.size());
        std::sort(base.values.data(), base.values.data() + base.values.size());
      } else {
        const auto dist = f_pr.resolve();
        base = hml::sample_sorted(dist, pr_n, hml::StreamKey{o_pr.seed, {}});
      }
      const auto dr = hml::derivative_roots(base);
      Table t;
      t.columns = {"index", "root", "bracket_lo", "bracket_hi"};
      for (Eigen::Index i = 0; i < dr.mu.size(); ++i)
        t.add_row({std::to_string(i), fmt(dr.mu[i]),
                   fmt(dr.brackets[i].first), fmt(dr.brackets[i].second)});
      t.write(o_pr.out, o_pr.format);
      json p = f_pr.describe();
      if (!pr_points.empty()) p["points"] = pr_points;
      p["n"] = pr_n;
      p["format"] = o_pr.format;
      write_manifest("poly-roots", p, o_pr.seed, now_s() - t0, {o_pr.out});
      return 0;
    }

    if (c_ms->parsed()) {
      Eigen::ArrayXd a;
      bool learner_mode = ms_learner;
      if (!ms_overlaps.empty()) {
        const auto vals = parse_double_list(ms_overlaps, "overlap");
        a = Eigen::Map<const Eigen::ArrayXd>(vals.data(), vals.size());
        learner_mode = !vals.empty() && vals.front() == 1.0;
      } else {
        const auto dist = f_ms.resolve();
        const auto xs = hml::sample_sorted(
            dist, ms_learner ? ms_n - 1 : ms_n, hml::StreamKey{o_ms.seed, {}});
        a.resize(ms_n);
        if (ms_learner) {
          a[0] = 1.0;
          for (Eigen::Index i = 0; i + 1 < ms_n; ++i)
            a[i + 1] = 1.0 - xs.values[i];
        } else {
          for (Eigen::Index i = 0; i < ms_n; ++i) a[i] = 1.0 - xs.values[i];
        }
      }
      const auto M = hml::from_overlaps(a, learner_mode);
      const auto sp = hml::spectrum(M);
      Table t;
      t.columns = {"index", "mu", "lambda"};
      for (Eigen::Index i = 0; i < sp.mu.size(); ++i)
        t.add_row({std::to_string(i), fmt(sp.mu[i]), fmt(sp.lambda[i])});
      t.write(o_ms.out, o_ms.format);
      json p = f_ms.describe();
      if (!ms_overlaps.empty()) p["overlaps"] = ms_overlaps;
      p["n"] = ms_n;
      p["learner"] = learner_mode;
      p["format"] = o_ms.format;
      write_manifest("matrix-spectrum", p, o_ms.seed, now_s() - t0,
                     {o_ms.out});
      return 0;
    }

    if (c_cn->parsed()) {
      Table t;
      t.columns = {"rep", "exact", "approx", "mu_star", "lambda_star"};
      json p = f_cn.describe();
      if (!cn_overlaps.empty()) {
        const auto vals = parse_double_list(cn_overlaps, "overlap");
        Eigen::ArrayXd a =
            Eigen::Map<const Eigen::ArrayXd>(vals.data(), vals.size());
        const auto M = hml::from_overlaps(a, true);
        const auto r = hml::compute_cn(M);
        t.add_row({"0", fmt(r.exact), fmt(r.approx), fmt(r.mu_star),
                   fmt(r.lambda_star)});
        p["overlaps"] = cn_overlaps;
      } else {
        const auto dist = f_cn.resolve();
        if (cn_n < 2 || cn_reps < 1)
          throw hml::domain_error("--n must be >= 2 and --reps positive");
        const hml::StreamKey key{o_cn.seed, {}};
        for (std::int64_t r = 0; r < cn_reps; ++r) {
          const auto xs =
              hml::sample_sorted(dist, cn_n - 1, hml::substream(key, r));
          Eigen::ArrayXd a(cn_n);
          a[0] = 1.0;
          for (Eigen::Index i = 0; i + 1 < cn_n; ++i)
            a[i + 1] = 1.0 - xs.values[i];
          const auto M = hml::from_overlaps(a, true);
          const auto res = hml::compute_cn(M);
          t.add_row({std::to_string(r), fmt(res.exact), fmt(res.approx),
                     fmt(res.mu_star), fmt(res.lambda_star)});
        }
        p["n"] = cn_n;
        p["reps"] = cn_reps;
      }
      t.write(o_cn.out, o_cn.format);
      p["format"] = o_cn.format;
      write_manifest("cn", p, o_cn.seed, now_s() - t0, {o_cn.out});
      return 0;
    }

    if (c_lr->parsed()) {
      json p = f_lr.describe();
      p["delta"] = lr_delta;
      p["format"] = o_lr.format;
      if (!lr_overlaps.empty()) {
        const auto vals = parse_double_list(lr_overlaps, "overlap");
        Eigen::ArrayXd a =
            Eigen::Map<const Eigen::ArrayXd>(vals.data(), vals.size());
        const auto M = hml::from_overlaps(a, true);
        Table t;
        if (lr_mode == "exact") {
          const auto run = hml::n_delta(M, lr_delta, lr_max_steps);
          t.columns = {"step", "q"};
          for (const auto& [step, q] : run.trace)
            t.add_row({std::to_string(step), fmt(q)});
          p["mode"] = "exact";
          p["max_steps"] = lr_max_steps;
          p["overlaps"] = lr_overlaps;
          p["n_delta"] = run.n_delta;
        } else {
          const hml::StreamKey key{o_lr.seed, {}};
          const double q = hml::simulate_q(M, lr_steps, lr_sim_reps, key,
                                           o_lr.threads);
          t.columns = {"step", "q_simulated", "q_exact"};
          t.add_row({std::to_string(lr_steps), fmt(q),
                     fmt(hml::q_exact(M, lr_steps))});
          p["mode"] = "simulate";
          p["steps"] = lr_steps;
          p["sim_reps"] = lr_sim_reps;
          p["overlaps"] = lr_overlaps;
        }
        t.write(o_lr.out, o_lr.format);
        write_manifest("learner", p, o_lr.seed, now_s() - t0, {o_lr.out});
        return 0;
      }
      if (lr_ns.empty())
        throw hml::domain_error("learner needs --overlaps or --ns");
      const auto dist = f_lr.resolve();
      const auto ns = parse_int_list(lr_ns, "size");
      const hml::StreamKey key{o_lr.seed, {}};
      const auto rows = hml::scaling_experiment(dist, lr_delta, ns, lr_reps,
                                                key, o_lr.threads);
      Table t;
      t.columns = {"n", "median_steps", "predicted", "ratio"};
      for (const auto& r : rows)
        t.add_row({std::to_string(r.n), fmt(r.median_steps), fmt(r.predicted),
                   fmt(r.ratio)});
      t.write(o_lr.out, o_lr.format);
      p["ns"] = lr_ns;
      p["reps"] = lr_reps;
      p["threads"] = o_lr.threads;
      write_manifest("learner", p, o_lr.seed, now_s() - t0, {o_lr.out});
      return 0;
    }

    std::fprintf(stderr, "no subcommand handled\n");
    return 1;
  } catch (const hml::domain_error& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return 1;
  } catch (const hml::numerical_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return 2;
  }
}
