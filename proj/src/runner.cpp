#include "starknls/runner.hpp"

#include "starknls/errors.hpp"
#include "starknls/snapshot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace starknls {

namespace fs = std::filesystem;

std::string format_double17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void GuardSummary::absorb(const Trajectory& traj) {
  for (const auto& rec : traj.records) {
    max_boundary_mass = std::max(max_boundary_mass, rec.boundary_mass);
    max_spectral_tail = std::max(max_spectral_tail, rec.spectral_tail);
  }
}

bool LemmaReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const LemmaCheck& c) { return c.pass || c.skipped; });
}

namespace {

GridPtr grid_from(const ExperimentConfig& cfg) {
  return make_grid(cfg.dim, cfg.points, cfg.lengths);
}

Field initial_from(const ExperimentConfig& cfg, const GridPtr& g) {
  InitialData d = cfg.initial;
  if (d.kind == InitialData::Kind::custom) {
    Field f = read_snapshot(cfg.custom_path, *g);
    d.custom = std::move(f);
  }
  return realize_initial_data(d, g, cfg.problem.epsilon, cfg.guards);
}

RunOptions options_from(const ExperimentConfig& cfg) {
  RunOptions opts;
  opts.sample_every = cfg.sample_every;
  opts.guards = cfg.guards;
  return opts;
}

fs::path resolve(const std::string& out_dir, const std::string& rel) {
  fs::path p(rel);
  if (p.is_absolute() || out_dir.empty()) return p;
  return fs::path(out_dir) / p;
}

fs::path with_suffix(const fs::path& p, const std::string& tag) {
  fs::path q = p;
  const std::string ext = q.extension().string();
  q.replace_extension();
  q += tag;
  q += ext;
  return q;
}

void ensure_parent(const fs::path& p) {
  const fs::path parent = p.parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void print_guard_summary(std::ostream& log, const GuardSummary& gs) {
  log << "guards: max_boundary_mass=" << format_double17(gs.max_boundary_mass)
      << " max_spectral_tail=" << format_double17(gs.max_spectral_tail) << "\n";
}

double je_l2(const std::vector<Field>& comps) {
  double s = 0.0;
  for (const auto& c : comps) s += mass(c);
  return std::sqrt(s);
}

}  // namespace

void write_diagnostics_csv(const std::string& path, int dim,
                           const std::vector<DiagnosticsRecord>& records) {
  ensure_parent(path);
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw FormatError("cannot open '" + path + "' for writing");
  os << "t,mass,grad_norm,lr_norm_2s2,natural_energy,shifted_energy,pc_quantity,je_norm,"
        "momentum_invariant_1";
  if (dim == 2) os << ",momentum_invariant_2";
  os << ",boundary_mass,spectral_tail,peak_location_1";
  if (dim == 2) os << ",peak_location_2";
  os << "\n";
  for (const auto& r : records) {
    os << format_double17(r.t) << ',' << format_double17(r.mass) << ','
       << format_double17(r.grad_norm) << ',' << format_double17(r.lr_norm_2s2) << ','
       << format_double17(r.natural_energy) << ',' << format_double17(r.shifted_energy) << ','
       << format_double17(r.pc_quantity) << ',' << format_double17(r.je_norm) << ','
       << format_double17(r.momentum_invariant[0]);
    if (dim == 2) os << ',' << format_double17(r.momentum_invariant[1]);
    os << ',' << format_double17(r.boundary_mass) << ',' << format_double17(r.spectral_tail)
       << ',' << format_double17(r.peak_location[0]);
    if (dim == 2) os << ',' << format_double17(r.peak_location[1]);
    os << "\n";
  }
}

RunReport run_single_report(const ExperimentConfig& cfg) {
  const GridPtr g = grid_from(cfg);
  const Field u0 = initial_from(cfg, g);
  RunReport rep;
  rep.traj = propagate(u0, 0.0, cfg.t_final, cfg.scheme, cfg.problem, options_from(cfg));
  rep.guards.absorb(rep.traj);
  return rep;
}

int run_single(const ExperimentConfig& cfg, const std::string& out_dir, bool quiet,
               std::ostream& log) {
  const GridPtr g = grid_from(cfg);
  const Field u0 = initial_from(cfg, g);
  RunOptions opts = options_from(cfg);

  int snap_index = 0;
  int sample_index = 0;
  if (!cfg.snapshot_dir.empty()) {
    const fs::path snap_dir = resolve(out_dir, cfg.snapshot_dir);
    fs::create_directories(snap_dir);
    opts.observer = [&, snap_dir](const Field& u, const DiagnosticsRecord&) {
      if (sample_index % cfg.snapshot_every == 0) {
        std::ostringstream name;
        name << "snapshot_" << std::setw(6) << std::setfill('0') << snap_index << ".nlsf";
        write_snapshot(u, snap_dir / name.str(), cfg.problem.epsilon);
        ++snap_index;
      }
      ++sample_index;
    };
  }

  Trajectory traj = propagate(u0, 0.0, cfg.t_final, cfg.scheme, cfg.problem, opts);
  GuardSummary gs;
  gs.absorb(traj);

  const fs::path csv = resolve(out_dir, cfg.csv_path);
  write_diagnostics_csv(csv.string(), cfg.dim, traj.records);

  print_guard_summary(log, gs);
  if (!quiet) {
    log << "run: " << traj.records.size() << " samples, stop=" << to_string(traj.stop)
        << " at t=" << format_double17(traj.stop_time) << "\n";
    if (traj.monitor.triggered)
      log << "blow-up monitor triggered at t=" << format_double17(traj.monitor.t_trigger) << "\n";
    log << "csv: " << csv.string() << "\n";
  }
  if (traj.stop == StopReason::guard_boundary || traj.stop == StopReason::guard_spectral ||
      traj.stop == StopReason::non_finite) {
    log << "guard failure: " << to_string(traj.stop) << " at t="
        << format_double17(traj.stop_time) << "\n";
    return 2;
  }
  return 0;
}

CompareReport run_compare_report(const ExperimentConfig& cfg) {
  if (!cfg.problem.stark_on)
    throw ConfigValidityError("config error: problem.stark_on: compare requires stark_on = true");
  const GridPtr g = grid_from(cfg);
  const Field u0 = initial_from(cfg, g);

  RunOptions opts = options_from(cfg);
  opts.keep_snapshots = true;

  const Problem stark_p = cfg.problem;
  const Problem free_p = cfg.problem.free_counterpart();

  auto fut_stark = std::async(std::launch::async, [&] {
    return propagate(u0, 0.0, cfg.t_final, cfg.scheme, stark_p, opts);
  });
  auto fut_free = std::async(std::launch::async, [&] {
    return propagate(u0, 0.0, cfg.t_final, cfg.scheme, free_p, opts);
  });

  CompareReport rep;
  rep.stark = fut_stark.get();
  rep.free_run = fut_free.get();
  rep.guards.absorb(rep.stark);
  rep.guards.absorb(rep.free_run);

  if (rep.stark.stop != StopReason::completed || rep.free_run.stop != StopReason::completed) {
    rep.guard_failure = true;
    std::ostringstream d;
    if (rep.stark.stop != StopReason::completed)
      d << "stark run stopped (" << to_string(rep.stark.stop) << ") at t="
        << format_double17(rep.stark.stop_time) << "; ";
    if (rep.free_run.stop != StopReason::completed)
      d << "free run stopped (" << to_string(rep.free_run.stop) << ") at t="
        << format_double17(rep.free_run.stop_time) << "; ";
    rep.guard_detail = d.str();
  }

  const std::size_t m = std::min(rep.stark.times.size(), rep.free_run.times.size());
  for (std::size_t j = 0; j < m; ++j) {
    const double t = rep.stark.times[j];
    const Field pulled = ah_inverse(rep.stark.snapshots[j], StarkFrame::at(t, stark_p));
    const double denom = l2_norm(rep.free_run.snapshots[j]);
    const double d = denom > 0.0 ? l2_distance(pulled, rep.free_run.snapshots[j]) / denom : 0.0;
    rep.times.push_back(t);
    rep.discrepancy.push_back(d);
    rep.max_discrepancy = std::max(rep.max_discrepancy, d);
  }
  return rep;
}

int run_compare(const ExperimentConfig& cfg, const std::string& out_dir, bool quiet,
                std::ostream& log) {
  CompareReport rep = run_compare_report(cfg);

  const fs::path base = resolve(out_dir, cfg.csv_path);
  write_diagnostics_csv(base.string(), cfg.dim, rep.stark.records);
  write_diagnostics_csv(with_suffix(base, ".free").string(), cfg.dim, rep.free_run.records);
  {
    const fs::path dpath = with_suffix(base, ".discrepancy");
    ensure_parent(dpath);
    std::ofstream os(dpath, std::ios::trunc);
    os << "t,discrepancy\n";
    for (std::size_t j = 0; j < rep.times.size(); ++j)
      os << format_double17(rep.times[j]) << ',' << format_double17(rep.discrepancy[j]) << "\n";
  }

  print_guard_summary(log, rep.guards);
  if (rep.guard_failure) {
    log << "compare: guard failure: " << rep.guard_detail << "\n";
    return 2;
  }
  if (!quiet) {
    log << "compare: max relative discrepancy " << format_double17(rep.max_discrepancy)
        << " over " << rep.times.size() << " samples (tolerance "
        << format_double17(cfg.tolerance) << ")\n";
  }
  const bool pass = rep.max_discrepancy <= cfg.tolerance;
  log << (pass ? "compare: PASS\n" : "compare: FAIL\n");
  return pass ? 0 : 1;
}

LemmaReport run_lemma_check_report(const ExperimentConfig& cfg) {
  LemmaReport rep;
  const GridPtr g = grid_from(cfg);
  const Field u0 = initial_from(cfg, g);
  const Problem& p = cfg.problem;
  const auto e = p.effective_field();

  // eikonal identity over random frames
  {
    LemmaCheck c;
    c.name = "eikonal residual";
    c.threshold = 1e-12;
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> tmag(0.5, 3.0);
    std::uniform_real_distribution<double> emag(-1.0, 1.0);
    std::bernoulli_distribution sign(0.5);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
      StarkFrame fr;
      fr.t = (sign(rng) ? 1.0 : -1.0) * tmag(rng);
      fr.epsilon = p.epsilon;
      for (int a = 0; a < cfg.dim; ++a) fr.field_strength[static_cast<std::size_t>(a)] = emag(rng);
      const double r = cfg.negative_control ? detail::eikonal_residual_perturbed(fr, g)
                                            : eikonal_residual(fr, g);
      worst = std::max(worst, r);
    }
    c.value = worst;
    c.pass = worst <= c.threshold;
    if (cfg.negative_control) c.note = "negative control: phase deliberately broken";
    rep.checks.push_back(c);
  }

  // two forms of J_E
  for (const double t : cfg.lemma_times) {
    LemmaCheck c;
    c.name = "J_E two-form agreement at t=" + format_double17(t);
    c.threshold = 1e-8;
    if (t == 0.0) {
      c.skipped = true;
      c.note = "t != 0 required";
      rep.checks.push_back(c);
      continue;
    }
    StarkFrame fr{t, e, p.epsilon};
    const auto direct = j_e_direct(u0, fr);
    const auto conj = j_e_conjugated(u0, fr);
    double rel = 0.0;
    for (int a = 0; a < cfg.dim; ++a) {
      const auto& d = direct[static_cast<std::size_t>(a)];
      const auto& cf = conj[static_cast<std::size_t>(a)];
      double diff = 0.0;
      for (std::size_t i = 0; i < d.values.size(); ++i)
        diff = std::max(diff, std::abs(d.values[i] - cf.values[i]));
      const double scale = max_abs(d);
      rel = std::max(rel, scale > 0.0 ? diff / scale : diff);
    }
    c.value = rel;
    c.pass = rel <= c.threshold;
    rep.checks.push_back(c);
  }

  // gauge chain rule for the power nonlinearity
  for (const double sigma : {1.0, 2.0}) {
    LemmaCheck c;
    c.name = "nonlinear chain-rule residual at sigma=" + format_double17(sigma);
    c.threshold = 1e-7;
    double t = 0.5;
    for (const double lt : cfg.lemma_times)
      if (lt != 0.0) {
        t = lt;
        break;
      }
    StarkFrame fr{t, e, p.epsilon};
    const double lambda = p.lambda != 0.0 ? p.lambda : -1.0;
    const double abs_res = gauge_chain_rule_residual(u0, fr, lambda, sigma);
    Field fw = u0;
    for (std::size_t i = 0; i < fw.values.size(); ++i)
      fw.values[i] = lambda * detail::pow_abs2(std::norm(u0.values[i]), sigma) * u0.values[i];
    const double denom = je_l2(j_e_direct(fw, fr));
    c.value = denom > 0.0 ? abs_res / denom : abs_res;
    c.pass = c.value <= c.threshold;
    rep.checks.push_back(c);
  }

  // commutation with the linear Stark flow
  for (const double t : {0.5, 1.0, 2.0}) {
    LemmaCheck c;
    c.name = "linear-flow commutation at t=" + format_double17(t);
    c.threshold = 1e-8;
    const Field ut = linear_stark_propagate(u0, 0.0, t, p);
    const auto lhs = j_e_direct(ut, StarkFrame{t, e, p.epsilon});
    const auto je0 = j_e_direct(u0, StarkFrame{0.0, e, p.epsilon});
    double rel = 0.0;
    for (int a = 0; a < cfg.dim; ++a) {
      const Field rhs = linear_stark_propagate(je0[static_cast<std::size_t>(a)], 0.0, t, p);
      const double denom = l2_norm(lhs[static_cast<std::size_t>(a)]);
      const double diff = l2_distance(lhs[static_cast<std::size_t>(a)], rhs);
      rel = std::max(rel, denom > 0.0 ? diff / denom : diff);
    }
    c.value = rel;
    c.pass = rel <= c.threshold;
    rep.checks.push_back(c);
  }

  // pseudo-conformal law residual along a nonlinear run, dt-halving ratio
  {
    LemmaCheck c;
    c.name = "pc-law residual convergence";
    if (p.epsilon != 1.0) {
      c.skipped = true;
      c.note = "requires epsilon = 1";
      rep.checks.push_back(c);
    } else {
      RunOptions opts = options_from(cfg);
      const Trajectory coarse = propagate(u0, 0.0, cfg.t_final, cfg.scheme, p, opts);
      StepScheme half{0.5 * cfg.scheme.dt};
      const Trajectory fine = propagate(u0, 0.0, cfg.t_final, half, p, opts);
      rep.guards.absorb(coarse);
      rep.guards.absorb(fine);
      auto max_res = [](const Trajectory& tr) {
        double m = 0.0;
        for (const auto& [t, r] : pc_law_residual(tr)) m = std::max(m, std::abs(r));
        return m;
      };
      const double rc = max_res(coarse);
      const double rf = max_res(fine);
      if (p.lambda == 0.0) {
        c.threshold = 1e-8;
        c.value = std::max(rc, rf);
        c.pass = c.value <= c.threshold;
        c.note = "lambda = 0: both sides vanish up to drift";
      } else {
        c.is_ratio = true;
        c.ratio_lo = 3.3;
        c.ratio_hi = 4.7;
        c.value = rf > 0.0 ? rc / rf : 0.0;
        c.pass = c.value >= c.ratio_lo && c.value <= c.ratio_hi;
        c.note = "max residual " + format_double17(rc) + " -> " + format_double17(rf) +
                 " under dt halving";
      }
      rep.checks.push_back(c);
    }
  }
  return rep;
}

int run_lemma_check(const ExperimentConfig& cfg, const std::string&, bool, std::ostream& log) {
  const LemmaReport rep = run_lemma_check_report(cfg);
  print_guard_summary(log, rep.guards);
  for (const auto& c : rep.checks) {
    if (c.skipped) {
      log << c.name << ": SKIPPED (" << c.note << ")\n";
      continue;
    }
    log << c.name << ": ";
    if (c.is_ratio)
      log << "ratio " << format_double17(c.value) << " in [" << c.ratio_lo << ", " << c.ratio_hi << "]";
    else
      log << "residual " << format_double17(c.value) << " <= " << format_double17(c.threshold);
    log << (c.pass ? " PASS" : " FAIL");
    if (!c.note.empty()) log << " (" << c.note << ")";
    log << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

BlowupReport run_blowup_report(const ExperimentConfig& cfg) {
  const GridPtr g = grid_from(cfg);
  const Field u0 = initial_from(cfg, g);
  BlowupReport rep;
  rep.energy_sign = blowup_energy_sign(u0, cfg.problem);
  rep.criterion_met = rep.energy_sign < 0.0;

  RunOptions opts = options_from(cfg);
  const Problem stark_p = cfg.problem;
  const Problem free_p = cfg.problem.free_counterpart();
  const double T = cfg.t_final;

  auto launch = [&](const Problem& p, double horizon) {
    return std::async(std::launch::async,
                      [&, p, horizon] { return propagate(u0, 0.0, horizon, cfg.scheme, p, opts); });
  };
  auto f_sf = launch(stark_p, T);
  auto f_ff = launch(free_p, T);
  auto f_sb = launch(stark_p, -T);
  auto f_fb = launch(free_p, -T);

  auto collect = [&](std::future<Trajectory>& fut, const std::string& label) {
    BlowupRun run;
    run.label = label;
    run.traj = fut.get();
    run.triggered = run.traj.monitor.triggered;
    run.t_trigger = run.traj.monitor.t_trigger;
    run.peak = run.traj.monitor.peak_at_trigger;
    rep.guards.absorb(run.traj);
    return run;
  };
  rep.runs.push_back(collect(f_sf, "stark_fwd"));
  rep.runs.push_back(collect(f_ff, "free_fwd"));
  rep.runs.push_back(collect(f_sb, "stark_bwd"));
  rep.runs.push_back(collect(f_fb, "free_bwd"));

  const auto e = stark_p.effective_field();
  auto pair_up = [&](const BlowupRun& stark, const BlowupRun& free_run) {
    BlowupReport::Pairing pr;
    pr.both_triggered = stark.triggered && free_run.triggered;
    if (pr.both_triggered) {
      pr.trigger_gap = std::abs(stark.t_trigger - free_run.t_trigger);
      for (int a = 0; a < cfg.dim; ++a) {
        pr.predicted_offset[static_cast<std::size_t>(a)] =
            0.5 * stark.t_trigger * stark.t_trigger * e[static_cast<std::size_t>(a)];
        pr.measured_offset[static_cast<std::size_t>(a)] =
            free_run.peak[static_cast<std::size_t>(a)] - stark.peak[static_cast<std::size_t>(a)];
      }
    }
    return pr;
  };
  rep.forward = pair_up(rep.runs[0], rep.runs[1]);
  rep.backward = pair_up(rep.runs[2], rep.runs[3]);
  return rep;
}

int run_blowup(const ExperimentConfig& cfg, const std::string& out_dir, bool,
               std::ostream& log) {
  const BlowupReport rep = run_blowup_report(cfg);
  if (!rep.criterion_met)
    log << "warning: blow-up energy quantity " << format_double17(rep.energy_sign)
        << " >= 0; the sufficient criterion does not apply, continuing\n";

  const fs::path base = resolve(out_dir, cfg.csv_path);
  bool guard_failed = false;
  for (const auto& run : rep.runs) {
    write_diagnostics_csv(with_suffix(base, "." + run.label).string(), cfg.dim, run.traj.records);
    if (run.triggered) {
      log << run.label << ": triggered at t=" << format_double17(run.t_trigger)
          << " peak=(" << format_double17(run.peak[0]);
      if (cfg.dim == 2) log << ", " << format_double17(run.peak[1]);
      log << ")\n";
    } else if (run.traj.stop == StopReason::non_finite) {
      log << run.label << ": blow-up faster than monitor cadence (overflow at t="
          << format_double17(run.traj.stop_time) << ")\n";
    } else if (run.traj.stop == StopReason::guard_boundary ||
               run.traj.stop == StopReason::guard_spectral) {
      log << run.label << ": guard failure (" << to_string(run.traj.stop) << ") at t="
          << format_double17(run.traj.stop_time) << "\n";
      guard_failed = true;
    } else {
      log << run.label << ": monitor never triggered over the horizon\n";
    }
  }
  auto report_pair = [&](const char* name, const BlowupReport::Pairing& pr) {
    if (!pr.both_triggered) {
      log << name << ": pairing unavailable (a run did not trigger)\n";
      return;
    }
    log << name << ": trigger gap " << format_double17(pr.trigger_gap)
        << "; predicted offset (" << format_double17(pr.predicted_offset[0]);
    if (cfg.dim == 2) log << ", " << format_double17(pr.predicted_offset[1]);
    log << ") measured (" << format_double17(pr.measured_offset[0]);
    if (cfg.dim == 2) log << ", " << format_double17(pr.measured_offset[1]);
    log << ")\n";
  };
  report_pair("forward", rep.forward);
  report_pair("backward", rep.backward);
  print_guard_summary(log, rep.guards);
  return guard_failed ? 2 : 0;
}

ScatterReport run_scatter_report(const ExperimentConfig& cfg) {
  ScatterReport rep;
  rep.sigma_threshold = scattering_sigma_threshold(cfg.dim);
  rep.below_threshold = cfg.problem.sigma < rep.sigma_threshold;

  const GridPtr g = grid_from(cfg);
  const Field u0 = initial_from(cfg, g);
  RunOptions opts = options_from(cfg);
  opts.keep_snapshots = true;
  rep.traj = propagate(u0, 0.0, cfg.t_final, cfg.scheme, cfg.problem, opts);
  rep.guards.absorb(rep.traj);
  rep.series = scattering_residual(rep.traj, cfg.problem);

  int count = 0;
  bool decreasing = true;
  double prev = 0.0;
  for (std::size_t j = 0; j + 1 < rep.series.times.size() && j < rep.series.cauchy.size(); ++j) {
    if (rep.series.times[j] < 1.0) continue;
    if (count > 0 && rep.series.cauchy[j] >= prev) decreasing = false;
    prev = rep.series.cauchy[j];
    ++count;
  }
  rep.trend_samples = count;
  rep.trend_pass = decreasing && count >= 5;
  return rep;
}

int run_scatter(const ExperimentConfig& cfg, const std::string& out_dir, bool quiet,
                std::ostream& log) {
  const ScatterReport rep = run_scatter_report(cfg);
  if (rep.below_threshold)
    log << "warning: sigma=" << format_double17(cfg.problem.sigma)
        << " is below the scattering threshold "
        << format_double17(rep.sigma_threshold) << " for n=" << cfg.dim << "; continuing\n";

  const fs::path base = resolve(out_dir, cfg.csv_path);
  ensure_parent(base);
  {
    std::ofstream os(base, std::ios::trunc);
    os << "t,cauchy_to_next,dist_to_proxy\n";
    for (std::size_t j = 0; j < rep.series.cauchy.size(); ++j)
      os << format_double17(rep.series.times[j]) << ',' << format_double17(rep.series.cauchy[j])
         << ',' << format_double17(rep.series.to_proxy[j]) << "\n";
  }

  print_guard_summary(log, rep.guards);
  if (!quiet) {
    log << "scatter: " << rep.series.times.size() << " pullback samples, "
        << rep.trend_samples << " Cauchy distances with t >= 1\n";
  }
  if (rep.traj.stop != StopReason::completed) {
    log << "scatter: run stopped early (" << to_string(rep.traj.stop) << ") at t="
        << format_double17(rep.traj.stop_time) << "; partial series reported\n";
    return 2;
  }
  log << (rep.trend_pass ? "scatter: Cauchy distances strictly decreasing: PASS\n"
                         : "scatter: Cauchy distances not strictly decreasing: FAIL\n");
  return rep.trend_pass ? 0 : 1;
}

}  // namespace starknls
