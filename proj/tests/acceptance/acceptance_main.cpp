// Acceptance suite: one pass/fail line per criterion. Each criterion can be
// selected by number on the command line; with no selection all nine run.
// --cli <path> points at the command-line binary (used by criterion 9).

#include "starknls/errors.hpp"
#include "starknls/runner.hpp"
#include "starknls/snapshot.hpp"

#include "../oracles.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace starknls;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

std::string g_cli_path;

constexpr double kRatioLo = 3.3;
constexpr double kRatioHi = 4.7;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

double mass_drift(const Trajectory& traj) {
  const double m0 = traj.records.front().mass;
  double worst = 0.0;
  for (const auto& rec : traj.records) worst = std::max(worst, std::abs(rec.mass - m0) / m0);
  return worst;
}

void check_mass(Outcome& out, const Trajectory& traj, const std::string& label) {
  const double drift = mass_drift(traj);
  out.require(drift <= 1e-11,
              label + ": mass drift " + format_double17(drift) + " > 1e-11");
}

ExperimentConfig proposition_config(double lambda, double eps) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::compare;
  cfg.dim = 1;
  cfg.points = {1024, 1024};
  cfg.lengths = {40.0 * pi, 40.0 * pi};
  cfg.problem.epsilon = eps;
  cfg.problem.lambda = lambda;
  cfg.problem.sigma = 1.0;
  cfg.problem.stark_on = true;
  cfg.problem.field_strength = {1.0, 0.0};
  cfg.initial.amplitude = 1.0;
  cfg.initial.width = 1.0;
  cfg.scheme.dt = 1e-3;
  cfg.t_final = 2.0;
  cfg.sample_every = 10;
  return cfg;
}

// runs the compare protocol at dt and dt/2; enforces the tolerance and the
// convergence band plus the end-to-end mass budget
void equivalence_protocol(Outcome& out, ExperimentConfig cfg, const std::string& label) {
  const CompareReport coarse = run_compare_report(cfg);
  out.require(!coarse.guard_failure, label + ": guard failure (" + coarse.guard_detail + ")");
  if (coarse.guard_failure) return;
  out.require(coarse.max_discrepancy <= 1e-5,
              label + ": max discrepancy " + format_double17(coarse.max_discrepancy) + " > 1e-5");
  check_mass(out, coarse.stark, label + " stark");
  check_mass(out, coarse.free_run, label + " free");

  cfg.scheme.dt *= 0.5;
  cfg.sample_every *= 2;
  const CompareReport fine = run_compare_report(cfg);
  out.require(!fine.guard_failure, label + ": guard failure at dt/2");
  if (fine.guard_failure) return;
  const double ratio = fine.max_discrepancy > 0.0
                           ? coarse.max_discrepancy / fine.max_discrepancy
                           : 0.0;
  out.require(ratio >= kRatioLo && ratio <= kRatioHi,
              label + ": convergence ratio " + format_double17(ratio) + " outside [3.3, 4.7]");
  out.note(label + ": disc " + format_double17(coarse.max_discrepancy) + ", ratio " +
           format_double17(ratio));
}

bool criterion_1(Outcome& out) {
  equivalence_protocol(out, proposition_config(-1.0, 1.0), "lambda=-1");
  equivalence_protocol(out, proposition_config(1.0, 1.0), "lambda=+1");
  // the eps = 0.5 run develops structure at scale ~eps; N = 2048 keeps the
  // spectral tail guarded on the same box
  ExperimentConfig semiclassical = proposition_config(-1.0, 0.5);
  semiclassical.points = {2048, 2048};
  equivalence_protocol(out, semiclassical, "eps=0.5");
  return out.pass;
}

bool criterion_2(Outcome& out) {
  ExperimentConfig cfg = proposition_config(0.0, 1.0);
  cfg.problem.hartree = HartreeTerm{1.0, 0.5};
  equivalence_protocol(out, cfg, "hartree");
  return out.pass;
}

bool criterion_3(Outcome& out) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::lemma_check;
  cfg.dim = 1;
  cfg.points = {1024, 1024};
  cfg.lengths = {16.0 * pi, 16.0 * pi};
  cfg.problem.epsilon = 1.0;
  cfg.problem.lambda = -1.0;
  cfg.problem.sigma = 1.0;
  cfg.problem.stark_on = true;
  cfg.problem.field_strength = {1.0, 0.0};
  cfg.initial.amplitude = 1.0;
  cfg.initial.width = 1.0;
  cfg.lemma_times = {0.25, 0.5, 1.0};
  cfg.scheme.dt = 1e-3;
  cfg.t_final = 0.5;
  cfg.sample_every = 10;

  const LemmaReport rep = run_lemma_check_report(cfg);
  for (const auto& c : rep.checks) {
    if (c.skipped) continue;
    if (c.name.find("pc-law") != std::string::npos) continue;  // criterion 4 covers the full protocol
    out.require(c.pass, c.name + ": value " + format_double17(c.value));
  }
  out.note("eikonal/two-form/chain-rule/commutation all within spec thresholds");
  return out.pass;
}

double pc_drift(const Trajectory& traj) {
  const double q0 = traj.records.front().pc_quantity;
  double worst = 0.0;
  for (const auto& rec : traj.records) worst = std::max(worst, std::abs(rec.pc_quantity - q0));
  return worst;
}

bool criterion_4(Outcome& out) {
  // critical power, n = 1
  {
    ExperimentConfig cfg;
    cfg.dim = 1;
    cfg.points = {1024, 1024};
    cfg.lengths = {40.0 * pi, 40.0 * pi};
    cfg.problem.lambda = -1.0;
    cfg.problem.sigma = 2.0;
    cfg.problem.stark_on = true;
    cfg.problem.field_strength = {1.0, 0.0};
    cfg.initial.amplitude = 0.5;
    cfg.scheme.dt = 1e-3;
    cfg.t_final = 1.0;
    cfg.sample_every = 10;

    const RunReport coarse = run_single_report(cfg);
    out.require(coarse.traj.stop == StopReason::completed, "1d critical run did not complete");
    check_mass(out, coarse.traj, "1d critical");
    cfg.scheme.dt = 5e-4;
    cfg.sample_every = 20;
    const RunReport fine = run_single_report(cfg);
    check_mass(out, fine.traj, "1d critical dt/2");
    const double ratio = pc_drift(coarse.traj) / pc_drift(fine.traj);
    out.require(ratio >= kRatioLo && ratio <= kRatioHi,
                "1d pc drift ratio " + format_double17(ratio) + " outside [3.3, 4.7]");
    out.note("1d pc drift ratio " + format_double17(ratio));
  }
  // critical power, n = 2 on a 256^2 grid
  {
    ExperimentConfig cfg;
    cfg.dim = 2;
    cfg.points = {256, 256};
    cfg.lengths = {16.0 * pi, 16.0 * pi};
    cfg.problem.lambda = -1.0;
    cfg.problem.sigma = 1.0;
    cfg.problem.stark_on = true;
    cfg.problem.field_strength = {1.0, 0.0};
    cfg.initial.amplitude = 0.5;
    cfg.scheme.dt = 1e-3;
    cfg.t_final = 0.5;
    cfg.sample_every = 10;

    const RunReport coarse = run_single_report(cfg);
    out.require(coarse.traj.stop == StopReason::completed, "2d critical run did not complete");
    check_mass(out, coarse.traj, "2d critical");
    cfg.scheme.dt = 5e-4;
    cfg.sample_every = 20;
    const RunReport fine = run_single_report(cfg);
    const double ratio = pc_drift(coarse.traj) / pc_drift(fine.traj);
    out.require(ratio >= kRatioLo && ratio <= kRatioHi,
                "2d pc drift ratio " + format_double17(ratio) + " outside [3.3, 4.7]");
    out.note("2d pc drift ratio " + format_double17(ratio));
  }
  // sigma = 1, n = 1: the full law residual under refinement (fixed
  // sample_every so the sampling cadence scales with dt)
  {
    ExperimentConfig cfg;
    cfg.dim = 1;
    cfg.points = {1024, 1024};
    cfg.lengths = {40.0 * pi, 40.0 * pi};
    cfg.problem.lambda = 1.0;
    cfg.problem.sigma = 1.0;
    cfg.problem.stark_on = true;
    cfg.problem.field_strength = {1.0, 0.0};
    cfg.initial.amplitude = 1.0;
    cfg.scheme.dt = 1e-3;
    cfg.t_final = 1.0;
    cfg.sample_every = 10;

    auto max_residual = [](const Trajectory& traj) {
      double worst = 0.0;
      for (const auto& [t, r] : pc_law_residual(traj)) worst = std::max(worst, std::abs(r));
      return worst;
    };
    const RunReport coarse = run_single_report(cfg);
    cfg.scheme.dt = 5e-4;
    const RunReport fine = run_single_report(cfg);
    const double ratio = max_residual(coarse.traj) / max_residual(fine.traj);
    out.require(ratio >= kRatioLo && ratio <= kRatioHi,
                "pc-law residual ratio " + format_double17(ratio) + " outside [3.3, 4.7]");
    out.note("pc-law residual ratio " + format_double17(ratio));
  }
  return out.pass;
}

bool criterion_5(Outcome& out) {
  ExperimentConfig cfg = proposition_config(-1.0, 1.0);
  const CompareReport coarse = run_compare_report(cfg);
  out.require(!coarse.guard_failure, "conservation run guard failure");
  if (coarse.guard_failure) return out.pass;
  cfg.scheme.dt *= 0.5;
  cfg.sample_every *= 2;
  const CompareReport fine = run_compare_report(cfg);

  check_mass(out, coarse.stark, "stark dt");
  check_mass(out, coarse.free_run, "free dt");
  check_mass(out, fine.stark, "stark dt/2");
  check_mass(out, fine.free_run, "free dt/2");

  auto drift = [](const Trajectory& traj, auto getter) {
    const double q0 = getter(traj.records.front());
    double worst = 0.0;
    for (const auto& rec : traj.records) worst = std::max(worst, std::abs(getter(rec) - q0));
    return worst;
  };
  struct Quantity {
    const char* name;
    double (*get)(const DiagnosticsRecord&);
  };
  const Quantity quantities[] = {
      {"shifted_energy", [](const DiagnosticsRecord& r) { return r.shifted_energy; }},
      {"natural_energy", [](const DiagnosticsRecord& r) { return r.natural_energy; }},
      {"momentum_invariant", [](const DiagnosticsRecord& r) { return r.momentum_invariant[0]; }},
      {"energy_difference",
       [](const DiagnosticsRecord& r) { return r.natural_energy - r.shifted_energy; }},
  };
  // the splitting conserves the momentum invariant exactly (the dt^2 terms
  // cancel), so its drift sits at the roundoff floor; treat that as the
  // limiting case of the shrink requirement
  constexpr double kRoundoffFloor = 5e-12;
  for (const auto& q : quantities) {
    const double d_coarse = drift(coarse.stark, q.get);
    const double d_fine = drift(fine.stark, q.get);
    if (d_coarse <= kRoundoffFloor && d_fine <= kRoundoffFloor) {
      out.note(std::string(q.name) + " exactly conserved (drift " + format_double17(d_coarse) +
               ")");
      continue;
    }
    const double ratio = d_coarse / d_fine;
    out.require(ratio >= kRatioLo && ratio <= kRatioHi,
                std::string(q.name) + " drift ratio " + format_double17(ratio) +
                    " outside [3.3, 4.7]");
    out.note(std::string(q.name) + " ratio " + format_double17(ratio));
  }
  return out.pass;
}

bool criterion_6(Outcome& out) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::blowup;
  cfg.dim = 1;
  cfg.points = {1024, 1024};
  cfg.lengths = {8.0 * pi, 8.0 * pi};
  cfg.problem.lambda = -1.0;
  cfg.problem.sigma = 2.0;
  cfg.problem.stark_on = true;
  cfg.problem.field_strength = {1.0, 0.0};
  cfg.initial.amplitude = 2.0;
  cfg.initial.width = 1.0;
  cfg.scheme.dt = 2e-4;
  cfg.t_final = 0.35;
  cfg.sample_every = 1;
  // the collapse spectrum broadens past the default tail level before the
  // 20x monitor fires; the timing comparison is insensitive to this guard
  cfg.guards.spectral_tail_max = 1e-2;

  const BlowupReport rep = run_blowup_report(cfg);
  out.require(rep.criterion_met, "blow-up energy quantity not negative");
  for (const auto& run : rep.runs) {
    out.require(run.triggered, run.label + " did not trigger");
    check_mass(out, run.traj, run.label);
  }
  const double dx = cfg.lengths[0] / cfg.points[0];
  const double dt = cfg.scheme.dt;
  for (const auto* pr : {&rep.forward, &rep.backward}) {
    const bool fwd = pr == &rep.forward;
    const std::string tag = fwd ? "forward" : "backward";
    out.require(pr->both_triggered, tag + ": pairing incomplete");
    if (!pr->both_triggered) continue;
    out.require(pr->trigger_gap <= 2.0 * dt,
                tag + ": trigger gap " + format_double17(pr->trigger_gap) + " > 2 dt");
    const double offset_err = std::abs(pr->measured_offset[0] - pr->predicted_offset[0]);
    out.require(offset_err <= 2.0 * dx,
                tag + ": peak offset error " + format_double17(offset_err) + " > 2 dx");
    out.note(tag + ": gap " + format_double17(pr->trigger_gap) + ", offset err " +
             format_double17(offset_err));
  }
  return out.pass;
}

// the packet center drifts by t^2/2 = 50 and the radiation front adds ~45
// more; the box must hold the left tail below the boundary guard to T = 10
ExperimentConfig scatter_config() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::scatter;
  cfg.dim = 1;
  cfg.points = {8192, 8192};
  cfg.lengths = {160.0 * pi, 160.0 * pi};
  cfg.problem.epsilon = 1.0;
  cfg.problem.lambda = 1.0;
  cfg.problem.sigma = 2.0;
  cfg.problem.stark_on = true;
  cfg.problem.field_strength = {1.0, 0.0};
  cfg.initial.amplitude = 0.5;
  cfg.initial.width = 1.0;
  cfg.scheme.dt = 5e-4;
  cfg.t_final = 10.0;
  cfg.sample_every = 1000;
  return cfg;
}

bool criterion_7(Outcome& out) {
  ExperimentConfig cfg = scatter_config();
  const ScatterReport stark = run_scatter_report(cfg);
  out.require(stark.traj.stop == StopReason::completed, "stark scatter run did not complete");
  check_mass(out, stark.traj, "stark scatter");
  out.require(stark.trend_pass, "stark Cauchy distances not strictly decreasing for t >= 1");
  out.require(stark.trend_samples >= 5,
              "only " + std::to_string(stark.trend_samples) + " samples past t = 1");

  cfg.problem.stark_on = false;
  const ScatterReport free_rep = run_scatter_report(cfg);
  out.require(free_rep.traj.stop == StopReason::completed, "free scatter run did not complete");
  check_mass(out, free_rep.traj, "free scatter");
  const std::size_t m = std::min(stark.series.cauchy.size(), free_rep.series.cauchy.size());
  out.require(m >= 5, "residual series too short");
  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    worst = std::max(worst, std::abs(stark.series.cauchy[j] - free_rep.series.cauchy[j]));
  out.require(worst <= 1e-6,
              "stark vs transformed-free residual gap " + format_double17(worst) + " > 1e-6");
  out.note("max series gap " + format_double17(worst) + " over " + std::to_string(m) + " entries");
  return out.pass;
}

bool criterion_8(Outcome& out) {
  // linear free gaussian under the exact propagator
  {
    const auto g = make_grid(1, 2048, 80.0 * pi);
    InitialData d;
    d.amplitude = 1.0;
    d.width = 1.0;
    const Field u0 = realize_initial_data(d, g, 1.0);
    double lo = 1e300, hi = 0.0;
    for (double t = 0.5; t <= 10.0 + 1e-9; t += 0.5) {
      const Field ut = linear_free_propagate(u0, t, 1.0);
      const StarkFrame fr{t, {0.0, 0.0}, 1.0};
      const double r4 = dispersive_ratio(ut, fr, 4.0);
      lo = std::min(lo, r4);
      hi = std::max(hi, r4);
      out.require(std::abs(dispersive_ratio(ut, fr, 2.0) - 1.0) <= 1e-12,
                  "linear r=2 ratio differs from 1 at t=" + format_double17(t));
    }
    out.require(hi / lo <= 2.0,
                "linear r=4 band " + format_double17(hi / lo) + " exceeds factor 2");
    out.note("linear r=4 band " + format_double17(hi / lo));
  }
  // defocusing stark run of criterion 7
  {
    ExperimentConfig cfg = scatter_config();
    const GridPtr g = make_grid(cfg.dim, cfg.points, cfg.lengths);
    InitialData d = cfg.initial;
    const Field u0 = realize_initial_data(d, g, cfg.problem.epsilon);
    RunOptions opts;
    opts.sample_every = cfg.sample_every;
    opts.keep_snapshots = true;
    opts.guards = cfg.guards;
    const Trajectory traj =
        propagate(u0, 0.0, cfg.t_final, cfg.scheme, cfg.problem, opts);
    out.require(traj.stop == StopReason::completed, "defocusing run did not complete");
    check_mass(out, traj, "defocusing run");
    double lo = 1e300, hi = 0.0;
    for (std::size_t j = 0; j < traj.times.size(); ++j) {
      const double t = traj.times[j];
      if (t < 0.5 || t > 10.0) continue;
      const StarkFrame fr = StarkFrame::at(t, cfg.problem);
      const double r4 = dispersive_ratio(traj.snapshots[j], fr, 4.0);
      lo = std::min(lo, r4);
      hi = std::max(hi, r4);
      out.require(std::abs(dispersive_ratio(traj.snapshots[j], fr, 2.0) - 1.0) <= 1e-12,
                  "defocusing r=2 ratio differs from 1 at t=" + format_double17(t));
    }
    out.require(hi / lo <= 2.0,
                "defocusing r=4 band " + format_double17(hi / lo) + " exceeds factor 2");
    out.note("defocusing r=4 band " + format_double17(hi / lo));
  }
  return out.pass;
}

bool criterion_9(Outcome& out) {
  std::mt19937 rng(2024);
  // snapshot round trip, bit identical
  {
    const auto g = make_grid(1, 256, 25.0);
    Field f = oracles::random_contained(g, rng, 2.0);
    f.time_tag = 0.75;
    const fs::path path = fs::temp_directory_path() / "starknls_accept_snapshot.nlsf";
    write_snapshot(f, path, 0.5);
    double eps = 0.0;
    const Field back = read_snapshot(path, &eps);
    out.require(eps == 0.5, "snapshot epsilon not preserved");
    out.require(back.time_tag == f.time_tag, "snapshot time tag not preserved");
    out.require(std::memcmp(back.values.data(), f.values.data(),
                            f.values.size() * sizeof(Complex)) == 0,
                "snapshot samples not bit-identical");
    fs::remove(path);
  }
  // dft round trip
  {
    const auto g = make_grid(1, 1024, 40.0 * pi);
    const Field f = oracles::random_band_limited(g, rng);
    const double err = l2_distance(inverse_dft(forward_dft(f)), f) / l2_norm(f);
    out.require(err <= 1e-12, "dft round trip error " + format_double17(err));
  }
  // transform composition
  {
    std::uniform_real_distribution<double> tdist(-2.0, 2.0), edist(-1.0, 1.0);
    for (const int dim : {1, 2}) {
      const auto g = dim == 1 ? make_grid(1, 512, 16.0 * pi) : make_grid(2, 64, 8.0 * pi);
      for (int trial = 0; trial < 10; ++trial) {
        const Field v = oracles::random_band_limited(g, rng);
        StarkFrame fr;
        fr.t = tdist(rng);
        fr.epsilon = trial % 2 ? 1.0 : 0.5;
        for (int a = 0; a < dim; ++a) fr.field_strength[static_cast<std::size_t>(a)] = edist(rng);
        const double err = l2_distance(ah_inverse(ah_forward(v, fr), fr), v) / l2_norm(v);
        out.require(err <= 1e-12, "ah composition error " + format_double17(err));
      }
    }
  }
  // deterministic CSV and exit statuses through the CLI
  if (g_cli_path.empty()) {
    out.require(false, "--cli path not provided; CSV determinism unchecked");
    return out.pass;
  }
  const fs::path work = fs::temp_directory_path() / "starknls_accept_cli";
  fs::remove_all(work);
  fs::create_directories(work);
  const fs::path cfg_path = work / "run.ini";
  {
    std::ofstream os(cfg_path);
    os << "[experiment]\nkind = run\n\n[grid]\nn = 1\nN = 256\nL = 50.265482457436690\n\n"
          "[problem]\nlambda = -1.0\nsigma = 1.0\nstark_on = true\nE = 0.5\n\n"
          "[initial_data]\nkind = gaussian\namplitude = 1.0\nwidth = 1.0\n\n"
          "[scheme]\ndt = 1e-3\nT = 0.1\nsample_every = 10\n\n"
          "[outputs]\ncsv_path = out.csv\n";
  }
  auto run_cli = [&](const std::string& args) {
    const std::string cmd = "\"" + g_cli_path + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const fs::path out_a = work / "a";
  const fs::path out_b = work / "b";
  const int rc_a = run_cli("run --config \"" + cfg_path.string() + "\" --out-dir \"" +
                           out_a.string() + "\" --quiet");
  const int rc_b = run_cli("run --config \"" + cfg_path.string() + "\" --out-dir \"" +
                           out_b.string() + "\" --quiet");
  out.require(rc_a == 0 && rc_b == 0, "CLI run exit codes not 0");
  auto slurp = [](const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  const std::string csv_a = slurp(out_a / "out.csv");
  out.require(!csv_a.empty() && csv_a == slurp(out_b / "out.csv"),
              "identical runs did not produce byte-equal CSV");

  // compare-mode exit status is 0 iff the tolerance holds
  const fs::path cmp_path = work / "cmp.ini";
  {
    std::ofstream os(cmp_path);
    os << "[experiment]\nkind = compare\ntolerance = 1.0\n\n[grid]\nn = 1\nN = 256\n"
          "L = 50.265482457436690\n\n"
          "[problem]\nlambda = -1.0\nsigma = 1.0\nstark_on = true\nE = 0.5\n\n"
          "[initial_data]\nkind = gaussian\namplitude = 1.0\nwidth = 1.0\n\n"
          "[scheme]\ndt = 1e-3\nT = 0.1\nsample_every = 10\n\n"
          "[outputs]\ncsv_path = cmp.csv\n";
  }
  const int rc_pass = run_cli("compare --config \"" + cmp_path.string() + "\" --out-dir \"" +
                              (work / "c").string() + "\" --quiet");
  out.require(rc_pass == 0, "compare within tolerance should exit 0");
  const fs::path cmp_tight = work / "cmp_tight.ini";
  {
    std::ofstream os(cmp_tight);
    os << "[experiment]\nkind = compare\ntolerance = 1e-30\n\n[grid]\nn = 1\nN = 256\n"
          "L = 50.265482457436690\n\n"
          "[problem]\nlambda = -1.0\nsigma = 1.0\nstark_on = true\nE = 0.5\n\n"
          "[initial_data]\nkind = gaussian\namplitude = 1.0\nwidth = 1.0\n\n"
          "[scheme]\ndt = 1e-3\nT = 0.1\nsample_every = 10\n\n"
          "[outputs]\ncsv_path = cmp.csv\n";
  }
  const int rc_fail = run_cli("compare --config \"" + cmp_tight.string() + "\" --out-dir \"" +
                              (work / "d").string() + "\" --quiet");
  out.require(rc_fail == 1, "compare beyond tolerance should exit 1");
  const int rc_cfg = run_cli("run --config \"" + (work / "missing.ini").string() + "\"");
  out.require(rc_cfg == 2, "missing config should exit 2");
  fs::remove_all(work);
  return out.pass;
}

struct Criterion {
  int number;
  const char* name;
  bool (*fn)(Outcome&);
};

const Criterion kCriteria[] = {
    {1, "change-of-variables equivalence (power nonlinearity)", criterion_1},
    {2, "change-of-variables equivalence (hartree interaction)", criterion_2},
    {3, "operator identities", criterion_3},
    {4, "pseudo-conformal law", criterion_4},
    {5, "conservation drift budgets", criterion_5},
    {6, "blow-up timing and location", criterion_6},
    {7, "scattering residual", criterion_7},
    {8, "dispersive ratio bands", criterion_8},
    {9, "infrastructure exactness", criterion_9},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--cli") == 0 && i + 1 < argc) {
      g_cli_path = argv[++i];
      continue;
    }
    selected.push_back(std::atoi(argv[i]));
  }

  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.number) == selected.end())
      continue;
    Outcome out;
    bool pass = false;
    try {
      pass = c.fn(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.note(std::string("exception: ") + e.what());
    }
    pass = pass && out.pass;
    std::cout << "[" << c.number << "] " << c.name << ": " << (pass ? "PASS" : "FAIL");
    if (!out.detail.empty()) std::cout << " (" << out.detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
