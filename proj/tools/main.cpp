#include "starknls/config.hpp"
#include "starknls/errors.hpp"
#include "starknls/runner.hpp"

#include <iostream>
#include <string>

#include "CLI11.hpp"

namespace {

struct SubArgs {
  std::string config_path;
  std::string out_dir = ".";
  bool quiet = false;
};

void add_common(CLI::App* sub, SubArgs& args) {
  sub->add_option("--config", args.config_path, "experiment configuration file")->required();
  sub->add_option("--out-dir", args.out_dir, "directory for output files");
  sub->add_flag("--quiet", args.quiet, "suppress informational output");
}

int execute(starknls::ExperimentKind kind, const SubArgs& args) {
  using namespace starknls;
  const ExperimentConfig cfg = parse_config_file(args.config_path, kind);
  if (!args.quiet) std::cout << render_config(cfg) << "\n";
  switch (kind) {
    case ExperimentKind::run:
      return run_single(cfg, args.out_dir, args.quiet, std::cout);
    case ExperimentKind::compare:
      return run_compare(cfg, args.out_dir, args.quiet, std::cout);
    case ExperimentKind::lemma_check:
      return run_lemma_check(cfg, args.out_dir, args.quiet, std::cout);
    case ExperimentKind::blowup:
      return run_blowup(cfg, args.out_dir, args.quiet, std::cout);
    case ExperimentKind::scatter:
      return run_scatter(cfg, args.out_dir, args.quiet, std::cout);
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral simulator and diagnostics for the nonlinear "
               "Schrodinger equation with a linear potential"};
  app.require_subcommand(1);

  SubArgs args;
  starknls::ExperimentKind kind = starknls::ExperimentKind::run;

  auto* run = app.add_subcommand("run", "single trajectory with CSV diagnostics");
  add_common(run, args);
  run->callback([&] { kind = starknls::ExperimentKind::run; });

  auto* cmp = app.add_subcommand("compare", "paired Stark/free runs through the change of variables");
  add_common(cmp, args);
  cmp->callback([&] { kind = starknls::ExperimentKind::compare; });

  auto* lemma = app.add_subcommand("lemma-check", "operator identity suite");
  add_common(lemma, args);
  lemma->callback([&] { kind = starknls::ExperimentKind::lemma_check; });

  auto* blow = app.add_subcommand("blowup", "paired blow-up timing and location runs");
  add_common(blow, args);
  blow->callback([&] { kind = starknls::ExperimentKind::blowup; });

  auto* scat = app.add_subcommand("scatter", "scattering residual run");
  add_common(scat, args);
  scat->callback([&] { kind = starknls::ExperimentKind::scatter; });

  CLI11_PARSE(app, argc, argv);

  try {
    return execute(kind, args);
  } catch (const starknls::ConfigSyntaxError& e) {
    std::cerr << "config error (schema): " << e.what() << "\n";
    return 2;
  } catch (const starknls::ConfigValidityError& e) {
    std::cerr << "config error (physics): " << e.what() << "\n";
    return 2;
  } catch (const starknls::GuardError& e) {
    std::cerr << "guard error: " << e.what() << "\n";
    return 2;
  } catch (const starknls::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
