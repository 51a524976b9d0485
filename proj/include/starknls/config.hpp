#pragma once

#include "starknls/problem.hpp"
#include "starknls/propagator.hpp"

#include <array>
#include <string>
#include <vector>

namespace starknls {

enum class ExperimentKind { run, compare, lemma_check, blowup, scatter };

const char* to_string(ExperimentKind k);

/// Parsed and validated experiment configuration with defaults applied.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::run;
  double tolerance = 1e-5;       // compare: max allowed relative discrepancy
  bool negative_control = false; // lemma-check: deliberately break the phase
  std::vector<double> lemma_times{0.25, 0.5, 1.0};

  int dim = 1;
  std::array<int, 2> points{1024, 1024};
  std::array<double, 2> lengths{125.66370614359172, 125.66370614359172};  // 40 pi

  Problem problem;
  InitialData initial;
  std::string custom_path;  // initial_data kind = custom

  StepScheme scheme{1e-3};
  double t_final = 1.0;
  int sample_every = 10;

  std::string csv_path = "run.csv";
  std::string snapshot_dir;
  int snapshot_every = 100;

  Guards guards{};
};

/// Strict INI-style parser: [section] headers, key = value lines, '#'
/// comments. Unknown sections/keys are hard errors (with a suggestion when a
/// close match exists); physical-validity violations raise
/// ConfigValidityError, everything else ConfigSyntaxError.
ExperimentConfig parse_config(const std::string& text, ExperimentKind kind);
ExperimentConfig parse_config_file(const std::string& path, ExperimentKind kind);

/// Effective configuration, suitable for echoing back to the user.
std::string render_config(const ExperimentConfig& cfg);

}  // namespace starknls
