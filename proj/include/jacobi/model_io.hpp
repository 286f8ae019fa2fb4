#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "jacobi/coefficients.hpp"

namespace jacobi {

inline constexpr int kSchemaVersion = 1;

struct LoadedModel {
  CoefficientModel model;
  std::string name;
  std::string canonical;  ///< sorted-key compact JSON of the model document
  std::string hash;       ///< FNV-1a 64 of `canonical`, 16 hex digits
};

/// Parses a model document. Errors carry the offending field and its line.
LoadedModel parse_model(const std::string& text);
LoadedModel load_model(const std::string& path);

/// Model document for `model`; parse_model(model_to_json(m)) reproduces m.
std::string model_to_json(const CoefficientModel& model, const std::string& name = {});

std::string fnv1a_hex(const std::string& bytes);

struct Grid {
  double lo = 0, hi = 0, step = 0;
  std::vector<double> points() const;
};

/// Parses "lo:hi:step".
Grid parse_grid(const std::string& spec);
/// Parses "x", "x+yi", "x-yi", "yi" or "x,y".
std::complex<double> parse_complex(const std::string& spec);

struct ExperimentConfig {
  std::string model_path;
  std::optional<LoadedModel> model;  ///< inline model, or loaded from model_path
  std::string command;
  std::vector<std::complex<double>> z;
  std::optional<Grid> grid;
  long n = 0;
  long n_trunc = 0;
  double tol = 0;
  int precision_bits = 0;
  std::string out;
};

/// Parses an experiment document; a relative model path is resolved against `base_dir`.
ExperimentConfig parse_experiment(const std::string& text, const std::string& base_dir = {});
ExperimentConfig load_experiment(const std::string& path);

}  // namespace jacobi
