#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlsim::cli {

/// Raised for malformed or inconsistent experiment configs (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridConfig {
  std::vector<int> points{64};
  double dx = 0.25;
  std::vector<double> x0{0.0};

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct InitialState {
  /// gaussian | uniform | basis | file | random
  std::string type = "gaussian";
  std::vector<double> center{0.0};
  double width = 1.0;
  std::vector<double> momentum{0.0};
  std::uint64_t index = 0;
  std::string path;

  friend bool operator==(const InitialState&, const InitialState&) = default;
};

struct BecCoupling {
  double g11 = 0.0;
  double g22 = 0.0;
  double g12 = 0.0;

  friend bool operator==(const BecCoupling&, const BecCoupling&) = default;
};

struct BecConfig {
  int points = 128;
  double length = 20.0;
  double omega = 1.0;
  double alpha_weight = 0.36;
  double t = 1.0;
  double dt = 1e-3;
  std::vector<BecCoupling> sweep{{0.4, 0.4, 0.2}, {0.2, 0.2, 0.1}, {0.1, 0.1, 0.05}};

  friend bool operator==(const BecConfig&, const BecConfig&) = default;
};

struct ExperimentConfig {
  /// hartree | gross-pitaevskii | navier-stokes | custom-f
  std::string problem = "hartree";
  GridConfig grid;
  double kinetic_prefactor = 0.5;
  /// Kernel JSON object as text (hartree); mutually exclusive with kernel_file.
  std::string kernel;
  std::string kernel_file;
  double g = 1.0;
  double rho0 = 1.0;
  std::string coupling_file;
  InitialState initial_state;
  double t = 1.0;
  double eps = 0.01;
  /// compiled | direct
  std::string mode = "compiled";
  /// Split-step oracle step; 0 means eps / 20.
  double oracle_dt = 0.0;
  std::uint64_t record_stride = 0;
  std::string output_dir = "nlsim_out";
  std::uint64_t seed = 1;
  int convergence_halvings = 0;
  std::uint64_t basic_constant = 1;
  BecConfig bec;

  double effective_oracle_dt() const { return oracle_dt > 0.0 ? oracle_dt : eps / 20.0; }
  std::size_t grid_size() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses and validates a config. Relative file paths are resolved against
/// `base_dir` and must exist. Unknown keys are rejected.
ExperimentConfig ParseConfig(const std::string& json_text, const std::string& base_dir = ".");
ExperimentConfig LoadConfig(const std::string& path);
/// Pretty JSON with every field written out.
std::string SerializeConfig(const ExperimentConfig& config);
/// Throws ConfigError when a field is out of range.
void ValidateConfig(const ExperimentConfig& config);

}  // namespace nlsim::cli
