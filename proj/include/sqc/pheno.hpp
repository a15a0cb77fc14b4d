#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqc/induced.hpp"

namespace sqc {

struct PhenoModel {
  double p_data = 1e-3;  // independent X and Z flip rate per qubit
  double p_meas = 1e-3;  // flip rate per stabilizer generator outcome
};

struct SimResult {
  double p_data = 0;
  double p_meas = 0;
  uint64_t trials = 0;
  uint64_t block_failures = 0;
  std::vector<uint64_t> qubit_failures;    // X or Z readout flip, per logical qubit
  std::vector<uint64_t> qubit_x_failures;  // flips caused by X-type residuals
  std::vector<uint64_t> qubit_z_failures;
  uint64_t unconverged = 0;
  uint64_t seed = 0;
  double seconds = 0;

  double block_rate() const { return trials ? double(block_failures) / trials : 0.0; }
  double qubit_rate(size_t i) const { return trials ? double(qubit_failures[i]) / trials : 0.0; }
  double mean_qubit_rate() const;
};

// Phenomenological noise trials: sample X and Z data flips at p_data and one
// outcome flip per stabilizer generator at p_meas, decode, apply a final
// perfect-measurement decode to clear leftover syndrome, classify the
// residual. Trial t draws from the (seed, t) stream, so results are
// bit-identical for any worker count.
SimResult run_trials(const SyndromeDecoder& decoder, const PhenoModel& model, uint64_t trials,
                     uint64_t seed, size_t jobs = 0);

struct ImportanceStratum {
  size_t weight = 0;
  uint64_t samples = 0;
  uint64_t block_failures = 0;
  std::vector<uint64_t> qubit_failures;
  double failure_fraction() const { return samples ? double(block_failures) / samples : 0.0; }
};

struct ImportanceEstimate {
  double block_rate = 0;
  double block_stderr = 0;
  double tail_bound = 0;  // probability mass of fault weights past weight_max
};

struct ImportanceResult {
  size_t loci = 0;  // 2 n_qubits data loci (+ measurement loci when enabled)
  bool measurement_loci = false;
  std::vector<ImportanceStratum> strata;  // weights 1..weight_max
  uint64_t seed = 0;
  double seconds = 0;

  // Combine strata under all loci flipping independently at rate p.
  ImportanceEstimate block_estimate(double p) const;
  std::vector<double> qubit_estimates(double p) const;
};

// Importance-sampled failure estimation stratified by total fault weight:
// for each w in 1..weight_max, plants exactly w faults at uniformly chosen
// loci and measures the conditional failure fraction. Valid for models where
// every locus flips at the same rate, i.e. p_meas == p_data (measurement
// loci on) or p_meas == 0 (off).
ImportanceResult run_importance(const SyndromeDecoder& decoder, bool measurement_loci,
                                size_t weight_max, uint64_t samples_per_weight, uint64_t seed,
                                size_t jobs = 0);

struct FitResult {
  double amplitude = 0;  // P = amplitude * p^exponent
  double exponent = 0;
  double rms_log_residual = 0;
  size_t points_used = 0;
};

// Least squares fit of log P against log p. Points with P = 0 are skipped;
// throws std::invalid_argument when fewer than two usable points remain.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& points);

struct SweepPoint {
  PhenoModel model;
  SimResult result;
};

std::vector<SweepPoint> sweep_pheno(const SyndromeDecoder& decoder,
                                    const std::vector<PhenoModel>& grid, uint64_t trials,
                                    uint64_t seed, size_t jobs = 0);

// log-spaced grid helper, endpoints included
std::vector<double> log_grid(double lo, double hi, size_t points);

// CSV rows for one simulated point: one row per logical qubit plus a block
// row with qubit_index = -1. estimator is "direct" or "importance".
struct CsvMeta {
  std::string code_id;
  size_t n_classical = 0;
  size_t n_qubits = 0;
  size_t n_logical = 0;
  std::string estimator = "direct";
};

void write_csv_header(std::ostream& os);
void write_csv_point(std::ostream& os, const CsvMeta& meta, double p, uint64_t trials,
                     uint64_t block_failures, const std::vector<uint64_t>& qubit_failures,
                     uint64_t seed);

}  // namespace sqc
