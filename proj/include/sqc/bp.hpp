#pragma once

#include <cstdint>
#include <vector>

#include "sqc/classical.hpp"
#include "sqc/gf2.hpp"
#include "sqc/rng.hpp"

namespace sqc {

// Tanner graph prepared for belief propagation. In measurement-error mode the
// graph is extended per check j with one degree-1 error variable (index
// n_data + j) modelling a flipped outcome, plus a syndrome node that pins the
// observed value into check j. Syndrome nodes hold fixed +/-clip messages,
// never receive any, and connect only to their own check.
class TannerGraph {
 public:
  TannerGraph(const BinaryMatrix& h, bool measurement_errors);

  size_t n_data() const { return n_data_; }
  size_t n_check() const { return n_check_; }
  size_t n_var() const { return var_check_.size(); }  // data + measurement vars
  bool measurement_errors() const { return meas_; }

  const std::vector<std::vector<uint32_t>>& check_vars() const { return check_vars_; }
  const std::vector<std::vector<uint32_t>>& var_checks() const { return var_check_; }

 private:
  size_t n_data_ = 0, n_check_ = 0;
  bool meas_ = false;
  std::vector<std::vector<uint32_t>> check_vars_;  // per check, variable ids
  std::vector<std::vector<uint32_t>> var_check_;   // per variable, check ids
};

struct BpConfig {
  double p_data = 0.01;   // prior flip probability of data bits, in (0, 1/2)
  double p_meas = 0.0;    // prior flip probability of measurements; required
                          // in (0, 1/2) when the graph has measurement vars
  size_t max_iters = 60;
  double clip = 50.0;     // finite surrogate for infinite syndrome certainty
  size_t min_iters = 0;   // full iterations to run before early stopping is
                          // considered (also disables the zero-iteration
                          // return); lets callers demand fully mixed
                          // posteriors, e.g. diameter-many rounds on a tree
};

struct BpResult {
  BitVector data_correction;
  BitVector meas_correction;  // empty unless measurement-error mode
  bool converged = false;
  size_t iterations = 0;
  std::vector<double> posteriors;  // final log likelihood ratios, data vars first
};

// Flooding-schedule sum-product BP, product form at check nodes computed in
// sign/magnitude to stay finite. Hard decisions: bit = 1 iff posterior < 0
// (ties resolve to 0). Stops once the (possibly extended) syndrome equation
// H v + v_meas = s holds for a hard decision that also matches the previous
// iteration's, so a transient satisfying decision seen before the messages
// have mixed does not end the decode; an already-satisfied zero decision
// returns after 0 iterations when min_iters allows.
class BpDecoder {
 public:
  BpDecoder(const TannerGraph& graph, const BpConfig& cfg);

  BpResult decode(const BitVector& syndrome) const;

  const TannerGraph& graph() const { return graph_; }
  const BpConfig& config() const { return cfg_; }

 private:
  TannerGraph graph_;
  BpConfig cfg_;
  std::vector<double> prior_;  // per variable node
};

// One decoding trial on a binary symmetric channel: sample an error at rate p,
// flip each syndrome bit at rate q (q > 0 turns on measurement-error mode),
// decode, and report whether the data correction reproduced the error exactly.
bool bsc_trial(const ClassicalCode& code, double p, double q, Rng& rng,
               size_t max_iters = 60);

}  // namespace sqc
