#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqc/gf2.hpp"

namespace sqc {

// Bipartite check/variable graph, the Tanner graph of a parity check matrix.
struct BipartiteGraph {
  size_t n_var = 0;
  size_t n_check = 0;
  std::vector<std::vector<uint32_t>> check_vars;  // per check, sorted variable ids

  BinaryMatrix biadjacency() const;  // n_check x n_var
  static BipartiteGraph from_matrix(const BinaryMatrix& h);
  bool is_simple() const;  // no repeated edge within a check
};

// Classical linear code [n, k] with generator g (k x n) and parity check h
// (m x n), g h^T = 0. distance is set when known exactly.
struct ClassicalCode {
  std::string name;
  size_t n = 0;
  size_t k = 0;
  std::optional<size_t> distance;
  BinaryMatrix g;
  BinaryMatrix h;

  BipartiteGraph tanner() const { return BipartiteGraph::from_matrix(h); }
};

ClassicalCode hamming_7_4();
ClassicalCode repetition(size_t n);

// Random (b, c)-biregular graph via the configuration model: every variable
// has degree b, every check degree c. Multi-edges left by the random pairing
// are repaired with degree-preserving stub swaps; if a pairing resists repair
// it is resampled, up to max_attempts times, then this throws.
BipartiteGraph sample_biregular(size_t n_var, size_t b, size_t c, uint64_t seed,
                                size_t max_attempts = 1000);

// Code with h = biadjacency of the graph and g = a row reduced kernel basis.
ClassicalCode code_from_graph(const BipartiteGraph& g);

// Exact minimum distance by enumerating all 2^k - 1 nonzero codewords.
// Returns nullopt when k > cap.
std::optional<size_t> min_distance_bruteforce(const ClassicalCode& code, size_t cap = 24);

struct SelectionReport {
  size_t chosen_index = 0;
  std::vector<double> failure_rates;  // one per candidate, in candidate order
};

// Draws `candidates` biregular graphs, estimates each code's failure rate on
// a binary symmetric channel with the BP decoder (`sim_trials` decoding
// trials at channel_p), and returns the code with the lowest rate. Ties break
// toward the lower candidate index. Deterministic in (seed); candidate i uses
// substreams derived from (seed, i) so the result is independent of worker
// scheduling.
ClassicalCode select_best_code(size_t n_var, size_t b, size_t c, size_t candidates,
                               double channel_p, size_t sim_trials, uint64_t seed,
                               size_t jobs = 0, SelectionReport* report = nullptr);

// alist parity check matrix format (columns first, then rows, 1-based ids).
std::string to_alist(const BinaryMatrix& h);
BinaryMatrix from_alist(const std::string& text);

}  // namespace sqc
