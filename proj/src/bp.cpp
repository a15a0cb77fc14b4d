#include "sqc/bp.hpp"

#include <cmath>
#include <stdexcept>

namespace sqc {

TannerGraph::TannerGraph(const BinaryMatrix& h, bool measurement_errors)
    : n_data_(h.cols()), n_check_(h.rows()), meas_(measurement_errors) {
  size_t n_var = n_data_ + (meas_ ? n_check_ : 0);
  check_vars_.resize(n_check_);
  var_check_.resize(n_var);
  for (size_t c = 0; c < n_check_; ++c) {
    for (size_t v : h.row(c).ones()) {
      check_vars_[c].push_back(static_cast<uint32_t>(v));
      var_check_[v].push_back(static_cast<uint32_t>(c));
    }
    if (meas_) {
      uint32_t mv = static_cast<uint32_t>(n_data_ + c);
      check_vars_[c].push_back(mv);
      var_check_[mv].push_back(static_cast<uint32_t>(c));
    }
  }
}

namespace {

double prior_llr(double p, double clip) {
  if (p <= 0.0 || p >= 0.5) throw std::invalid_argument("flip probability must be in (0, 1/2)");
  return std::min(std::log((1.0 - p) / p), clip);
}

}  // namespace

BpDecoder::BpDecoder(const TannerGraph& graph, const BpConfig& cfg) : graph_(graph), cfg_(cfg) {
  prior_.resize(graph_.n_var());
  double pd = prior_llr(cfg_.p_data, cfg_.clip);
  for (size_t v = 0; v < graph_.n_data(); ++v) prior_[v] = pd;
  if (graph_.measurement_errors()) {
    double pm = prior_llr(cfg_.p_meas, cfg_.clip);
    for (size_t v = graph_.n_data(); v < graph_.n_var(); ++v) prior_[v] = pm;
  }
}

BpResult BpDecoder::decode(const BitVector& syndrome) const {
  const size_t n_check = graph_.n_check();
  const size_t n_var = graph_.n_var();
  const size_t n_data = graph_.n_data();
  if (syndrome.size() != n_check) throw std::invalid_argument("syndrome length mismatch");

  const auto& cv = graph_.check_vars();
  const auto& vc = graph_.var_checks();

  // messages stored per (check, neighbor slot)
  std::vector<std::vector<double>> to_check(n_check);   // variable -> check
  std::vector<std::vector<double>> from_check(n_check);  // check -> variable
  for (size_t c = 0; c < n_check; ++c) {
    to_check[c].assign(cv[c].size(), 0.0);
    from_check[c].assign(cv[c].size(), 0.0);
  }
  // slot of check c in variable v's view
  std::vector<std::vector<uint32_t>> slot_of(n_var);
  for (size_t c = 0; c < n_check; ++c)
    for (size_t s = 0; s < cv[c].size(); ++s) {
      uint32_t v = cv[c][s];
      slot_of[v].push_back(static_cast<uint32_t>(s));
    }

  std::vector<double> posterior(prior_.begin(), prior_.end());

  BpResult res;
  res.data_correction = BitVector(n_data);
  if (graph_.measurement_errors()) res.meas_correction = BitVector(n_check);

  auto hard_decide = [&]() {
    for (size_t v = 0; v < n_data; ++v) res.data_correction.set(v, posterior[v] < 0.0);
    if (graph_.measurement_errors())
      for (size_t c = 0; c < n_check; ++c)
        res.meas_correction.set(c, posterior[n_data + c] < 0.0);
  };
  auto satisfied = [&]() {
    for (size_t c = 0; c < n_check; ++c) {
      bool parity = syndrome.get(c);
      for (uint32_t v : cv[c])
        parity ^= v < n_data ? res.data_correction.get(v) : res.meas_correction.get(v - n_data);
      if (parity) return false;
    }
    return true;
  };

  hard_decide();
  if (cfg_.min_iters == 0 && satisfied()) {
    res.converged = true;
    res.iterations = 0;
    res.posteriors = std::move(posterior);
    return res;
  }
  BitVector prev_data = res.data_correction;
  BitVector prev_meas = res.meas_correction;

  for (size_t iter = 1; iter <= cfg_.max_iters; ++iter) {
    // variable -> check: prior plus all other incoming check messages
    for (size_t v = 0; v < n_var; ++v) {
      double total = prior_[v];
      for (size_t t = 0; t < vc[v].size(); ++t) total += from_check[vc[v][t]][slot_of[v][t]];
      for (size_t t = 0; t < vc[v].size(); ++t) {
        uint32_t c = vc[v][t], s = slot_of[v][t];
        to_check[c][s] = total - from_check[c][s];
      }
      posterior[v] = total;
    }

    // check -> variable: product of the other variables' tanh terms, with the
    // observed syndrome entering as a fixed +/-1 factor (the +/-clip syndrome
    // node message has |tanh| == 1 in double precision). Sign and magnitude
    // are tracked separately via forward/backward partial products.
    for (size_t c = 0; c < n_check; ++c) {
      size_t deg = cv[c].size();
      double sign = syndrome.get(c) ? -1.0 : 1.0;
      static thread_local std::vector<double> fwd, tanhs;
      fwd.assign(deg + 1, 1.0);
      tanhs.assign(deg, 0.0);
      for (size_t s = 0; s < deg; ++s) {
        tanhs[s] = std::tanh(0.5 * to_check[c][s]);
        fwd[s + 1] = fwd[s] * tanhs[s];
      }
      double back = 1.0;
      for (size_t s = deg; s-- > 0;) {
        double u = sign * fwd[s] * back;
        back *= tanhs[s];
        double mag = std::min(std::abs(u), 1.0);
        double msg;
        if (mag >= 1.0)
          msg = cfg_.clip;
        else
          msg = std::min(2.0 * std::atanh(mag), cfg_.clip);
        from_check[c][s] = u < 0.0 ? -msg : msg;
      }
    }

    // posteriors with the fresh check messages, then hard decision
    for (size_t v = 0; v < n_var; ++v) {
      double total = prior_[v];
      for (size_t t = 0; t < vc[v].size(); ++t) total += from_check[vc[v][t]][slot_of[v][t]];
      posterior[v] = total;
    }
    hard_decide();
    bool stable = res.data_correction == prev_data && res.meas_correction == prev_meas;
    if (iter >= cfg_.min_iters && stable && satisfied()) {
      res.converged = true;
      res.iterations = iter;
      res.posteriors = std::move(posterior);
      return res;
    }
    prev_data = res.data_correction;
    prev_meas = res.meas_correction;
  }

  res.converged = false;
  res.iterations = cfg_.max_iters;
  res.posteriors = std::move(posterior);
  return res;
}

bool bsc_trial(const ClassicalCode& code, double p, double q, Rng& rng, size_t max_iters) {
  BitVector error(code.n);
  if (p > 0)
    for (size_t i = 0; i < code.n; ++i)
      if (rng.bernoulli(p)) error.set(i, true);
  BitVector syndrome = code.h.mul(error);
  if (q > 0)
    for (size_t c = 0; c < code.h.rows(); ++c)
      if (rng.bernoulli(q)) syndrome.flip(c);

  BpConfig cfg;
  cfg.p_data = p > 0 ? p : 1e-3;
  cfg.p_meas = q;
  cfg.max_iters = max_iters;
  TannerGraph graph(code.h, q > 0);
  BpDecoder dec(graph, cfg);
  BpResult r = dec.decode(syndrome);
  return r.data_correction == error;
}

}  // namespace sqc
