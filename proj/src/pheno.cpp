#include "sqc/pheno.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "sqc/rng.hpp"

namespace sqc {

namespace {

size_t resolve_jobs(size_t jobs) {
  if (jobs) return jobs;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

struct TrialTally {
  uint64_t block_failures = 0;
  uint64_t unconverged = 0;
  std::vector<uint64_t> qubit, qubit_x, qubit_z;

  explicit TrialTally(size_t k) : qubit(k, 0), qubit_x(k, 0), qubit_z(k, 0) {}
  void merge(const TrialTally& o) {
    block_failures += o.block_failures;
    unconverged += o.unconverged;
    for (size_t i = 0; i < qubit.size(); ++i) {
      qubit[i] += o.qubit[i];
      qubit_x[i] += o.qubit_x[i];
      qubit_z[i] += o.qubit_z[i];
    }
  }
};

// One noisy round followed by a perfect cleanup round, then classification of
// whatever residual is left.
void run_one(const SyndromeDecoder& decoder, BitVector ex, BitVector ez, const BitVector& mx,
             const BitVector& mz, TrialTally& tally) {
  SyndromeFrame s = decoder.syndrome_of(ex, ez);
  s.x_syndrome ^= mx;
  s.z_syndrome ^= mz;
  CorrectionFrame noisy = decoder.decode_noisy(s);
  ex ^= noisy.x;
  ez ^= noisy.z;
  CorrectionFrame clean = decoder.decode_perfect(decoder.syndrome_of(ex, ez));
  ex ^= clean.x;
  ez ^= clean.z;

  PauliOp residual(decoder.code().n_qubits);
  residual.x = ex;
  residual.z = ez;
  LogicalOutcome outcome = classify_residual(decoder.code(), residual);

  tally.block_failures += outcome.block_failure;
  tally.unconverged += !(noisy.converged_x && noisy.converged_z && clean.converged_x &&
                         clean.converged_z);
  for (size_t i = 0; i < tally.qubit.size(); ++i) {
    bool fx = outcome.x_flips.get(i), fz = outcome.z_flips.get(i);
    tally.qubit[i] += fx || fz;
    tally.qubit_x[i] += fx;
    tally.qubit_z[i] += fz;
  }
}

// Splits [0, total) into contiguous ranges, runs fn(lo, hi) per range on its
// own thread, and merges tallies in range order. Trial t always draws from the
// (seed, t) stream, so the outcome is identical for every worker count.
template <typename Fn>
TrialTally run_partitioned(size_t k, uint64_t total, size_t jobs, Fn fn) {
  size_t workers = std::min<uint64_t>(resolve_jobs(jobs), total ? total : 1);
  if (workers <= 1) {
    TrialTally tally(k);
    fn(0, total, tally);
    return tally;
  }
  std::vector<std::future<TrialTally>> futs;
  uint64_t chunk = total / workers, extra = total % workers, lo = 0;
  for (size_t w = 0; w < workers; ++w) {
    uint64_t hi = lo + chunk + (w < extra ? 1 : 0);
    futs.push_back(std::async(std::launch::async, [=, &fn] {
      TrialTally tally(k);
      fn(lo, hi, tally);
      return tally;
    }));
    lo = hi;
  }
  TrialTally tally(k);
  for (auto& f : futs) tally.merge(f.get());
  return tally;
}

double log_binomial_pmf(size_t n, size_t w, double p) {
  return std::lgamma(double(n) + 1) - std::lgamma(double(w) + 1) -
         std::lgamma(double(n - w) + 1) + double(w) * std::log(p) +
         double(n - w) * std::log1p(-p);
}

}  // namespace

double SimResult::mean_qubit_rate() const {
  if (qubit_failures.empty() || !trials) return 0.0;
  double acc = 0;
  for (uint64_t f : qubit_failures) acc += double(f) / double(trials);
  return acc / double(qubit_failures.size());
}

SimResult run_trials(const SyndromeDecoder& decoder, const PhenoModel& model, uint64_t trials,
                     uint64_t seed, size_t jobs) {
  if (model.p_data < 0 || model.p_data >= 0.5 || model.p_meas < 0 || model.p_meas >= 0.5)
    throw std::invalid_argument("flip rates must lie in [0, 1/2)");
  const SubsystemCode& code = decoder.code();
  size_t n = code.n_qubits, mx = code.stab_x.size(), mz = code.stab_z.size();
  auto t0 = std::chrono::steady_clock::now();

  TrialTally tally = run_partitioned(
      code.n_logical, trials, jobs, [&](uint64_t lo, uint64_t hi, TrialTally& acc) {
        BitVector ex(n), ez(n), fx(mx), fz(mz);
        for (uint64_t t = lo; t < hi; ++t) {
          Rng rng(seed, t);
          for (size_t q = 0; q < n; ++q) ex.set(q, rng.bernoulli(model.p_data));
          for (size_t q = 0; q < n; ++q) ez.set(q, rng.bernoulli(model.p_data));
          for (size_t j = 0; j < mx; ++j) fx.set(j, rng.bernoulli(model.p_meas));
          for (size_t j = 0; j < mz; ++j) fz.set(j, rng.bernoulli(model.p_meas));
          run_one(decoder, ex, ez, fx, fz, acc);
        }
      });

  SimResult out;
  out.p_data = model.p_data;
  out.p_meas = model.p_meas;
  out.trials = trials;
  out.block_failures = tally.block_failures;
  out.qubit_failures = tally.qubit;
  out.qubit_x_failures = tally.qubit_x;
  out.qubit_z_failures = tally.qubit_z;
  out.unconverged = tally.unconverged;
  out.seed = seed;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

ImportanceResult run_importance(const SyndromeDecoder& decoder, bool measurement_loci,
                                size_t weight_max, uint64_t samples_per_weight, uint64_t seed,
                                size_t jobs) {
  if (weight_max == 0) throw std::invalid_argument("weight_max must be positive");
  if (samples_per_weight == 0) throw std::invalid_argument("need at least one sample per weight");
  const SubsystemCode& code = decoder.code();
  size_t n = code.n_qubits, mx = code.stab_x.size(), mz = code.stab_z.size();
  size_t loci = 2 * n + (measurement_loci ? mx + mz : 0);
  if (weight_max > loci) throw std::invalid_argument("weight_max exceeds the number of loci");
  auto t0 = std::chrono::steady_clock::now();

  ImportanceResult out;
  out.loci = loci;
  out.measurement_loci = measurement_loci;
  out.seed = seed;

  for (size_t w = 1; w <= weight_max; ++w) {
    TrialTally tally = run_partitioned(
        code.n_logical, samples_per_weight, jobs,
        [&](uint64_t lo, uint64_t hi, TrialTally& acc) {
          BitVector ex(n), ez(n), fx(mx), fz(mz);
          std::vector<size_t> chosen;
          for (uint64_t t = lo; t < hi; ++t) {
            Rng rng(seed, uint64_t(w - 1) * samples_per_weight + t);
            chosen.clear();
            while (chosen.size() < w) {
              size_t pick = size_t(rng.uniform(loci));
              bool dup = false;
              for (size_t c : chosen) dup = dup || c == pick;
              if (!dup) chosen.push_back(pick);
            }
            ex = BitVector(n);
            ez = BitVector(n);
            fx = BitVector(mx);
            fz = BitVector(mz);
            for (size_t c : chosen) {
              if (c < n)
                ex.set(c, true);
              else if (c < 2 * n)
                ez.set(c - n, true);
              else if (c < 2 * n + mx)
                fx.set(c - 2 * n, true);
              else
                fz.set(c - 2 * n - mx, true);
            }
            run_one(decoder, ex, ez, fx, fz, acc);
          }
        });
    ImportanceStratum st;
    st.weight = w;
    st.samples = samples_per_weight;
    st.block_failures = tally.block_failures;
    st.qubit_failures = tally.qubit;
    out.strata.push_back(std::move(st));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

ImportanceEstimate ImportanceResult::block_estimate(double p) const {
  if (p <= 0 || p >= 0.5) throw std::invalid_argument("p must lie in (0, 1/2)");
  ImportanceEstimate est;
  double variance = 0, covered = std::exp(log_binomial_pmf(loci, 0, p));
  for (const auto& st : strata) {
    double pmf = std::exp(log_binomial_pmf(loci, st.weight, p));
    covered += pmf;
    double f = st.failure_fraction();
    est.block_rate += pmf * f;
    if (st.samples) variance += pmf * pmf * f * (1 - f) / double(st.samples);
  }
  est.block_stderr = std::sqrt(variance);
  est.tail_bound = std::max(0.0, 1.0 - covered);
  return est;
}

std::vector<double> ImportanceResult::qubit_estimates(double p) const {
  if (p <= 0 || p >= 0.5) throw std::invalid_argument("p must lie in (0, 1/2)");
  size_t k = strata.empty() ? 0 : strata.front().qubit_failures.size();
  std::vector<double> est(k, 0.0);
  for (const auto& st : strata) {
    if (!st.samples) continue;
    double pmf = std::exp(log_binomial_pmf(loci, st.weight, p));
    for (size_t i = 0; i < k; ++i)
      est[i] += pmf * double(st.qubit_failures[i]) / double(st.samples);
  }
  return est;
}

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> logs;
  for (const auto& [p, rate] : points)
    if (p > 0 && rate > 0) logs.emplace_back(std::log(p), std::log(rate));
  if (logs.size() < 2)
    throw std::invalid_argument("need at least two nonzero points for a power-law fit");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : logs) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double m = double(logs.size());
  double denom = m * sxx - sx * sx;
  if (denom == 0) throw std::invalid_argument("degenerate abscissa in power-law fit");

  FitResult fit;
  fit.exponent = (m * sxy - sx * sy) / denom;
  fit.amplitude = std::exp((sy - fit.exponent * sx) / m);
  fit.points_used = logs.size();
  double rss = 0;
  for (const auto& [x, y] : logs) {
    double r = y - (std::log(fit.amplitude) + fit.exponent * x);
    rss += r * r;
  }
  fit.rms_log_residual = std::sqrt(rss / m);
  return fit;
}

std::vector<SweepPoint> sweep_pheno(const SyndromeDecoder& decoder,
                                    const std::vector<PhenoModel>& grid, uint64_t trials,
                                    uint64_t seed, size_t jobs) {
  std::vector<SweepPoint> out;
  for (size_t i = 0; i < grid.size(); ++i)
    out.push_back({grid[i], run_trials(decoder, grid[i], trials, seed + i, jobs)});
  return out;
}

std::vector<double> log_grid(double lo, double hi, size_t points) {
  if (lo <= 0 || hi <= 0 || lo > hi) throw std::invalid_argument("bad grid endpoints");
  if (points == 0) return {};
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  double step = (std::log(hi) - std::log(lo)) / double(points - 1);
  for (size_t i = 0; i < points; ++i) grid[i] = std::exp(std::log(lo) + step * double(i));
  grid.front() = lo;  // exp(log(lo)) can be off by an ulp
  grid.back() = hi;
  return grid;
}

void write_csv_header(std::ostream& os) {
  os << "code_id,n_classical,N,K,p,trials,block_failures,qubit_index,qubit_failures,"
        "estimator,seed\n";
}

void write_csv_point(std::ostream& os, const CsvMeta& meta, double p, uint64_t trials,
                     uint64_t block_failures, const std::vector<uint64_t>& qubit_failures,
                     uint64_t seed) {
  char pbuf[32];
  std::snprintf(pbuf, sizeof pbuf, "%.10g", p);
  auto prefix = [&](std::ostream& o) -> std::ostream& {
    o << meta.code_id << ',' << meta.n_classical << ',' << meta.n_qubits << ','
      << meta.n_logical << ',' << pbuf << ',' << trials << ',' << block_failures << ',';
    return o;
  };
  prefix(os) << -1 << ',' << block_failures << ',' << meta.estimator << ',' << seed << '\n';
  for (size_t i = 0; i < qubit_failures.size(); ++i)
    prefix(os) << i << ',' << qubit_failures[i] << ',' << meta.estimator << ',' << seed << '\n';
}

}  // namespace sqc
