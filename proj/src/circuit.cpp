#include "sqc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sqc {

namespace {

// kind encodes a Pauli as bit flags: bit 0 = X, bit 1 = Z (both = Y). Two-qubit
// kinds pack the second qubit into bits 2 and 3.
void apply_one(Frame& f, uint32_t q, uint8_t kind) {
  if (kind & 1) f.x.flip(q);
  if (kind & 2) f.z.flip(q);
}

void apply_two(Frame& f, uint32_t a, uint32_t b, uint8_t kind) {
  apply_one(f, a, kind & 3);
  apply_one(f, b, (kind >> 2) & 3);
}

struct PlantedFault {
  int64_t index = -1;  // instruction index; -1 = none
  uint8_t kind = 0;
};

// Executes one extraction round on the frame. Depolarizing noise follows every
// gate and measurement when rng is given; the planted fault fires right after
// its instruction.
BitVector run_round(const Circuit& c, Frame& f, double p, Rng* rng, const PlantedFault& fault) {
  BitVector outcomes(c.n_meas);
  size_t slot = 0;
  for (size_t i = 0; i < c.ops.size(); ++i) {
    const Instruction& in = c.ops[i];
    bool here = int64_t(i) == fault.index;
    switch (in.op) {
      case Op::PrepZ:
        f.x.set(in.a, false);
        f.z.set(in.a, false);
        break;
      case Op::H: {
        bool x = f.x.get(in.a), z = f.z.get(in.a);
        f.x.set(in.a, z);
        f.z.set(in.a, x);
        if (rng && rng->bernoulli(p)) apply_one(f, in.a, uint8_t(1 + rng->uniform(3)));
        if (here) apply_one(f, in.a, fault.kind);
        break;
      }
      case Op::Cnot:
        f.x.set(in.b, f.x.get(in.b) ^ f.x.get(in.a));
        f.z.set(in.a, f.z.get(in.a) ^ f.z.get(in.b));
        if (rng && rng->bernoulli(p)) apply_two(f, in.a, in.b, uint8_t(1 + rng->uniform(15)));
        if (here) apply_two(f, in.a, in.b, fault.kind);
        break;
      case Op::MeasZ:
      case Op::MeasX: {
        bool bit = in.op == Op::MeasZ ? f.x.get(in.a) : f.z.get(in.a);
        if (rng && rng->bernoulli(p)) bit = !bit;
        if (here) bit = !bit;
        outcomes.set(slot++, bit);
        break;
      }
    }
  }
  return outcomes;
}

// Round-2 syndrome split: slots [0, n_x_stabs) are X-generator outcomes and
// hold the Z-error syndrome; the rest are Z-generator outcomes.
void apply_corrections(const ProtocolContext& ctx, Frame& f, const BitVector& syndrome) {
  size_t mx = ctx.extraction.n_x_stabs, mz = ctx.extraction.n_z_stabs;
  BitVector sx(mx), sz(mz);
  for (size_t j = 0; j < mx; ++j) sx.set(j, syndrome.get(j));
  for (size_t j = 0; j < mz; ++j) sz.set(j, syndrome.get(mx + j));
  for (size_t q : ctx.lookup_x.decode(sz).ones()) f.x.flip(q);
  for (size_t q : ctx.lookup_z.decode(sx).ones()) f.z.flip(q);
}

// Destructive Z readout: corrects the read bits through the X lookup and flags
// each logical qubit whose canonical Z logical the residual anticommutes with.
LogicalOutcome finish_readout(const ProtocolContext& ctx, const Frame& f,
                              const BitVector& readout_flips) {
  const SubsystemCode& code = *ctx.code;
  size_t n = code.n_qubits;
  BitVector v(n);
  for (size_t q = 0; q < n; ++q) v.set(q, f.x.get(q));
  v ^= readout_flips;
  v ^= ctx.lookup_x.decode(ctx.lookup_x.syndrome_of(v));
  LogicalOutcome out;
  out.x_flips = BitVector(code.n_logical);
  out.z_flips = BitVector(code.n_logical);
  for (size_t i = 0; i < code.n_logical; ++i) out.x_flips.set(i, v.dot(code.logical_z[i].z));
  out.block_failure = out.x_flips.any();
  return out;
}

size_t resolve_jobs(size_t jobs) {
  if (jobs) return jobs;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

}  // namespace

std::string Circuit::to_text() const {
  std::ostringstream os;
  for (const Instruction& in : ops) {
    switch (in.op) {
      case Op::PrepZ: os << "PREPZ " << in.a; break;
      case Op::H: os << "H " << in.a; break;
      case Op::Cnot: os << "CNOT " << in.a << ' ' << in.b; break;
      case Op::MeasZ: os << "MEASZ " << in.a; break;
      case Op::MeasX: os << "MEASX " << in.a; break;
    }
    os << '\n';
  }
  return os.str();
}

ExtractionCircuit build_extraction_circuit(const SubsystemCode& code) {
  ExtractionCircuit out;
  size_t n = code.n_qubits;
  out.n_x_stabs = code.stab_x.size();
  out.n_z_stabs = code.stab_z.size();
  Circuit& c = out.round;
  c.n_data = n;
  c.n_qubits = n + out.n_x_stabs + out.n_z_stabs;
  c.n_meas = out.n_x_stabs + out.n_z_stabs;

  auto sorted_support = [&](const BitVector& sup, bool column_major) {
    std::vector<uint32_t> qs;
    for (size_t q : sup.ones()) qs.push_back(static_cast<uint32_t>(q));
    std::stable_sort(qs.begin(), qs.end(), [&](uint32_t a, uint32_t b) {
      const QubitSite &sa = code.layout[a], &sb = code.layout[b];
      if (sa.lattice != sb.lattice) return sa.lattice < sb.lattice;
      if (column_major) return sa.col != sb.col ? sa.col < sb.col : sa.row < sb.row;
      return sa.row != sb.row ? sa.row < sb.row : sa.col < sb.col;
    });
    return qs;
  };

  for (size_t j = 0; j < out.n_x_stabs; ++j) {
    uint32_t anc = static_cast<uint32_t>(n + j);
    c.ops.push_back({Op::PrepZ, anc, 0});
    c.ops.push_back({Op::H, anc, 0});
    for (uint32_t q : sorted_support(code.stab_x[j].x, true))
      c.ops.push_back({Op::Cnot, anc, q});
    c.ops.push_back({Op::MeasX, anc, 0});
  }
  for (size_t j = 0; j < out.n_z_stabs; ++j) {
    uint32_t anc = static_cast<uint32_t>(n + out.n_x_stabs + j);
    c.ops.push_back({Op::PrepZ, anc, 0});
    for (uint32_t q : sorted_support(code.stab_z[j].z, false))
      c.ops.push_back({Op::Cnot, q, anc});
    c.ops.push_back({Op::MeasZ, anc, 0});
  }
  return out;
}

LookupDecoder::LookupDecoder(const SubsystemCode& code, bool x_errors) : n_(code.n_qubits) {
  const auto& stabs = x_errors ? code.stab_z : code.stab_x;
  for (const PauliOp& s : stabs) stab_supports_.push_back(x_errors ? s.z : s.x);
  if (stab_supports_.size() > 64)
    throw std::invalid_argument("lookup table needs at most 64 syndrome bits");

  BitVector e(n_);
  for (size_t q = 0; q < n_; ++q) {
    e.set(q, true);
    uint64_t key = pack(syndrome_of(e));
    if (key) table_.emplace(key, e);
    e.set(q, false);
  }
  for (size_t a = 0; a < n_; ++a)
    for (size_t b = a + 1; b < n_; ++b) {
      e.set(a, true);
      e.set(b, true);
      uint64_t key = pack(syndrome_of(e));
      if (key) table_.emplace(key, e);
      e.set(a, false);
      e.set(b, false);
    }
}

uint64_t LookupDecoder::pack(const BitVector& syndrome) const {
  uint64_t key = 0;
  for (size_t j = 0; j < stab_supports_.size(); ++j)
    if (syndrome.get(j)) key |= uint64_t(1) << j;
  return key;
}

BitVector LookupDecoder::syndrome_of(const BitVector& error_support) const {
  BitVector s(stab_supports_.size());
  for (size_t j = 0; j < stab_supports_.size(); ++j)
    s.set(j, stab_supports_[j].dot(error_support));
  return s;
}

BitVector LookupDecoder::decode(const BitVector& syndrome) const {
  uint64_t key = pack(syndrome);
  if (!key) return BitVector(n_);
  auto it = table_.find(key);
  return it == table_.end() ? BitVector(n_) : it->second;
}

ProtocolContext::ProtocolContext(const SubsystemCode& c)
    : code(&c),
      extraction(build_extraction_circuit(c)),
      lookup_x(c, true),
      lookup_z(c, false) {}

LogicalOutcome run_protocol_trial(const ProtocolContext& ctx, const DepolarizingModel& model,
                                  Rng& rng, TrialDiag* diag) {
  const Circuit& round = ctx.extraction.round;
  Frame f(round.n_qubits);
  for (size_t q = 0; q < round.n_data; ++q)
    if (rng.bernoulli(model.p)) apply_one(f, static_cast<uint32_t>(q), uint8_t(1 + rng.uniform(3)));

  PlantedFault none;
  BitVector s1 = run_round(round, f, model.p, &rng, none);
  bool round2 = s1.any();
  BitVector s2(round.n_meas);
  if (round2) {
    s2 = run_round(round, f, model.p, &rng, none);
    apply_corrections(ctx, f, s2);
  }
  BitVector flips(round.n_data);
  for (size_t q = 0; q < round.n_data; ++q) flips.set(q, rng.bernoulli(model.p));

  if (diag) {
    diag->round2 = round2;
    diag->syndrome1 = s1;
    diag->syndrome2 = s2;
  }
  return finish_readout(ctx, f, flips);
}

LogicalOutcome run_protocol_fault(const ProtocolContext& ctx, const FaultSite& fault,
                                  TrialDiag* diag) {
  const Circuit& round = ctx.extraction.round;
  Frame f(round.n_qubits);
  if (fault.where == FaultSite::Where::Memory)
    apply_one(f, static_cast<uint32_t>(fault.index), fault.kind);

  PlantedFault in_round1, in_round2;
  if (fault.where == FaultSite::Where::Round1)
    in_round1 = {int64_t(fault.index), fault.kind};
  if (fault.where == FaultSite::Where::Round2)
    in_round2 = {int64_t(fault.index), fault.kind};

  BitVector s1 = run_round(round, f, 0.0, nullptr, in_round1);
  bool round2 = s1.any();
  BitVector s2(round.n_meas);
  if (round2) {
    s2 = run_round(round, f, 0.0, nullptr, in_round2);
    apply_corrections(ctx, f, s2);
  }
  BitVector flips(round.n_data);
  if (fault.where == FaultSite::Where::Readout) flips.set(fault.index, true);

  if (diag) {
    diag->round2 = round2;
    diag->syndrome1 = s1;
    diag->syndrome2 = s2;
  }
  return finish_readout(ctx, f, flips);
}

std::vector<FaultSite> enumerate_fault_sites(const ProtocolContext& ctx) {
  std::vector<FaultSite> sites;
  const Circuit& round = ctx.extraction.round;
  for (size_t q = 0; q < round.n_data; ++q)
    for (uint8_t k = 1; k <= 3; ++k) sites.push_back({FaultSite::Where::Memory, q, k});
  for (auto where : {FaultSite::Where::Round1, FaultSite::Where::Round2})
    for (size_t i = 0; i < round.ops.size(); ++i) {
      switch (round.ops[i].op) {
        case Op::PrepZ:
          break;
        case Op::H:
          for (uint8_t k = 1; k <= 3; ++k) sites.push_back({where, i, k});
          break;
        case Op::Cnot:
          for (uint8_t k = 1; k <= 15; ++k) sites.push_back({where, i, k});
          break;
        case Op::MeasZ:
        case Op::MeasX:
          sites.push_back({where, i, 0});
          break;
      }
    }
  for (size_t q = 0; q < round.n_data; ++q)
    sites.push_back({FaultSite::Where::Readout, q, 0});
  return sites;
}

std::vector<CircuitPoint> circuit_sweep(const ProtocolContext& ctx,
                                        const std::vector<double>& p_grid, uint64_t trials,
                                        uint64_t seed, size_t jobs) {
  std::vector<CircuitPoint> out;
  size_t k = ctx.code->n_logical;
  for (size_t pi = 0; pi < p_grid.size(); ++pi) {
    DepolarizingModel model{p_grid[pi]};
    CircuitPoint point;
    point.p = model.p;
    point.trials = trials;
    point.seed = seed;
    point.qubit_failures.assign(k, 0);

    auto run_range = [&](uint64_t lo, uint64_t hi, uint64_t& block,
                         std::vector<uint64_t>& per_qubit) {
      for (uint64_t t = lo; t < hi; ++t) {
        Rng rng(seed, uint64_t(pi) * trials + t);
        LogicalOutcome o = run_protocol_trial(ctx, model, rng);
        block += o.block_failure;
        for (size_t i = 0; i < k; ++i) per_qubit[i] += o.x_flips.get(i);
      }
    };

    size_t workers = std::min<uint64_t>(resolve_jobs(jobs), trials ? trials : 1);
    if (workers <= 1) {
      run_range(0, trials, point.block_failures, point.qubit_failures);
    } else {
      struct Part {
        uint64_t block = 0;
        std::vector<uint64_t> per_qubit;
      };
      std::vector<std::future<Part>> futs;
      uint64_t chunk = trials / workers, extra = trials % workers, lo = 0;
      for (size_t w = 0; w < workers; ++w) {
        uint64_t hi = lo + chunk + (w < extra ? 1 : 0);
        futs.push_back(std::async(std::launch::async, [&, lo, hi] {
          Part part;
          part.per_qubit.assign(k, 0);
          run_range(lo, hi, part.block, part.per_qubit);
          return part;
        }));
        lo = hi;
      }
      for (auto& fu : futs) {
        Part part = fu.get();
        point.block_failures += part.block;
        for (size_t i = 0; i < k; ++i) point.qubit_failures[i] += part.per_qubit[i];
      }
    }
    out.push_back(std::move(point));
  }
  return out;
}

std::optional<Crossing> pseudothreshold(const std::vector<CircuitPoint>& points, int qubit,
                                        size_t reference_qubits) {
  // failure rate of the unencoded comparison register, 1 - (1-p)^m
  auto ref = [m = double(reference_qubits ? reference_qubits : 1)](double p) {
    return -std::expm1(m * std::log1p(-p));
  };
  std::vector<std::pair<double, double>> curve;  // (p, failure rate), rate > 0
  for (const auto& pt : points) {
    if (!pt.trials || pt.p <= 0) continue;
    double rate = qubit < 0 ? pt.block_rate() : pt.qubit_rate(size_t(qubit));
    if (rate > 0) curve.emplace_back(pt.p, rate);
  }
  std::sort(curve.begin(), curve.end());

  for (size_t i = 0; i + 1 < curve.size(); ++i) {
    auto [pa, ya] = curve[i];
    auto [pb, yb] = curve[i + 1];
    double fa = std::log(ya) - std::log(ref(pa)), fb = std::log(yb) - std::log(ref(pb));
    if (fa == 0) return Crossing{pa, pa, pa};
    if (fb == 0) return Crossing{pb, pb, pb};
    if ((fa < 0) == (fb < 0)) continue;
    // bisect g(u) = interp(log y)(u) - log ref(e^u) over u = log p; the
    // reference line is monotone, so the sign change brackets one root
    double la = std::log(pa), lb = std::log(pb);
    double lya = std::log(ya), lyb = std::log(yb);
    double s = (lyb - lya) / (lb - la);
    double lo = la, hi = lb;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      double g = lya + s * (mid - la) - std::log(ref(std::exp(mid)));
      if ((g < 0) == (fa < 0))
        lo = mid;
      else
        hi = mid;
    }
    return Crossing{std::exp(0.5 * (lo + hi)), pa, pb};
  }
  return std::nullopt;
}

}  // namespace sqc
