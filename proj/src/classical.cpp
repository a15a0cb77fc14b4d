#include "sqc/classical.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sqc/bp.hpp"
#include "sqc/rng.hpp"

namespace sqc {

BinaryMatrix BipartiteGraph::biadjacency() const {
  BinaryMatrix h(n_check, n_var);
  for (size_t c = 0; c < n_check; ++c)
    for (uint32_t v : check_vars[c]) h.set(c, v, true);
  return h;
}

BipartiteGraph BipartiteGraph::from_matrix(const BinaryMatrix& h) {
  BipartiteGraph g;
  g.n_var = h.cols();
  g.n_check = h.rows();
  g.check_vars.resize(g.n_check);
  for (size_t c = 0; c < g.n_check; ++c)
    for (size_t v : h.row(c).ones()) g.check_vars[c].push_back(static_cast<uint32_t>(v));
  return g;
}

bool BipartiteGraph::is_simple() const {
  for (const auto& vars : check_vars) {
    for (size_t i = 1; i < vars.size(); ++i)
      if (vars[i] == vars[i - 1]) return false;
    if (!std::is_sorted(vars.begin(), vars.end())) {
      auto sorted = vars;
      std::sort(sorted.begin(), sorted.end());
      for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) return false;
    }
  }
  return true;
}

ClassicalCode hamming_7_4() {
  ClassicalCode c;
  c.name = "hamming7";
  c.n = 7;
  c.k = 4;
  c.distance = 3;
  c.g = BinaryMatrix::from_strings({
      "1000110",
      "0100101",
      "0010011",
      "0001111",
  });
  c.h = BinaryMatrix::from_strings({
      "1101100",
      "1011010",
      "0111001",
  });
  return c;
}

ClassicalCode repetition(size_t n) {
  if (n == 0) throw std::invalid_argument("repetition code needs n >= 1");
  ClassicalCode c;
  c.name = "rep" + std::to_string(n);
  c.n = n;
  c.k = 1;
  c.distance = n;
  c.g = BinaryMatrix(1, n);
  for (size_t j = 0; j < n; ++j) c.g.set(0, j, true);
  c.h = BinaryMatrix(n - 1, n);
  for (size_t i = 0; i + 1 < n; ++i) {
    c.h.set(i, i, true);
    c.h.set(i, i + 1, true);
  }
  return c;
}

BipartiteGraph sample_biregular(size_t n_var, size_t b, size_t c, uint64_t seed,
                                size_t max_attempts) {
  if (n_var == 0 || b == 0 || c == 0) throw std::invalid_argument("degrees must be positive");
  if ((n_var * b) % c != 0)
    throw std::invalid_argument("n_var * b must be divisible by c for a biregular graph");
  size_t n_check = n_var * b / c;
  size_t n_edges = n_var * b;

  if (c > n_var) throw std::invalid_argument("a degree-c check needs c distinct variables");

  Rng rng(seed);
  std::vector<uint32_t> var_stubs(n_edges);
  for (size_t i = 0; i < n_edges; ++i) var_stubs[i] = static_cast<uint32_t>(i / b);
  std::vector<uint32_t> stubs;

  // check ck owns stub slots [ck*c, (ck+1)*c)
  auto check_simple = [&](size_t ck) {
    const uint32_t* s = stubs.data() + ck * c;
    for (size_t i = 0; i < c; ++i)
      for (size_t j = i + 1; j < c; ++j)
        if (s[i] == s[j]) return false;
    return true;
  };

  for (size_t attempt = 0; attempt < max_attempts; ++attempt) {
    // Fisher-Yates on the variable stubs; check stubs stay in fixed order
    stubs = var_stubs;
    for (size_t i = n_edges - 1; i > 0; --i) {
      size_t j = rng.uniform(i + 1);
      std::swap(stubs[i], stubs[j]);
    }
    // repair multi-edges: a colliding stub trades places with a random stub,
    // keeping the trade only if both touched checks end up simple (plain
    // rejection is useless here: for a (b, c) pairing the chance of being
    // simple outright decays like exp(-(b-1)(c-1)/2))
    size_t tries = 0, try_cap = 200 * n_edges;
    bool simple = false;
    while (!simple && tries < try_cap) {
      size_t bad = n_edges;
      for (size_t ck = 0; ck < n_check && bad == n_edges; ++ck) {
        if (check_simple(ck)) continue;
        const uint32_t* s = stubs.data() + ck * c;
        for (size_t i = 0; i < c && bad == n_edges; ++i)
          for (size_t j = i + 1; j < c; ++j)
            if (s[i] == s[j]) {
              bad = ck * c + j;
              break;
            }
      }
      if (bad == n_edges) {
        simple = true;
        break;
      }
      ++tries;
      size_t other = rng.uniform(n_edges);
      std::swap(stubs[bad], stubs[other]);
      if (!check_simple(bad / c) || !check_simple(other / c))
        std::swap(stubs[bad], stubs[other]);
    }
    if (!simple) continue;

    BipartiteGraph g;
    g.n_var = n_var;
    g.n_check = n_check;
    g.check_vars.assign(n_check, {});
    for (size_t ck = 0; ck < n_check; ++ck) {
      auto& vars = g.check_vars[ck];
      vars.assign(stubs.begin() + ck * c, stubs.begin() + (ck + 1) * c);
      std::sort(vars.begin(), vars.end());
    }
    return g;
  }
  throw std::runtime_error("no simple biregular pairing found within attempt budget");
}

ClassicalCode code_from_graph(const BipartiteGraph& graph) {
  ClassicalCode c;
  c.n = graph.n_var;
  c.h = graph.biadjacency();
  c.g = c.h.kernel_basis().rref().m;
  c.k = c.g.rows();
  c.name = "graph_n" + std::to_string(c.n);
  return c;
}

std::optional<size_t> min_distance_bruteforce(const ClassicalCode& code, size_t cap) {
  if (code.k > cap) return std::nullopt;
  if (code.k == 0) return std::nullopt;
  size_t best = code.n + 1;
  std::vector<BitVector> rows;
  for (size_t i = 0; i < code.g.rows(); ++i) rows.push_back(code.g.row(i));
  BitVector word(code.n);
  // Gray-code walk over all 2^k combinations
  uint64_t prev = 0;
  for (uint64_t m = 1; m < (1ull << code.k); ++m) {
    uint64_t gray = m ^ (m >> 1);
    uint64_t diff = gray ^ prev;
    prev = gray;
    word ^= rows[std::countr_zero(diff)];
    best = std::min(best, word.weight());
  }
  if (best > code.n) return std::nullopt;
  return best;
}

ClassicalCode select_best_code(size_t n_var, size_t b, size_t c, size_t candidates,
                               double channel_p, size_t sim_trials, uint64_t seed, size_t jobs,
                               SelectionReport* report) {
  if (candidates == 0) throw std::invalid_argument("need at least one candidate");

  // candidate i is fully determined by (seed, i): graph from stream (seed, 2i),
  // channel noise from (seed, 2i + 1)
  auto evaluate = [&](size_t i) -> std::pair<double, ClassicalCode> {
    uint64_t graph_seed = seed ^ (0x9e3779b97f4a7c15ull * (2 * i + 1));
    ClassicalCode code = code_from_graph(sample_biregular(n_var, b, c, graph_seed));
    Rng rng(seed, 2 * i + 1);
    size_t failures = 0;
    for (size_t t = 0; t < sim_trials; ++t)
      if (!bsc_trial(code, channel_p, 0.0, rng)) ++failures;
    return {double(failures) / double(sim_trials), std::move(code)};
  };

  std::vector<double> rates(candidates);
  std::vector<ClassicalCode> codes(candidates);
  size_t workers = jobs ? jobs : std::thread::hardware_concurrency();
  if (workers <= 1 || candidates == 1) {
    for (size_t i = 0; i < candidates; ++i) std::tie(rates[i], codes[i]) = evaluate(i);
  } else {
    std::vector<std::future<void>> futs;
    std::atomic<size_t> next{0};
    for (size_t w = 0; w < std::min(workers, candidates); ++w)
      futs.push_back(std::async(std::launch::async, [&] {
        for (size_t i = next.fetch_add(1); i < candidates; i = next.fetch_add(1))
          std::tie(rates[i], codes[i]) = evaluate(i);
      }));
    for (auto& f : futs) f.get();
  }

  size_t best = 0;
  for (size_t i = 1; i < candidates; ++i)
    if (rates[i] < rates[best]) best = i;
  if (report) {
    report->chosen_index = best;
    report->failure_rates = rates;
  }
  ClassicalCode chosen = std::move(codes[best]);
  chosen.name = "ldpc_b" + std::to_string(b) + "c" + std::to_string(c) + "_n" +
                std::to_string(n_var) + "_i" + std::to_string(best);
  return chosen;
}

std::string to_alist(const BinaryMatrix& h) {
  size_t m = h.rows(), n = h.cols();
  std::vector<std::vector<size_t>> col_rows(n), row_cols(m);
  for (size_t r = 0; r < m; ++r)
    for (size_t c : h.row(r).ones()) {
      col_rows[c].push_back(r);
      row_cols[r].push_back(c);
    }
  size_t max_col = 0, max_row = 0;
  for (auto& v : col_rows) max_col = std::max(max_col, v.size());
  for (auto& v : row_cols) max_row = std::max(max_row, v.size());

  std::ostringstream os;
  os << n << ' ' << m << '\n' << max_col << ' ' << max_row << '\n';
  for (size_t j = 0; j < n; ++j) os << col_rows[j].size() << (j + 1 < n ? ' ' : '\n');
  for (size_t i = 0; i < m; ++i) os << row_cols[i].size() << (i + 1 < m ? ' ' : '\n');
  for (size_t j = 0; j < n; ++j) {
    for (size_t t = 0; t < max_col; ++t)
      os << (t < col_rows[j].size() ? col_rows[j][t] + 1 : 0) << (t + 1 < max_col ? ' ' : '\n');
    if (max_col == 0) os << '\n';
  }
  for (size_t i = 0; i < m; ++i) {
    for (size_t t = 0; t < max_row; ++t)
      os << (t < row_cols[i].size() ? row_cols[i][t] + 1 : 0) << (t + 1 < max_row ? ' ' : '\n');
    if (max_row == 0) os << '\n';
  }
  return os.str();
}

BinaryMatrix from_alist(const std::string& text) {
  std::istringstream is(text);
  long long n, m, max_col, max_row;
  if (!(is >> n >> m >> max_col >> max_row) || n < 0 || m < 0)
    throw std::invalid_argument("bad alist header");
  std::vector<size_t> col_deg(n), row_deg(m);
  for (auto& d : col_deg)
    if (!(is >> d)) throw std::invalid_argument("bad alist column degrees");
  for (auto& d : row_deg)
    if (!(is >> d)) throw std::invalid_argument("bad alist row degrees");

  std::vector<long long> rest;
  long long x;
  while (is >> x) rest.push_back(x);

  size_t sum_col = 0, sum_row = 0;
  for (auto d : col_deg) sum_col += d;
  for (auto d : row_deg) sum_row += d;

  bool padded = rest.size() == size_t(n) * max_col + size_t(m) * max_row;
  bool packed = rest.size() == sum_col + sum_row;
  if (!padded && !packed) throw std::invalid_argument("bad alist entry count");

  BinaryMatrix h(m, n);
  size_t pos = 0;
  for (long long j = 0; j < n; ++j) {
    size_t take = padded ? size_t(max_col) : col_deg[j];
    for (size_t t = 0; t < take; ++t) {
      long long r = rest.at(pos++);
      if (r == 0) continue;  // padding
      if (r < 1 || r > m) throw std::invalid_argument("alist row id out of range");
      h.set(size_t(r - 1), size_t(j), true);
    }
  }
  // the row lists are redundant; parse them to validate consistency
  BinaryMatrix h2(m, n);
  for (long long i = 0; i < m; ++i) {
    size_t take = padded ? size_t(max_row) : row_deg[i];
    for (size_t t = 0; t < take; ++t) {
      long long cc = rest.at(pos++);
      if (cc == 0) continue;
      if (cc < 1 || cc > n) throw std::invalid_argument("alist column id out of range");
      h2.set(size_t(i), size_t(cc - 1), true);
    }
  }
  if (!(h == h2)) throw std::invalid_argument("alist column and row lists disagree");
  return h;
}

}  // namespace sqc
