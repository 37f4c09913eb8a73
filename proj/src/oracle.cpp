#include "rework/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rework/probability.hpp"

namespace rework {

namespace {

/// Pascal's triangle in doubles; exact for every row used here.
class PascalTable {
 public:
  explicit PascalTable(int rows) : rows_(static_cast<std::size_t>(rows) + 1) {
    for (std::size_t m = 0; m < rows_.size(); ++m) {
      rows_[m].assign(m + 1, 1.0);
      for (std::size_t k = 1; k < m; ++k) {
        rows_[m][k] = rows_[m - 1][k - 1] + rows_[m - 1][k];
      }
    }
  }

  double operator()(int m, int k) const {
    return rows_[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
  }

  /// P(k successes out of m trials) with per-trial success probability p.
  double pmf(int m, int k, double p) const {
    return (*this)(m, k) * std::pow(p, k) * std::pow(1.0 - p, m - k);
  }

 private:
  std::vector<std::vector<double>> rows_;
};

/// Probability of the smallest level >= input, by linear scan. Negative
/// when no level qualifies.
double smallest_level_prob(const StateDistribution& dist, int input) {
  for (const auto& s : dist.levels()) {
    if (s.level >= input) return s.prob;
  }
  return -1.0;
}

/// Advances @p t through [0, hi]^k in odometer order; false after the last.
bool next_tuple(std::vector<int>& t, int hi) {
  for (auto& v : t) {
    if (v < hi) {
      ++v;
      return true;
    }
    v = 0;
  }
  return false;
}

}  // namespace

CellResult brute_force_reliability(const ReworkNetwork& net,
                                   const Query& query) {
  query.validate();
  const int n = net.size();
  const int b = query.b;
  const int d = query.d;
  const int alpha = net.alpha();
  const int beta = net.beta();
  const PascalTable choose(b);

  // Probability of one stage, or a negative value when the input exceeds
  // every capacity level of the node.
  const auto stage = [&](int node, int in, int out, double rate) {
    const double cap = smallest_level_prob(net.node(node).dist, in);
    if (cap < 0.0) return -1.0;
    return choose(in, out) * std::pow(1.0 - rate, out) *
           std::pow(rate, in - out) * cap;
  };
  const double ds = net.delta_send();
  const auto sendback = [&](int q, int m) {
    if (net.convention() == SendbackConvention::kEq16Literal) {
      return choose(q, m) * std::pow(ds, m) * std::pow(1.0 - ds, q - m);
    }
    return choose(q, m) * std::pow(1.0 - ds, m) * std::pow(ds, q - m);
  };

  CellResult cell;
  cell.b = b;
  cell.d = d;

  std::vector<int> tail(static_cast<std::size_t>(n), 0);
  do {
    std::vector<int> p{b};
    p.insert(p.end(), tail.begin(), tail.end());
    bool monotone = true;
    for (int i = 1; i <= n; ++i) monotone = monotone && p[i] <= p[i - 1];
    if (!monotone) continue;

    double first = 1.0;
    bool reachable = true;
    for (int i = 1; i <= n && reachable; ++i) {
      const double f = stage(i, p[i - 1], p[i], net.node(i).delta);
      reachable = f >= 0.0;
      first *= f;
    }
    if (!reachable) continue;

    if (p[n] >= d) {
      ++cell.n_non_rework;
      cell.r_non_rework += first;
      continue;
    }
    const int q = p[alpha - 1] - p[alpha];
    const int shortfall = d - p[n];
    if (q < shortfall) continue;
    ++cell.n_rework;

    // y = (head, pi_beta, ..., pi_n)
    std::vector<int> y(static_cast<std::size_t>(n - beta + 2), 0);
    do {
      bool ok = y.front() >= shortfall && y.back() >= shortfall;
      for (std::size_t j = 1; j < y.size() && ok; ++j) ok = y[j] <= y[j - 1];
      if (!ok) continue;
      double pass = 1.0;
      for (int i = beta; i <= n && ok; ++i) {
        const auto j = static_cast<std::size_t>(i - beta + 1);
        const double f = stage(i, y[j - 1], y[j], net.node(i).gamma);
        ok = f >= 0.0;
        pass *= f;
      }
      if (!ok) continue;
      cell.r_rework += first * sendback(q, y.front()) * pass;
    } while (next_tuple(y, q));
  } while (next_tuple(tail, b));
  return cell;
}

double physical_exact(const ReworkNetwork& net, const Query& query) {
  query.validate();
  const int n = net.size();
  const int b = query.b;
  const int d = query.d;
  const int alpha = net.alpha();
  const int beta = net.beta();

  double combos = 1.0;
  for (const auto& node : net.nodes()) {
    combos *= static_cast<double>(node.dist.levels().size());
  }
  if (combos * (b + 1) * (b + 1) > kPhysicalStateLimit) {
    throw std::length_error("physical_exact state space too large");
  }

  const PascalTable choose(b);
  const double send =
      per_defect_send_probability(net.delta_send(), net.convention());
  const auto width = static_cast<std::size_t>(b + 1);
  const auto at = [width](int a, int q) {
    return static_cast<std::size_t>(a) * width + static_cast<std::size_t>(q);
  };

  std::vector<int> pick(static_cast<std::size_t>(n), 0);
  std::vector<int> cap(static_cast<std::size_t>(n) + 1, 0);
  std::vector<double> cur(width * width), nxt(width * width);
  std::vector<double> pass_cur(width), pass_nxt(width);
  // pass_ge[m][s] = P(rework output >= s | m units sent back)
  std::vector<std::vector<double>> pass_ge(width);

  double total = 0.0;
  bool more = true;
  while (more) {
    double weight = 1.0;
    for (int i = 1; i <= n; ++i) {
      const auto& st = net.node(i).dist.levels()[static_cast<std::size_t>(
          pick[static_cast<std::size_t>(i - 1)])];
      cap[static_cast<std::size_t>(i)] = st.level;
      weight *= st.prob;
    }

    if (weight > 0.0) {
      // Rework-pass output distribution for every possible amount sent.
      for (int m = 0; m <= b; ++m) {
        std::fill(pass_cur.begin(), pass_cur.end(), 0.0);
        pass_cur[static_cast<std::size_t>(m)] = 1.0;
        for (int i = beta; i <= n; ++i) {
          std::fill(pass_nxt.begin(), pass_nxt.end(), 0.0);
          const double ok = 1.0 - net.node(i).gamma;
          for (int c = 0; c <= m; ++c) {
            const double pc = pass_cur[static_cast<std::size_t>(c)];
            if (pc == 0.0) continue;
            const int x = std::min(c, cap[static_cast<std::size_t>(i)]);
            for (int k = 0; k <= x; ++k) {
              pass_nxt[static_cast<std::size_t>(k)] += pc * choose.pmf(x, k, ok);
            }
          }
          std::swap(pass_cur, pass_nxt);
        }
        auto& ge = pass_ge[static_cast<std::size_t>(m)];
        ge.assign(width + 1, 0.0);
        for (int s = b; s >= 0; --s) {
          ge[static_cast<std::size_t>(s)] =
              ge[static_cast<std::size_t>(s) + 1] +
              pass_cur[static_cast<std::size_t>(s)];
        }
      }

      std::fill(cur.begin(), cur.end(), 0.0);
      cur[at(b, 0)] = 1.0;
      for (int i = 1; i <= n; ++i) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        const double ok = 1.0 - net.node(i).delta;
        for (int a = 0; a <= b; ++a) {
          for (int q = 0; q <= b; ++q) {
            const double pr = cur[at(a, q)];
            if (pr == 0.0) continue;
            const int x = std::min(a, cap[static_cast<std::size_t>(i)]);
            for (int k = 0; k <= x; ++k) {
              const int q_next = i == alpha ? x - k : q;
              nxt[at(k, q_next)] += pr * choose.pmf(x, k, ok);
            }
          }
        }
        std::swap(cur, nxt);
      }

      double success = 0.0;
      for (int a = 0; a <= b; ++a) {
        for (int q = 0; q <= b; ++q) {
          const double pr = cur[at(a, q)];
          if (pr == 0.0) continue;
          if (a >= d) {
            success += pr;
            continue;
          }
          const int shortfall = d - a;
          double rework = 0.0;
          for (int m = shortfall; m <= q; ++m) {
            rework += choose.pmf(q, m, send) *
                      pass_ge[static_cast<std::size_t>(m)]
                             [static_cast<std::size_t>(shortfall)];
          }
          success += pr * rework;
        }
      }
      total += weight * success;
    }

    more = false;
    for (int i = 0; i < n && !more; ++i) {
      auto& v = pick[static_cast<std::size_t>(i)];
      if (++v < static_cast<int>(net.nodes()[static_cast<std::size_t>(i)]
                                     .dist.levels()
                                     .size())) {
        more = true;
      } else {
        v = 0;
      }
    }
  }
  return total;
}

namespace {

int sample_level(const StateDistribution& dist, double u) {
  double acc = 0.0;
  for (const auto& s : dist.levels()) {
    acc += s.prob;
    if (u < acc) return s.level;
  }
  return dist.levels().back().level;
}

int count_below(SplitMix64& rng, int trials, double p) {
  int hits = 0;
  for (int t = 0; t < trials; ++t) hits += rng.uniform() < p ? 1 : 0;
  return hits;
}

bool run_once(const ReworkNetwork& net, const Query& query, double send,
              SplitMix64& rng, std::vector<int>& cap) {
  const int n = net.size();
  for (int i = 1; i <= n; ++i) {
    cap[static_cast<std::size_t>(i)] =
        sample_level(net.node(i).dist, rng.uniform());
  }
  int flow = query.b;
  int held = 0;
  for (int i = 1; i <= n; ++i) {
    const int x = std::min(flow, cap[static_cast<std::size_t>(i)]);
    const int bad = count_below(rng, x, net.node(i).delta);
    if (i == net.alpha()) held = bad;
    flow = x - bad;
  }
  if (flow >= query.d) return true;

  int rework = count_below(rng, held, send);
  for (int i = net.beta(); i <= n; ++i) {
    const int x = std::min(rework, cap[static_cast<std::size_t>(i)]);
    rework = x - count_below(rng, x, net.node(i).gamma);
  }
  return flow + rework >= query.d;
}

}  // namespace

SimResult simulate(const ReworkNetwork& net, const SimConfig& cfg) {
  cfg.query.validate();
  if (cfg.replications == 0) {
    throw std::invalid_argument("replications must be at least 1");
  }
  const double send =
      per_defect_send_probability(net.delta_send(), net.convention());

  unsigned threads = cfg.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, cfg.replications));

  std::vector<std::uint64_t> hits(threads, 0);
  const auto work = [&](unsigned t) {
    std::vector<int> cap(static_cast<std::size_t>(net.size()) + 1, 0);
    std::uint64_t local = 0;
    for (std::uint64_t r = t; r < cfg.replications; r += threads) {
      auto rng = SplitMix64::stream(cfg.seed, r);
      local += run_once(net, cfg.query, send, rng, cap) ? 1 : 0;
    }
    hits[t] = local;
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
  }

  SimResult res;
  res.replications = cfg.replications;
  for (auto h : hits) res.successes += h;
  const double N = static_cast<double>(cfg.replications);
  res.estimate = static_cast<double>(res.successes) / N;
  res.std_error = std::sqrt(res.estimate * (1.0 - res.estimate) / N);
  res.ci95 = {std::max(0.0, res.estimate - 1.96 * res.std_error),
              std::min(1.0, res.estimate + 1.96 * res.std_error)};
  return res;
}

}  // namespace rework
