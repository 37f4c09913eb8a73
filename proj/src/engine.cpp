#include "rework/engine.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "rework/enumerate.hpp"
#include "rework/probability.hpp"

namespace rework {

CellResult reliability(const ReworkNetwork& net, const Query& query) {
  query.validate();
  CellResult cell;
  cell.b = query.b;
  cell.d = query.d;

  for_each_non_rework(net, query, [&](const NonReworkVector& px) {
    ++cell.n_non_rework;
    cell.r_non_rework += prob_non_rework(net, px);
  });

  const int alpha = net.alpha();
  for_each_rework_candidate(net, query, [&](const NonReworkVector& px) {
    ++cell.n_rework;
    const double first = prob_non_rework(net, px);
    if (first == 0.0) return;
    const int available = px.defects(alpha);
    for_each_rework_pass(net, query, px, [&](const ReworkVector& piy) {
      cell.r_rework += first *
                       prob_sendback(available, piy.head(), net.delta_send(),
                                     net.convention()) *
                       prob_rework_pass(net, piy);
    });
  });
  return cell;
}

const CellResult& SweepReport::cell(int b, int d) const {
  if (b < 1 || d < 1 || d > b) throw std::out_of_range("cell outside grid");
  const auto index = static_cast<std::size_t>((b - 1) * b / 2 + (d - 1));
  if (index >= rows.size()) throw std::out_of_range("cell outside grid");
  return rows[index];
}

SweepReport sweep(const ReworkNetwork& net, int b_max, unsigned threads) {
  if (b_max < 1) throw std::invalid_argument("b_max must be at least 1");
  std::vector<Query> queries;
  for (int b = 1; b <= b_max; ++b) {
    for (int d = 1; d <= b; ++d) queries.push_back({b, d});
  }

  SweepReport report;
  report.network = net.name();
  report.setting = net.label();
  report.rows.resize(queries.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(queries.size()));

  // Each worker claims whole cells; results land in fixed slots.
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < queries.size(); i = next++) {
      report.rows[i] = reliability(net, queries[i]);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  pool.clear();
  return report;
}

std::vector<RatioRow> compare_settings(const SweepReport& low,
                                       const SweepReport& high) {
  if (low.rows.size() != high.rows.size()) {
    throw std::invalid_argument("reports cover different (b, d) grids");
  }
  std::vector<RatioRow> out;
  out.reserve(low.rows.size());
  for (std::size_t i = 0; i < low.rows.size(); ++i) {
    const auto& l = low.rows[i];
    const auto& h = high.rows[i];
    if (l.b != h.b || l.d != h.d) {
      throw std::invalid_argument("reports cover different (b, d) grids");
    }
    RatioRow row;
    row.b = l.b;
    row.d = l.d;
    row.r_low = l.total();
    row.r_high = h.total();
    // Two empty cells (b beyond every capacity) compare as equal.
    row.ratio = row.r_low == row.r_high ? 1.0 : row.r_low / row.r_high;
    row.rn_share = h.total() > 0.0 ? h.r_non_rework / h.total() : 0.0;
    row.rr_share = h.total() > 0.0 ? h.r_rework / h.total() : 0.0;
    out.push_back(row);
  }
  return out;
}

}  // namespace rework
