#pragma once

// Populates the results cache with rho^(Z_n, m, h) for every 1 <= h <= m <= n <= n_max.
//
// Cells with h > m/2 (and h < m) are copied from (n, m, m - h). Cells are
// searched in parallel, one single-threaded search per cell, and committed to
// the cache strictly in (n, m, h) order, so the cache text does not depend on
// the thread count.

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "rsum/cache.hpp"
#include "rsum/search.hpp"

namespace rsum {

struct TableOptions {
  std::int64_t n_max = 1;
  bool quick = false;  // accept |h^A| = m as optimal without enumeration
  unsigned threads = 1;
  std::optional<std::uint64_t> budget;  // per cell
};

struct TableSummary {
  std::size_t emitted = 0;
  std::size_t from_cache = 0;
  std::size_t searched = 0;
  std::size_t derived = 0;
  std::size_t budget_exhausted = 0;
};

template <class Sink>
TableSummary rho_hat_table(const TableOptions& opts, ResultsCache& cache, Sink&& emit) {
  if (opts.n_max < 1) throw std::domain_error("table needs n_max >= 1");
  if (opts.n_max > kMaxOrder) throw std::domain_error("table: n_max exceeds mask capacity");

  struct Cell {
    std::int64_t n, m, h;
    std::optional<std::size_t> source;  // index of the dual cell
    std::optional<SearchRecord> cached;
    std::optional<SearchRecord> result;
  };
  std::vector<Cell> cells;
  std::vector<std::size_t> work;
  for (std::int64_t n = 1; n <= opts.n_max; ++n) {
    for (std::int64_t m = 1; m <= n; ++m) {
      const std::size_t row_start = cells.size();
      for (std::int64_t h = 1; h <= m; ++h) {
        Cell c{n, m, h, std::nullopt, cache.find_exact(n, m, h), std::nullopt};
        if (2 * h > m && h < m) c.source = row_start + static_cast<std::size_t>(m - h - 1);
        if (!c.cached && !c.source) work.push_back(cells.size());
        cells.push_back(std::move(c));
      }
    }
  }

  TableSummary summary;
  std::mutex mu;
  std::size_t committed = 0;
  std::exception_ptr failure;
  std::atomic<bool> abort{false};

  // Commits every cell whose predecessors are all done. Caller holds mu.
  auto commit_ready = [&] {
    while (committed < cells.size()) {
      Cell& c = cells[committed];
      if (c.cached) {
        c.result = c.cached;
        ++summary.from_cache;
      } else if (c.source) {
        const auto& src = *cells[*c.source].result;
        SearchRecord r = src;
        r.h = c.h;
        r.nodes = 0;
        cache.append(r);
        c.result = r;
        ++summary.derived;
      } else if (c.result) {
        cache.append(*c.result);
        ++summary.searched;
      } else {
        return;
      }
      if (c.result->status == SearchStatus::budget_exhausted) ++summary.budget_exhausted;
      emit(*c.result);
      ++summary.emitted;
      ++committed;
    }
  };

  SearchOptions search_opts;
  search_opts.budget = opts.budget;
  search_opts.assume_lower_bound = opts.quick;
  search_opts.threads = 1;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    try {
      for (std::size_t i = next.fetch_add(1); i < work.size() && !abort.load(); i = next.fetch_add(1)) {
        Cell& c = cells[work[i]];
        auto rec = rho_hat_exact(c.n, c.m, c.h, search_opts);
        std::lock_guard lock(mu);
        c.result = std::move(rec);
        commit_ready();
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      abort.store(true);
    }
  };

  {
    std::lock_guard lock(mu);
    try {
      commit_ready();
    } catch (...) {
      failure = std::current_exception();
      abort.store(true);
    }
  }
  const unsigned threads = std::max(1U, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return summary;
}

}  // namespace rsum
