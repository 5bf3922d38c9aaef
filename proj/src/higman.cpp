#include "pep/higman.hpp"

#include <algorithm>

namespace pep {

bool is_n_good(const std::vector<Word>& seq, std::size_t n) {
  if (n == 0) return true;
  std::vector<std::size_t> lis(seq.size(), 1);
  for (std::size_t j = 0; j < seq.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i)
      if (is_subword(seq[i], seq[j])) lis[j] = std::max(lis[j], lis[i] + 1);
    if (lis[j] >= n) return true;
  }
  return false;
}

bool is_controlled(const std::vector<Word>& seq, std::size_t k) {
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (seq[i].size() > (i + 1) * k) return false;
  return true;
}

namespace {

// Advances w to the next word of the same length over {0..s-1}; false after
// the last one.
bool next_word(Word& w, std::size_t s) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] + 1 < s) {
      ++w[i];
      return true;
    }
    w[i] = 0;
  }
  return false;
}

// The budget counts candidate words examined, so that wide levels cannot run
// away before a tree node is ever created.
struct Walker {
  std::size_t n, k, s;
  std::uint64_t budget;
  std::uint64_t work = 0;
  std::uint64_t nodes = 0;
  bool exhausted = false;
  std::vector<Word> seq;
  std::vector<std::size_t> lis;
  std::vector<Word> best;

  void walk() {
    if (seq.size() > best.size()) best = seq;
    const std::size_t bound = (seq.size() + 1) * k;
    for (std::size_t len = 0; len <= bound; ++len) {
      Word x(len, 0);
      do {
        if (++work > budget) {
          exhausted = true;
          return;
        }
        std::size_t l = 1;
        for (std::size_t i = 0; i < seq.size(); ++i)
          if (lis[i] + 1 > l && is_subword(seq[i], x)) l = lis[i] + 1;
        if (l >= n) continue;
        ++nodes;
        seq.push_back(x);
        lis.push_back(l);
        walk();
        seq.pop_back();
        lis.pop_back();
        if (exhausted) return;
      } while (next_word(x, s));
    }
  }
};

}  // namespace

HResult h_bound(std::size_t n, std::size_t k, std::size_t gamma_size, std::uint64_t node_budget) {
  HResult result;
  if (n <= 1) {
    // Every nonempty sequence is 1-good, and every sequence is 0-good.
    result.value = 0;
    return result;
  }
  Walker w{n, k, std::max<std::size_t>(gamma_size, 1), node_budget, 0, 0, false, {}, {}, {}};
  w.walk();
  result.nodes = w.nodes;
  result.work = w.work;
  if (!w.exhausted) {
    result.value = w.best.size();
    result.longest_branch = std::move(w.best);
  }
  return result;
}

MonotonicityReport monotonicity_probe(std::size_t max_n, std::size_t max_k, std::size_t max_s,
                                      std::uint64_t node_budget) {
  MonotonicityReport report;
  auto index = [&](std::size_t n, std::size_t k, std::size_t s) {
    return (n * (max_k + 1) + k) * max_s + (s - 1);
  };
  for (std::size_t n = 0; n <= max_n; ++n)
    for (std::size_t k = 0; k <= max_k; ++k)
      for (std::size_t s = 1; s <= max_s; ++s)
        report.grid.push_back({n, k, s, h_bound(n, k, s, node_budget).value});
  auto compare = [&](const MonotonicityReport::Point& lo, const MonotonicityReport::Point& hi) {
    if (lo.value && hi.value && *lo.value > *hi.value)
      report.violations.push_back("H(" + std::to_string(lo.n) + "," + std::to_string(lo.k) + "," +
                                  std::to_string(lo.s) + ") > H(" + std::to_string(hi.n) + "," +
                                  std::to_string(hi.k) + "," + std::to_string(hi.s) + ")");
  };
  for (const auto& p : report.grid) {
    if (p.n < max_n) compare(p, report.grid[index(p.n + 1, p.k, p.s)]);
    if (p.k < max_k) compare(p, report.grid[index(p.n, p.k + 1, p.s)]);
    if (p.s < max_s) compare(p, report.grid[index(p.n, p.k, p.s + 1)]);
  }
  return report;
}

}  // namespace pep
