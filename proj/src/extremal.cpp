#include "hatguess/extremal.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>

#include "hatguess/error.hpp"

namespace hatguess {

namespace {

long long ipow(long long b, int e) {
  long long out = 1;
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}

mpz_class zpow(const mpz_class& b, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

long long tuple_index(const Tuple& t, int n) {
  long long id = 0;
  for (int x : t) id = id * n + x;
  return id;
}

Tuple tuple_of(long long id, int r, int n) {
  Tuple t(r);
  for (int i = r - 1; i >= 0; --i) {
    t[i] = static_cast<int>(id % n);
    id /= n;
  }
  return t;
}

std::vector<std::vector<int>> subsets_of_size(int n, int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == l) {
      out.push_back(cur);
      return;
    }
    for (int x = from; x <= n - (l - static_cast<int>(cur.size())); ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Calls f(choice) for every r-tuple of l-subsets, one per part; stops when f returns true.
template <class F>
bool for_each_copy(int r, const std::vector<std::vector<int>>& subsets, F&& f) {
  std::vector<const std::vector<int>*> choice(r);
  auto rec = [&](auto&& self, int part) -> bool {
    if (part == r) return f(choice);
    for (const auto& s : subsets) {
      choice[part] = &s;
      if (self(self, part + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

// Tuple ids of the product L_1 x ... x L_r.
template <class Choice>
std::vector<long long> product_ids(const Choice& choice, int n) {
  std::vector<long long> ids{0};
  for (const auto* part : choice) {
    std::vector<long long> next;
    for (long long id : ids)
      for (int x : *part) next.push_back(id * n + x);
    ids.swap(next);
  }
  return ids;
}

void check_params(int r, int n, int l) {
  if (r < 1 || n < 1 || l < 1 || l > n) throw ContractError("ex needs r >= 1 and 1 <= l <= n");
}

// Minimum hitting set of the K-copies, by iterative deepening on its size.
class HittingSearch {
 public:
  HittingSearch(std::vector<std::uint64_t> copies, const Budget& budget)
      : copies_(std::move(copies)), budget_(budget), start_(std::chrono::steady_clock::now()) {}

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t removed() const { return removed_; }

  bool solve(int h) {
    ++nodes_;
    if ((nodes_ & 1023) == 0) check_budget();
    const std::uint64_t free = ~kept_;
    std::uint64_t used = 0;
    int packing = 0;
    const std::uint64_t* pick = nullptr;
    int pick_free = 65;
    for (const auto& c : copies_) {
      if (c & removed_) continue;
      const int f = std::popcount(c & free);
      if (f == 0) return false;
      if (f < pick_free) {
        pick_free = f;
        pick = &c;
      }
      if ((c & free & used) == 0) {
        used |= c & free;
        ++packing;
      }
    }
    if (!pick) return true;
    if (packing > h) return false;
    const std::uint64_t options = *pick & free;
    const std::uint64_t saved = kept_;
    // at the root every tuple of the chosen copy is equivalent under the copy's stabilizer
    const bool root = removed_ == 0 && kept_ == 0;
    for (std::uint64_t rest = options; rest; rest &= rest - 1) {
      const std::uint64_t bit = rest & (~rest + 1);
      removed_ |= bit;
      const bool ok = solve(h - 1);
      if (ok) return true;
      removed_ &= ~bit;
      kept_ |= bit;
      if (root) break;
    }
    kept_ = saved;
    return false;
  }

 private:
  void check_budget() const {
    if (nodes_ > budget_.max_nodes) throw BudgetExceeded("ex_exact exceeded its node budget");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (secs > budget_.max_seconds) throw BudgetExceeded("ex_exact exceeded its time budget");
  }

  std::vector<std::uint64_t> copies_;
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0, removed_ = 0, kept_ = 0;
};

}  // namespace

void validate_hypergraph(const PartiteHypergraph& h) {
  if (h.r < 1 || h.n < 0) throw ContractError("hypergraph needs r >= 1 and n >= 0");
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    const Tuple& e = h.edges[i];
    if (static_cast<int>(e.size()) != h.r) throw ContractError("hyperedge must have one vertex per part");
    for (int x : e)
      if (x < 0 || x >= h.n) throw ContractError("hyperedge vertex out of range");
    if (i > 0 && !(h.edges[i - 1] < e)) throw ContractError("hyperedges must be sorted and unique");
  }
}

std::optional<std::vector<std::vector<int>>> contains_complete(const PartiteHypergraph& h, int l) {
  validate_hypergraph(h);
  if (l < 1 || l > h.n) throw ContractError("contains_complete needs 1 <= l <= n");
  std::vector<char> present(static_cast<std::size_t>(ipow(h.n, h.r)), 0);
  for (const auto& e : h.edges) present[tuple_index(e, h.n)] = 1;
  const auto subsets = subsets_of_size(h.n, l);
  std::optional<std::vector<std::vector<int>>> found;
  for_each_copy(h.r, subsets, [&](const auto& choice) {
    for (long long id : product_ids(choice, h.n))
      if (!present[id]) return false;
    std::vector<std::vector<int>> w;
    for (const auto* part : choice) w.push_back(*part);
    found = std::move(w);
    return true;
  });
  return found;
}

ExResult ex_exact(int r, int n, int l, bool pruned, const Budget& budget) {
  check_params(r, n, l);
  const long long cells = ipow(n, r);
  if (cells > 64) throw ContractError("ex_exact supports n^r <= 64");
  const auto subsets = subsets_of_size(n, l);
  std::vector<std::uint64_t> copies;
  for_each_copy(r, subsets, [&](const auto& choice) {
    std::uint64_t m = 0;
    for (long long id : product_ids(choice, n)) m |= std::uint64_t{1} << id;
    copies.push_back(m);
    return false;
  });

  auto result_from = [&](std::uint64_t removed, std::uint64_t nodes) {
    ExResult out;
    out.value = cells - std::popcount(removed);
    out.extremal = {r, n, {}};
    for (long long id = 0; id < cells; ++id)
      if (!((removed >> id) & 1)) out.extremal.edges.push_back(tuple_of(id, r, n));
    out.nodes = nodes;
    return out;
  };

  if (!pruned) {
    if (cells > 24) throw ContractError("unpruned ex oracle supports n^r <= 24");
    const std::uint64_t full = (std::uint64_t{1} << cells) - 1;
    std::uint64_t best_removed = full;
    std::uint64_t nodes = 0;
    for (std::uint64_t kept = 0; kept <= full; ++kept) {
      ++nodes;
      if (std::popcount(kept) <= cells - std::popcount(best_removed)) continue;
      bool free = std::none_of(copies.begin(), copies.end(), [&](std::uint64_t c) { return (c & kept) == c; });
      if (free) best_removed = full & ~kept;
    }
    return result_from(best_removed, nodes);
  }

  HittingSearch search(copies, budget);
  for (int h = 0; h <= cells; ++h)
    if (search.solve(h)) return result_from(search.removed(), search.nodes());
  throw ClaimViolation("removing every tuple must hit all copies");
}

bool ErdosThreshold::reached_by(const mpz_class& m) const {
  const unsigned long L = zpow(l, r - 1).get_ui();
  return zpow(m, L) >= zpow(3, L) * zpow(n, r * L - 1);
}

mpz_class ErdosThreshold::ceiling() const {
  mpz_class lo = 0, hi = 3 * zpow(n, r);  // hi always reaches
  while (lo < hi) {
    mpz_class mid = (lo + hi) / 2;
    if (reached_by(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

ErdosThreshold erdos_threshold(int r, int n, int l) {
  if (r < 2 || l < 2 || l > n) throw ContractError("erdos_threshold needs r >= 2 and 2 <= l <= n");
  if (zpow(l, r - 1) > 64) throw ContractError("erdos_threshold exponent too large");
  return {r, n, l};
}

std::strong_ordering KstBound::compare(const mpz_class& m) const {
  const mpz_class d = m - mpz_class(l - 1) * n;
  if (d <= 0) return std::strong_ordering::less;
  const mpz_class lhs = zpow(d, l);
  const mpz_class rhs = mpz_class(l - 1) * zpow(n - l + 1, l) * zpow(n, l - 1);
  const int c = cmp(lhs, rhs);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

mpz_class KstBound::floor() const {
  mpz_class lo = 0, hi = 2 * zpow(n, 2) + 1;  // hi is above the bound
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    if (compare(mid) != std::strong_ordering::greater)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

KstBound kst_bound(int n, int l) {
  if (l < 2 || l > n) throw ContractError("kst_bound needs 2 <= l <= n");
  return {n, l};
}

bool kst_auxiliary_facts_hold(int l) {
  if (l < 1) throw ContractError("l must be positive");
  const unsigned long L = static_cast<unsigned long>(l);
  // (l-1)^(1/l) < 3/2  <=>  (l-1) 2^l < 3^l
  const bool first = mpz_class(l - 1) * zpow(2, L) < zpow(3, L);
  // 3/2 l^(1-1/l) > l - 1  <=>  3^l l^(l-1) > 2^l (l-1)^l
  const bool second = zpow(3, L) * zpow(l, L - 1) > zpow(2, L) * zpow(l - 1, L);
  return first && second;
}

IntersectionResult intersection_lemma_search(const std::vector<std::vector<int>>& sets, int N, int l,
                                             const mpq_class& w) {
  if (N < 0 || l < 1 || w <= 0) throw ContractError("intersection lemma needs N >= 0, l >= 1, w > 0");
  const int n = static_cast<int>(sets.size());
  std::vector<std::vector<char>> member(n, std::vector<char>(N, 0));
  long total = 0;
  for (int i = 0; i < n; ++i) {
    for (int y : sets[i]) {
      if (y < 0 || y >= N) throw ContractError("set element outside the ground set");
      if (!member[i][y]) ++total;
      member[i][y] = 1;
    }
  }
  mpq_class w_l = 1;
  for (int i = 0; i < l; ++i) w_l *= w;
  const bool dense = mpq_class(total) * w >= mpq_class(static_cast<long>(n) * N);
  const bool many = mpq_class(n) >= 2 * l * l * w_l;
  if (!dense || !many || l > n) return {LemmaStatus::HypothesesFail, {}, 0};

  std::optional<IntersectionResult> found;
  for (const auto& idx : subsets_of_size(n, l)) {
    long size = 0;
    for (int y = 0; y < N; ++y)
      size += std::all_of(idx.begin(), idx.end(), [&](int i) { return member[i][y] != 0; });
    // |intersection| >= N / (2 w^l)
    if (2 * mpq_class(size) * w_l >= N) return {LemmaStatus::Witness, idx, size};
  }
  return {LemmaStatus::NoWitness, {}, 0};
}

}  // namespace hatguess
