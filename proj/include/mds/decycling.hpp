// Decycling verification and cycle analytics on the implicit graph D_k \ M:
// acyclicity check, witness cycle extraction, remaining path length (longest
// path of the residual DAG, counted in vertices), exhaustive simple-cycle
// enumeration (Johnson's algorithm) for small instances, hitting numbers,
// cycle signatures, and constrained-cycle edge tagging.
#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "mds/core.hpp"

namespace mds {

// ---------------------------------------------------------------------------
// Acyclicity of D_k \ M (iterative three-color DFS; node counts can be large
// so no recursion).
// ---------------------------------------------------------------------------

inline bool is_decycling(const KmerSet& M) {
  const GraphParams& p = M.params();
  const kmer_t n = p.num_kmers();
  std::vector<unsigned char> color(n, 0);  // 0 white, 1 gray, 2 black
  std::vector<std::pair<kmer_t, unsigned>> stack;
  for (kmer_t s = 0; s < n; ++s) {
    if (M.contains(s) || color[s] != 0) continue;
    color[s] = 1;
    stack.assign(1, {s, 0});
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      if (i < p.sigma()) {
        kmer_t v = (u % p.num_fmers()) * p.sigma() + i;
        ++i;
        if (M.contains(v) || color[v] == 2) continue;
        if (color[v] == 1) return false;
        color[v] = 1;
        stack.push_back({v, 0});
      } else {
        color[u] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Witness cycle
// ---------------------------------------------------------------------------

struct Cycle {
  std::vector<kmer_t> nodes;  // consecutive (cyclically) de Bruijn edges

  // Canonical rotation: minimal node first.
  void canonicalize() {
    auto at = std::min_element(nodes.begin(), nodes.end());
    std::rotate(nodes.begin(), at, nodes.end());
  }

  bool operator==(const Cycle&) const = default;
};

// Returns std::nullopt iff M is decycling; otherwise a simple cycle of
// D_k \ M (canonical rotation).
inline std::optional<Cycle> find_cycle_avoiding(const KmerSet& M) {
  const GraphParams& p = M.params();
  const kmer_t n = p.num_kmers();
  std::vector<unsigned char> color(n, 0);
  std::vector<std::pair<kmer_t, unsigned>> stack;
  for (kmer_t s = 0; s < n; ++s) {
    if (M.contains(s) || color[s] != 0) continue;
    color[s] = 1;
    stack.assign(1, {s, 0});
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      if (i < p.sigma()) {
        kmer_t v = (u % p.num_fmers()) * p.sigma() + i;
        ++i;
        if (M.contains(v) || color[v] == 2) continue;
        if (color[v] == 1) {
          // The DFS stack from v to u is the cycle.
          Cycle c;
          std::size_t at = 0;
          while (stack[at].first != v) ++at;
          for (; at < stack.size(); ++at) c.nodes.push_back(stack[at].first);
          c.canonicalize();
          return c;
        }
        color[v] = 1;
        stack.push_back({v, 0});
      } else {
        color[u] = 2;
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Remaining path length: number of VERTICES on the longest path of D_k \ M.
// (The vertex-count unit reproduces the published value 5 for the
// Mykkeltveit set at sigma=2, k=4; an edge count would give 4.)
// ---------------------------------------------------------------------------

inline kmer_t remaining_path_length(const KmerSet& M) {
  const GraphParams& p = M.params();
  const kmer_t n = p.num_kmers();
  std::vector<unsigned char> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<kmer_t> best(n, 0);          // longest path (vertices) from u
  std::vector<std::pair<kmer_t, unsigned>> stack;
  kmer_t longest = 0;
  for (kmer_t s = 0; s < n; ++s) {
    if (M.contains(s) || state[s] == 2) continue;
    state[s] = 1;
    stack.assign(1, {s, 0});
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      if (i < p.sigma()) {
        kmer_t v = (u % p.num_fmers()) * p.sigma() + i;
        ++i;
        if (M.contains(v) || state[v] == 2) continue;
        if (state[v] == 1)
          throw NotDecycling("cycle survives the removed k-mer set");
        state[v] = 1;
        stack.push_back({v, 0});
      } else {
        state[u] = 2;
        stack.pop_back();
        kmer_t b = 0;
        kmer_t base = (u % p.num_fmers()) * p.sigma();
        for (unsigned a = 0; a < p.sigma(); ++a) {
          kmer_t v = base + a;
          if (!M.contains(v)) b = std::max(b, best[v]);
        }
        best[u] = b + 1;
        longest = std::max(longest, best[u]);
      }
    }
  }
  return longest;
}

// Reconstructs one longest path of D_k \ M (vertex list). Used to build the
// witness gap for the set-indicator window-guarantee experiments.
inline std::vector<kmer_t> longest_remaining_path(const KmerSet& M) {
  const GraphParams& p = M.params();
  const kmer_t n = p.num_kmers();
  std::vector<unsigned char> state(n, 0);
  std::vector<kmer_t> best(n, 0);
  std::vector<std::pair<kmer_t, unsigned>> stack;
  for (kmer_t s = 0; s < n; ++s) {
    if (M.contains(s) || state[s] == 2) continue;
    state[s] = 1;
    stack.assign(1, {s, 0});
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      if (i < p.sigma()) {
        kmer_t v = (u % p.num_fmers()) * p.sigma() + i;
        ++i;
        if (M.contains(v) || state[v] == 2) continue;
        if (state[v] == 1)
          throw NotDecycling("cycle survives the removed k-mer set");
        state[v] = 1;
        stack.push_back({v, 0});
      } else {
        state[u] = 2;
        stack.pop_back();
        kmer_t b = 0;
        kmer_t base = (u % p.num_fmers()) * p.sigma();
        for (unsigned a = 0; a < p.sigma(); ++a) {
          kmer_t v = base + a;
          if (!M.contains(v)) b = std::max(b, best[v]);
        }
        best[u] = b + 1;
      }
    }
  }
  kmer_t start = 0;
  kmer_t len = 0;
  for (kmer_t u = 0; u < n; ++u) {
    if (!M.contains(u) && best[u] > len) {
      len = best[u];
      start = u;
    }
  }
  std::vector<kmer_t> path;
  if (len == 0) return path;
  kmer_t u = start;
  path.push_back(u);
  while (best[u] > 1) {
    kmer_t base = (u % p.num_fmers()) * p.sigma();
    for (unsigned a = 0; a < p.sigma(); ++a) {
      kmer_t v = base + a;
      if (!M.contains(v) && best[v] == best[u] - 1) {
        u = v;
        path.push_back(u);
        break;
      }
    }
  }
  return path;
}

// ---------------------------------------------------------------------------
// Simple-cycle enumeration (Johnson's algorithm) over the materialized D_k.
// Guarded to small instances; cycles are only needed as test oracles and for
// signatures.
// ---------------------------------------------------------------------------

inline constexpr kmer_t kCycleEnumBound = 256;

namespace detail {

class JohnsonCycles {
 public:
  JohnsonCycles(const GraphParams& p) : p_(p), n_(p.num_kmers()) {}

  std::vector<Cycle> run() {
    blocked_.assign(n_, false);
    block_list_.assign(n_, {});
    for (kmer_t s = 0; s < n_; ++s) {
      start_ = s;
      for (kmer_t v = s; v < n_; ++v) {
        blocked_[v] = false;
        block_list_[v].clear();
      }
      path_.clear();
      circuit(s);
    }
    for (Cycle& c : cycles_) c.canonicalize();
    std::sort(cycles_.begin(), cycles_.end(),
              [](const Cycle& a, const Cycle& b) {
                if (a.nodes.size() != b.nodes.size())
                  return a.nodes.size() < b.nodes.size();
                return a.nodes < b.nodes;
              });
    return std::move(cycles_);
  }

 private:
  bool circuit(kmer_t v) {
    bool found = false;
    path_.push_back(v);
    blocked_[v] = true;
    kmer_t base = (v % p_.num_fmers()) * p_.sigma();
    for (unsigned a = 0; a < p_.sigma(); ++a) {
      kmer_t w = base + a;
      if (w < start_) continue;  // only vertices >= start in this round
      if (w == start_) {
        cycles_.push_back(Cycle{path_});
        found = true;
      } else if (!blocked_[w]) {
        if (circuit(w)) found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (unsigned a = 0; a < p_.sigma(); ++a) {
        kmer_t w = base + a;
        if (w < start_) continue;
        auto& lst = block_list_[w];
        if (std::find(lst.begin(), lst.end(), v) == lst.end())
          lst.push_back(v);
      }
    }
    path_.pop_back();
    return found;
  }

  void unblock(kmer_t v) {
    blocked_[v] = false;
    auto lst = std::move(block_list_[v]);
    block_list_[v].clear();
    for (kmer_t w : lst)
      if (blocked_[w]) unblock(w);
  }

  GraphParams p_;
  kmer_t n_;
  kmer_t start_ = 0;
  std::vector<bool> blocked_;
  std::vector<std::vector<kmer_t>> block_list_;
  std::vector<kmer_t> path_;
  std::vector<Cycle> cycles_;
};

}  // namespace detail

// All simple directed cycles of D_k, each once, canonical rotation, sorted
// by (length, node list).
inline std::vector<Cycle> enumerate_cycles(const GraphParams& p) {
  if (p.num_kmers() > kCycleEnumBound)
    throw InstanceTooLarge("cycle enumeration limited to sigma^k <= " +
                           std::to_string(kCycleEnumBound));
  return detail::JohnsonCycles(p).run();
}

inline kmer_t hitting_number(const KmerSet& M, const Cycle& c) {
  kmer_t hits = 0;
  for (kmer_t u : c.nodes)
    if (M.contains(u)) ++hits;
  return hits;
}

struct Signature {
  std::vector<kmer_t> hits;  // indexed by the canonical cycle order

  bool operator==(const Signature&) const = default;
};

inline Signature signature(const KmerSet& M,
                           const std::vector<Cycle>& cycles) {
  Signature sig;
  sig.hits.reserve(cycles.size());
  for (const Cycle& c : cycles) sig.hits.push_back(hitting_number(M, c));
  return sig;
}

inline Signature signature(const KmerSet& M) {
  return signature(M, enumerate_cycles(M.params()));
}

// ---------------------------------------------------------------------------
// Constrained edges: edges lying on at least one cycle with hitting number
// exactly 1.  Edge u -> v is stored as (u, last digit of v).
// ---------------------------------------------------------------------------

class EdgeSet {
 public:
  explicit EdgeSet(const GraphParams& p)
      : params_(p), bits_(p.num_kmers() * p.sigma(), false) {}

  const GraphParams& params() const { return params_; }

  bool contains(kmer_t u, unsigned last_digit) const {
    return bits_[u * params_.sigma() + last_digit];
  }

  bool contains_edge(kmer_t u, kmer_t v) const {
    return bits_[u * params_.sigma() + v % params_.sigma()];
  }

  void insert(kmer_t u, unsigned last_digit) {
    bits_[u * params_.sigma() + last_digit] = true;
  }

  std::vector<std::pair<kmer_t, kmer_t>> to_vector() const {
    std::vector<std::pair<kmer_t, kmer_t>> out;
    for (kmer_t u = 0; u < params_.num_kmers(); ++u) {
      kmer_t base = (u % params_.num_fmers()) * params_.sigma();
      for (unsigned a = 0; a < params_.sigma(); ++a)
        if (bits_[u * params_.sigma() + a]) out.push_back({u, base + a});
    }
    return out;
  }

  bool operator==(const EdgeSet& o) const { return bits_ == o.bits_; }

 private:
  GraphParams params_;
  std::vector<bool> bits_;
};

// For each m in M: one forward and one backward DFS from m inside
// D_k \ (M \ {m}); an edge u -> v (u, v not in M \ {m}) lies on a cycle whose
// only M-vertex is m iff u is forward-reachable and v is backward-reachable
// from m.  (In a decycling set a closed walk through m with no other
// M-vertex cannot repeat an intermediate vertex, so it is a simple cycle.)
inline EdgeSet constrained_edges(const KmerSet& M) {
  if (!is_decycling(M)) throw NotDecycling("constrained_edges requires a DS");
  const GraphParams& p = M.params();
  const kmer_t n = p.num_kmers();
  EdgeSet out(p);
  std::vector<unsigned char> fwd(n), bwd(n);
  std::vector<kmer_t> stack;
  for (kmer_t m = 0; m < n; ++m) {
    if (!M.contains(m)) continue;
    std::fill(fwd.begin(), fwd.end(), 0);
    std::fill(bwd.begin(), bwd.end(), 0);
    // Forward reachability from m, never re-entering M \ {m}.
    fwd[m] = 1;
    stack.assign(1, m);
    while (!stack.empty()) {
      kmer_t u = stack.back();
      stack.pop_back();
      kmer_t base = (u % p.num_fmers()) * p.sigma();
      for (unsigned a = 0; a < p.sigma(); ++a) {
        kmer_t v = base + a;
        if (fwd[v] || (M.contains(v) && v != m)) continue;
        fwd[v] = 1;
        stack.push_back(v);
      }
    }
    // Backward reachability to m.
    bwd[m] = 1;
    stack.assign(1, m);
    while (!stack.empty()) {
      kmer_t u = stack.back();
      stack.pop_back();
      kmer_t suffix = u / p.sigma();
      for (unsigned a = 0; a < p.sigma(); ++a) {
        kmer_t v = a * p.num_fmers() + suffix;
        if (bwd[v] || (M.contains(v) && v != m)) continue;
        bwd[v] = 1;
        stack.push_back(v);
      }
    }
    for (kmer_t u = 0; u < n; ++u) {
      if (!fwd[u]) continue;
      kmer_t base = (u % p.num_fmers()) * p.sigma();
      for (unsigned a = 0; a < p.sigma(); ++a)
        if (bwd[base + a]) out.insert(u, a);
    }
  }
  return out;
}

}  // namespace mds
