// The MDS graph G_MDS (MDSs under F-moves) and the component graph G_comp
// (components under I-moves): layered component enumeration, fingerprint-
// deduplicated traversal of G_comp, exhaustive brute-force enumeration with
// incremental cycle pruning, conjecture-verification reports, and the
// DAG check on the F-move graph of non-decycling PCR sets.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>
#include <vector>

#include "mds/core.hpp"
#include "mds/decycling.hpp"
#include "mds/moves.hpp"

namespace mds {

// ---------------------------------------------------------------------------
// Component enumeration: BFS over F-moves, layer by layer.  Every F-move
// edge advances the layer index by one mod sigma^(k-1); the BFS floods
// forward until a full cycle of layers adds nothing new.  Each MDS is
// discovered exactly once (deduplicated inside its layer class).
// ---------------------------------------------------------------------------

struct ComponentSummary {
  std::vector<Move> fingerprint;      // sorted component_i_moves
  kmer_t mds_count = 0;
  std::vector<kmer_t> layer_sizes;    // sigma^(k-1) entries, representative at 0
  kmer_t min_rpl = 0;
  kmer_t max_rpl = 0;
  std::vector<kmer_t> representative; // lexicographically smallest chosen vec
};

enum class EnumerateMode { Count, Collect };

namespace detail {

using ChosenSet =
    std::unordered_set<std::vector<kmer_t>, MdsChosenHash>;

}  // namespace detail

// Enumerates M's strongly connected component of G_MDS.  In Collect mode
// *collected (if non-null) receives every MDS's chosen vector.
inline ComponentSummary enumerate_component(
    const Mds& M, EnumerateMode mode = EnumerateMode::Count,
    std::vector<std::vector<kmer_t>>* collected = nullptr) {
  if (!M.is_decycling()) throw NotDecycling("component of a non-MDS");
  const GraphParams& p = M.params();
  const std::size_t layers = static_cast<std::size_t>(p.num_fmers());
  std::vector<detail::ChosenSet> visited(layers);

  ComponentSummary out;
  out.layer_sizes.assign(layers, 0);
  out.fingerprint = component_i_moves(M);
  std::sort(out.fingerprint.begin(), out.fingerprint.end());
  out.min_rpl = ~kmer_t{0};
  out.max_rpl = 0;
  out.representative = M.chosen();
  std::size_t representative_layer = 0;

  std::vector<Mds> frontier{M};
  visited[0].insert(M.chosen());
  std::size_t layer = 0;
  auto account = [&](const Mds& m, std::size_t at) {
    ++out.mds_count;
    ++out.layer_sizes[at];
    kmer_t r = remaining_path_length(m.to_kmer_set());
    out.min_rpl = std::min(out.min_rpl, r);
    out.max_rpl = std::max(out.max_rpl, r);
    if (m.chosen() < out.representative) {
      out.representative = m.chosen();
      representative_layer = at;
    }
    if (mode == EnumerateMode::Collect && collected)
      collected->push_back(m.chosen());
  };
  account(M, 0);

  while (!frontier.empty()) {
    std::size_t next_layer = (layer + 1) % layers;
    std::vector<Mds> next;
    for (const Mds& cur : frontier) {
      for (kmer_t f : valid_f_moves(cur)) {
        Mds succ = apply_f_move(cur, f);
        if (visited[next_layer].insert(succ.chosen()).second) {
          account(succ, next_layer);
          next.push_back(std::move(succ));
        }
      }
    }
    frontier = std::move(next);
    layer = next_layer;
  }

  // Re-index layers so the canonical representative sits at layer 0.
  std::rotate(out.layer_sizes.begin(),
              out.layer_sizes.begin() + representative_layer,
              out.layer_sizes.end());
  return out;
}

// Number of F-move steps after which the starting MDS is first re-reached
// (the component girth; equals sigma^(k-1)).
inline kmer_t component_girth(const Mds& M, kmer_t step_limit) {
  const GraphParams& p = M.params();
  const std::size_t layers = static_cast<std::size_t>(p.num_fmers());
  std::vector<detail::ChosenSet> visited(layers);
  visited[0].insert(M.chosen());
  std::vector<Mds> frontier{M};
  std::size_t layer = 0;
  for (kmer_t step = 1; step <= step_limit && !frontier.empty(); ++step) {
    std::size_t next_layer = (layer + 1) % layers;
    std::vector<Mds> next;
    for (const Mds& cur : frontier)
      for (kmer_t f : valid_f_moves(cur)) {
        Mds succ = apply_f_move(cur, f);
        if (succ == M) return step;
        if (visited[next_layer].insert(succ.chosen()).second)
          next.push_back(std::move(succ));
      }
    frontier = std::move(next);
    layer = next_layer;
  }
  return 0;  // not re-reached within the limit
}

// ---------------------------------------------------------------------------
// Component-graph traversal, deduplicated by I-move fingerprint.
// ---------------------------------------------------------------------------

struct TraverseOptions {
  std::size_t limit = ~std::size_t{0};  // max components to enumerate
  bool paranoid = false;  // additionally track representatives and report
                          // fingerprint collisions (would falsify the
                          // fingerprint conjecture)
};

struct TraverseResult {
  std::vector<ComponentSummary> components;
  kmer_t total_mds = 0;
  bool fingerprint_collision = false;
};

inline TraverseResult traverse_components(const Mds& start,
                                          const TraverseOptions& opts = {}) {
  TraverseResult out;
  std::set<std::vector<Move>> seen;
  std::deque<Mds> queue;

  auto fingerprint_of = [](const Mds& m) {
    std::vector<Move> fp = component_i_moves(m);
    std::sort(fp.begin(), fp.end());
    return fp;
  };

  std::map<std::vector<Move>, std::vector<kmer_t>> reps;  // paranoid mode
  queue.push_back(start);
  seen.insert(fingerprint_of(start));
  while (!queue.empty() && out.components.size() < opts.limit) {
    Mds entry = std::move(queue.front());
    queue.pop_front();
    std::vector<std::vector<kmer_t>> members;
    ComponentSummary summary =
        enumerate_component(entry, EnumerateMode::Collect, &members);
    out.total_mds += summary.mds_count;
    if (opts.paranoid) {
      auto [it, fresh] = reps.emplace(summary.fingerprint,
                                      summary.representative);
      if (!fresh && it->second != summary.representative)
        out.fingerprint_collision = true;
    }
    // Neighbor components: apply every I-move valid at any member.
    std::sort(members.begin(), members.end());
    for (const auto& chosen : members) {
      Mds m(entry.space_ptr(), chosen);
      for (const Move& mv : valid_i_moves(m)) {
        Mds neighbor = apply_i_move(m, mv);
        std::vector<Move> fp = fingerprint_of(neighbor);
        if (seen.insert(std::move(fp)).second)
          queue.push_back(std::move(neighbor));
      }
    }
    out.components.push_back(std::move(summary));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration: backtracking over one-choice-per-PCR assignments.
// A partial assignment dies as soon as the subgraph induced on the members
// of the fully-assigned PCRs, minus the chosen k-mers, has a cycle.
// ---------------------------------------------------------------------------

inline constexpr kmer_t kBruteForceBound = 128;  // sigma^k; covers (2,7)

namespace detail {

class BruteForce {
 public:
  BruteForce(SpacePtr space) : space_(std::move(space)) {
    const GraphParams& p = space_->params();
    order_.resize(space_->num_pcrs());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const auto& A = space_->pcrs()[a].members;
      const auto& B = space_->pcrs()[b].members;
      if (A.size() != B.size()) return A.size() < B.size();
      return space_->pcrs()[a].id < space_->pcrs()[b].id;
    });
    decided_.assign(p.num_kmers(), false);
    chosen_bit_.assign(p.num_kmers(), false);
    chosen_.assign(space_->num_pcrs(), 0);
  }

  std::vector<Mds> run() {
    results_.clear();
    descend(0);
    std::sort(results_.begin(), results_.end());
    return std::move(results_);
  }

 private:
  void descend(std::size_t depth) {
    if (depth == order_.size()) {
      results_.emplace_back(space_, chosen_);
      return;
    }
    const Pcr& orb = space_->pcrs()[order_[depth]];
    for (kmer_t u : orb.members) decided_[u] = true;
    for (kmer_t u : orb.members) {
      chosen_[order_[depth]] = u;
      chosen_bit_[u] = true;
      if (decided_subgraph_acyclic()) descend(depth + 1);
      chosen_bit_[u] = false;
    }
    for (kmer_t u : orb.members) decided_[u] = false;
  }

  // Acyclicity of the subgraph induced on decided, non-chosen k-mers.
  bool decided_subgraph_acyclic() {
    const GraphParams& p = space_->params();
    const kmer_t n = p.num_kmers();
    color_.assign(n, 0);
    for (kmer_t s = 0; s < n; ++s) {
      if (!decided_[s] || chosen_bit_[s] || color_[s] != 0) continue;
      color_[s] = 1;
      stack_.assign(1, {s, 0});
      while (!stack_.empty()) {
        auto& [u, i] = stack_.back();
        if (i < p.sigma()) {
          kmer_t v = (u % p.num_fmers()) * p.sigma() + i;
          ++i;
          if (!decided_[v] || chosen_bit_[v] || color_[v] == 2) continue;
          if (color_[v] == 1) return false;
          color_[v] = 1;
          stack_.push_back({v, 0});
        } else {
          color_[u] = 2;
          stack_.pop_back();
        }
      }
    }
    return true;
  }

  SpacePtr space_;
  std::vector<std::size_t> order_;   // PCR slots, smallest orbits first
  std::vector<bool> decided_;
  std::vector<bool> chosen_bit_;
  std::vector<kmer_t> chosen_;
  std::vector<unsigned char> color_;
  std::vector<std::pair<kmer_t, unsigned>> stack_;
  std::vector<Mds> results_;
};

}  // namespace detail

inline std::vector<Mds> enumerate_all_mds_bruteforce(SpacePtr space) {
  if (space->params().num_kmers() > kBruteForceBound)
    throw InstanceTooLarge("brute force limited to sigma^k <= " +
                           std::to_string(kBruteForceBound));
  return detail::BruteForce(std::move(space)).run();
}

// ---------------------------------------------------------------------------
// Conjecture checks
// ---------------------------------------------------------------------------

struct ConnectivityReport {
  bool equal = false;
  kmer_t traversal_mds = 0;
  kmer_t brute_mds = 0;
  std::size_t components = 0;
  kmer_t missing = 0;  // MDSs the traversal failed to reach
  kmer_t extra = 0;    // should always be 0
};

// Conjecture "connectivity by I-moves": everything brute force finds is
// reachable from the Mykkeltveit set by F- and I-moves.
inline ConnectivityReport verify_conjecture_connectivity(SpacePtr space,
                                                         const Mds& start) {
  ConnectivityReport rep;
  std::vector<Mds> brute = enumerate_all_mds_bruteforce(space);
  rep.brute_mds = brute.size();

  detail::ChosenSet reached;
  {
    std::set<std::vector<Move>> seen;
    std::deque<Mds> queue;
    auto fingerprint_of = [](const Mds& m) {
      std::vector<Move> fp = component_i_moves(m);
      std::sort(fp.begin(), fp.end());
      return fp;
    };
    queue.push_back(start);
    seen.insert(fingerprint_of(start));
    while (!queue.empty()) {
      Mds entry = std::move(queue.front());
      queue.pop_front();
      std::vector<std::vector<kmer_t>> members;
      enumerate_component(entry, EnumerateMode::Collect, &members);
      ++rep.components;
      std::sort(members.begin(), members.end());
      for (const auto& chosen : members) {
        reached.insert(chosen);
        Mds m(entry.space_ptr(), chosen);
        for (const Move& mv : valid_i_moves(m)) {
          Mds neighbor = apply_i_move(m, mv);
          std::vector<Move> fp = fingerprint_of(neighbor);
          if (seen.insert(std::move(fp)).second)
            queue.push_back(std::move(neighbor));
        }
      }
    }
  }
  rep.traversal_mds = reached.size();
  detail::ChosenSet brute_set;
  for (const Mds& m : brute) brute_set.insert(m.chosen());
  for (const Mds& m : brute)
    if (!reached.count(m.chosen())) ++rep.missing;
  for (const auto& chosen : reached)
    if (!brute_set.count(chosen)) ++rep.extra;
  rep.equal = rep.missing == 0 && rep.extra == 0;
  return rep;
}

struct FingerprintReport {
  std::size_t components = 0;
  std::size_t distinct_fingerprints = 0;
  bool all_distinct = false;
  bool matches_constrained_edge_rule = false;  // brute union == shortcut
};

// Conjecture "components have distinct valid-I-move lists": groups all MDSs
// into components by F-move flooding, computes each component's exhaustive
// union of valid I-moves, and checks pairwise distinctness.  Also
// cross-checks the union against the constrained-edge shortcut.
inline FingerprintReport verify_conjecture_imove_signature(SpacePtr space) {
  FingerprintReport rep;
  std::vector<Mds> all = enumerate_all_mds_bruteforce(space);
  detail::ChosenSet assigned;
  std::set<std::vector<Move>> fingerprints;
  rep.matches_constrained_edge_rule = true;
  for (const Mds& m : all) {
    if (assigned.count(m.chosen())) continue;
    std::vector<std::vector<kmer_t>> members;
    enumerate_component(m, EnumerateMode::Collect, &members);
    std::set<Move> exhaustive;
    for (const auto& chosen : members) {
      assigned.insert(chosen);
      Mds member(space, chosen);
      for (const Move& mv : valid_i_moves(member)) exhaustive.insert(mv);
    }
    std::vector<Move> fp(exhaustive.begin(), exhaustive.end());
    std::vector<Move> shortcut = component_i_moves(m);
    std::sort(shortcut.begin(), shortcut.end());
    if (fp != shortcut) rep.matches_constrained_edge_rule = false;
    fingerprints.insert(std::move(fp));
    ++rep.components;
  }
  rep.distinct_fingerprints = fingerprints.size();
  rep.all_distinct = rep.distinct_fingerprints == rep.components;
  return rep;
}

// ---------------------------------------------------------------------------
// Non-decycling PCR sets under F-moves: each weak component must be a DAG.
// ---------------------------------------------------------------------------

struct NonDecyclingGraphReport {
  std::size_t nodes = 0;           // non-decycling PCR sets
  std::size_t edges = 0;
  bool acyclic = false;
  std::size_t longest_path_edges = 0;
  bool crosses_into_mds = false;   // must stay false
};

inline NonDecyclingGraphReport nondecycling_fmove_graph_check(
    SpacePtr space) {
  const GraphParams& p = space->params();
  if (pcr_set_count(p) > 4096)
    throw InstanceTooLarge("non-decycling graph check needs all PCR sets");

  // Materialize every PCR set.
  std::vector<std::vector<kmer_t>> sets;
  {
    std::vector<kmer_t> cur(space->num_pcrs());
    std::vector<std::size_t> idx(space->num_pcrs(), 0);
    const auto& pcrs = space->pcrs();
    while (true) {
      for (std::size_t i = 0; i < pcrs.size(); ++i)
        cur[i] = pcrs[i].members[idx[i]];
      sets.push_back(cur);
      std::size_t at = 0;
      while (at < pcrs.size() &&
             ++idx[at] == pcrs[at].members.size()) {
        idx[at] = 0;
        ++at;
      }
      if (at == pcrs.size()) break;
    }
  }

  NonDecyclingGraphReport rep;
  std::map<std::vector<kmer_t>, std::size_t> node_id;  // non-decycling only
  std::vector<bool> decycling(sets.size());
  std::vector<const std::vector<kmer_t>*> nodes;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Mds m(space, sets[i]);
    decycling[i] = m.is_decycling();
    if (!decycling[i]) {
      node_id.emplace(sets[i], node_id.size());
      nodes.push_back(&sets[i]);
    }
  }
  rep.nodes = node_id.size();

  std::vector<std::vector<std::size_t>> adj(rep.nodes);
  for (const auto& [chosen, id] : node_id) {
    Mds m(space, chosen);
    for (kmer_t f : valid_f_moves(m)) {
      Mds succ = apply_f_move(m, f);
      auto it = node_id.find(succ.chosen());
      if (it == node_id.end()) {
        rep.crosses_into_mds = true;  // F-move left the non-decycling world
        continue;
      }
      adj[id].push_back(it->second);
      ++rep.edges;
    }
  }

  // Longest path + acyclicity by iterative DFS with memoization.
  std::vector<int> state(rep.nodes, 0);
  std::vector<std::size_t> best(rep.nodes, 0);  // edges on longest path
  rep.acyclic = true;
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t s = 0; s < rep.nodes && rep.acyclic; ++s) {
    if (state[s] == 2) continue;
    state[s] = 1;
    stack.assign(1, {s, 0});
    while (!stack.empty() && rep.acyclic) {
      auto& [u, i] = stack.back();
      if (i < adj[u].size()) {
        std::size_t v = adj[u][i];
        ++i;
        if (state[v] == 2) continue;
        if (state[v] == 1) {
          rep.acyclic = false;
          break;
        }
        state[v] = 1;
        stack.push_back({v, 0});
      } else {
        state[u] = 2;
        stack.pop_back();
        std::size_t b = 0;
        for (std::size_t v : adj[u]) b = std::max(b, best[v] + 1);
        best[u] = b;
        rep.longest_path_edges = std::max(rep.longest_path_edges, b);
      }
    }
  }
  return rep;
}

}  // namespace mds
