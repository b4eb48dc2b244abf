// Simulated annealing over the component graph: each iteration walks a few
// random F-moves inside the current component recording the best remaining
// path length, then jumps to a neighboring component through a random
// component I-move; worse components are accepted with probability
// exp(-delta / T) under a geometric cooling schedule.  Also the per-
// component path-length range helper (exhaustive or sampled) and the
// path-length delta probe for single moves.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mds/components.hpp"
#include "mds/constructions.hpp"
#include "mds/decycling.hpp"
#include "mds/moves.hpp"

namespace mds {

enum class Objective { Min, Max };

enum class StartSet { Mykkeltveit, Champarnaud, Random };

struct AnnealConfig {
  Objective objective = Objective::Min;
  unsigned fmoves_per_component = 0;  // 0 = default 2k
  unsigned iterations = 1000;
  double initial_temperature = 0.0;   // <= 0 = default k
  double cooling_factor = 0.995;
  std::uint64_t seed = 1;
  StartSet start = StartSet::Mykkeltveit;

  void validate() const {
    if (iterations < 1) throw BadParams("iterations must be >= 1");
    if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
      throw BadParams("cooling factor must be in (0, 1)");
  }
};

struct AnnealTraceEntry {
  unsigned iteration;
  std::size_t fingerprint_hash;
  kmer_t local_best;
};

struct AnnealResult {
  std::vector<kmer_t> best_chosen;
  kmer_t best_rpl = 0;
  std::vector<AnnealTraceEntry> trace;
  bool stopped_no_i_move = false;  // component without I-moves (the k=5 case)
};

namespace detail {

inline std::size_t fingerprint_hash(const std::vector<Move>& fp) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (const Move& mv : fp) {
    std::uint64_t v = (static_cast<std::uint64_t>(mv.kind) << 48) ^
                      (mv.f << 8) ^ mv.mask;
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

inline kmer_t rpl_of(const Mds& m) {
  return remaining_path_length(m.to_kmer_set());
}

// One local exploration: `steps` random valid F-moves from `entry`, tracking
// the objective-wise best remaining path length.  Returns the walk's final
// MDS; best/best_mds are updated in place.
inline Mds f_walk(const Mds& entry, unsigned steps, Objective obj,
                  std::mt19937_64& rng, kmer_t& local_best,
                  Mds& local_best_mds) {
  auto better = [obj](kmer_t a, kmer_t b) {
    return obj == Objective::Min ? a < b : a > b;
  };
  Mds cur = entry;
  local_best = rpl_of(cur);
  local_best_mds = cur;
  for (unsigned i = 0; i < steps; ++i) {
    std::vector<kmer_t> fs = valid_f_moves(cur);
    cur = apply_f_move(cur, fs[uniform_below(rng, fs.size())]);
    kmer_t r = rpl_of(cur);
    if (better(r, local_best)) {
      local_best = r;
      local_best_mds = cur;
    }
  }
  return cur;
}

// Wanders by random F-moves until `mv` becomes valid (it is valid somewhere
// in the component by construction).  Returns false if the step budget runs
// out.
inline bool wander_to_valid(Mds& cur, const Move& mv, std::mt19937_64& rng,
                            kmer_t step_budget) {
  for (kmer_t i = 0; i < step_budget; ++i) {
    if (i_move_valid(cur, mv.f, mv.mask)) return true;
    std::vector<kmer_t> fs = valid_f_moves(cur);
    cur = apply_f_move(cur, fs[uniform_below(rng, fs.size())]);
  }
  return i_move_valid(cur, mv.f, mv.mask);
}

}  // namespace detail

inline Mds make_start_mds(SpacePtr space, StartSet which,
                          std::uint64_t seed) {
  const GraphParams& p = space->params();
  switch (which) {
    case StartSet::Mykkeltveit:
      return Mds::from_kmer_set(space, mykkeltveit_set(p));
    case StartSet::Champarnaud:
      return Mds::from_kmer_set(space, champarnaud_set(p));
    case StartSet::Random:
      return Mds::from_kmer_set(space, random_mds(p, seed, 1u << 20));
  }
  throw BadParams("unknown start set");
}

inline AnnealResult anneal(SpacePtr space, const AnnealConfig& cfg) {
  cfg.validate();
  const GraphParams& p = space->params();
  const unsigned steps =
      cfg.fmoves_per_component ? cfg.fmoves_per_component : 2 * p.k();
  double temperature = cfg.initial_temperature > 0.0
                           ? cfg.initial_temperature
                           : static_cast<double>(p.k());
  std::mt19937_64 rng(cfg.seed);
  auto better = [&cfg](kmer_t a, kmer_t b) {
    return cfg.objective == Objective::Min ? a < b : a > b;
  };

  Mds entry = make_start_mds(space, cfg.start, cfg.seed);
  AnnealResult out;
  kmer_t local_best;
  Mds local_best_mds = entry;
  Mds walk_end = detail::f_walk(entry, steps, cfg.objective, rng, local_best,
                                local_best_mds);
  out.best_chosen = local_best_mds.chosen();
  out.best_rpl = local_best;
  kmer_t current_local = local_best;

  const kmer_t wander_budget = 64 * p.num_fmers();
  for (unsigned it = 0; it < cfg.iterations; ++it) {
    std::vector<Move> moves = component_i_moves(entry);
    out.trace.push_back({it, detail::fingerprint_hash(moves), current_local});
    if (moves.empty()) {
      out.stopped_no_i_move = true;
      break;
    }
    const Move& mv = moves[detail::uniform_below(rng, moves.size())];
    Mds at = walk_end;
    if (!detail::wander_to_valid(at, mv, rng, wander_budget)) {
      // Extremely unlikely; re-draw a move next iteration.
      temperature *= cfg.cooling_factor;
      continue;
    }
    Mds cand_entry = apply_i_move(at, mv);
    kmer_t cand_local;
    Mds cand_best_mds = cand_entry;
    Mds cand_walk_end = detail::f_walk(cand_entry, steps, cfg.objective, rng,
                                       cand_local, cand_best_mds);
    if (better(cand_local, out.best_rpl)) {
      out.best_rpl = cand_local;
      out.best_chosen = cand_best_mds.chosen();
    }
    double delta = cfg.objective == Objective::Min
                       ? static_cast<double>(cand_local) -
                             static_cast<double>(current_local)
                       : static_cast<double>(current_local) -
                             static_cast<double>(cand_local);
    bool accept = delta <= 0.0;
    if (!accept) {
      double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      accept = u < std::exp(-delta / temperature);
    }
    if (accept) {
      entry = std::move(cand_entry);
      walk_end = std::move(cand_walk_end);
      current_local = cand_local;
    } else {
      // Stay; refresh the local walk with new randomness next jump.
      walk_end = detail::f_walk(entry, steps, cfg.objective, rng,
                                current_local, local_best_mds);
      if (better(current_local, out.best_rpl)) {
        out.best_rpl = current_local;
        out.best_chosen = local_best_mds.chosen();
      }
    }
    temperature *= cfg.cooling_factor;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Per-component path-length ranges (the scatter-plot data source)
// ---------------------------------------------------------------------------

struct RplRange {
  kmer_t min_rpl = 0;
  kmer_t max_rpl = 0;
};

inline RplRange component_rpl_range_exhaustive(const Mds& M) {
  ComponentSummary s = enumerate_component(M, EnumerateMode::Count);
  return {s.min_rpl, s.max_rpl};
}

inline RplRange component_rpl_range_sampled(const Mds& M, kmer_t walk_steps,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mds cur = M;
  kmer_t r = detail::rpl_of(cur);
  RplRange out{r, r};
  for (kmer_t i = 0; i < walk_steps; ++i) {
    std::vector<kmer_t> fs = valid_f_moves(cur);
    cur = apply_f_move(cur, fs[detail::uniform_below(rng, fs.size())]);
    r = detail::rpl_of(cur);
    out.min_rpl = std::min(out.min_rpl, r);
    out.max_rpl = std::max(out.max_rpl, r);
  }
  return out;
}

// Both path lengths around a single move (the harness asserts the paper's
// bounds: |delta| <= 1 for F/RF, and [-before/2, +1] for I-moves).
inline std::pair<kmer_t, kmer_t> path_length_move_delta_check(const Mds& M,
                                                              const Move& mv) {
  kmer_t before = detail::rpl_of(M);
  Mds after = apply_move(M, mv);
  return {before, detail::rpl_of(after)};
}

}  // namespace mds
