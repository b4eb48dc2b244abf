// The MDS move algebra: a PCR-indexed representation of PCR sets, F-moves
// (swap the left companions of f for the right companions), RF-moves (the
// inverse), and I-moves Im(f, m) (a partial swap when the set holds a proper
// mixture of left and right companions).  Also the traversal-free component
// fingerprint: the set of I-moves valid somewhere in a component, computed
// from constrained edges alone.
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mds/core.hpp"
#include "mds/decycling.hpp"

namespace mds {

// ---------------------------------------------------------------------------
// MdsSpace: immutable PCR tables shared by all Mds values of one (sigma, k).
// ---------------------------------------------------------------------------

class MdsSpace {
 public:
  explicit MdsSpace(const GraphParams& p)
      : params_(p), pcrs_(enumerate_pcrs(p)), pcr_index_(p.num_kmers()) {
    for (std::size_t i = 0; i < pcrs_.size(); ++i)
      for (kmer_t u : pcrs_[i].members)
        pcr_index_[u] = static_cast<std::uint32_t>(i);
  }

  const GraphParams& params() const { return params_; }
  const std::vector<Pcr>& pcrs() const { return pcrs_; }
  std::size_t num_pcrs() const { return pcrs_.size(); }
  std::uint32_t pcr_index(kmer_t u) const { return pcr_index_[u]; }

 private:
  GraphParams params_;
  std::vector<Pcr> pcrs_;
  std::vector<std::uint32_t> pcr_index_;
};

using SpacePtr = std::shared_ptr<const MdsSpace>;

inline SpacePtr make_space(const GraphParams& p) {
  return std::make_shared<const MdsSpace>(p);
}

// ---------------------------------------------------------------------------
// Mds: a PCR set (one chosen k-mer per PCR, canonical PCR order), with its
// decycling status computed on construction.
// ---------------------------------------------------------------------------

class Mds {
 public:
  Mds(SpacePtr space, std::vector<kmer_t> chosen)
      : space_(std::move(space)), chosen_(std::move(chosen)) {
    if (chosen_.size() != space_->num_pcrs())
      throw BadParams("chosen vector size != number of PCRs");
    for (std::size_t i = 0; i < chosen_.size(); ++i)
      if (space_->pcr_index(chosen_[i]) != i)
        throw BadParams("chosen k-mer " + std::to_string(chosen_[i]) +
                        " does not belong to PCR slot " + std::to_string(i));
    decycling_ = mds::is_decycling(to_kmer_set());
  }

  static Mds from_kmer_set(SpacePtr space, const KmerSet& set) {
    if (set.size() != space->num_pcrs())
      throw BadParams("k-mer set is not a PCR set (wrong size)");
    std::vector<kmer_t> chosen(space->num_pcrs(), ~kmer_t{0});
    for (kmer_t u : set.to_vector()) {
      std::uint32_t at = space->pcr_index(u);
      if (chosen[at] != ~kmer_t{0})
        throw BadParams("k-mer set holds two members of one PCR");
      chosen[at] = u;
    }
    return Mds(std::move(space), std::move(chosen));
  }

  const MdsSpace& space() const { return *space_; }
  SpacePtr space_ptr() const { return space_; }
  const GraphParams& params() const { return space_->params(); }
  const std::vector<kmer_t>& chosen() const { return chosen_; }
  bool is_decycling() const { return decycling_; }

  bool contains(kmer_t u) const {
    return chosen_[space_->pcr_index(u)] == u;
  }

  KmerSet to_kmer_set() const {
    return KmerSet(space_->params(), chosen_);
  }

  std::vector<kmer_t> sorted_kmers() const {
    std::vector<kmer_t> out = chosen_;
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const Mds& o) const { return chosen_ == o.chosen_; }
  auto operator<=>(const Mds& o) const { return chosen_ <=> o.chosen_; }

 private:
  SpacePtr space_;
  std::vector<kmer_t> chosen_;
  bool decycling_ = false;
};

struct MdsChosenHash {
  std::size_t operator()(const std::vector<kmer_t>& v) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (kmer_t u : v) {
      h ^= u + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// ---------------------------------------------------------------------------
// Moves
// ---------------------------------------------------------------------------

enum class MoveKind : unsigned char { F, RF, I };

struct Move {
  MoveKind kind;
  kmer_t f;       // (k-1)-mer code
  unsigned mask;  // I only; bit a set <=> the left companion af is in M

  auto operator<=>(const Move&) const = default;
};

inline std::string move_to_string(const Move& mv, const GraphParams& p) {
  std::string f;
  kmer_t u = mv.f;
  for (unsigned i = 0; i + 1 < p.k(); ++i) {
    f.insert(f.begin(), static_cast<char>('0' + u % p.sigma()));
    u /= p.sigma();
  }
  switch (mv.kind) {
    case MoveKind::F:
      return "F(" + f + ")";
    case MoveKind::RF:
      return "RF(" + f + ")";
    case MoveKind::I:
      return "I(" + f + "," + std::to_string(mv.mask) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// F-moves and RF-moves
// ---------------------------------------------------------------------------

inline bool f_move_valid(const Mds& M, kmer_t f) {
  const GraphParams& p = M.params();
  for (unsigned a = 0; a < p.sigma(); ++a)
    if (!M.contains(a * p.num_fmers() + f)) return false;
  return true;
}

inline bool rf_move_valid(const Mds& M, kmer_t f) {
  const GraphParams& p = M.params();
  for (unsigned a = 0; a < p.sigma(); ++a)
    if (!M.contains(f * p.sigma() + a)) return false;
  return true;
}

inline std::vector<kmer_t> valid_f_moves(const Mds& M) {
  std::vector<kmer_t> out;
  for (kmer_t f = 0; f < M.params().num_fmers(); ++f)
    if (f_move_valid(M, f)) out.push_back(f);
  return out;
}

inline std::vector<kmer_t> valid_rf_moves(const Mds& M) {
  std::vector<kmer_t> out;
  for (kmer_t f = 0; f < M.params().num_fmers(); ++f)
    if (rf_move_valid(M, f)) out.push_back(f);
  return out;
}

namespace detail {

// Replaces `remove` by `add` in M's chosen vector; the swap must map PCR
// slots one-to-one or the result is not a PCR set.
inline Mds swap_companions(const Mds& M, const std::vector<kmer_t>& remove,
                           const std::vector<kmer_t>& add) {
  const MdsSpace& sp = M.space();
  std::vector<kmer_t> chosen = M.chosen();
  constexpr kmer_t kHole = ~kmer_t{0};
  for (kmer_t u : remove) chosen[sp.pcr_index(u)] = kHole;
  for (kmer_t v : add) {
    std::uint32_t at = sp.pcr_index(v);
    if (chosen[at] != kHole)
      throw InvalidMove("move does not preserve the PCR-set property");
    chosen[at] = v;
  }
  for (kmer_t c : chosen)
    if (c == kHole)
      throw InvalidMove("move does not preserve the PCR-set property");
  return Mds(M.space_ptr(), std::move(chosen));
}

}  // namespace detail

inline Mds apply_f_move(const Mds& M, kmer_t f) {
  if (!f_move_valid(M, f))
    throw InvalidMove("F-move requires all left companions in the set");
  return detail::swap_companions(M, left_companions(f, M.params()),
                                 right_companions(f, M.params()));
}

inline Mds apply_rf_move(const Mds& M, kmer_t f) {
  if (!rf_move_valid(M, f))
    throw InvalidMove("RF-move requires all right companions in the set");
  return detail::swap_companions(M, right_companions(f, M.params()),
                                 left_companions(f, M.params()));
}

// ---------------------------------------------------------------------------
// I-moves.  Mask semantics: bit a = 1 requires the left companion af in M
// (and the move swaps af out for fa); bit a = 0 requires the right companion
// fa in M (untouched by the move).  Proper mixtures only: for a plain f the
// masks range over [1, 2^sigma - 2]; for a homopolymer f = r^(k-1) the
// companion r^k is shared, its bit is canonically 1 (swapping it is a no-op)
// and the remaining sigma-1 bits must themselves form a proper mixture,
// leaving 2^(sigma-1) - 2 masks.
// ---------------------------------------------------------------------------

inline std::vector<unsigned> i_move_masks(kmer_t f, const GraphParams& p) {
  std::vector<unsigned> out;
  const unsigned full = (1u << p.sigma()) - 1;
  unsigned homo = homopolymer_digit(f, p);
  if (homo == p.sigma()) {
    for (unsigned m = 1; m < full; ++m) out.push_back(m);
  } else {
    const unsigned rbit = 1u << homo;
    const unsigned others = full & ~rbit;
    for (unsigned m = 1; m < full; ++m) {
      if (!(m & rbit)) continue;
      unsigned rest = m & others;
      if (rest == 0 || rest == others) continue;
      out.push_back(m);
    }
  }
  return out;
}

inline bool i_move_valid(const Mds& M, kmer_t f, unsigned mask) {
  const GraphParams& p = M.params();
  auto masks = i_move_masks(f, p);
  if (std::find(masks.begin(), masks.end(), mask) == masks.end()) return false;
  for (unsigned a = 0; a < p.sigma(); ++a) {
    if (mask & (1u << a)) {
      if (!M.contains(a * p.num_fmers() + f)) return false;
    } else {
      if (!M.contains(f * p.sigma() + a)) return false;
    }
  }
  return true;
}

inline std::vector<Move> valid_i_moves(const Mds& M) {
  std::vector<Move> out;
  const GraphParams& p = M.params();
  for (kmer_t f = 0; f < p.num_fmers(); ++f)
    for (unsigned mask : i_move_masks(f, p))
      if (i_move_valid(M, f, mask)) out.push_back({MoveKind::I, f, mask});
  return out;
}

inline Mds apply_i_move(const Mds& M, const Move& mv) {
  if (mv.kind != MoveKind::I) throw InvalidMove("not an I-move");
  if (!i_move_valid(M, mv.f, mv.mask))
    throw InvalidMove("I-move companions not in the set");
  const GraphParams& p = M.params();
  std::vector<kmer_t> remove, add;
  for (unsigned a = 0; a < p.sigma(); ++a) {
    if (!(mv.mask & (1u << a))) continue;
    kmer_t af = a * p.num_fmers() + mv.f;
    kmer_t fa = mv.f * p.sigma() + a;
    if (af == fa) continue;  // shared homopolymer companion: no-op
    remove.push_back(af);
    add.push_back(fa);
  }
  return detail::swap_companions(M, remove, add);
}

inline Mds apply_move(const Mds& M, const Move& mv) {
  switch (mv.kind) {
    case MoveKind::F:
      return apply_f_move(M, mv.f);
    case MoveKind::RF:
      return apply_rf_move(M, mv.f);
    case MoveKind::I:
      return apply_i_move(M, mv);
  }
  throw InvalidMove("unknown move kind");
}

// ---------------------------------------------------------------------------
// Component fingerprint: the I-moves valid SOMEWHERE in M's component,
// computed without traversal.  Im(f, m) is impossible anywhere in the
// component iff some in-set companion af (bit a = 1) and out-of-set
// companion fb (bit b = 0) are joined by a constrained edge af -> fb (a
// cycle with hitting number 1 pins that pair).  Runtime is independent of
// the component size.
// ---------------------------------------------------------------------------

inline std::vector<Move> component_i_moves(const Mds& M,
                                           const EdgeSet& constrained) {
  const GraphParams& p = M.params();
  std::vector<Move> out;
  for (kmer_t f = 0; f < p.num_fmers(); ++f) {
    for (unsigned mask : i_move_masks(f, p)) {
      bool excluded = false;
      for (unsigned a = 0; a < p.sigma() && !excluded; ++a) {
        if (!(mask & (1u << a))) continue;
        kmer_t af = a * p.num_fmers() + f;
        for (unsigned b = 0; b < p.sigma(); ++b) {
          if (mask & (1u << b)) continue;
          if (constrained.contains(af, b)) {
            excluded = true;
            break;
          }
        }
      }
      if (!excluded) out.push_back({MoveKind::I, f, mask});
    }
  }
  return out;
}

inline std::vector<Move> component_i_moves(const Mds& M) {
  return component_i_moves(M, constrained_edges(M.to_kmer_set()));
}

}  // namespace mds
