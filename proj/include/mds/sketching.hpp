// Sketching schemes over digit sequences: set-indicator (context-free),
// minimizers, syncmers (positional s-mer minimums), and hash thresholding;
// with density, conservation, and empirical window-guarantee metrics, plus
// the de Bruijn-sequence syncmer adversary.
//
// Positions are 1-based k-mer start positions.  A "gap" is the length of a
// maximal run of consecutive unselected k-mer positions (boundary runs
// included), so a selected-position difference of d contributes a gap of
// d - 1 and the set-indicator scheme of an MDS has max gap equal to its
// remaining path length.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mds/core.hpp"
#include "mds/decycling.hpp"

namespace mds {

using Sequence = std::vector<std::uint8_t>;  // digits in [0, sigma)

// ---------------------------------------------------------------------------
// Orders: seeded pseudorandom keys (hash permutation of the code) or an
// explicit rank table; ties broken by code so the order is total.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class KmerOrder {
 public:
  explicit KmerOrder(std::uint64_t seed) : seed_(seed) {}
  explicit KmerOrder(std::vector<std::uint64_t> ranks)
      : ranks_(std::move(ranks)) {}

  std::uint64_t key(kmer_t u) const {
    return ranks_.empty() ? splitmix64(u ^ seed_) : ranks_[u];
  }

  // Strictly-less with code tie-break.
  bool less(kmer_t u, kmer_t v) const {
    std::uint64_t a = key(u), b = key(v);
    if (a != b) return a < b;
    return u < v;
  }

 private:
  std::uint64_t seed_ = 0;
  std::vector<std::uint64_t> ranks_;
};

// ---------------------------------------------------------------------------
// Schemes
// ---------------------------------------------------------------------------

enum class SchemeKind : unsigned char {
  SetIndicator,
  Minimizer,
  Syncmer,
  HashThreshold,
};

struct SketchScheme {
  SchemeKind kind;
  GraphParams params;          // sigma and k
  // set-indicator
  std::optional<KmerSet> set;
  // minimizer
  unsigned w = 0;
  KmerOrder kmer_order{0};
  // syncmer
  unsigned s = 0;
  std::vector<bool> mask;      // offsets 1..k-s+1; mask[o-1]
  KmerOrder smer_order{0};
  // hash threshold
  double threshold = 0.0;

  unsigned context_length() const {
    return kind == SchemeKind::Minimizer ? w + params.k() - 1 : params.k();
  }

  static SketchScheme set_indicator(KmerSet M) {
    SketchScheme sc{SchemeKind::SetIndicator, M.params()};
    sc.set = std::move(M);
    return sc;
  }

  static SketchScheme minimizer(const GraphParams& p, unsigned w,
                                std::uint64_t order_seed) {
    if (w < 1) throw BadParams("minimizer window must be >= 1");
    SketchScheme sc{SchemeKind::Minimizer, p};
    sc.w = w;
    sc.kmer_order = KmerOrder(order_seed);
    return sc;
  }

  static SketchScheme syncmer(const GraphParams& p, unsigned s,
                              std::vector<bool> mask, KmerOrder order) {
    if (s < 1 || s > p.k()) throw BadParams("syncmer needs 1 <= s <= k");
    if (mask.size() != p.k() - s + 1)
      throw BadParams("syncmer mask must cover offsets 1..k-s+1");
    if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; }))
      throw BadParams("syncmer mask must select at least one offset");
    SketchScheme sc{SchemeKind::Syncmer, p};
    sc.s = s;
    sc.mask = std::move(mask);
    sc.smer_order = std::move(order);
    return sc;
  }

  static SketchScheme hash_threshold(const GraphParams& p, double t,
                                     std::uint64_t order_seed) {
    SketchScheme sc{SchemeKind::HashThreshold, p};
    sc.threshold = t;
    sc.kmer_order = KmerOrder(order_seed);
    return sc;
  }
};

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

inline Sequence parse_sequence(const std::string& text, unsigned sigma) {
  Sequence out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
    out.push_back(static_cast<std::uint8_t>(digit_of(c, sigma)));
  }
  return out;
}

inline std::string sequence_to_string(const Sequence& S) {
  std::string out;
  out.reserve(S.size());
  for (auto d : S) out.push_back(static_cast<char>('0' + d));
  return out;
}

inline Sequence random_sequence(unsigned sigma, std::size_t length,
                                std::mt19937_64& rng) {
  Sequence out(length);
  for (auto& d : out)
    d = static_cast<std::uint8_t>(detail::uniform_below(rng, sigma));
  return out;
}

// ---------------------------------------------------------------------------
// Sketching
// ---------------------------------------------------------------------------

struct Sketch {
  std::vector<std::size_t> positions;  // sorted, 1-based k-mer starts
};

inline Sketch sketch(const SketchScheme& sc, const Sequence& S) {
  const GraphParams& p = sc.params;
  const unsigned k = p.k();
  if (S.size() < sc.context_length())
    throw SequenceTooShort("sequence shorter than the context length");
  const std::size_t n_kmers = S.size() - k + 1;

  // Rolling k-mer codes at every position.
  std::vector<kmer_t> code(n_kmers);
  {
    kmer_t cur = 0;
    for (unsigned i = 0; i < k; ++i) cur = cur * p.sigma() + S[i];
    code[0] = cur;
    for (std::size_t i = 1; i < n_kmers; ++i) {
      cur = (cur % p.num_fmers()) * p.sigma() + S[i + k - 1];
      code[i] = cur;
    }
  }

  Sketch out;
  switch (sc.kind) {
    case SchemeKind::SetIndicator: {
      for (std::size_t i = 0; i < n_kmers; ++i)
        if (sc.set->contains(code[i])) out.positions.push_back(i + 1);
      break;
    }
    case SchemeKind::HashThreshold: {
      const double scale = 1.0 / 18446744073709551616.0;  // 2^-64
      for (std::size_t i = 0; i < n_kmers; ++i)
        if (static_cast<double>(sc.kmer_order.key(code[i])) * scale <
            sc.threshold)
          out.positions.push_back(i + 1);
      break;
    }
    case SchemeKind::Minimizer: {
      if (n_kmers < sc.w) break;
      std::vector<bool> picked(n_kmers, false);
      for (std::size_t win = 0; win + sc.w <= n_kmers; ++win) {
        std::size_t best = win;
        for (std::size_t j = win + 1; j < win + sc.w; ++j)
          if (sc.kmer_order.key(code[j]) < sc.kmer_order.key(code[best]))
            best = j;  // strict: leftmost minimum wins ties
        picked[best] = true;
      }
      for (std::size_t i = 0; i < n_kmers; ++i)
        if (picked[i]) out.positions.push_back(i + 1);
      break;
    }
    case SchemeKind::Syncmer: {
      const unsigned s = sc.s;
      const std::size_t n_smers = S.size() - s + 1;
      kmer_t smer_space = 1;
      for (unsigned i = 0; i < s; ++i) smer_space *= p.sigma();
      std::vector<kmer_t> scode(n_smers);
      kmer_t cur = 0;
      for (unsigned i = 0; i < s; ++i) cur = cur * p.sigma() + S[i];
      scode[0] = cur;
      for (std::size_t i = 1; i < n_smers; ++i) {
        cur = (cur % (smer_space / p.sigma())) * p.sigma() + S[i + s - 1];
        scode[i] = cur;
      }
      const unsigned offsets = k - s + 1;
      for (std::size_t i = 0; i < n_kmers; ++i) {
        unsigned best = 0;
        for (unsigned o = 1; o < offsets; ++o)
          if (sc.smer_order.key(scode[i + o]) <
              sc.smer_order.key(scode[i + best]))
            best = o;  // strict: leftmost minimal s-mer
        if (sc.mask[best]) out.positions.push_back(i + 1);
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

inline double density(const Sketch& sk, const Sequence& S) {
  if (S.empty()) throw BadParams("empty sequence");
  return static_cast<double>(sk.positions.size()) /
         static_cast<double>(S.size());
}

// Longest run of consecutive unselected k-mer positions, boundaries
// included.
inline std::size_t max_gap(const Sketch& sk, const Sequence& S, unsigned k) {
  const std::size_t n_kmers = S.size() - k + 1;
  std::size_t longest = 0;
  std::size_t prev = 0;  // virtual selection before position 1
  for (std::size_t pos : sk.positions) {
    longest = std::max(longest, pos - prev - 1);
    prev = pos;
  }
  longest = std::max(longest, n_kmers - prev);
  return longest;
}

inline double conservation(const SketchScheme& sc, const Sequence& S,
                           double mutation_rate, unsigned trials,
                           std::uint64_t seed) {
  if (mutation_rate < 0.0 || mutation_rate > 1.0)
    throw BadParams("mutation rate must be in [0, 1]");
  std::mt19937_64 rng(seed);
  const unsigned k = sc.params.k();
  Sketch base = sketch(sc, S);
  double total = 0.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (unsigned t = 0; t < trials; ++t) {
    Sequence mut = S;
    for (auto& d : mut) {
      if (unit(rng) >= mutation_rate) continue;
      unsigned repl = static_cast<unsigned>(
          detail::uniform_below(rng, sc.params.sigma() - 1));
      if (repl >= d) ++repl;  // uniform over the other sigma-1 symbols
      d = static_cast<std::uint8_t>(repl);
    }
    Sketch other = sketch(sc, mut);
    if (base.positions.empty()) {
      total += 1.0;  // empty-vs-empty: defined as fully conserved
      continue;
    }
    std::size_t kept = 0;
    std::size_t j = 0;
    for (std::size_t pos : base.positions) {
      while (j < other.positions.size() && other.positions[j] < pos) ++j;
      if (j < other.positions.size() && other.positions[j] == pos &&
          std::equal(S.begin() + pos - 1, S.begin() + pos - 1 + k,
                     mut.begin() + pos - 1))
        ++kept;
    }
    total += static_cast<double>(kept) /
             static_cast<double>(base.positions.size());
  }
  return total / trials;
}

struct WindowReport {
  std::size_t max_gap = 0;
  Sequence witness;  // the subsequence spanning the worst gap
};

inline WindowReport empirical_window(const SketchScheme& sc, unsigned trials,
                                     std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const unsigned k = sc.params.k();
  WindowReport rep;
  for (unsigned t = 0; t < trials; ++t) {
    Sequence S(length);
    for (auto& d : S)
      d = static_cast<std::uint8_t>(
          detail::uniform_below(rng, sc.params.sigma()));
    Sketch sk = sketch(sc, S);
    const std::size_t n_kmers = S.size() - k + 1;
    std::size_t prev = 0;
    auto consider = [&](std::size_t gap, std::size_t run_start) {
      if (gap > rep.max_gap) {
        rep.max_gap = gap;
        std::size_t from = run_start;            // 1-based k-mer position
        std::size_t to = run_start + gap - 1;    // last unselected position
        rep.witness.assign(S.begin() + from - 1,
                           S.begin() + std::min(S.size(), to - 1 + k));
      }
    };
    for (std::size_t pos : sk.positions) {
      if (pos - prev - 1 > 0) consider(pos - prev - 1, prev + 1);
      prev = pos;
    }
    if (n_kmers - prev > 0) consider(n_kmers - prev, prev + 1);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// De Bruijn sequences and the syncmer adversary (Supplementary A)
// ---------------------------------------------------------------------------

// Cyclic de Bruijn sequence of order s over sigma symbols via the classic
// necklace concatenation (Lyndon words of length dividing s in lexicographic
// order); linearized by appending the first s-1 symbols.
inline Sequence debruijn_sequence(unsigned sigma, unsigned s) {
  if (sigma < 2 || s < 1) throw BadParams("need sigma >= 2, s >= 1");
  Sequence cyc;
  std::vector<unsigned> a(s + 1, 0);
  // Duval's FKM generation.
  auto db = [&](auto&& self, unsigned t, unsigned q) -> void {
    if (t > s) {
      if (s % q == 0)
        for (unsigned i = 1; i <= q; ++i)
          cyc.push_back(static_cast<std::uint8_t>(a[i]));
    } else {
      a[t] = a[t - q];
      self(self, t + 1, q);
      for (unsigned c = a[t - q] + 1; c < sigma; ++c) {
        a[t] = c;
        self(self, t + 1, t);
      }
    }
  };
  db(db, 1, 1);
  Sequence out = cyc;
  out.insert(out.end(), cyc.begin(), cyc.begin() + (s - 1));
  return out;
}

struct SyncmerAdversary {
  Sequence sequence;                 // length sigma^s + s - 1
  std::vector<std::uint64_t> ranks;  // s-mer order: later in D = smaller
};

// Orders s-mers so that an s-mer appearing later in the de Bruijn sequence
// compares smaller; along the sequence every next s-mer is then strictly
// smaller, so the minimal s-mer of each k-mer sits at the last offset and a
// first-offset open syncmer selects nothing.
inline SyncmerAdversary syncmer_adversary(unsigned sigma, unsigned k,
                                          unsigned s) {
  if (s >= k) throw BadParams("adversary needs s <= k-1");
  SyncmerAdversary out;
  out.sequence = debruijn_sequence(sigma, s);
  kmer_t smer_space = 1;
  for (unsigned i = 0; i < s; ++i) smer_space *= sigma;
  out.ranks.assign(smer_space, 0);
  kmer_t cur = 0;
  for (unsigned i = 0; i < s; ++i) cur = cur * sigma + out.sequence[i];
  out.ranks[cur] = smer_space - 1;
  for (kmer_t i = 1; i < smer_space; ++i) {
    cur = (cur % (smer_space / sigma)) * sigma + out.sequence[i + s - 1];
    out.ranks[cur] = smer_space - 1 - i;
  }
  return out;
}

}  // namespace mds
