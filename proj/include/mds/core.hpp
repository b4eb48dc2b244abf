// Core de Bruijn graph machinery: k-mer codec, implicit graph navigation,
// pure-cycling-register (conjugacy class) decomposition, companion sets,
// counting formulas, and a dense k-mer membership set with text I/O.
//
// A k-mer over the alphabet {0..sigma-1} is stored as a radix-sigma integer
// with the leftmost character most significant.  The de Bruijn graph D_k is
// implicit: successors(u) = { (u mod sigma^(k-1))*sigma + a : a in Sigma }.
#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mds {

using kmer_t = std::uint64_t;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadParams : Error {
  using Error::Error;
};
struct BadFormat : Error {
  using Error::Error;
};
struct NotDecycling : Error {
  using Error::Error;
};
struct InstanceTooLarge : Error {
  using Error::Error;
};
struct InvalidMove : Error {
  using Error::Error;
};
struct ConstructionInvalid : Error {
  using Error::Error;
};
struct MaxTriesExceeded : Error {
  using Error::Error;
};
struct SequenceTooShort : Error {
  using Error::Error;
};
struct Overflow : Error {
  using Error::Error;
};

namespace detail {

// Unbiased bounded draw; mt19937_64's stream is specified by the standard,
// so seeded results are identical across platforms.
template <typename Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// GraphParams
// ---------------------------------------------------------------------------

class GraphParams {
 public:
  GraphParams(unsigned sigma, unsigned k) : sigma_(sigma), k_(k) {
    if (sigma < 2) throw BadParams("alphabet size must be >= 2");
    if (k < 2) throw BadParams("k must be >= 2");
    kmer_t n = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (n > (kmer_t{1} << 62) / sigma)
        throw BadParams("sigma^k exceeds the 64-bit k-mer budget");
      n *= sigma;
    }
    n_ = n;
    top_ = n / sigma;  // sigma^(k-1)
  }

  unsigned sigma() const { return sigma_; }
  unsigned k() const { return k_; }
  kmer_t num_kmers() const { return n_; }        // sigma^k
  kmer_t num_fmers() const { return top_; }      // sigma^(k-1)

  bool operator==(const GraphParams&) const = default;

 private:
  unsigned sigma_;
  unsigned k_;
  kmer_t n_;
  kmer_t top_;
};

// ---------------------------------------------------------------------------
// k-mer codec and navigation
// ---------------------------------------------------------------------------

inline unsigned digit_of(char c, unsigned sigma) {
  if (c >= '0' && c < static_cast<char>('0' + std::min(sigma, 10u)))
    return static_cast<unsigned>(c - '0');
  if (sigma == 4) {
    switch (c) {
      case 'A': case 'a': return 0;
      case 'C': case 'c': return 1;
      case 'G': case 'g': return 2;
      case 'T': case 't': return 3;
      default: break;
    }
  }
  throw BadFormat(std::string("bad character '") + c + "' for alphabet size " +
                  std::to_string(sigma));
}

inline kmer_t encode(const std::string& s, const GraphParams& p) {
  if (s.size() != p.k())
    throw BadFormat("k-mer '" + s + "' has length " +
                    std::to_string(s.size()) + ", expected " +
                    std::to_string(p.k()));
  kmer_t code = 0;
  for (char c : s) code = code * p.sigma() + digit_of(c, p.sigma());
  return code;
}

inline std::string decode(kmer_t u, const GraphParams& p) {
  std::string s(p.k(), '0');
  for (unsigned i = p.k(); i-- > 0;) {
    s[i] = static_cast<char>('0' + u % p.sigma());
    u /= p.sigma();
  }
  return s;
}

inline std::vector<kmer_t> successors(kmer_t u, const GraphParams& p) {
  std::vector<kmer_t> out;
  out.reserve(p.sigma());
  kmer_t base = (u % p.num_fmers()) * p.sigma();
  for (unsigned a = 0; a < p.sigma(); ++a) out.push_back(base + a);
  return out;
}

inline std::vector<kmer_t> predecessors(kmer_t u, const GraphParams& p) {
  std::vector<kmer_t> out;
  out.reserve(p.sigma());
  kmer_t suffix = u / p.sigma();
  for (unsigned a = 0; a < p.sigma(); ++a)
    out.push_back(a * p.num_fmers() + suffix);
  return out;
}

// Left circular rotation: drop the first character and append it.
inline kmer_t rotate(kmer_t u, const GraphParams& p) {
  return (u % p.num_fmers()) * p.sigma() + u / p.num_fmers();
}

// ---------------------------------------------------------------------------
// Companion sets (f is a (k-1)-mer code in [0, sigma^(k-1)))
// ---------------------------------------------------------------------------

inline std::vector<kmer_t> left_companions(kmer_t f, const GraphParams& p) {
  std::vector<kmer_t> out;
  out.reserve(p.sigma());
  for (unsigned a = 0; a < p.sigma(); ++a) out.push_back(a * p.num_fmers() + f);
  return out;
}

inline std::vector<kmer_t> right_companions(kmer_t f, const GraphParams& p) {
  std::vector<kmer_t> out;
  out.reserve(p.sigma());
  for (unsigned a = 0; a < p.sigma(); ++a) out.push_back(f * p.sigma() + a);
  return out;
}

// If f = a^(k-1), returns a; otherwise returns sigma (not a digit).
inline unsigned homopolymer_digit(kmer_t f, const GraphParams& p) {
  unsigned a = static_cast<unsigned>(f % p.sigma());
  kmer_t rep = 0;
  for (unsigned i = 0; i + 1 < p.k(); ++i) rep = rep * p.sigma() + a;
  return f == rep ? a : p.sigma();
}

// ---------------------------------------------------------------------------
// PCRs (rotation orbits / conjugacy classes)
// ---------------------------------------------------------------------------

struct Pcr {
  kmer_t id;                   // lexicographically minimal rotation
  std::vector<kmer_t> members; // closed under left-rotation, starts at id
};

inline Pcr pcr_of(kmer_t u, const GraphParams& p) {
  Pcr out;
  out.id = u;
  kmer_t v = u;
  do {
    out.members.push_back(v);
    if (v < out.id) out.id = v;
    v = rotate(v, p);
  } while (v != u);
  // Rotate the member list so it starts at the canonical id.
  std::size_t at = 0;
  while (out.members[at] != out.id) ++at;
  std::rotate(out.members.begin(), out.members.begin() + at,
              out.members.end());
  return out;
}

inline std::vector<Pcr> enumerate_pcrs(const GraphParams& p) {
  std::vector<bool> seen(p.num_kmers(), false);
  std::vector<Pcr> out;
  for (kmer_t u = 0; u < p.num_kmers(); ++u) {
    if (seen[u]) continue;
    Pcr orb = pcr_of(u, p);  // u is minimal in its unseen orbit, so id == u
    for (kmer_t v : orb.members) seen[v] = true;
    out.push_back(std::move(orb));
  }
  return out;  // ids are encountered in increasing order
}

// ---------------------------------------------------------------------------
// Counting formulas
// ---------------------------------------------------------------------------

inline kmer_t euler_phi(kmer_t n) {
  kmer_t result = n;
  for (kmer_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    while (n % d == 0) n /= d;
    result -= result / d;
  }
  if (n > 1) result -= result / n;
  return result;
}

// Number of necklaces = number of PCRs = |MDS| (Moreau's formula).
inline kmer_t necklace_count(const GraphParams& p) {
  kmer_t total = 0;
  for (kmer_t d = 1; d <= p.k(); ++d) {
    if (p.k() % d) continue;
    kmer_t pw = 1;
    for (kmer_t i = 0; i < p.k() / d; ++i) pw *= p.sigma();
    total += euler_phi(d) * pw;
  }
  return total / p.k();
}

// Product of orbit sizes; throws Overflow if it does not fit 64 bits.
inline kmer_t pcr_set_count(const GraphParams& p) {
  unsigned __int128 prod = 1;
  for (const Pcr& c : enumerate_pcrs(p)) {
    prod *= c.members.size();
    if (prod > ~kmer_t{0}) throw Overflow("PCR set count exceeds 64 bits");
  }
  return static_cast<kmer_t>(prod);
}

// ---------------------------------------------------------------------------
// KmerSet: dense membership over all sigma^k k-mers
// ---------------------------------------------------------------------------

class KmerSet {
 public:
  explicit KmerSet(const GraphParams& p)
      : params_(p), bits_((p.num_kmers() + 63) / 64, 0), count_(0) {}

  KmerSet(const GraphParams& p, const std::vector<kmer_t>& members)
      : KmerSet(p) {
    for (kmer_t u : members) insert(u);
  }

  const GraphParams& params() const { return params_; }

  bool contains(kmer_t u) const {
    return (bits_[u >> 6] >> (u & 63)) & 1;
  }

  void insert(kmer_t u) {
    check(u);
    std::uint64_t& w = bits_[u >> 6];
    std::uint64_t m = std::uint64_t{1} << (u & 63);
    if (!(w & m)) {
      w |= m;
      ++count_;
    }
  }

  void erase(kmer_t u) {
    check(u);
    std::uint64_t& w = bits_[u >> 6];
    std::uint64_t m = std::uint64_t{1} << (u & 63);
    if (w & m) {
      w &= ~m;
      --count_;
    }
  }

  kmer_t size() const { return count_; }

  std::vector<kmer_t> to_vector() const {
    std::vector<kmer_t> out;
    out.reserve(count_);
    for (kmer_t u = 0; u < params_.num_kmers(); ++u)
      if (contains(u)) out.push_back(u);
    return out;
  }

  bool operator==(const KmerSet& o) const {
    return params_ == o.params_ && bits_ == o.bits_;
  }

 private:
  void check(kmer_t u) const {
    if (u >= params_.num_kmers()) throw BadParams("k-mer code out of range");
  }

  GraphParams params_;
  std::vector<std::uint64_t> bits_;
  kmer_t count_;
};

// ---------------------------------------------------------------------------
// Text format: line 1 "<sigma> <k>", then one k-mer per line; '#' comments
// and blank lines ignored; writers emit members sorted by code.
// ---------------------------------------------------------------------------

inline KmerSet read_kmer_set(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& out) -> bool {
    while (std::getline(in, out)) {
      auto hash = out.find('#');
      if (hash != std::string::npos) out.erase(hash);
      while (!out.empty() && (out.back() == '\r' || out.back() == ' ' ||
                              out.back() == '\t'))
        out.pop_back();
      std::size_t at = out.find_first_not_of(" \t");
      if (at == std::string::npos) continue;
      out.erase(0, at);
      return true;
    }
    return false;
  };
  if (!next_line(line)) throw BadFormat("empty k-mer set file");
  std::istringstream head(line);
  unsigned sigma = 0, k = 0;
  if (!(head >> sigma >> k))
    throw BadFormat("header must be '<sigma> <k>', got '" + line + "'");
  GraphParams p(sigma, k);
  KmerSet set(p);
  while (next_line(line)) set.insert(encode(line, p));
  return set;
}

inline void write_kmer_set(std::ostream& out, const KmerSet& set) {
  const GraphParams& p = set.params();
  out << p.sigma() << ' ' << p.k() << '\n';
  for (kmer_t u = 0; u < p.num_kmers(); ++u)
    if (set.contains(u)) out << decode(u, p) << '\n';
}

}  // namespace mds
