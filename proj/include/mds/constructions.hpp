// The two classical closed-form MDS constructions plus random PCR-set /
// random MDS sampling.
//
// Mykkeltveit: embed each k-mer x_1..x_k at P(x) = sum_j x_j * omega^(j) for
// the k-th root of unity omega and, inside each rotation orbit, pick the
// member where the orbit's embedding walk crosses the negative real axis.
// Orbits whose embedding is identically zero carry no geometric information;
// their pick (and the published remaining path lengths of the even-k tables)
// is pinned by scanning k-mers in digit-sum order under the frozen unstable
// sort of introsort.hpp and starting each orbit at the first k-mer
// encountered.  Every output is validated structurally: one member per PCR,
// decycling, size = necklace_count.
//
// Champarnaud: per orbit take the necklace w, split off its shortest Lyndon
// prefix l with w = l^n u (|u| < |l|), and pick w itself when u is empty,
// else the rotation u l^n.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "mds/core.hpp"
#include "mds/decycling.hpp"
#include "mds/introsort.hpp"

namespace mds {

namespace detail {

inline constexpr double kEmbedEps = 1e-10;

// Snapped, conjugate-symmetric table of the k-th roots of unity:
// values within kEmbedEps of an axis are flushed to it exactly, and
// vals[k - i] is forced to conj(vals[i]) so the walk is symmetric.
inline std::vector<std::complex<double>> unity_roots(unsigned k) {
  std::vector<std::complex<double>> vals(k + 1);
  const double pi = std::acos(-1.0);
  for (unsigned i = 0; i <= k / 2; ++i) {
    double th = 2.0 * i * pi / k;
    double re = std::cos(th);
    double im = std::sin(th);
    if (std::abs(re) < kEmbedEps) re = 0.0;
    if (std::abs(im) < kEmbedEps) im = 0.0;
    vals[i] = {re, im};
    if (i > 0 && i < k - i) vals[k - i] = {re, -im};
  }
  vals[k] = vals[0];
  return vals;
}

// P(m): the i-th least significant digit is weighted by omega^((k - i) mod k)
// (so the last character of the k-mer sits at omega^1).
inline std::complex<double> embed(kmer_t m, const GraphParams& p,
                                  const std::vector<std::complex<double>>&
                                      vals) {
  std::complex<double> pos = 0;
  for (unsigned i = 0; i < p.k(); ++i) {
    pos += static_cast<double>(m % p.sigma()) * vals[(p.k() - i) % p.k()];
    m /= p.sigma();
  }
  return pos;
}

inline unsigned digit_sum(kmer_t m, const GraphParams& p) {
  unsigned w = 0;
  for (unsigned i = 0; i < p.k(); ++i) {
    w += static_cast<unsigned>(m % p.sigma());
    m /= p.sigma();
  }
  return w;
}

inline void validate_construction(const KmerSet& set, const char* name) {
  if (set.size() != necklace_count(set.params()))
    throw ConstructionInvalid(std::string(name) +
                              ": size != necklace count");
  if (!is_decycling(set))
    throw ConstructionInvalid(std::string(name) + ": set is not decycling");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Mykkeltveit set
// ---------------------------------------------------------------------------

inline KmerSet mykkeltveit_set(const GraphParams& p) {
  const kmer_t n = p.num_kmers();
  std::vector<unsigned> weight(n);
  for (kmer_t m = 0; m < n; ++m) weight[m] = detail::digit_sum(m, p);
  std::vector<kmer_t> order(n);
  for (kmer_t m = 0; m < n; ++m) order[m] = m;
  pinned_sort::sort(order, [&weight](kmer_t i, kmer_t j) {
    return weight[i] < weight[j];
  });

  const auto vals = detail::unity_roots(p.k());
  const double eps = detail::kEmbedEps;
  std::vector<bool> seen(n, false);
  KmerSet out(p);
  std::vector<kmer_t> orbit;
  for (kmer_t start : order) {
    if (seen[start]) continue;
    orbit.clear();
    kmer_t m = start;
    do {
      orbit.push_back(m);
      seen[m] = true;
      m = rotate(m, p);
    } while (m != start);

    kmer_t pick = ~kmer_t{0};
    bool have_prev = false;
    std::complex<double> prev_pos, pos;
    kmer_t prev = 0;
    for (kmer_t u : orbit) {
      pos = detail::embed(u, p, vals);
      if (std::abs(pos) < eps ||
          (pos.real() < -eps && std::abs(pos.imag()) < eps)) {
        // At the origin (zero-weight orbit: the scan-order start) or on the
        // negative real axis.
        pick = u;
        break;
      }
      if (have_prev && pos.imag() > eps && prev_pos.imag() < -eps) {
        pick = prev;  // upward crossing of the real axis
        break;
      }
      prev_pos = pos;
      prev = u;
      have_prev = true;
    }
    if (pick == ~kmer_t{0} && pos.imag() < -eps)
      pick = orbit.back();  // crossing wraps around the orbit end
    if (pick == ~kmer_t{0})
      throw ConstructionInvalid("mykkeltveit: no pick in orbit of " +
                                decode(start, p));
    out.insert(pick);
  }
  detail::validate_construction(out, "mykkeltveit");
  return out;
}

// ---------------------------------------------------------------------------
// Champarnaud set
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_lyndon(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::string rot = s.substr(i) + s.substr(0, i);
    if (!(s < rot)) return false;
  }
  return true;
}

// w is a necklace (minimal rotation).  Returns the chosen rotation.
inline std::string champarnaud_pick(const std::string& w) {
  const std::size_t k = w.size();
  for (std::size_t i = 1; i < k; ++i) {
    std::string l = w.substr(0, i);
    if (!is_lyndon(l)) continue;
    std::size_t j = i;
    while (j + i <= k && w.compare(j, i, l) == 0) j += i;
    if (j + i > k) {  // every complete i-block equals l
      if (j == k) return w;
      return w.substr(j) + w.substr(0, j);  // u l^n
    }
  }
  return w;
}

}  // namespace detail

inline KmerSet champarnaud_set(const GraphParams& p) {
  KmerSet out(p);
  for (const Pcr& orb : enumerate_pcrs(p)) {
    std::string w = decode(orb.id, p);  // orbit id = minimal rotation
    out.insert(encode(detail::champarnaud_pick(w), p));
  }
  detail::validate_construction(out, "champarnaud");
  return out;
}

// ---------------------------------------------------------------------------
// Random PCR sets and random MDSs
// ---------------------------------------------------------------------------

inline KmerSet random_pcr_set(const GraphParams& p, std::mt19937_64& rng) {
  KmerSet out(p);
  for (const Pcr& orb : enumerate_pcrs(p))
    out.insert(orb.members[detail::uniform_below(rng, orb.members.size())]);
  return out;
}

inline KmerSet random_pcr_set(const GraphParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_pcr_set(p, rng);
}

inline KmerSet random_mds(const GraphParams& p, std::uint64_t seed,
                          std::uint64_t max_tries) {
  if (max_tries < 1) throw BadParams("max_tries must be >= 1");
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < max_tries; ++t) {
    KmerSet cand = random_pcr_set(p, rng);
    if (is_decycling(cand)) return cand;
  }
  throw MaxTriesExceeded("no decycling PCR set in " +
                         std::to_string(max_tries) + " draws");
}

}  // namespace mds
