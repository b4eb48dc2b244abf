// Sketching schemes: orders, the four selection rules, density /
// conservation / gap metrics, de Bruijn sequences, and the syncmer
// adversary.
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mds/constructions.hpp"
#include "mds/core.hpp"
#include "mds/decycling.hpp"
#include "mds/sketching.hpp"

using namespace mds;

namespace {

Sequence rand_seq(unsigned sigma, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_sequence(sigma, n, rng);
}

}  // namespace

TEST_SUITE_BEGIN("sketching");

TEST_CASE("orders are deterministic and total") {
  KmerOrder a(7), b(7), c(8);
  CHECK(a.key(5) == b.key(5));
  CHECK(a.key(5) != c.key(5));  // astronomically unlikely to collide
  KmerOrder ranked(std::vector<std::uint64_t>{3, 3, 0, 1});
  CHECK(ranked.less(2, 3));
  CHECK(ranked.less(0, 1));  // equal keys fall back to code order
  CHECK(!ranked.less(1, 0));
}

TEST_CASE("sequence parsing and printing") {
  Sequence s = parse_sequence("01 10\n1", 2);
  CHECK(s == Sequence{0, 1, 1, 0, 1});
  CHECK(sequence_to_string(s) == "01101");
  CHECK(parse_sequence("ACGT", 4) == Sequence{0, 1, 2, 3});
  CHECK_THROWS_AS(parse_sequence("012", 2), BadFormat);
}

TEST_CASE("set-indicator: full set selects every position") {
  GraphParams p(2, 4);
  KmerSet all(p);
  for (kmer_t u = 0; u < p.num_kmers(); ++u) all.insert(u);
  Sequence S = rand_seq(2, 50, 1);
  Sketch sk = sketch(SketchScheme::set_indicator(all), S);
  CHECK(sk.positions.size() == S.size() - p.k() + 1);
  CHECK(sk.positions.front() == 1);
  CHECK(max_gap(sk, S, p.k()) == 0);
  CHECK(density(sk, S) == doctest::Approx((50.0 - 3.0) / 50.0));
}

TEST_CASE("set-indicator of an MDS: max gap bounded by its RPL") {
  GraphParams p(2, 4);
  KmerSet M = mykkeltveit_set(p);
  kmer_t rpl = remaining_path_length(M);  // 5
  SketchScheme sc = SketchScheme::set_indicator(M);
  Sequence S = rand_seq(2, 10000, 2);
  CHECK(max_gap(sketch(sc, S), S, p.k()) <= rpl);
  // A witness achieving the bound: spell out the longest remaining path.
  auto path = longest_remaining_path(M);
  REQUIRE(path.size() == rpl);
  Sequence W;
  for (unsigned i = 0; i < p.k(); ++i)
    W.push_back(static_cast<std::uint8_t>(
        (path.front() >> (p.k() - 1 - i)) & 1));
  for (std::size_t i = 1; i < path.size(); ++i)
    W.push_back(static_cast<std::uint8_t>(path[i] & 1));
  Sketch wit = sketch(sc, W);
  CHECK(wit.positions.empty());
  CHECK(max_gap(wit, W, p.k()) == rpl);
}

TEST_CASE("set-indicator gap bound holds across k <= 8") {
  for (unsigned k = 4; k <= 8; ++k) {
    GraphParams p(2, k);
    KmerSet M = mykkeltveit_set(p);
    kmer_t rpl = remaining_path_length(M);
    Sequence S = rand_seq(2, 5000, 100 + k);
    CHECK(max_gap(sketch(SketchScheme::set_indicator(M), S), S, k) <= rpl);
  }
}

TEST_CASE("minimizer: constant sequence, window bound, determinism") {
  GraphParams p(4, 5);
  SketchScheme sc = SketchScheme::minimizer(p, 8, 99);
  Sequence constant(200, 2);
  Sketch sk = sketch(sc, constant);
  // Only one distinct k-mer, so every window picks its leftmost position
  // and each window start is selected.
  std::size_t n_windows = (constant.size() - p.k() + 1) - 8 + 1;
  REQUIRE(sk.positions.size() == n_windows);
  for (std::size_t i = 0; i < sk.positions.size(); ++i)
    CHECK(sk.positions[i] == i + 1);
  Sequence S = rand_seq(4, 3000, 5);
  Sketch a = sketch(sc, S);
  CHECK(max_gap(a, S, p.k()) < 8);  // every window selects something
  Sketch b = sketch(sc, S);
  CHECK(a.positions == b.positions);
}

TEST_CASE("minimizer density in the expected band at sigma=4, k=15, w=10") {
  GraphParams p(4, 15);
  SketchScheme sc = SketchScheme::minimizer(p, 10, 1234);
  Sequence S = rand_seq(4, 1000000, 77);
  double d = density(sketch(sc, S), S);
  CHECK(d > (1.5 / 11.0) * 0.9);
  CHECK(d < (2.0 / 11.0) * 1.1);
}

TEST_CASE("hash-threshold density tracks the threshold") {
  GraphParams p(4, 9);
  Sequence S = rand_seq(4, 100000, 9);
  double d1 = density(sketch(SketchScheme::hash_threshold(p, 0.1, 3), S), S);
  CHECK(d1 == doctest::Approx(0.1).epsilon(0.1));
  Sketch none = sketch(SketchScheme::hash_threshold(p, 0.0, 3), S);
  CHECK(none.positions.empty());
  Sketch all = sketch(SketchScheme::hash_threshold(p, 1.0, 3), S);
  CHECK(all.positions.size() == S.size() - p.k() + 1);
}

TEST_CASE("syncmer: validation and closed-mask full selection") {
  GraphParams p(2, 5);
  CHECK_THROWS_AS(
      SketchScheme::syncmer(p, 6, std::vector<bool>{true}, KmerOrder(1)),
      BadParams);
  CHECK_THROWS_AS(SketchScheme::syncmer(p, 3, std::vector<bool>(3, false),
                                        KmerOrder(1)),
                  BadParams);
  CHECK_THROWS_AS(SketchScheme::syncmer(p, 3, std::vector<bool>(2, true),
                                        KmerOrder(1)),
                  BadParams);
  // Mask covering every offset selects every k-mer.
  SketchScheme sc = SketchScheme::syncmer(p, 3, std::vector<bool>(3, true),
                                          KmerOrder(4));
  Sequence S = rand_seq(2, 300, 6);
  CHECK(sketch(sc, S).positions.size() == S.size() - p.k() + 1);
}

TEST_CASE("conservation: rate zero is 1, higher rates conserve less") {
  GraphParams p(4, 8);
  SketchScheme sc = SketchScheme::minimizer(p, 6, 11);
  Sequence S = rand_seq(4, 2000, 12);
  CHECK(conservation(sc, S, 0.0, 3, 1) == doctest::Approx(1.0));
  double low = conservation(sc, S, 0.01, 5, 1);
  double high = conservation(sc, S, 0.2, 5, 1);
  CHECK(low > high);
  CHECK(low > 0.8);
  CHECK(high >= 0.0);
  CHECK_THROWS_AS(conservation(sc, S, 1.5, 1, 1), BadParams);
}

TEST_CASE("locality: selection inside an unchanged context is stable") {
  GraphParams p(4, 7);
  SketchScheme sc = SketchScheme::minimizer(p, 5, 21);
  Sequence A = rand_seq(4, 400, 31);
  Sequence B = rand_seq(4, 400, 32);
  Sequence shared = rand_seq(4, 120, 33);
  Sequence sa = A, sb = B;
  sa.insert(sa.end(), shared.begin(), shared.end());
  sb.insert(sb.end(), shared.begin(), shared.end());
  auto in_shared = [&](const Sketch& sk, std::size_t prefix) {
    std::vector<std::size_t> out;
    unsigned ctx = sc.context_length();
    for (std::size_t pos : sk.positions)
      if (pos > prefix + ctx && pos + ctx - 1 <= prefix + shared.size())
        out.push_back(pos - prefix);  // relative to the shared block
    return out;
  };
  CHECK(in_shared(sketch(sc, sa), A.size()) ==
        in_shared(sketch(sc, sb), B.size()));
}

TEST_CASE("empirical window report is consistent with the sketch") {
  GraphParams p(2, 4);
  SketchScheme sc = SketchScheme::set_indicator(mykkeltveit_set(p));
  WindowReport rep = empirical_window(sc, 5, 2000, 17);
  CHECK(rep.max_gap >= 1);
  CHECK(rep.max_gap <= remaining_path_length(mykkeltveit_set(p)));
  // The witness substring itself realizes a gap of that size.
  Sketch w = sketch(sc, rep.witness);
  CHECK(max_gap(w, rep.witness, p.k()) >= rep.max_gap);
}

TEST_CASE("de Bruijn sequence of order 3 contains all 8 3-mers") {
  Sequence d = debruijn_sequence(2, 3);
  CHECK(d.size() == 10);  // 2^3 + 3 - 1
  std::set<unsigned> seen;
  for (std::size_t i = 0; i + 3 <= d.size(); ++i)
    seen.insert(d[i] * 4 + d[i + 1] * 2 + d[i + 2]);
  CHECK(seen.size() == 8);
  Sequence d4 = debruijn_sequence(4, 2);
  CHECK(d4.size() == 17);
  std::set<unsigned> seen4;
  for (std::size_t i = 0; i + 2 <= d4.size(); ++i)
    seen4.insert(d4[i] * 4 + d4[i + 1]);
  CHECK(seen4.size() == 16);
}

TEST_CASE("adversary: zero open-syncmer selections for s=k-1, k<=12") {
  for (unsigned k = 3; k <= 12; ++k) {
    unsigned s = k - 1;
    SyncmerAdversary adv = syncmer_adversary(2, k, s);
    GraphParams p(2, k);
    std::vector<bool> mask(k - s + 1, false);
    mask[0] = true;  // open syncmer: minimal s-mer at the first offset
    SketchScheme sc =
        SketchScheme::syncmer(p, s, mask, KmerOrder(adv.ranks));
    CHECK(sketch(sc, adv.sequence).positions.empty());
  }
  CHECK_THROWS_AS(syncmer_adversary(2, 5, 5), BadParams);
}

TEST_CASE("short sequences are rejected") {
  GraphParams p(2, 6);
  Sequence tiny = {0, 1, 0};
  CHECK_THROWS_AS(sketch(SketchScheme::set_indicator(mykkeltveit_set(p)),
                         tiny),
                  SequenceTooShort);
  SketchScheme mini = SketchScheme::minimizer(p, 4, 1);
  Sequence six = rand_seq(2, 6, 1);
  CHECK_THROWS_AS(sketch(mini, six), SequenceTooShort);  // needs w+k-1 = 9
}

TEST_SUITE_END();
