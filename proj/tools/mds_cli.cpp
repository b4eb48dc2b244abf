// Command-line front end: constructions, verification, component
// enumeration/traversal, conjecture checks, annealing, path-length ranges,
// sketch evaluation, the syncmer adversary, and table reproduction.
//
// Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mds/anneal.hpp"
#include "mds/components.hpp"
#include "mds/constructions.hpp"
#include "mds/core.hpp"
#include "mds/decycling.hpp"
#include "mds/moves.hpp"
#include "mds/sketching.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
  unsigned sigma = 2;
  unsigned k = 4;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 = auto; accepted for interface compatibility
  std::string out;
  std::string format = "csv";
};

std::ostream& open_output(const GlobalOpts& g, std::ofstream& file) {
  if (g.out.empty() || g.out == "-") return std::cout;
  file.open(g.out);
  if (!file) throw mds::Error("cannot open output file '" + g.out + "'");
  return file;
}

mds::KmerSet read_set_file(const std::string& path) {
  if (path == "-") return mds::read_kmer_set(std::cin);
  std::ifstream in(path);
  if (!in) throw mds::Error("cannot open '" + path + "'");
  return mds::read_kmer_set(in);
}

mds::KmerSet build_set(const std::string& method, const mds::GraphParams& p,
                       std::uint64_t seed, std::uint64_t max_tries) {
  if (method == "mykkeltveit") return mds::mykkeltveit_set(p);
  if (method == "champarnaud") return mds::champarnaud_set(p);
  if (method == "random") return mds::random_mds(p, seed, max_tries);
  if (method == "random-pcr") return mds::random_pcr_set(p, seed);
  throw mds::BadParams("unknown method '" + method + "'");
}

std::string hex_chosen(const std::vector<mds::kmer_t>& chosen) {
  std::ostringstream os;
  os << std::hex;
  for (mds::kmer_t u : chosen) os << u << "_";
  std::string s = os.str();
  if (!s.empty()) s.pop_back();
  return s;
}

std::size_t fp_hash(const std::vector<mds::Move>& fp) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (const mds::Move& mv : fp) {
    std::uint64_t v = (static_cast<std::uint64_t>(mv.kind) << 48) ^
                      (mv.f << 8) ^ mv.mask;
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Subcommand bodies (each returns the process exit code)
// ---------------------------------------------------------------------------

int cmd_generate(const GlobalOpts& g, const std::string& method,
                 std::uint64_t max_tries) {
  mds::GraphParams p(g.sigma, g.k);
  mds::KmerSet set = build_set(method, p, g.seed, max_tries);
  std::ofstream file;
  std::ostream& os = open_output(g, file);
  mds::write_kmer_set(os, set);
  return 0;
}

int cmd_verify(const std::string& path) {
  mds::KmerSet set = read_set_file(path);
  auto witness = mds::find_cycle_avoiding(set);
  if (!witness) {
    std::cout << "decycling " << mds::remaining_path_length(set) << "\n";
    return 0;
  }
  std::cout << "not-decycling witness";
  for (mds::kmer_t u : witness->nodes)
    std::cout << " " << mds::decode(u, set.params());
  std::cout << "\n";
  return 1;
}

int cmd_longest_path(const std::string& path, bool with_witness) {
  mds::KmerSet set = read_set_file(path);
  std::cout << mds::remaining_path_length(set) << "\n";
  if (with_witness) {
    for (mds::kmer_t u : mds::longest_remaining_path(set))
      std::cout << mds::decode(u, set.params()) << "\n";
  }
  return 0;
}

void emit_component_rows(std::ostream& os, const std::string& format,
                         const std::vector<mds::ComponentSummary>& comps) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& c : comps) {
      json row;
      row["fingerprint_hash"] = fp_hash(c.fingerprint);
      row["mds_count"] = c.mds_count;
      row["layer_sizes"] = c.layer_sizes;
      row["min_rpl"] = c.min_rpl;
      row["max_rpl"] = c.max_rpl;
      arr.push_back(std::move(row));
    }
    os << arr.dump(2) << "\n";
    return;
  }
  os << "fingerprint_hash,mds_count,layers,min_rpl,max_rpl\n";
  for (const auto& c : comps) {
    os << fp_hash(c.fingerprint) << "," << c.mds_count << ",";
    for (std::size_t i = 0; i < c.layer_sizes.size(); ++i)
      os << (i ? "|" : "") << c.layer_sizes[i];
    os << "," << c.min_rpl << "," << c.max_rpl << "\n";
  }
}

int cmd_enumerate(const GlobalOpts& g, const std::string& method,
                  const std::string& set_file) {
  mds::GraphParams p(g.sigma, g.k);
  auto space = mds::make_space(p);
  if (g.format == "dot") {
    if (p.num_kmers() > 32)
      throw mds::InstanceTooLarge("DOT emission limited to sigma^k <= 32");
    std::vector<mds::Mds> all = mds::enumerate_all_mds_bruteforce(space);
    std::ofstream file;
    std::ostream& os = open_output(g, file);
    os << "digraph gmds {\n";
    for (const auto& m : all)
      os << "  \"" << hex_chosen(m.chosen()) << "\";\n";
    for (const auto& m : all)
      for (mds::kmer_t f : mds::valid_f_moves(m)) {
        mds::Mds succ = mds::apply_f_move(m, f);
        os << "  \"" << hex_chosen(m.chosen()) << "\" -> \""
           << hex_chosen(succ.chosen()) << "\" [label=\"" << f << "\"];\n";
      }
    os << "}\n";
    return 0;
  }
  mds::KmerSet start = set_file.empty()
                           ? build_set(method, p, g.seed, 1u << 20)
                           : read_set_file(set_file);
  mds::Mds M = mds::Mds::from_kmer_set(space, start);
  mds::ComponentSummary c = mds::enumerate_component(M);
  std::ofstream file;
  std::ostream& os = open_output(g, file);
  emit_component_rows(os, g.format, {c});
  return 0;
}

int cmd_traverse(const GlobalOpts& g, const std::string& method,
                 std::size_t limit, bool paranoid) {
  mds::GraphParams p(g.sigma, g.k);
  auto space = mds::make_space(p);
  mds::Mds start =
      mds::Mds::from_kmer_set(space, build_set(method, p, g.seed, 1u << 20));
  mds::TraverseOptions opts;
  opts.limit = limit ? limit : ~std::size_t{0};
  opts.paranoid = paranoid;
  mds::TraverseResult tr = mds::traverse_components(start, opts);
  std::ofstream file;
  std::ostream& os = open_output(g, file);
  if (g.format == "json") {
    json doc;
    doc["components"] = tr.components.size();
    doc["total_mds"] = tr.total_mds;
    doc["fingerprint_collision"] = tr.fingerprint_collision;
    json arr = json::array();
    for (const auto& c : tr.components) {
      json row;
      row["fingerprint_hash"] = fp_hash(c.fingerprint);
      row["mds_count"] = c.mds_count;
      row["min_rpl"] = c.min_rpl;
      row["max_rpl"] = c.max_rpl;
      arr.push_back(std::move(row));
    }
    doc["per_component"] = std::move(arr);
    os << doc.dump(2) << "\n";
  } else {
    os << "components,total_mds,fingerprint_collision\n";
    os << tr.components.size() << "," << tr.total_mds << ","
       << (tr.fingerprint_collision ? 1 : 0) << "\n";
    emit_component_rows(os, g.format, tr.components);
  }
  if (tr.fingerprint_collision) {
    std::cerr << "FINGERPRINT COLLISION: two components share an I-move "
                 "list; this falsifies the fingerprint conjecture\n";
    return 1;
  }
  return 0;
}

int cmd_verify_conjectures(const GlobalOpts& g) {
  mds::GraphParams p(g.sigma, g.k);
  auto space = mds::make_space(p);
  mds::Mds myk = mds::Mds::from_kmer_set(space, mds::mykkeltveit_set(p));
  mds::ConnectivityReport cr =
      mds::verify_conjecture_connectivity(space, myk);
  mds::FingerprintReport fr = mds::verify_conjecture_imove_signature(space);
  std::cout << "connectivity: " << (cr.equal ? "connected" : "NOT CONNECTED")
            << " components=" << cr.components
            << " traversal_mds=" << cr.traversal_mds
            << " brute_mds=" << cr.brute_mds << " missing=" << cr.missing
            << " extra=" << cr.extra << "\n";
  std::cout << "fingerprints: "
            << (fr.all_distinct ? "distinct" : "COLLISION")
            << " components=" << fr.components
            << " distinct=" << fr.distinct_fingerprints
            << " constrained_edge_rule="
            << (fr.matches_constrained_edge_rule ? "matches" : "MISMATCH")
            << "\n";
  return (cr.equal && fr.all_distinct && fr.matches_constrained_edge_rule)
             ? 0
             : 1;
}

int cmd_anneal(const GlobalOpts& g, mds::AnnealConfig cfg,
               const std::string& objective, const std::string& start,
               const std::string& trace_file) {
  mds::GraphParams p(g.sigma, g.k);
  auto space = mds::make_space(p);
  cfg.objective = objective == "max" ? mds::Objective::Max
                                     : mds::Objective::Min;
  if (start == "champarnaud")
    cfg.start = mds::StartSet::Champarnaud;
  else if (start == "random")
    cfg.start = mds::StartSet::Random;
  else
    cfg.start = mds::StartSet::Mykkeltveit;
  cfg.seed = g.seed;
  mds::AnnealResult res = mds::anneal(space, cfg);

  std::ofstream file;
  std::ostream& os = open_output(g, file);
  mds::write_kmer_set(os, mds::KmerSet(p, res.best_chosen));

  std::ofstream tf;
  std::ostream* ts = nullptr;
  if (trace_file == "-")
    ts = &std::cerr;
  else if (!trace_file.empty()) {
    tf.open(trace_file);
    if (!tf) throw mds::Error("cannot open trace file '" + trace_file + "'");
    ts = &tf;
  }
  if (ts) {
    for (const auto& t : res.trace) {
      json row;
      row["iteration"] = t.iteration;
      row["component"] = t.fingerprint_hash;
      row["local_best"] = t.local_best;
      *ts << row.dump() << "\n";
    }
    json tail;
    tail["best_rpl"] = res.best_rpl;
    tail["stopped_no_i_move"] = res.stopped_no_i_move;
    *ts << tail.dump() << "\n";
  }
  std::cerr << "best_rpl " << res.best_rpl
            << (res.stopped_no_i_move ? " (stopped: no I-move available)"
                                      : "")
            << "\n";
  return 0;
}

int cmd_rpl_range(const GlobalOpts& g, const std::string& method,
                  std::size_t limit, mds::kmer_t walk,
                  const std::string& mode) {
  mds::GraphParams p(g.sigma, g.k);
  auto space = mds::make_space(p);
  mds::Mds start =
      mds::Mds::from_kmer_set(space, build_set(method, p, g.seed, 1u << 20));
  std::ofstream file;
  std::ostream& os = open_output(g, file);
  if (mode == "sample") {
    mds::RplRange r = mds::component_rpl_range_sampled(start, walk, g.seed);
    os << "component_hash,min_rpl,max_rpl\n";
    std::vector<mds::Move> fp = mds::component_i_moves(start);
    std::sort(fp.begin(), fp.end());
    os << fp_hash(fp) << "," << r.min_rpl << "," << r.max_rpl << "\n";
    return 0;
  }
  mds::TraverseOptions opts;
  opts.limit = limit ? limit : ~std::size_t{0};
  mds::TraverseResult tr = mds::traverse_components(start, opts);
  os << "component_hash,min_rpl,max_rpl\n";
  for (const auto& c : tr.components)
    os << fp_hash(c.fingerprint) << "," << c.min_rpl << "," << c.max_rpl
       << "\n";
  return 0;
}

int cmd_sketch_eval(const GlobalOpts& g, const std::string& scheme,
                    const std::string& set_file, unsigned w, unsigned s,
                    const std::string& mask_spec, double threshold,
                    std::uint64_t order_seed, std::size_t length,
                    unsigned trials, double mutation_rate) {
  mds::GraphParams p(g.sigma, g.k);
  std::unique_ptr<mds::SketchScheme> sc;
  if (scheme == "set-indicator") {
    mds::KmerSet set = set_file.empty() ? mds::mykkeltveit_set(p)
                                        : read_set_file(set_file);
    sc = std::make_unique<mds::SketchScheme>(
        mds::SketchScheme::set_indicator(std::move(set)));
  } else if (scheme == "minimizer") {
    sc = std::make_unique<mds::SketchScheme>(
        mds::SketchScheme::minimizer(p, w, order_seed));
  } else if (scheme == "syncmer") {
    if (s == 0 || s > p.k()) throw mds::BadParams("syncmer needs --s");
    std::vector<bool> mask(p.k() - s + 1, false);
    std::istringstream ms(mask_spec);
    std::string tok;
    while (std::getline(ms, tok, ',')) {
      unsigned o = static_cast<unsigned>(std::stoul(tok));
      if (o < 1 || o > mask.size())
        throw mds::BadParams("mask offset out of range");
      mask[o - 1] = true;
    }
    sc = std::make_unique<mds::SketchScheme>(mds::SketchScheme::syncmer(
        p, s, std::move(mask), mds::KmerOrder(order_seed)));
  } else if (scheme == "hash-threshold") {
    sc = std::make_unique<mds::SketchScheme>(
        mds::SketchScheme::hash_threshold(p, threshold, order_seed));
  } else {
    throw mds::BadParams("unknown scheme '" + scheme + "'");
  }

  std::mt19937_64 rng(g.seed);
  mds::Sequence S = mds::random_sequence(g.sigma, length, rng);
  mds::Sketch sk = mds::sketch(*sc, S);
  double dens = mds::density(sk, S);
  std::size_t gap = mds::max_gap(sk, S, p.k());
  double cons = mds::conservation(*sc, S, mutation_rate, trials, g.seed + 1);

  std::ofstream file;
  std::ostream& os = open_output(g, file);
  if (g.format == "json") {
    json doc;
    doc["density"] = dens;
    doc["conservation"] = cons;
    doc["max_gap"] = gap;
    os << doc.dump(2) << "\n";
  } else {
    os << "density,conservation,max_gap\n";
    os << dens << "," << cons << "," << gap << "\n";
  }
  return 0;
}

int cmd_adversary(const GlobalOpts& g, unsigned s) {
  if (s == 0) s = g.k - 1;
  mds::SyncmerAdversary adv = mds::syncmer_adversary(g.sigma, g.k, s);
  std::ofstream file;
  std::ostream& os = open_output(g, file);
  os << mds::sequence_to_string(adv.sequence) << "\n";
  return 0;
}

int cmd_tables(const GlobalOpts& g, unsigned which, unsigned kmax,
               bool force) {
  std::ofstream file;
  std::ostream& os = open_output(g, file);
  if (which == 1) {
    if (kmax >= 7 && !force)
      throw mds::BadParams(
          "Table 1 for k >= 7 is a long run; pass --force to confirm");
    os << "k,components,mds_count\n";
    for (unsigned k = 2; k <= kmax; ++k) {
      mds::GraphParams p(g.sigma, k);
      auto space = mds::make_space(p);
      mds::Mds myk =
          mds::Mds::from_kmer_set(space, mds::mykkeltveit_set(p));
      mds::TraverseResult tr = mds::traverse_components(myk);
      os << k << "," << tr.components.size() << "," << tr.total_mds << "\n";
    }
    return 0;
  }
  if (which == 2) {
    os << "method";
    for (unsigned k = 4; k <= kmax; ++k) os << ",k=" << k;
    os << "\n";
    os << "mykkeltveit";
    for (unsigned k = 4; k <= kmax; ++k) {
      mds::GraphParams p(g.sigma, k);
      os << "," << mds::remaining_path_length(mds::mykkeltveit_set(p));
    }
    os << "\n";
    os << "champarnaud";
    for (unsigned k = 4; k <= kmax; ++k) {
      mds::GraphParams p(g.sigma, k);
      os << "," << mds::remaining_path_length(mds::champarnaud_set(p));
    }
    os << "\n";
    return 0;
  }
  throw mds::BadParams("--which must be 1 or 2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum decycling set toolkit for de Bruijn graphs"};
  app.require_subcommand(1);

  GlobalOpts g;
  if (const char* env = std::getenv("MDS_THREADS"))
    g.threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  app.add_option("--sigma", g.sigma, "alphabet size")->capture_default_str();
  app.add_option("--k", g.k, "k-mer length")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker thread cap");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "csv|json|dot")
      ->check(CLI::IsMember({"csv", "json", "dot"}));

  std::string method = "mykkeltveit";
  std::uint64_t max_tries = 1u << 20;
  auto* generate = app.add_subcommand("generate", "emit an MDS / PCR set");
  generate->add_option("--method", method,
                       "mykkeltveit|champarnaud|random|random-pcr");
  generate->add_option("--max-tries", max_tries,
                       "rejection budget for --method random");

  std::string in_file = "-";
  auto* verify = app.add_subcommand("verify", "check a k-mer set file");
  verify->add_option("file", in_file, "k-mer set file ('-' = stdin)");

  bool with_witness = false;
  auto* longest =
      app.add_subcommand("longest-path", "remaining path length of a DS");
  longest->add_option("file", in_file, "k-mer set file ('-' = stdin)");
  longest->add_flag("--witness", with_witness, "also print the path");

  std::string set_file;
  auto* enumerate =
      app.add_subcommand("enumerate", "enumerate one G_MDS component");
  enumerate->add_option("--method", method, "starting construction");
  enumerate->add_option("--set-file", set_file, "explicit starting MDS file");

  std::size_t limit = 0;
  bool paranoid = false;
  auto* traverse =
      app.add_subcommand("traverse", "traverse the component graph");
  traverse->add_option("--method", method, "starting construction");
  traverse->add_option("--limit", limit, "max components (0 = all)");
  traverse->add_flag("--paranoid", paranoid,
                     "track representatives to detect fingerprint collisions");

  auto* conj = app.add_subcommand("verify-conjectures",
                                  "connectivity + fingerprint distinctness");

  mds::AnnealConfig acfg;
  std::string objective = "min", start = "mykkeltveit", trace_file;
  auto* annealc = app.add_subcommand("anneal", "simulated annealing search");
  annealc->add_option("--objective", objective, "min|max");
  annealc->add_option("--iterations", acfg.iterations, "annealing steps")
      ->capture_default_str();
  annealc->add_option("--fmoves", acfg.fmoves_per_component,
                      "F-moves per component (0 = 2k)");
  annealc->add_option("--t0", acfg.initial_temperature,
                      "initial temperature (0 = k)");
  annealc->add_option("--cooling", acfg.cooling_factor, "geometric factor")
      ->capture_default_str();
  annealc->add_option("--start", start, "mykkeltveit|champarnaud|random");
  annealc->add_option("--trace", trace_file,
                      "JSON-lines trace file ('-' = stderr)");

  std::string range_mode = "exhaustive";
  mds::kmer_t walk = 1000;
  auto* rplr =
      app.add_subcommand("rpl-range", "per-component path-length ranges");
  rplr->add_option("--method", method, "starting construction");
  rplr->add_option("--mode", range_mode, "exhaustive|sample");
  rplr->add_option("--walk", walk, "F-move walk steps in sample mode");
  rplr->add_option("--limit", limit, "max components (0 = all)");

  std::string scheme = "minimizer", mask_spec = "1";
  unsigned w = 10, s = 0;
  double threshold = 0.01, mutation_rate = 0.01;
  std::size_t length = 100000;
  unsigned trials = 5;
  std::uint64_t order_seed = 42;
  auto* sk = app.add_subcommand("sketch-eval", "sketching metrics");
  sk->add_option("--scheme", scheme,
                 "set-indicator|minimizer|syncmer|hash-threshold");
  sk->add_option("--set-file", set_file,
                 "k-mer set for set-indicator (default Mykkeltveit)");
  sk->add_option("--w", w, "minimizer window");
  sk->add_option("--s", s, "syncmer s-mer length");
  sk->add_option("--mask", mask_spec, "syncmer offsets, e.g. '1' or '1,3'");
  sk->add_option("--threshold", threshold, "hash-threshold fraction");
  sk->add_option("--order-seed", order_seed, "order permutation seed");
  sk->add_option("--length", length, "random sequence length");
  sk->add_option("--trials", trials, "conservation trials");
  sk->add_option("--mutation-rate", mutation_rate, "substitution rate");

  unsigned adv_s = 0;
  auto* adv = app.add_subcommand("adversary",
                                 "syncmer adversary sequence (Supp. A)");
  adv->add_option("--s", adv_s, "s-mer length (default k-1)");

  unsigned which = 2, kmax = 8;
  bool force = false;
  auto* tables = app.add_subcommand("tables", "reproduce table data");
  tables->add_option("--which", which, "1|2")->capture_default_str();
  tables->add_option("--kmax", kmax, "largest k")->capture_default_str();
  tables->add_flag("--force", force, "allow the k=7 Table 1 long run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*generate) return cmd_generate(g, method, max_tries);
    if (*verify) return cmd_verify(in_file);
    if (*longest) return cmd_longest_path(in_file, with_witness);
    if (*enumerate) return cmd_enumerate(g, method, set_file);
    if (*traverse) return cmd_traverse(g, method, limit, paranoid);
    if (*conj) return cmd_verify_conjectures(g);
    if (*annealc) return cmd_anneal(g, acfg, objective, start, trace_file);
    if (*rplr) return cmd_rpl_range(g, method, limit, walk, range_mode);
    if (*sk)
      return cmd_sketch_eval(g, scheme, set_file, w, s, mask_spec, threshold,
                             order_seed, length, trials, mutation_rate);
    if (*adv) return cmd_adversary(g, adv_s);
    if (*tables) return cmd_tables(g, which, kmax, force);
  } catch (const mds::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
