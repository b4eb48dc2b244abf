// End-to-end checks of the command-line tool: round trips through files,
// exit codes, table output, and seeded determinism.  The binary path comes
// in through the MDS_CLI_PATH compile definition.
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mds/constructions.hpp"
#include "mds/core.hpp"

using namespace mds;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  namespace fs = std::filesystem;
  static int counter = 0;
  fs::path tmp = fs::temp_directory_path() /
                 ("mds_cli_out_" + std::to_string(++counter) + ".txt");
  std::string cmd = std::string(MDS_CLI_PATH) + " " + args + " > " +
                    tmp.string() + " 2> /dev/null";
  int rc = std::system(cmd.c_str());
  RunResult out;
  out.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(tmp);
  std::ostringstream ss;
  ss << in.rdbuf();
  out.output = ss.str();
  fs::remove(tmp);
  return out;
}

std::string temp_file(const std::string& tag) {
  namespace fs = std::filesystem;
  return (fs::temp_directory_path() / ("mds_cli_" + tag + ".txt")).string();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("generate then verify round-trips") {
  std::string path = temp_file("gen_verify");
  RunResult gen = run_cli("--sigma 2 --k 6 generate --method mykkeltveit "
                          "--out " + path);
  CHECK(gen.exit_code == 0);
  {
    std::ifstream in(path);
    KmerSet set = read_kmer_set(in);
    CHECK(set == mykkeltveit_set(GraphParams(2, 6)));
  }
  RunResult ver = run_cli("verify " + path);
  CHECK(ver.exit_code == 0);
  CHECK(ver.output == "decycling 21\n");
  std::filesystem::remove(path);
}

TEST_CASE("verify rejects a non-decycling set with a witness") {
  std::string path = temp_file("bad_set");
  {
    std::ofstream out(path);
    out << "2 3\n000\n111\n001\n011\n";
  }
  RunResult ver = run_cli("verify " + path);
  CHECK(ver.exit_code == 1);
  CHECK(ver.output == "not-decycling witness 010 101\n");
  std::filesystem::remove(path);
}

TEST_CASE("longest-path prints the length and a valid witness") {
  std::string path = temp_file("lp_set");
  {
    std::ofstream out(path);
    write_kmer_set(out, champarnaud_set(GraphParams(2, 4)));
  }
  RunResult r = run_cli("longest-path --witness " + path);
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string first;
  std::getline(lines, first);
  CHECK(first == "7");
  unsigned count = 0;
  for (std::string l; std::getline(lines, l);) ++count;
  CHECK(count == 7);
  std::filesystem::remove(path);
}

TEST_CASE("tables --which 2 matches the published row") {
  RunResult r = run_cli("--sigma 2 tables --which 2 --kmax 8");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "method,k=4,k=5,k=6,k=7,k=8\n"
        "mykkeltveit,5,11,21,27,39\n"
        "champarnaud,7,11,21,27,47\n");
}

TEST_CASE("tables --which 1 matches the published counts") {
  RunResult r = run_cli("--sigma 2 tables --which 1 --kmax 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "k,components,mds_count\n"
        "2,1,2\n"
        "3,1,4\n"
        "4,3,30\n"
        "5,1,28\n");
  // k >= 7 requires --force.
  CHECK(run_cli("--sigma 2 tables --which 1 --kmax 7").exit_code == 1);
}

TEST_CASE("traverse reports the k=4 component structure") {
  RunResult r = run_cli("--sigma 2 --k 4 traverse --paranoid");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string header, summary;
  std::getline(lines, header);
  std::getline(lines, summary);
  CHECK(header == "components,total_mds,fingerprint_collision");
  CHECK(summary == "3,30,0");
}

TEST_CASE("enumerate --format dot lists all 30 MDSs as nodes") {
  RunResult r = run_cli("--sigma 2 --k 4 --format dot enumerate");
  CHECK(r.exit_code == 0);
  unsigned nodes = 0, edges = 0;
  std::istringstream lines(r.output);
  for (std::string l; std::getline(lines, l);) {
    if (l.find("->") != std::string::npos)
      ++edges;
    else if (l.find('"') != std::string::npos)
      ++nodes;
  }
  CHECK(nodes == 30);
  CHECK(edges > 30);  // every MDS has at least one outgoing F-move
}

TEST_CASE("verify-conjectures passes at small k") {
  CHECK(run_cli("--sigma 2 --k 4 verify-conjectures").exit_code == 0);
  CHECK(run_cli("--sigma 2 --k 5 verify-conjectures").exit_code == 0);
}

TEST_CASE("anneal emits a valid MDS and is deterministic per seed") {
  std::string p1 = temp_file("anneal1"), p2 = temp_file("anneal2");
  std::string base =
      "--sigma 2 --k 6 --seed 3 anneal --objective min --iterations 40 ";
  CHECK(run_cli(base + "--out " + p1).exit_code == 0);
  CHECK(run_cli(base + "--out " + p2).exit_code == 0);
  std::ifstream a(p1), b(p2);
  KmerSet sa = read_kmer_set(a), sb = read_kmer_set(b);
  CHECK(sa == sb);
  CHECK(is_decycling(sa));
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("rpl-range exhaustive covers the three k=4 components") {
  RunResult r = run_cli("--sigma 2 --k 4 rpl-range --mode exhaustive");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "component_hash,min_rpl,max_rpl");
  unsigned rows = 0;
  for (std::string l; std::getline(lines, l);)
    if (!l.empty()) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("sketch-eval emits the metric header") {
  RunResult r = run_cli(
      "--sigma 2 --k 6 sketch-eval --scheme set-indicator --length 5000 "
      "--trials 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("density,conservation,max_gap\n", 0) == 0);
}

TEST_CASE("adversary prints the de Bruijn sequence") {
  RunResult r = run_cli("--sigma 2 --k 4 adversary");
  CHECK(r.exit_code == 0);
  // s = k-1 = 3: length 2^3 + 3 - 1 = 10 plus the newline.
  CHECK(r.output.size() == 11);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--format bogus generate").exit_code == 2);
}

TEST_CASE("domain errors exit with 1") {
  CHECK(run_cli("--sigma 1 --k 4 generate").exit_code == 1);
  CHECK(run_cli("verify /nonexistent/file").exit_code == 1);
  CHECK(run_cli("generate --method bogus").exit_code == 1);
}

TEST_SUITE_END();
