#ifndef TILELAB_CLI_HPP
#define TILELAB_CLI_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "tilelab/constructions.hpp"
#include "tilelab/hypergraph.hpp"

namespace tilelab::cli {

// Exit codes: 0 success, 2 negative-but-valid mathematical outcome
// (no factor, stage failure, bad certificate), 1 usage/operational error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNegative = 2;

KGraph parse_graph_file(const std::string& path);

// Generator spec strings, e.g. "extremal:k=3,ell=1,n=10,interior=empty",
// "partition:k=3,ell=1,n=10,x=2", "basic:kind=complete,k=3,n=5",
// "random:k=3,n=10,floor=2,density=0.5,seed=7".
struct GenSpec {
  std::string name;
  std::map<std::string, std::string> options;
};
GenSpec parse_gen_spec(const std::string& text);
KGraph build_from_spec(const GenSpec& spec, std::uint64_t default_seed = 0);

// Runs one batch spec file: per line "<genspec> seeds=<lo>..<hi>
// ell=<l> [budget=<n>]", '#' comments allowed. Every found factor is
// certificate-verified in the run. Rows are ordered by (spec row, seed).
int batch_report(std::istream& spec, std::ostream& report, std::ostream& log);

// Full command-line entry point (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tilelab::cli

#endif
