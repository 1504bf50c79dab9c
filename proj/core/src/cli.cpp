#include "tilelab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tilelab/pipeline.hpp"
#include "tilelab/solver.hpp"
#include "tilelab/ypattern.hpp"

namespace tilelab::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int opt_int(const GenSpec& s, const std::string& key) {
  auto it = s.options.find(key);
  if (it == s.options.end())
    throw std::runtime_error("gen spec missing option '" + key + "'");
  return std::stoi(it->second);
}

double opt_double(const GenSpec& s, const std::string& key) {
  auto it = s.options.find(key);
  if (it == s.options.end())
    throw std::runtime_error("gen spec missing option '" + key + "'");
  return std::stod(it->second);
}

std::string opt_str(const GenSpec& s, const std::string& key,
                    const std::string& fallback) {
  auto it = s.options.find(key);
  return it == s.options.end() ? fallback : it->second;
}

}  // namespace

KGraph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return KGraph::parse(in);
}

GenSpec parse_gen_spec(const std::string& text) {
  GenSpec spec;
  auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (colon != std::string::npos) {
    std::istringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("gen spec option needs key=value: " + item);
      spec.options[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  return spec;
}

KGraph build_from_spec(const GenSpec& spec, std::uint64_t default_seed) {
  if (spec.name == "extremal") {
    std::string interior = opt_str(spec, "interior", "empty");
    InteriorMode mode = interior == "greedy" || interior == "greedy_y_free"
                            ? InteriorMode::greedy_y_free
                            : InteriorMode::empty;
    if (interior != "empty" && mode == InteriorMode::empty)
      throw std::runtime_error("unknown interior mode: " + interior);
    return build_extremal({opt_int(spec, "k"), opt_int(spec, "ell"),
                           opt_int(spec, "n"), mode})
        .graph;
  }
  if (spec.name == "partition") {
    return build_partition_model(opt_int(spec, "k"), opt_int(spec, "ell"),
                                 opt_int(spec, "n"), opt_int(spec, "x"))
        .graph;
  }
  if (spec.name == "basic") {
    std::string kind = opt_str(spec, "kind", "complete");
    BasicKind bk = kind == "complete" ? BasicKind::complete
                   : kind == "empty"  ? BasicKind::empty
                   : kind == "matching"
                       ? BasicKind::matching
                       : throw std::runtime_error("unknown basic kind: " + kind);
    return build_basic(bk, opt_int(spec, "k"), opt_int(spec, "n"));
  }
  if (spec.name == "random") {
    std::uint64_t seed = spec.options.count("seed")
                             ? std::stoull(spec.options.at("seed"))
                             : default_seed;
    return random_codegree_graph(
        opt_int(spec, "k"), opt_int(spec, "n"),
        static_cast<std::uint64_t>(opt_int(spec, "floor")),
        opt_double(spec, "density"), seed);
  }
  throw std::runtime_error("unknown generator: " + spec.name);
}

namespace {

struct BatchRow {
  int spec_row;
  std::uint64_t seed;
  int n;
  std::size_t edges;
  std::uint64_t delta;
  std::string outcome;
  std::size_t tiles;
  bool verified;
  std::uint64_t nodes;
  std::string error;
};

}  // namespace

int batch_report(std::istream& spec, std::ostream& report, std::ostream& log) {
  report << "# tile-lab report v1\n";
  report << "row\tseed\tn\tedges\tdelta\toutcome\ttiles\tverified\tnodes\terror\n";
  std::string line;
  int row = 0;
  int instances = 0, found = 0, errors = 0;
  while (std::getline(spec, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string genspec, token;
    ls >> genspec;
    std::uint64_t lo = 0, hi = 0;
    int ell = -1;
    std::uint64_t budget = kDefaultBudget;
    while (ls >> token) {
      auto eq = token.find('=');
      if (eq == std::string::npos) continue;
      std::string key = token.substr(0, eq), val = token.substr(eq + 1);
      if (key == "seeds") {
        auto dots = val.find("..");
        if (dots == std::string::npos) {
          lo = hi = std::stoull(val);
        } else {
          lo = std::stoull(val.substr(0, dots));
          hi = std::stoull(val.substr(dots + 2));
        }
      } else if (key == "ell") {
        ell = std::stoi(val);
      } else if (key == "budget") {
        budget = std::stoull(val);
      }
    }
    if (ell < 0) {
      log << "row " << row << ": missing ell=, skipped\n";
      continue;
    }
    GenSpec gs;
    try {
      gs = parse_gen_spec(genspec);
    } catch (const std::exception& e) {
      log << "row " << row << ": " << e.what() << '\n';
      continue;
    }
    for (std::uint64_t seed = lo; seed <= hi; ++seed) {
      ++instances;
      BatchRow r{row, seed, 0, 0, 0, "error", 0, false, 0, ""};
      try {
        KGraph h = build_from_spec(gs, seed);
        r.n = h.vertex_count();
        r.edges = h.edge_count();
        r.delta = h.uniformity() >= 2 && h.vertex_count() >= h.uniformity()
                      ? h.min_d_degree(h.uniformity() - 1)
                      : 0;
        YPattern p{h.uniformity(), ell};
        FactorResult res = find_factor(h, p, budget);
        r.nodes = res.stats.nodes;
        switch (res.outcome) {
          case FactorOutcome::found: {
            r.outcome = "found";
            r.tiles = res.tiling->size();
            r.verified = verify_tiling(h, p, *res.tiling, true).ok;
            if (r.verified) ++found;
            break;
          }
          case FactorOutcome::none_exhaustive:
            r.outcome = "none";
            break;
          case FactorOutcome::budget_exceeded:
            r.outcome = "budget";
            break;
        }
      } catch (const std::exception& e) {
        r.error = e.what();
        ++errors;
      }
      report << r.spec_row << '\t' << r.seed << '\t' << r.n << '\t' << r.edges
             << '\t' << r.delta << '\t' << r.outcome << '\t' << r.tiles << '\t'
             << (r.verified ? 1 : 0) << '\t' << r.nodes << '\t' << r.error
             << '\n';
    }
  }
  log << "report ok instances=" << instances << " found=" << found
      << " errors=" << errors << '\n';
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"tile-lab: k-uniform hypergraph Y-tiling toolkit"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads (1 = deterministic)");

  std::string spec_str, in_path, out_path, cert_path, witness_str = "auto";
  int ell = -1, d = -1;
  double xi = 0.01;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--spec", spec_str, "generator spec string")->required();
  gen->add_option("-o,--output", out_path, "graph file")->required();
  gen->add_option("--seed", seed, "seed for random generators");

  auto* codegree = app.add_subcommand("codegree", "minimum d-degree");
  codegree->add_option("-i,--input", in_path)->required();
  codegree->add_option("-d", d, "degree order, default k-1");

  auto* copies = app.add_subcommand("copies", "enumerate Y copies");
  copies->add_option("-i,--input", in_path)->required();
  copies->add_option("--ell", ell)->required();
  copies->add_option("-o,--output", out_path, "copy list file");

  auto* solve = app.add_subcommand("solve", "decide a Y-factor");
  solve->add_option("-i,--input", in_path)->required();
  solve->add_option("--ell", ell)->required();
  solve->add_option("-o,--output", cert_path, "certificate file");
  solve->add_option("--budget", budget, "search node budget");

  auto* maxt = app.add_subcommand("max-tiling", "maximal Y-tiling");
  maxt->add_option("-i,--input", in_path)->required();
  maxt->add_option("--ell", ell)->required();
  maxt->add_option("-o,--output", out_path, "tiling file");
  maxt->add_option("--budget", budget);

  auto* pipe = app.add_subcommand("pipeline", "extremal-case factor pipeline");
  pipe->add_option("-i,--input", in_path)->required();
  pipe->add_option("--ell", ell)->required();
  pipe->add_option("--xi", xi, "extremality parameter");
  pipe->add_option("-o,--output", out_path, "report file");
  pipe->add_option("--cert", cert_path, "certificate file");
  pipe->add_option("--witness", witness_str, "auto|exhaustive|local");
  pipe->add_option("--budget", budget);

  auto* verify = app.add_subcommand("verify", "check a factor certificate");
  verify->add_option("-i,--input", in_path)->required();
  verify->add_option("--cert", cert_path)->required();

  auto* report = app.add_subcommand("report", "batch run + aggregate report");
  report->add_option("--spec", spec_str, "batch spec file")->required();
  report->add_option("-o,--output", out_path, "report file")->required();

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    int code = app.exit(e, msg, msg);
    (code == 0 ? out : err) << msg.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      GenSpec gs = parse_gen_spec(spec_str);
      KGraph h = build_from_spec(gs, seed);
      std::ostringstream text;
      text << "# spec: " << spec_str;
      if (gs.name == "random" && !gs.options.count("seed"))
        text << ",seed=" << seed;
      text << '\n' << h.serialize();
      write_file(out_path, text.str());
      std::uint64_t delta =
          h.vertex_count() >= h.uniformity() && h.uniformity() >= 2
              ? h.min_d_degree(h.uniformity() - 1)
              : 0;
      out << "gen ok n=" << h.vertex_count() << " edges=" << h.edge_count()
          << " delta" << h.uniformity() - 1 << "=" << delta << " seed=" << seed
          << '\n';
      return kExitOk;
    }
    if (codegree->parsed()) {
      KGraph h = parse_graph_file(in_path);
      int dd = d > 0 ? d : h.uniformity() - 1;
      out << "codegree d=" << dd << " delta=" << h.min_d_degree(dd) << '\n';
      return kExitOk;
    }
    if (copies->parsed()) {
      KGraph h = parse_graph_file(in_path);
      auto list = enumerate_copies(h, {h.uniformity(), ell});
      if (!out_path.empty()) {
        std::ostringstream text;
        for (const YCopy& c : list) text << c.serialize() << '\n';
        write_file(out_path, text.str());
      }
      out << "copies ok count=" << list.size() << '\n';
      return kExitOk;
    }
    if (solve->parsed()) {
      KGraph h = parse_graph_file(in_path);
      YPattern p{h.uniformity(), ell};
      FactorResult res = find_factor(h, p, budget);
      if (res.outcome == FactorOutcome::found) {
        auto check = verify_tiling(h, p, *res.tiling, true);
        if (!check.ok) {
          err << "solve internal-error reason=" << fault_name(check.fault) << '\n';
          return kExitUsage;
        }
        if (!cert_path.empty())
          write_file(cert_path, write_certificate(h, p, *res.tiling));
        out << "solve found tiles=" << res.tiling->size()
            << " nodes=" << res.stats.nodes << '\n';
        return kExitOk;
      }
      if (res.outcome == FactorOutcome::none_exhaustive) {
        out << "solve none exhaustive"
            << (res.note.empty() ? "" : " note=" + res.note)
            << " nodes=" << res.stats.nodes << '\n';
        return kExitNegative;
      }
      out << "solve budget exceeded nodes=" << res.stats.nodes << '\n';
      return kExitNegative;
    }
    if (maxt->parsed()) {
      KGraph h = parse_graph_file(in_path);
      YPattern p{h.uniformity(), ell};
      Tiling t = find_max_tiling(h, p, budget);
      if (!out_path.empty()) {
        std::ostringstream text;
        for (const YCopy& c : t.copies) text << c.serialize() << '\n';
        write_file(out_path, text.str());
      }
      out << "max-tiling ok tiles=" << t.size()
          << " covered=" << popcount(t.covered) << '\n';
      return kExitOk;
    }
    if (pipe->parsed()) {
      KGraph h = parse_graph_file(in_path);
      YPattern p{h.uniformity(), ell};
      WitnessMode mode =
          witness_str == "exhaustive" ? WitnessMode::exhaustive
          : witness_str == "local"    ? WitnessMode::local_search
                                      : (h.vertex_count() <= 20
                                             ? WitnessMode::exhaustive
                                             : WitnessMode::local_search);
      PipelineReport rep =
          run_pipeline(h, p, xi, mode, budget,
                       cert_path.empty() ? std::string{"-"} : cert_path);
      if (!out_path.empty()) write_file(out_path, rep.text);
      if (rep.success) {
        if (!cert_path.empty())
          write_file(cert_path, write_certificate(h, p, rep.factor));
        out << "pipeline factor tiles=" << rep.factor.size() << '\n';
        return kExitOk;
      }
      out << "pipeline fail stage=" << rep.failed_stage
          << " reason=" << rep.reason << '\n';
      return kExitNegative;
    }
    if (verify->parsed()) {
      KGraph h = parse_graph_file(in_path);
      Certificate cert = parse_certificate(read_file(cert_path));
      if (cert.k != h.uniformity() || cert.n != h.vertex_count()) {
        out << "verify fail reason=header-mismatch\n";
        return kExitNegative;
      }
      YPattern p{cert.k, cert.ell};
      auto check = verify_tiling(h, p, cert.tiling, true);
      if (check.ok) {
        out << "verify ok tiles=" << cert.tiling.size() << '\n';
        return kExitOk;
      }
      out << "verify fail reason=" << fault_name(check.fault) << '\n';
      return kExitNegative;
    }
    if (report->parsed()) {
      std::ifstream spec(spec_str);
      if (!spec) throw std::runtime_error("cannot open " + spec_str);
      std::ofstream rep(out_path);
      if (!rep) throw std::runtime_error("cannot write " + out_path);
      return batch_report(spec, rep, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tilelab::cli
