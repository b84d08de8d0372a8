// Command-line front end: cover, verify, oracle, gen, stats.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "signcover/signcover.hpp"
#include "signcover/trace_json.hpp"

namespace fs = std::filesystem;
using namespace signcover;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kNotFlowAdmissible = 3,
  kNotColorable = 4,
  kBoundViolation = 5,
  kInvalidCover = 6,
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return kParse;
    case ErrorCode::NotFlowAdmissible: return kNotFlowAdmissible;
    case ErrorCode::NotColorable: return kNotColorable;
    case ErrorCode::BoundViolation: return kBoundViolation;
    default: return kUsage;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Writes through a temporary file so readers never see a partial file.
void write_file(const std::string& path, const std::string& text) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << text;
  }
  fs::rename(tmp, target);
}

void diag(const std::string& line) { std::cerr << line << '\n'; }

struct CoverArgs {
  std::string graph;
  bool require_coloring = false;
  std::string trace_path;
  std::string out_path;
};

int run_cover(const CoverArgs& a) {
  const GraphFile file = parse_graph(read_file(a.graph));
  if (a.require_coloring && !file.coloring) {
    throw Error(ErrorCode::InvalidArgument, "--coloring given but the graph file carries no colors");
  }
  PipelineResult result;
  try {
    result = cover_3ec_cubic(file.graph, file.coloring);
  } catch (const BoundViolation& e) {
    if (!a.trace_path.empty()) write_file(a.trace_path, trace_to_json(e.trace()).dump(2) + "\n");
    throw;
  }
  const CoverReport report = validate_cover(file.graph, result.cover);
  const std::string text = write_cover(file.graph, result.cover);
  if (a.out_path.empty()) {
    std::cout << text;
  } else {
    write_file(a.out_path, text);
  }
  if (!a.trace_path.empty()) write_file(a.trace_path, trace_to_json(result.trace).dump(2) + "\n");
  diag("status=ok case=" + result.trace.case_label + " length=" + std::to_string(result.trace.length) +
       " edges=" + std::to_string(file.graph.edge_count()));
  return report.ok() ? kOk : kInvalidCover;
}

int run_verify(const std::string& graph_path, const std::string& cover_path) {
  const GraphFile file = parse_graph(read_file(graph_path));
  const CoverFile cover = parse_cover(read_file(cover_path), file.graph);
  const CoverReport report = validate_cover(file.graph, cover.cover);
  const std::int64_t length = cover_length(cover.cover);
  bool ok = report.ok();
  for (const auto& [index, member] : report.invalid_members) {
    for (const Violation& v : member.violations) {
      diag("status=invalid member=" + std::to_string(index) + " clause=" + to_string(v.clause) + " detail=\"" +
           v.detail + "\"");
    }
  }
  for (EdgeId e : report.uncovered) diag("status=invalid uncovered=" + std::to_string(e));
  if (cover.declared_length && *cover.declared_length != length) {
    diag("status=invalid declared_length=" + std::to_string(*cover.declared_length) +
         " actual_length=" + std::to_string(length));
    ok = false;
  }
  if (cover.declared_edges && *cover.declared_edges != file.graph.edge_count()) {
    diag("status=invalid declared_edges=" + std::to_string(*cover.declared_edges) +
         " actual_edges=" + std::to_string(file.graph.edge_count()));
    ok = false;
  }
  if (ok) diag("status=ok length=" + std::to_string(length));
  std::cout << (ok ? "valid" : "invalid") << ' ' << length << '\n';
  return ok ? kOk : kInvalidCover;
}

int run_oracle(const std::string& graph_path, int max_edges, const std::string& cover_out) {
  const GraphFile file = parse_graph(read_file(graph_path));
  OracleLimits limits;
  limits.max_edges = max_edges;
  const OracleResult r = exact_scc(file.graph, limits);
  std::cout << r.length << '\n';
  diag(std::string("status=ok optimal=") + (r.optimal ? "true" : "false") + " catalog=" +
       std::to_string(r.catalog_size) + " nodes=" + std::to_string(r.nodes));
  if (!cover_out.empty()) write_file(cover_out, write_cover(file.graph, r.cover));
  return kOk;
}

struct GenArgs {
  int n = 0;
  double p = 0;
  std::uint64_t seed = 0;
  bool flow_admissible = false;
  bool colorable = false;
  int count = 1;
  std::string out_dir;
};

int run_gen(const GenArgs& a) {
  for (int i = 0; i < a.count; ++i) {
    GeneratorOptions opt;
    opt.n = a.n;
    opt.negative_probability = a.p;
    opt.seed = a.seed + static_cast<std::uint64_t>(i);
    opt.require_flow_admissible = a.flow_admissible;
    opt.require_colorable = a.colorable;
    const GeneratedInstance inst = generate_instance(opt);
    const std::string text = write_graph(inst.graph, inst.coloring);
    if (a.out_dir.empty()) {
      std::cout << "# n=" << a.n << " p=" << a.p << " seed=" << opt.seed << '\n' << text;
    } else {
      fs::create_directories(a.out_dir);
      std::ostringstream name;
      name << "n" << a.n << "_p" << a.p << "_s" << opt.seed << ".sg";
      write_file((fs::path(a.out_dir) / name.str()).string(), text);
    }
  }
  return kOk;
}

std::string csv_field(const std::string& s) { return s.find(',') == std::string::npos ? s : '"' + s + '"'; }

std::string decimal(std::int64_t num, std::int64_t den) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << static_cast<double>(num) / static_cast<double>(den);
  return out.str();
}

int run_stats(const std::string& dir, const std::string& csv_path, int oracle_max_edges) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".sg") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::ostringstream csv;
  csv << "file,n,m,case,length,bound,oracle,ratio,ratio_decimal,oracle_ratio,oracle_ratio_decimal,status\n";
  int failures = 0;
  for (const fs::path& path : files) {
    const GraphFile file = parse_graph(read_file(path.string()));
    const SignedMultigraph& g = file.graph;
    const std::int64_t m = g.edge_count();
    csv << csv_field(path.filename().string()) << ',' << g.vertex_count() << ',' << m << ',';
    try {
      const PipelineResult r = cover_3ec_cubic(g, file.coloring);
      const std::int64_t len = r.trace.length;
      std::string oracle_len;
      std::string oracle_ratio;
      std::string oracle_decimal;
      if (m <= oracle_max_edges) {
        OracleLimits limits;
        limits.max_edges = oracle_max_edges;
        const OracleResult o = exact_scc(g, limits);
        if (o.optimal) {
          oracle_len = std::to_string(o.length);
          oracle_ratio = Fraction::of(len, o.length).str();
          oracle_decimal = decimal(len, o.length);
        }
      }
      csv << r.trace.case_label << ',' << len << ',' << Fraction::of(20 * m, 9).str() << ',' << oracle_len << ','
          << Fraction::of(len, m).str() << ',' << decimal(len, m) << ',' << oracle_ratio << ',' << oracle_decimal
          << ",ok\n";
    } catch (const Error& e) {
      ++failures;
      csv << ",,," << ",,,,," << reason(e.code()) << '\n';
      diag("status=error file=" + path.filename().string() + " reason=" + reason(e.code()) + " detail=\"" + e.what() +
           "\"");
    }
  }
  write_file(csv_path, csv.str());
  diag("status=ok instances=" + std::to_string(files.size()) + " failures=" + std::to_string(failures));
  return failures == 0 ? kOk : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sign-circuit covers of signed cubic graphs"};
  app.require_subcommand(1);

  CoverArgs cover_args;
  auto* cover = app.add_subcommand("cover", "Build a verified cover of a 3-edge-colorable cubic graph");
  cover->add_option("graph", cover_args.graph, "Graph file")->required()->check(CLI::ExistingFile);
  cover->add_flag("--coloring", cover_args.require_coloring,
                  "Fail unless the graph file carries a coloring (a stored coloring is always used)");
  cover->add_option("--trace", cover_args.trace_path, "Write the build trace as JSON");
  cover->add_option("-o,--output", cover_args.out_path, "Write the cover file here instead of stdout");

  std::string verify_graph, verify_cover;
  auto* verify = app.add_subcommand("verify", "Check a cover file against a graph");
  verify->add_option("graph", verify_graph, "Graph file")->required()->check(CLI::ExistingFile);
  verify->add_option("cover", verify_cover, "Cover file")->required()->check(CLI::ExistingFile);

  std::string oracle_graph, oracle_cover;
  int max_edges = 24;
  auto* oracle = app.add_subcommand("oracle", "Exact shortest sign-circuit cover of a small graph");
  oracle->add_option("graph", oracle_graph, "Graph file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--max-edges", max_edges, "Refuse graphs with more edges")->capture_default_str();
  oracle->add_option("--cover", oracle_cover, "Write an optimal cover file here");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate random cubic signed graphs");
  gen->add_option("--n", gen_args.n, "Vertex count (even, >= 4)")->required();
  gen->add_option("--p", gen_args.p, "Probability that an edge is negative")->required();
  gen->add_option("--seed", gen_args.seed, "Seed of the first instance")->required();
  gen->add_flag("--flow-admissible", gen_args.flow_admissible, "Keep only flow-admissible instances");
  gen->add_flag("--colorable", gen_args.colorable, "Keep only 3-edge-colorable instances (coloring written)");
  gen->add_option("--count", gen_args.count, "Number of instances (seeds seed, seed+1, ...)")->capture_default_str();
  gen->add_option("--out-dir", gen_args.out_dir, "Write one .sg file per instance here");

  std::string stats_dir, stats_csv;
  int stats_oracle_edges = 20;
  auto* stats = app.add_subcommand("stats", "Run the pipeline (and the oracle) over a directory of graphs");
  stats->add_option("--dir", stats_dir, "Directory of .sg files")->required()->check(CLI::ExistingDirectory);
  stats->add_option("--csv", stats_csv, "CSV output path")->required();
  stats->add_option("--oracle-max-edges", stats_oracle_edges, "Run the oracle up to this many edges")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*cover) return run_cover(cover_args);
    if (*verify) return run_verify(verify_graph, verify_cover);
    if (*oracle) return run_oracle(oracle_graph, max_edges, oracle_cover);
    if (*gen) return run_gen(gen_args);
    if (*stats) return run_stats(stats_dir, stats_csv, stats_oracle_edges);
  } catch (const Error& e) {
    diag(std::string("status=error reason=") + reason(e.code()) + " detail=\"" + e.what() + "\"");
    return exit_code(e.code());
  } catch (const std::exception& e) {
    diag(std::string("status=error reason=internal detail=\"") + e.what() + "\"");
    return kUsage;
  }
  return kUsage;
}
