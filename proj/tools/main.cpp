// Command-line front end: graph generation, simulation runs with trace and
// summary export, and verification reports.
//
// Exit codes: 0 success, 1 assertion/termination failure, 2 usage or input
// error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eccsim/errors.hpp"
#include "eccsim/graph.hpp"
#include "eccsim/oracle.hpp"
#include "eccsim/simulator.hpp"
#include "eccsim/verify.hpp"

using namespace eccsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

int64_t to_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidParameterError("bad " + what + ": '" + s + "'");
  }
}

double to_real(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidParameterError("bad " + what + ": '" + s + "'");
  }
}

Graph graph_from_params(const std::string& kind, const std::vector<std::string>& params) {
  if (kind == "path") {
    if (params.size() != 1) throw InvalidParameterError("path takes one parameter: n");
    return path_graph(static_cast<int32_t>(to_int(params[0], "n")));
  }
  if (kind == "t") {
    if (params.size() != 3) throw InvalidParameterError("t takes three parameters: left right stem");
    return t_graph(static_cast<int32_t>(to_int(params[0], "left")),
                   static_cast<int32_t>(to_int(params[1], "right")),
                   static_cast<int32_t>(to_int(params[2], "stem")));
  }
  if (kind == "random") {
    if (params.size() != 3)
      throw InvalidParameterError("random takes three parameters: n edge_prob seed");
    return random_connected_graph(static_cast<int32_t>(to_int(params[0], "n")),
                                  to_real(params[1], "edge_prob"),
                                  static_cast<uint64_t>(to_int(params[2], "seed")));
  }
  throw InvalidParameterError("unknown generator '" + kind + "' (path | t | random)");
}

// "path:11", "t:5,5,4", "random:30,0.1,7"
Graph graph_from_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw InvalidParameterError("graph spec must look like kind:params, got '" + spec + "'");
  return graph_from_params(spec.substr(0, colon), split(spec.substr(colon + 1), ','));
}

Graph load_graph(const std::string& spec, const std::string& file) {
  if (!spec.empty() && !file.empty())
    throw InvalidParameterError("give either --graph or --graph-file, not both");
  if (!spec.empty()) return graph_from_spec(spec);
  if (!file.empty()) return parse_edge_list_file(file);
  throw InvalidParameterError("a graph source is required (--graph or --graph-file)");
}

// "all:0" or comma-separated node:round pairs, e.g. "0:0,7:3"
WakeSchedule schedule_from_spec(const std::string& spec, const Graph& g) {
  WakeSchedule ws;
  for (const std::string& part : split(spec, ',')) {
    auto colon = part.find(':');
    if (colon == std::string::npos)
      throw InvalidParameterError("wake spec must be node:round pairs or all:0, got '" + part + "'");
    std::string node = part.substr(0, colon);
    int64_t round = to_int(part.substr(colon + 1), "wake round");
    if (node == "all") {
      if (round != 0) throw InvalidParameterError("all:<round> only supports round 0");
      return WakeSchedule::all_at_zero(g);
    }
    ws.wakes[to_int(node, "wake node")] = static_cast<int32_t>(round);
  }
  return ws;
}

std::vector<int64_t> probes_from_spec(const std::string& spec, const Graph& g, bool* all) {
  *all = false;
  std::vector<int64_t> out;
  if (spec.empty()) return out;
  if (spec == "all") {
    *all = true;
    return out;
  }
  for (const std::string& part : split(spec, ',')) out.push_back(to_int(part, "probe node"));
  (void)g;
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidParameterError("cannot write to " + path);
  out << text;
}

std::string oracle_summary_line(const Graph& g, const OracleMetrics& m) {
  std::ostringstream os;
  os << "diameter=" << m.diameter << " radius=" << m.radius << " centers=[";
  for (size_t i = 0; i < m.centers.size(); ++i)
    os << (i ? "," : "") << g.id_of(m.centers[i]);
  os << "] periphery=[";
  for (size_t i = 0; i < m.periphery.size(); ++i)
    os << (i ? "," : "") << g.id_of(m.periphery[i]);
  os << "] nodes=" << g.num_nodes() << " edges=" << g.num_edges();
  return os.str();
}

std::string trace_csv(const Graph& g, const SimulationResult& res) {
  std::string csv = "round,node,e,d,r,s,c,new_bfs,out_tuples\n";
  for (const TraceEntry& t : res.trace) {
    csv += std::to_string(t.round);
    csv += ',';
    csv += std::to_string(g.id_of(t.node));
    csv += ',';
    csv += std::to_string(t.e);
    csv += ',';
    csv += std::to_string(t.d);
    csv += ',';
    csv += radius_to_string(t.r);
    csv += ',';
    csv += status_to_string(t.s);
    csv += ',';
    csv += std::to_string(t.c);
    csv += ',';
    csv += std::to_string(t.new_bfs);
    csv += ',';
    csv += std::to_string(t.out_tuples);
    csv += '\n';
  }
  return csv;
}

Json radius_json(int32_t r) {
  if (r == kInfRadius) return Json("inf");
  return Json(r);
}

Json summary_json(const Graph& g, const OracleMetrics& oracle, const SimulationResult& res) {
  Json j = Json::object();
  j["graph"] = {{"nodes", g.num_nodes()},
                {"edges", g.num_edges()},
                {"diameter", oracle.diameter},
                {"radius", oracle.radius}};
  j["variant"] = variant_to_string(res.variant);
  j["rounds_executed"] = res.rounds_executed;
  j["last_tuple_round"] = res.last_tuple_round;

  Json wakes = Json::object();
  Json detection = Json::object();
  Json finals = Json::object();
  Json per_node_acc = Json::object();
  for (int32_t i = 0; i < g.num_nodes(); ++i) {
    const std::string key = std::to_string(g.id_of(i));
    wakes[key] = res.wake_rounds[i];
    detection[key] = {{"ecc", res.detection[i].ecc},
                      {"diam", res.detection[i].diam},
                      {"rad", res.detection[i].rad},
                      {"termination", res.detection[i].termination}};
    finals[key] = {{"e", res.final_values[i].e},
                   {"d", res.final_values[i].d},
                   {"r", radius_json(res.final_values[i].r)}};
    per_node_acc[key] = {{"bfs", res.accounting.per_node[i].bfs_broadcasts},
                         {"diam", res.accounting.per_node[i].diam_broadcasts},
                         {"rad", res.accounting.per_node[i].rad_broadcasts}};
  }
  j["wake_rounds"] = wakes;
  j["detection"] = detection;
  j["final"] = finals;
  j["accounting"] = {{"per_node", per_node_acc},
                     {"link_tuples_total", res.accounting.link_tuples_total},
                     {"link_tuples_bfs", res.accounting.link_tuples_bfs},
                     {"link_tuples_diam", res.accounting.link_tuples_diam},
                     {"link_tuples_rad", res.accounting.link_tuples_rad},
                     {"estimated_bits", res.accounting.estimated_bits}};

  BoundReport bounds = check_bounds(res, oracle);
  Json bound_rows = Json::object();
  for (const BoundRow& row : bounds.rows) {
    const std::string key = std::to_string(g.id_of(row.node));
    bound_rows[key][row.claim] = {{"bound", row.bound},
                                  {"observed", row.observed},
                                  {"slack", row.slack},
                                  {"pass", row.pass}};
  }
  j["bounds"] = bound_rows;
  j["bounds_pass"] = bounds.pass;
  return j;
}

int cmd_generate(const std::string& kind, const std::vector<std::string>& params,
                 const std::string& out_path) {
  Graph g = graph_from_params(kind, params);
  OracleMetrics oracle = oracle_metrics(g);
  const std::string summary = oracle_summary_line(g, oracle);
  if (out_path.empty() || out_path == "-") {
    std::cout << to_edge_list(g);
    std::cerr << summary << "\n";
  } else {
    write_text(out_path, to_edge_list(g));
    std::cout << summary << "\n";
  }
  return kExitOk;
}

struct RunArgs {
  std::string graph_spec;
  std::string graph_file;
  std::string wake_spec = "0:0";
  std::string probe_spec;
  std::string variant = "full";
  std::string trace_path;
  std::string summary_path = "-";
  int32_t max_rounds = 1 << 20;
  bool serial = false;
};

RunOptions options_from_args(const RunArgs& args, const Graph& g) {
  RunOptions opts;
  if (args.variant == "full") opts.variant = Variant::FullSet;
  else if (args.variant == "sliding") opts.variant = Variant::SlidingWindow;
  else throw InvalidParameterError("variant must be full or sliding");
  opts.exec = args.serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
  opts.max_rounds = args.max_rounds;
  opts.probes = probes_from_spec(args.probe_spec, g, &opts.probe_all);
  return opts;
}

int cmd_run(const RunArgs& args) {
  Graph g = load_graph(args.graph_spec, args.graph_file);
  WakeSchedule ws = schedule_from_spec(args.wake_spec, g);
  RunOptions opts = options_from_args(args, g);
  SimulationResult res = run(g, ws, opts);
  OracleMetrics oracle = oracle_metrics(g);

  if (!args.trace_path.empty()) write_text(args.trace_path, trace_csv(g, res));
  write_text(args.summary_path, summary_json(g, oracle, res).dump(2) + "\n");
  return kExitOk;
}

int cmd_verify_single(const RunArgs& args, const std::string& report_path) {
  Graph g = load_graph(args.graph_spec, args.graph_file);
  WakeSchedule ws = schedule_from_spec(args.wake_spec, g);
  Variant variant = args.variant == "sliding" ? Variant::SlidingWindow : Variant::FullSet;
  auto reports = check_all(g, ws, variant);
  Json j = report_to_json(reports);
  write_text(report_path, j.dump(2) + "\n");
  return j["pass"].get<bool>() ? kExitOk : kExitAssertion;
}

int cmd_verify_random(int32_t runs, int32_t max_n, uint64_t seed, const std::string& report_path) {
  SuiteConfig cfg;
  cfg.runs = runs;
  cfg.max_n = max_n;
  cfg.seed = seed;
  SuiteOutcome outcome = run_random_suite(cfg);
  write_text(report_path, suite_to_json(outcome).dump(2) + "\n");
  return outcome.pass ? kExitOk : kExitAssertion;
}

int cmd_verify_self_test(const std::string& report_path) {
  CheckReport rep = run_self_test();
  Json j = Json::object();
  j["self_test"] = {{"detectors_ok", rep.pass}, {"detectors", rep.details["detectors"]}};
  write_text(report_path, j.dump(2) + "\n");
  // The corrupted traces fail their checks by construction, so this mode
  // always exits nonzero; 2 signals a detector that stayed silent.
  return rep.pass ? kExitAssertion : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synchronous-network simulator for distributed eccentricity, diameter and radius computation"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a graph and print its edge list");
  std::string gen_kind;
  std::vector<std::string> gen_params;
  std::string gen_out;
  gen->add_option("kind", gen_kind, "path | t | random")->required();
  gen->add_option("params", gen_params, "generator parameters");
  gen->add_option("-o,--output", gen_out, "edge-list output file (default stdout)");

  // run
  auto* runc = app.add_subcommand("run", "simulate one protocol run");
  RunArgs run_args;
  runc->add_option("--graph", run_args.graph_spec, "generator spec, e.g. path:11 or random:30,0.1,7");
  runc->add_option("--graph-file", run_args.graph_file, "edge-list file");
  runc->add_option("--wake", run_args.wake_spec, "wake schedule: node:round pairs or all:0")
      ->default_val("0:0");
  runc->add_option("--probe", run_args.probe_spec, "nodes to trace, e.g. 0,5,10 or all");
  runc->add_option("--variant", run_args.variant, "full | sliding")->default_val("full");
  runc->add_option("--trace", run_args.trace_path, "trace CSV output file (- for stdout)");
  runc->add_option("--summary", run_args.summary_path, "summary JSON output file")
      ->default_val("-");
  runc->add_option("--max-rounds", run_args.max_rounds, "round budget before a runaway error");
  runc->add_flag("--serial", run_args.serial, "use the serial reference engine");

  // verify
  auto* ver = app.add_subcommand("verify", "check runs against the oracle and the round bounds");
  RunArgs ver_args;
  std::string ver_report = "-";
  int32_t ver_random = 0;
  int32_t ver_max_n = 40;
  int64_t ver_seed = 1;
  bool ver_self_test = false;
  ver->add_option("--graph", ver_args.graph_spec, "generator spec");
  ver->add_option("--graph-file", ver_args.graph_file, "edge-list file");
  ver->add_option("--wake", ver_args.wake_spec, "wake schedule")->default_val("0:0");
  ver->add_option("--variant", ver_args.variant, "full | sliding")->default_val("full");
  ver->add_option("--random", ver_random, "run a random property suite of this many graphs");
  ver->add_option("--max-n", ver_max_n, "largest random graph size")->default_val(40);
  ver->add_option("--seed", ver_seed, "random suite seed")->default_val(1);
  ver->add_flag("--self-test", ver_self_test, "corrupt known-good traces; detectors must fire");
  ver->add_option("--report", ver_report, "report JSON output file")->default_val("-");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_kind, gen_params, gen_out);
    if (runc->parsed()) return cmd_run(run_args);
    if (ver->parsed()) {
      if (ver_self_test) return cmd_verify_self_test(ver_report);
      if (ver_random > 0)
        return cmd_verify_random(ver_random, ver_max_n, static_cast<uint64_t>(ver_seed),
                                 ver_report);
      return cmd_verify_single(ver_args, ver_report);
    }
  } catch (const InvalidParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RunawayError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitUsage;
}
