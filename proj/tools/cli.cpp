#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spinet/collapse.hpp"
#include "spinet/conditions.hpp"
#include "spinet/dense.hpp"
#include "spinet/errors.hpp"
#include "spinet/fermion.hpp"
#include "spinet/network.hpp"
#include "spinet/text.hpp"
#include "spinet/trace.hpp"
#include "spinet/walk.hpp"

namespace spinet::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw contract_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpinNetwork load_network(const std::string& spec) {
  if (fs::exists(spec)) return parse_network(read_file(spec));
  try {
    return library_network(spec);
  } catch (const error&) {
    throw contract_error("network '" + spec +
                         "': no such file, and not a bundled network name");
  }
}

double parse_double_strict(const std::string& token, const char* what) {
  double v = 0;
  const char* b = token.data();
  const char* e = b + token.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || p != e || !std::isfinite(v))
    throw contract_error(std::string(what) + ": bad number '" + token + "'");
  return v;
}

int parse_int_strict(const std::string& token, const char* what) {
  int v = 0;
  const char* b = token.data();
  const char* e = b + token.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || p != e)
    throw contract_error(std::string(what) + ": bad integer '" + token + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<double> parse_chain(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ','))
    out.push_back(parse_double_strict(tok, "--chain"));
  if (out.empty()) throw contract_error("--chain: no couplings given");
  return out;
}

std::vector<std::vector<int>> parse_partition(const std::string& s) {
  std::vector<std::vector<int>> classes;
  for (const std::string& cls : split(s, '|')) {
    std::vector<int> nodes;
    for (const std::string& tok : split(cls, ','))
      nodes.push_back(parse_int_strict(tok, "--partition"));
    if (nodes.empty()) throw contract_error("--partition: empty class");
    classes.push_back(std::move(nodes));
  }
  if (classes.empty()) throw contract_error("--partition: no classes given");
  return classes;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw contract_error("cannot write '" + path + "'");
  f << text;
}

void write_trace_file(const std::string& path, const FidelityTrace& trace,
                      double alpha_ref) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw contract_error("cannot write '" + path + "'");
  write_csv(f, trace, alpha_ref);
}

struct SimulateArgs {
  std::string network;
  std::string kind = "xy";
  std::string backend = "auto";
  double tmax = 0.0;
  int samples = 4001;
  std::string out_file;
};

int run_simulate(const SimulateArgs& a, std::ostream& out) {
  SpinNetwork net = load_network(a.network);
  HamiltonianKind kind = parse_kind(a.kind);
  std::string backend = a.backend;
  if (backend == "auto") backend = kind == HamiltonianKind::MXY ? "fermion" : "dense";
  if (backend != "dense" && backend != "fermion")
    throw contract_error("--backend must be dense, fermion or auto");
  if (backend == "fermion" && kind != HamiltonianKind::MXY)
    throw contract_error(
        "the fermion backend evaluates the mxy kind only; use --backend dense");
  if (a.samples < 3) throw contract_error("--samples must be at least 3");
  double t_max = a.tmax > 0 ? a.tmax : 4.0 * M_PI / net.alpha_ref();

  FidelityTrace trace = backend == "fermion"
                            ? fermion_trace(net, t_max, a.samples)
                            : fidelity_trace(net, kind, t_max, a.samples);
  if (!a.out_file.empty()) write_trace_file(a.out_file, trace, net.alpha_ref());

  out << "alpha_ref " << format_double(net.alpha_ref()) << "\n";
  out << "peak_time " << format_double(trace.peak_time) << "\n";
  out << "peak_fidelity " << format_double(trace.peak_value) << "\n";
  return 0;
}

struct CheckUnitaryArgs {
  std::string network;
  std::string kind = "xy";
  double time = 0.0;
};

int run_check_unitary(const CheckUnitaryArgs& a, std::ostream& out) {
  SpinNetwork net = load_network(a.network);
  HamiltonianKind kind = parse_kind(a.kind);
  DenseOperator u = propagator(dense(hamiltonian(net, kind)), a.time);
  ConditionReport rep = check_perfect_transport(u, net.source, net.target);
  out << render_report(rep);
  return rep.verdict ? 0 : 2;
}

struct CheckHamiltonianArgs {
  std::string network;
  std::string kind = "xy";
};

int run_check_hamiltonian(const CheckHamiltonianArgs& a, std::ostream& out) {
  SpinNetwork net = load_network(a.network);
  OperatorExpr h = hamiltonian(net, parse_kind(a.kind));
  out << render_report(hamiltonian_support_check(h, net.source, net.target));
  return 0;
}

struct WalkArgs {
  std::string network;
  std::string kind = "xy";
  int orders = 4;
  bool skeleton_only = false;
};

int run_walk(const WalkArgs& a, std::ostream& out) {
  SpinNetwork net = load_network(a.network);
  if (a.orders < 0) throw contract_error("--orders must be non-negative");
  OperatorExpr h = hamiltonian(net, parse_kind(a.kind));
  std::vector<OperatorExpr> ops = walk_operators(h, a.orders, net.source);
  for (std::size_t n = 0; n < ops.size(); ++n) {
    if (ops[n].empty()) continue;
    out << "order " << n << "\n";
    if (!a.skeleton_only) out << render(ops[n]) << "\n";
    out << render_skeleton(skeleton(ops[n])) << "\n";
  }
  return 0;
}

struct CollapseArgs {
  std::string network;
  std::string partition;
};

int run_collapse(const CollapseArgs& a, std::ostream& out) {
  SpinNetwork net = load_network(a.network);
  ClassChain chain = a.partition.empty()
                         ? collapse_network(net)
                         : collapse_network(net, parse_partition(a.partition));
  out << render_chain(chain);
  return 0;
}

struct SynthArgs {
  std::string chain;
  std::string plan_file;
  std::string out_file;
};

int run_synth(const SynthArgs& a, std::ostream& out) {
  std::vector<double> alphas = parse_chain(a.chain);
  ExpansionPlan plan = parse_plan(read_file(a.plan_file));
  EngineeredNetwork eng = expand_chain(alphas, plan);
  out << render_chain(eng.chain);
  std::string text = eng.provenance + serialize_network(eng.net);
  if (a.out_file.empty()) {
    out << text;
  } else {
    write_text_file(a.out_file, text);
    out << "wrote " << a.out_file << "\n";
  }
  return 0;
}

struct DemoArgs {
  std::string out_dir = ".";
};

int run_demo(const DemoArgs& a, std::ostream& out) {
  fs::create_directories(a.out_dir);
  const int samples = 2001;
  auto path = [&](const char* name) { return (fs::path(a.out_dir) / name).string(); };
  auto emit = [&](const char* name, const FidelityTrace& trace, double alpha_ref) {
    write_trace_file(path(name), trace, alpha_ref);
    out << "wrote " << path(name) << "\n";
  };

  SpinNetwork fig3 = fig3_network();
  double t3 = 4.0 * M_PI / fig3.alpha_ref();
  emit("fig3_xy.csv", fidelity_trace(fig3, HamiltonianKind::XY, t3, samples),
       fig3.alpha_ref());
  emit("fig3_mxy.csv", fermion_trace(fig3, t3, samples), fig3.alpha_ref());

  SpinNetwork fig7b = fig7b_network(0.8, 0.5);
  double t7 = 4.0 * M_PI / fig7b.alpha_ref();
  emit("fig7b_xy.csv", fidelity_trace(fig7b, HamiltonianKind::XY, t7, samples),
       fig7b.alpha_ref());
  emit("fig7b_mxy.csv", fermion_trace(fig7b, t7, samples), fig7b.alpha_ref());

  write_text_file(path("table1.txt"), render_report(table1_check()));
  out << "wrote " << path("table1.txt") << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mixed-state polarization transport on spin networks"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate",
                                   "sample a fidelity trace and report its peak");
  c_sim->add_option("--network", sim.network, "network file or bundled name")
      ->required();
  c_sim->add_option("--kind", sim.kind, "xy | dq | mxy (default xy)");
  c_sim->add_option("--backend", sim.backend, "dense | fermion | auto (default auto)");
  c_sim->add_option("--tmax", sim.tmax, "time horizon (default 4*pi/alpha_ref)");
  c_sim->add_option("--samples", sim.samples, "grid samples (default 4001)");
  c_sim->add_option("--out", sim.out_file, "CSV output path");

  CheckUnitaryArgs cu;
  auto* c_cu = app.add_subcommand("check-unitary",
                                  "test the propagator at one time for perfect transport");
  c_cu->add_option("--network", cu.network, "network file or bundled name")->required();
  c_cu->add_option("--kind", cu.kind, "xy | dq | mxy (default xy)");
  c_cu->add_option("--time", cu.time, "evolution time")->required();

  CheckHamiltonianArgs ch;
  auto* c_ch = app.add_subcommand("check-hamiltonian",
                                  "classify the Hamiltonian's end-site support");
  c_ch->add_option("--network", ch.network, "network file or bundled name")->required();
  c_ch->add_option("--kind", ch.kind, "xy | dq | mxy (default xy)");

  WalkArgs wk;
  auto* c_wk = app.add_subcommand("walk", "print the commutator hierarchy");
  c_wk->add_option("--network", wk.network, "network file or bundled name")->required();
  c_wk->add_option("--kind", wk.kind, "xy | dq | mxy (default xy)");
  c_wk->add_option("--orders", wk.orders, "highest order (default 4)");
  c_wk->add_flag("--skeleton-only", wk.skeleton_only, "print edge skeletons only");

  CollapseArgs co;
  auto* c_co = app.add_subcommand("collapse", "collapse a partitioned network to its chain");
  c_co->add_option("--network", co.network, "network file or bundled name")->required();
  c_co->add_option("--partition", co.partition,
                   "classes as node lists, e.g. 1|2,4|3,5|6 (default: bundled classes)");

  SynthArgs sy;
  auto* c_sy = app.add_subcommand("synth", "expand a chain spec into a weighted network");
  c_sy->add_option("--chain", sy.chain, "comma-separated chain couplings")->required();
  c_sy->add_option("--plan", sy.plan_file, "expansion plan JSON file")->required();
  c_sy->add_option("--out", sy.out_file, "network file to write (default: stdout)");

  DemoArgs de;
  auto* c_de = app.add_subcommand("demo", "regenerate the bundled figure data");
  c_de->add_option("--out", de.out_dir, "output directory (default .)");

  std::vector<const char*> argv;
  argv.push_back("spinet");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(c_sim)) return run_simulate(sim, out);
    if (app.got_subcommand(c_cu)) return run_check_unitary(cu, out);
    if (app.got_subcommand(c_ch)) return run_check_hamiltonian(ch, out);
    if (app.got_subcommand(c_wk)) return run_walk(wk, out);
    if (app.got_subcommand(c_co)) return run_collapse(co, out);
    if (app.got_subcommand(c_sy)) return run_synth(sy, out);
    if (app.got_subcommand(c_de)) return run_demo(de, out);
  } catch (const capacity_error& e) {
    err << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const check_error& e) {
    err << "check failed: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace spinet::cli
