#include "spinet/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "spinet/collapse.hpp"
#include "spinet/errors.hpp"
#include "spinet/text.hpp"

namespace spinet {

double SpinNetwork::alpha_ref() const {
  double m = 0;
  for (const Edge& e : edges) m = std::max(m, std::abs(e.alpha));
  return m > 0 ? m : 1.0;
}

void SpinNetwork::normalize() {
  for (Edge& e : edges)
    if (e.i > e.j) std::swap(e.i, e.j);
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
}

void SpinNetwork::validate() const {
  if (n < 2) throw contract_error("network needs at least 2 nodes, got " + std::to_string(n));
  auto check_node = [&](int v, const std::string& what) {
    if (v < 1 || v > n)
      throw contract_error(what + " " + std::to_string(v) + " out of range [1," +
                           std::to_string(n) + "]");
  };
  check_node(source, "source node");
  check_node(target, "target node");
  if (source == target) throw contract_error("source and target must be distinct");

  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    check_node(e.i, "edge node");
    check_node(e.j, "edge node");
    if (e.i == e.j) throw contract_error("self-loop at node " + std::to_string(e.i));
    if (e.i > e.j) throw contract_error("edges must be stored with i < j (call normalize)");
    if (!seen.insert({e.i, e.j}).second)
      throw contract_error("duplicate edge " + std::to_string(e.i) + "-" + std::to_string(e.j));
    if (!std::isfinite(e.alpha) || e.alpha == 0.0)
      throw contract_error("edge " + std::to_string(e.i) + "-" + std::to_string(e.j) +
                           " has non-finite or zero coupling");
  }

  if (!partition.empty()) {
    std::set<int> covered;
    for (const NodeClass& c : partition) {
      if (c.nodes.empty()) throw contract_error("empty class '" + c.name + "'");
      for (int v : c.nodes) {
        check_node(v, "class node");
        if (!covered.insert(v).second)
          throw contract_error("node " + std::to_string(v) + " appears in two classes");
      }
    }
    if (static_cast<int>(covered.size()) != n)
      throw contract_error("partition covers " + std::to_string(covered.size()) + " of " +
                           std::to_string(n) + " nodes");
    const auto& first = partition.front().nodes;
    const auto& last = partition.back().nodes;
    if (first.size() != 1 || first[0] != source)
      throw contract_error("first class must be exactly the source node");
    if (last.size() != 1 || last[0] != target)
      throw contract_error("last class must be exactly the target node");
  }
}

namespace {

int parse_int_token(const std::string& tok, int line_no) {
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw parse_error("expected integer, got '" + tok + "'", line_no);
  return v;
}

double parse_double_token(const std::string& tok, int line_no) {
  double v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw parse_error("expected number, got '" + tok + "'", line_no);
  return v;
}

}  // namespace

SpinNetwork parse_network(const std::string& text) {
  SpinNetwork net;
  bool have_nodes = false, have_ends = false;
  std::vector<std::pair<NodeClass, int>> classes;  // class + defining line
  std::vector<int> edge_lines;
  std::vector<std::string> order;
  int order_line = 0;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string& kw = tok[0];
    if (kw == "nodes") {
      if (have_nodes) throw parse_error("duplicate nodes directive", line_no);
      if (tok.size() != 2) throw parse_error("usage: nodes <n>", line_no);
      net.n = parse_int_token(tok[1], line_no);
      if (net.n < 1) throw parse_error("node count must be positive", line_no);
      have_nodes = true;
    } else if (kw == "ends") {
      if (have_ends) throw parse_error("duplicate ends directive", line_no);
      if (tok.size() != 3) throw parse_error("usage: ends <source> <target>", line_no);
      net.source = parse_int_token(tok[1], line_no);
      net.target = parse_int_token(tok[2], line_no);
      have_ends = true;
    } else if (kw == "edge") {
      if (tok.size() != 4) throw parse_error("usage: edge <i> <j> <alpha>", line_no);
      Edge e;
      e.i = parse_int_token(tok[1], line_no);
      e.j = parse_int_token(tok[2], line_no);
      e.alpha = parse_double_token(tok[3], line_no);
      if (e.i == e.j) throw parse_error("self-loop at node " + std::to_string(e.i), line_no);
      if (e.i > e.j) std::swap(e.i, e.j);
      for (const Edge& prev : net.edges)
        if (prev.i == e.i && prev.j == e.j)
          throw parse_error("duplicate edge " + std::to_string(e.i) + "-" + std::to_string(e.j),
                            line_no);
      net.edges.push_back(e);
      edge_lines.push_back(line_no);
    } else if (kw == "class") {
      if (tok.size() < 3) throw parse_error("usage: class <name> <node> ...", line_no);
      NodeClass c;
      c.name = tok[1];
      for (std::size_t k = 2; k < tok.size(); ++k)
        c.nodes.push_back(parse_int_token(tok[k], line_no));
      for (const auto& [prev, ln] : classes)
        if (prev.name == c.name) throw parse_error("duplicate class '" + c.name + "'", line_no);
      classes.push_back({std::move(c), line_no});
    } else if (kw == "order") {
      if (order_line) throw parse_error("duplicate order directive", line_no);
      if (tok.size() < 2) throw parse_error("usage: order <name> ...", line_no);
      order.assign(tok.begin() + 1, tok.end());
      order_line = line_no;
    } else {
      throw parse_error("unknown directive '" + kw + "'", line_no);
    }
  }

  if (!have_nodes) throw parse_error("missing nodes directive");
  if (!have_ends) throw parse_error("missing ends directive");

  for (const auto& [c, ln] : classes)
    for (int v : c.nodes)
      if (v < 1 || v > net.n)
        throw parse_error("dangling class node " + std::to_string(v), ln);
  for (std::size_t k = 0; k < net.edges.size(); ++k) {
    const Edge& e = net.edges[k];
    if (e.i < 1 || e.j > net.n)
      throw parse_error("edge references node " + std::to_string(e.i < 1 ? e.i : e.j) +
                        " beyond nodes " + std::to_string(net.n), edge_lines[k]);
  }

  if (!order.empty()) {
    if (order.size() != classes.size())
      throw parse_error("order lists " + std::to_string(order.size()) + " classes, file defines " +
                        std::to_string(classes.size()), order_line);
    for (const std::string& name : order) {
      auto it = std::find_if(classes.begin(), classes.end(),
                             [&](const auto& p) { return p.first.name == name; });
      if (it == classes.end())
        throw parse_error("order names unknown class '" + name + "'", order_line);
      net.partition.push_back(it->first);
    }
  } else {
    for (auto& [c, ln] : classes) net.partition.push_back(std::move(c));
  }

  net.normalize();
  net.validate();
  return net;
}

std::string serialize_network(const SpinNetwork& net) {
  SpinNetwork canon = net;
  canon.normalize();
  std::string out;
  out += "nodes " + std::to_string(canon.n) + "\n";
  out += "ends " + std::to_string(canon.source) + " " + std::to_string(canon.target) + "\n";
  for (const Edge& e : canon.edges)
    out += "edge " + std::to_string(e.i) + " " + std::to_string(e.j) + " " +
           format_double(e.alpha) + "\n";
  if (canon.has_partition()) {
    for (const NodeClass& c : canon.partition) {
      out += "class " + c.name;
      for (int v : c.nodes) out += " " + std::to_string(v);
      out += "\n";
    }
    out += "order";
    for (const NodeClass& c : canon.partition) out += " " + c.name;
    out += "\n";
  }
  return out;
}

OperatorExpr hamiltonian(const SpinNetwork& net, HamiltonianKind kind) {
  net.validate();
  if (net.n > PauliString::kMaxSites)
    throw capacity_error("symbolic operators support at most " +
                         std::to_string(PauliString::kMaxSites) +
                         " sites; use the single-particle backend for larger networks");
  OperatorExpr h(net.n);
  for (const Edge& e : net.edges) {
    OperatorExpr c = build_coupling(kind, net.n, e.i, e.j);
    c *= e.alpha;
    h += c;
  }
  return h;
}

SpinNetwork relabel(const SpinNetwork& net, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != net.n)
    throw contract_error("permutation size " + std::to_string(perm.size()) +
                         " does not match node count " + std::to_string(net.n));
  std::vector<bool> hit(net.n, false);
  for (int v : perm) {
    if (v < 1 || v > net.n || hit[v - 1])
      throw contract_error("relabeling is not a permutation of 1.." + std::to_string(net.n));
    hit[v - 1] = true;
  }
  SpinNetwork out = net;
  out.source = perm[net.source - 1];
  out.target = perm[net.target - 1];
  for (std::size_t k = 0; k < net.edges.size(); ++k) {
    out.edges[k].i = perm[net.edges[k].i - 1];
    out.edges[k].j = perm[net.edges[k].j - 1];
  }
  for (std::size_t c = 0; c < net.partition.size(); ++c) {
    for (std::size_t k = 0; k < net.partition[c].nodes.size(); ++k)
      out.partition[c].nodes[k] = perm[net.partition[c].nodes[k] - 1];
    std::sort(out.partition[c].nodes.begin(), out.partition[c].nodes.end());
  }
  out.normalize();
  out.validate();
  return out;
}

SpinNetwork pst_chain(int m, double scale) {
  if (m < 2) throw contract_error("chain needs at least 2 nodes, got " + std::to_string(m));
  if (!(scale > 0)) throw contract_error("chain scale must be positive");
  SpinNetwork net;
  net.n = m;
  net.source = 1;
  net.target = m;
  for (int i = 1; i < m; ++i)
    net.edges.push_back({i, i + 1, scale * std::sqrt(double(i) * double(m - i))});
  net.validate();
  return net;
}

namespace {

SpinNetwork uniform_network(int n, int s, int t, std::vector<std::pair<int, int>> pairs,
                            std::vector<NodeClass> classes) {
  SpinNetwork net;
  net.n = n;
  net.source = s;
  net.target = t;
  for (auto [i, j] : pairs) net.edges.push_back({i, j, 1.0});
  net.partition = std::move(classes);
  net.normalize();
  net.validate();
  return net;
}

void check_weight_param(double g, const std::string& name, bool allow_one) {
  double hi_ok = allow_one ? (g <= 1.0) : (g < 1.0);
  if (!(g > 0.0) || !hi_ok)
    throw contract_error(name + " must lie in (0,1" + (allow_one ? "]" : ")") + ", got " +
                         format_double(g));
}

// Class-major node layout from expand_chain relabeled onto the bundled
// figure numbering.
SpinNetwork expanded_figure(const std::vector<double>& alphas, const ExpansionPlan& plan,
                            const std::vector<int>& perm) {
  EngineeredNetwork eng = expand_chain(alphas, plan);
  return relabel(eng.net, perm);
}

}  // namespace

SpinNetwork lambda3_network() {
  double a = 1.0 / std::sqrt(2.0);
  SpinNetwork net;
  net.n = 3;
  net.source = 1;
  net.target = 3;
  net.edges = {{1, 2, a}, {2, 3, a}};
  net.validate();
  return net;
}

SpinNetwork fig3_network() {
  return uniform_network(5, 1, 5,
                         {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 5}, {4, 5}},
                         {{"C0", {1}}, {"C1", {2, 3, 4}}, {"C2", {5}}});
}

SpinNetwork fig5_network() {
  return uniform_network(6, 1, 6,
                         {{1, 2}, {2, 3}, {3, 6}, {1, 4}, {4, 5}, {5, 6}},
                         {{"C0", {1}}, {"C1", {2, 4}}, {"C2", {3, 5}}, {"C3", {6}}});
}

SpinNetwork fig7a_network(double gamma) {
  check_weight_param(gamma, "gamma", /*allow_one=*/true);
  // The single-path limit: the second branch carries no weight, so the
  // network degenerates to the 4-node chain itself.
  if (gamma == 1.0) return pst_chain(4);
  ExpansionPlan plan;
  plan.sizes = {1, 2, 2, 1};
  BondPlan branch;
  branch.type = BondPlan::Type::fanout;
  branch.groups = {{1, {1, 2}, {gamma, std::sqrt(1.0 - gamma * gamma)}}};
  BondPlan mid;
  mid.type = BondPlan::Type::paths;
  BondPlan merge;
  merge.type = BondPlan::Type::complete;
  plan.bonds = {branch, mid, merge};
  // Class-major layout puts the paths at 1-2-4-6 / 1-3-5-6; the bundled
  // numbering threads them as 1-2-3-6 / 1-4-5-6.
  return expanded_figure({std::sqrt(3.0), 2.0, std::sqrt(3.0)}, plan, {1, 2, 4, 3, 5, 6});
}

SpinNetwork fig7b_network(double gamma1, double gamma2) {
  check_weight_param(gamma1, "gamma1", /*allow_one=*/false);
  check_weight_param(gamma2, "gamma2", /*allow_one=*/false);
  ExpansionPlan plan;
  plan.sizes = {1, 2, 3, 1};
  BondPlan first;
  first.type = BondPlan::Type::fanout;
  first.groups = {{1, {1, 2}, {gamma1, std::sqrt(1.0 - gamma1 * gamma1)}}};
  BondPlan second;
  second.type = BondPlan::Type::fanout;
  second.groups = {{1, {1, 2}, {gamma2, std::sqrt(1.0 - gamma2 * gamma2)}},
                   {2, {3}, {1.0}}};
  BondPlan merge;
  merge.type = BondPlan::Type::complete;
  plan.bonds = {first, second, merge};
  return expanded_figure({std::sqrt(3.0), 2.0, std::sqrt(3.0)}, plan,
                         {1, 2, 5, 3, 4, 6, 7});
}

SpinNetwork fig8_network(double w1, double w2, double w3) {
  check_weight_param(w1, "w1", /*allow_one=*/false);
  check_weight_param(w2, "w2", /*allow_one=*/false);
  check_weight_param(w3, "w3", /*allow_one=*/false);
  ExpansionPlan plan;
  plan.sizes = {1, 3, 3, 3, 3, 1};
  BondPlan branch;
  branch.type = BondPlan::Type::fanout;
  branch.groups = {{1, {1, 2, 3}, {w1, w2, w3}}};
  BondPlan paths;
  paths.type = BondPlan::Type::paths;
  BondPlan spread;
  spread.type = BondPlan::Type::complete;
  BondPlan merge;
  merge.type = BondPlan::Type::complete;
  std::vector<double> a;
  for (int i = 1; i <= 5; ++i) a.push_back(std::sqrt(double(i) * double(6 - i)));
  plan.bonds = {branch, paths, spread, paths, merge};
  EngineeredNetwork eng = expand_chain(a, plan);
  return eng.net;
}

SpinNetwork library_network(const std::string& name) {
  std::string base = name;
  std::vector<double> params;
  if (auto colon = name.find(':'); colon != std::string::npos) {
    base = name.substr(0, colon);
    std::string rest = name.substr(colon + 1);
    std::istringstream ps(rest);
    std::string item;
    while (std::getline(ps, item, ','))
      params.push_back(parse_double_token(item, 0));
  }
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (params.size() < lo || params.size() > hi)
      throw contract_error("network '" + base + "' takes " + std::to_string(lo) +
                           (hi > lo ? ".." + std::to_string(hi) : "") + " parameter(s)");
  };
  if (base == "lambda3") { want(0, 0); return lambda3_network(); }
  if (base == "fig3") { want(0, 0); return fig3_network(); }
  if (base == "fig5") { want(0, 0); return fig5_network(); }
  if (base == "fig7a") { want(1, 1); return fig7a_network(params[0]); }
  if (base == "fig7b") { want(2, 2); return fig7b_network(params[0], params[1]); }
  if (base == "fig8") { want(3, 3); return fig8_network(params[0], params[1], params[2]); }
  if (base == "pst") {
    want(1, 2);
    int m = static_cast<int>(params[0]);
    if (m != params[0]) throw contract_error("pst chain length must be an integer");
    return pst_chain(m, params.size() > 1 ? params[1] : 1.0);
  }
  throw contract_error("unknown network '" + base +
                       "' (want lambda3|fig3|fig5|fig7a:g|fig7b:g1,g2|fig8:w1,w2,w3|pst:m[,scale])");
}

}  // namespace spinet
