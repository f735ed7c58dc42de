#include "spinet/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <json.hpp>

#include "spinet/dense.hpp"
#include "spinet/errors.hpp"
#include "spinet/fermion.hpp"
#include "spinet/text.hpp"

namespace spinet {

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

double l2_norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::string render_chain(const ClassChain& chain) {
  std::string out = "classes ";
  for (std::size_t i = 0; i < chain.classes.size(); ++i) {
    if (i) out += '|';
    out += join_ints(chain.classes[i]);
  }
  out += "\nweights ";
  for (std::size_t i = 0; i < chain.weights.size(); ++i) {
    if (i) out += '|';
    out += join_doubles(chain.weights[i]);
  }
  out += "\nalphas " + join_doubles(chain.alphas) + "\n";
  return out;
}

OperatorExpr collapsed_op(int n_sites, const std::vector<int>& I,
                          const std::vector<int>& J, const Eigen::MatrixXd& gamma,
                          int sign) {
  if (sign != 1 && sign != -1) throw contract_error("sign must be +1 or -1");
  if (I.empty() || J.empty()) throw contract_error("node classes must be non-empty");
  if (gamma.rows() != static_cast<Eigen::Index>(I.size()) ||
      gamma.cols() != static_cast<Eigen::Index>(J.size()))
    throw contract_error("coupling block shape does not match the classes");
  double norm = gamma.norm();
  if (!std::isfinite(norm) || norm == 0)
    throw contract_error("coupling block must be finite and nonzero");

  OperatorExpr op(n_sites);
  for (Eigen::Index r = 0; r < gamma.rows(); ++r)
    for (Eigen::Index c = 0; c < gamma.cols(); ++c) {
      double g = gamma(r, c);
      if (g == 0) continue;
      int a = I[static_cast<std::size_t>(r)], b = J[static_cast<std::size_t>(c)];
      if (a == b) throw contract_error("coupling block links node " +
                                       std::to_string(a) + " to itself");
      // T+ is symmetric in its legs, T- flips sign under leg exchange.
      double orient = (sign < 0 && a > b) ? -1.0 : 1.0;
      OperatorExpr t = flip_flop_mod(n_sites, std::min(a, b), std::max(a, b), sign);
      t *= g * orient / norm;
      op += t;
    }
  return op;
}

ClassChain collapse_network(const SpinNetwork& net) {
  if (!net.has_partition())
    throw contract_error("network carries no class partition to collapse");
  std::vector<std::vector<int>> classes;
  classes.reserve(net.partition.size());
  for (const auto& cls : net.partition) classes.push_back(cls.nodes);
  return collapse_network(net, classes);
}

ClassChain collapse_network(const SpinNetwork& net,
                            const std::vector<std::vector<int>>& classes) {
  net.validate();
  if (classes.size() < 2) throw contract_error("need at least two classes");

  std::vector<int> class_of(static_cast<std::size_t>(net.n) + 1, -1);
  std::vector<int> offset_of(static_cast<std::size_t>(net.n) + 1, -1);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) throw contract_error("classes must be non-empty");
    for (std::size_t k = 0; k < classes[c].size(); ++k) {
      int node = classes[c][k];
      if (node < 1 || node > net.n)
        throw contract_error("class node " + std::to_string(node) + " out of range");
      if (class_of[static_cast<std::size_t>(node)] != -1)
        throw contract_error("node " + std::to_string(node) + " listed in two classes");
      class_of[static_cast<std::size_t>(node)] = static_cast<int>(c);
      offset_of[static_cast<std::size_t>(node)] = static_cast<int>(k);
    }
  }
  for (int node = 1; node <= net.n; ++node)
    if (class_of[static_cast<std::size_t>(node)] == -1)
      throw contract_error("node " + std::to_string(node) + " missing from the classes");
  if (classes.front() != std::vector<int>{net.source})
    throw contract_error("first class must be exactly the source node");
  if (classes.back() != std::vector<int>{net.target})
    throw contract_error("last class must be exactly the target node");

  // Coupling blocks between consecutive classes; any other edge breaks the
  // layered structure.
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(classes.size() - 1);
  for (std::size_t c = 0; c + 1 < classes.size(); ++c)
    blocks.emplace_back(Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(classes[c].size()),
        static_cast<Eigen::Index>(classes[c + 1].size())));
  for (const Edge& e : net.edges) {
    int ci = class_of[static_cast<std::size_t>(e.i)];
    int cj = class_of[static_cast<std::size_t>(e.j)];
    if (std::abs(ci - cj) != 1)
      throw contract_error("edge " + std::to_string(e.i) + "-" + std::to_string(e.j) +
                           " connects classes " + std::to_string(ci) + " and " +
                           std::to_string(cj) + ", not consecutive ones");
    int lo = std::min(ci, cj);
    int r = offset_of[static_cast<std::size_t>(ci < cj ? e.i : e.j)];
    int col = offset_of[static_cast<std::size_t>(ci < cj ? e.j : e.i)];
    blocks[static_cast<std::size_t>(lo)](r, col) = e.alpha;
  }

  ClassChain chain;
  chain.classes = classes;
  chain.weights.resize(classes.size());
  chain.weights[0] = {1.0};
  Eigen::VectorXd u = Eigen::VectorXd::Ones(1);
  for (std::size_t c = 0; c + 1 < classes.size(); ++c) {
    Eigen::VectorXd v = blocks[c].transpose() * u;
    double alpha = v.norm();
    if (alpha < 1e-12)
      throw check_error("collapse between classes " + std::to_string(c) + " and " +
                        std::to_string(c + 1) + " gives a zero coupling");
    Eigen::VectorXd next = v / alpha;
    double residual = (blocks[c] * next - alpha * u).norm();
    if (residual > 1e-10)
      throw check_error("collapse fails between classes " + std::to_string(c) +
                        " and " + std::to_string(c + 1) + ": residual " +
                        format_double(residual));
    chain.alphas.push_back(alpha);
    chain.weights[c + 1].assign(next.data(), next.data() + next.size());
    u = std::move(next);
  }
  return chain;
}

// --- synthesis -------------------------------------------------------------

namespace {

using nlohmann::ordered_json;

[[noreturn]] void plan_fail(const std::string& msg) {
  throw parse_error("expansion plan: " + msg);
}

std::vector<double> double_array(const ordered_json& j, const char* what) {
  if (!j.is_array()) plan_fail(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) plan_fail(std::string(what) + " entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<int> int_array(const ordered_json& j, const char* what) {
  if (!j.is_array()) plan_fail(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) plan_fail(std::string(what) + " entries must be integers");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

ExpansionPlan parse_plan(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const ordered_json::exception& e) {
    throw parse_error(std::string("expansion plan: ") + e.what());
  }
  if (!j.is_object()) plan_fail("top level must be an object");
  if (!j.contains("sizes")) plan_fail("missing \"sizes\"");
  if (!j.contains("bonds")) plan_fail("missing \"bonds\"");

  ExpansionPlan plan;
  plan.sizes = int_array(j["sizes"], "\"sizes\"");
  if (!j["bonds"].is_array()) plan_fail("\"bonds\" must be an array");
  for (const auto& jb : j["bonds"]) {
    if (!jb.is_object()) plan_fail("each bond must be an object");
    if (!jb.contains("type") || !jb["type"].is_string())
      plan_fail("each bond needs a string \"type\"");
    std::string type = jb["type"].get<std::string>();
    BondPlan bond;
    if (type == "complete") {
      bond.type = BondPlan::Type::complete;
      if (jb.contains("weights")) bond.weights = double_array(jb["weights"], "\"weights\"");
    } else if (type == "paths") {
      bond.type = BondPlan::Type::paths;
    } else if (type == "fanout") {
      bond.type = BondPlan::Type::fanout;
      if (!jb.contains("groups") || !jb["groups"].is_array())
        plan_fail("a fanout bond needs a \"groups\" array");
      for (const auto& jg : jb["groups"]) {
        if (!jg.is_object()) plan_fail("each fanout group must be an object");
        FanoutGroup g;
        if (!jg.contains("parent") || !jg["parent"].is_number_integer())
          plan_fail("each fanout group needs an integer \"parent\"");
        g.parent = jg["parent"].get<int>();
        if (!jg.contains("children")) plan_fail("each fanout group needs \"children\"");
        g.children = int_array(jg["children"], "\"children\"");
        if (!jg.contains("weights")) plan_fail("each fanout group needs \"weights\"");
        g.weights = double_array(jg["weights"], "\"weights\"");
        bond.groups.push_back(std::move(g));
      }
    } else {
      plan_fail("unknown bond type '" + type + "'");
    }
    plan.bonds.push_back(std::move(bond));
  }
  return plan;
}

std::string render_plan(const ExpansionPlan& plan) {
  ordered_json j;
  j["sizes"] = plan.sizes;
  j["bonds"] = ordered_json::array();
  for (const BondPlan& bond : plan.bonds) {
    ordered_json jb;
    switch (bond.type) {
      case BondPlan::Type::complete:
        jb["type"] = "complete";
        if (!bond.weights.empty()) jb["weights"] = bond.weights;
        break;
      case BondPlan::Type::paths:
        jb["type"] = "paths";
        break;
      case BondPlan::Type::fanout: {
        jb["type"] = "fanout";
        jb["groups"] = ordered_json::array();
        for (const FanoutGroup& g : bond.groups) {
          ordered_json jg;
          jg["parent"] = g.parent;
          jg["children"] = g.children;
          jg["weights"] = g.weights;
          jb["groups"].push_back(std::move(jg));
        }
        break;
      }
    }
    j["bonds"].push_back(std::move(jb));
  }
  return j.dump(2) + "\n";
}

EngineeredNetwork expand_chain(const std::vector<double>& alphas,
                               const ExpansionPlan& plan) {
  const std::size_t k = plan.sizes.size();
  if (k < 2) throw contract_error("an expansion plan needs at least two classes");
  if (plan.sizes.front() != 1 || plan.sizes.back() != 1)
    throw contract_error("the end classes of an expansion must have size 1");
  for (int s : plan.sizes)
    if (s < 1) throw contract_error("class sizes must be positive");
  if (alphas.size() != k - 1)
    throw contract_error("expected " + std::to_string(k - 1) + " chain couplings, got " +
                         std::to_string(alphas.size()));
  for (double a : alphas)
    if (!std::isfinite(a) || a <= 0)
      throw contract_error("chain couplings must be positive and finite");
  if (plan.bonds.size() != k - 1)
    throw contract_error("expected " + std::to_string(k - 1) + " bonds, got " +
                         std::to_string(plan.bonds.size()));

  // Class-major labels: class c occupies start[c]+1 .. start[c]+sizes[c].
  std::vector<int> start(k, 0);
  int n = 0;
  for (std::size_t c = 0; c < k; ++c) {
    start[c] = n;
    n += plan.sizes[c];
  }
  auto node = [&](std::size_t c, int pos) { return start[c] + pos; };

  std::vector<std::vector<double>> u(k);
  u[0] = {1.0};
  std::vector<Edge> edges;
  for (std::size_t b = 0; b + 1 < k; ++b) {
    const BondPlan& bond = plan.bonds[b];
    const double alpha = alphas[b];
    const int np = plan.sizes[b], nc = plan.sizes[b + 1];
    std::vector<double> next(static_cast<std::size_t>(nc), 0.0);
    switch (bond.type) {
      case BondPlan::Type::paths: {
        if (np != nc)
          throw contract_error("a paths bond needs equal class sizes, got " +
                               std::to_string(np) + " and " + std::to_string(nc));
        next = u[b];
        for (int p = 1; p <= np; ++p)
          edges.push_back({node(b, p), node(b + 1, p), alpha});
        break;
      }
      case BondPlan::Type::complete: {
        std::vector<double> w = bond.weights;
        if (w.empty()) w.assign(static_cast<std::size_t>(nc), 1.0);
        if (static_cast<int>(w.size()) != nc)
          throw contract_error("complete-bond weights must have one entry per child");
        double norm = l2_norm(w);
        if (!std::isfinite(norm) || norm == 0)
          throw contract_error("complete-bond weights must be finite and nonzero");
        for (double& x : w) x /= norm;
        next = w;
        for (int p = 1; p <= np; ++p)
          for (int c = 1; c <= nc; ++c) {
            double val = alpha * u[b][static_cast<std::size_t>(p - 1)] *
                         w[static_cast<std::size_t>(c - 1)];
            if (val != 0) edges.push_back({node(b, p), node(b + 1, c), val});
          }
        break;
      }
      case BondPlan::Type::fanout: {
        std::vector<int> child_parent(static_cast<std::size_t>(nc), 0);
        std::vector<char> parent_used(static_cast<std::size_t>(np) + 1, 0);
        for (const FanoutGroup& g : bond.groups) {
          if (g.parent < 1 || g.parent > np)
            throw contract_error("fanout parent " + std::to_string(g.parent) +
                                 " out of range");
          if (parent_used[static_cast<std::size_t>(g.parent)])
            throw contract_error("fanout parent " + std::to_string(g.parent) +
                                 " listed twice");
          parent_used[static_cast<std::size_t>(g.parent)] = 1;
          if (g.children.empty() || g.children.size() != g.weights.size())
            throw contract_error("fanout group weights must match its children");
          double norm = l2_norm(g.weights);
          if (!std::isfinite(norm) || norm == 0)
            throw contract_error("fanout group weights must be finite and nonzero");
          for (std::size_t ci = 0; ci < g.children.size(); ++ci) {
            int c = g.children[ci];
            if (c < 1 || c > nc)
              throw contract_error("fanout child " + std::to_string(c) + " out of range");
            if (child_parent[static_cast<std::size_t>(c - 1)])
              throw contract_error("fanout child " + std::to_string(c) + " listed twice");
            child_parent[static_cast<std::size_t>(c - 1)] = g.parent;
            double wt = g.weights[ci] / norm;
            next[static_cast<std::size_t>(c - 1)] =
                u[b][static_cast<std::size_t>(g.parent - 1)] * wt;
            if (wt != 0) edges.push_back({node(b, g.parent), node(b + 1, c), alpha * wt});
          }
        }
        for (int p = 1; p <= np; ++p)
          if (!parent_used[static_cast<std::size_t>(p)])
            throw contract_error("fanout leaves parent " + std::to_string(p) +
                                 " without a group");
        for (int c = 1; c <= nc; ++c)
          if (!child_parent[static_cast<std::size_t>(c - 1)])
            throw contract_error("fanout leaves child " + std::to_string(c) +
                                 " without a parent");
        break;
      }
    }
    u[b + 1] = std::move(next);
  }

  EngineeredNetwork eng;
  eng.net.n = n;
  eng.net.source = 1;
  eng.net.target = n;
  eng.net.edges = std::move(edges);
  for (std::size_t c = 0; c < k; ++c) {
    NodeClass cls;
    cls.name = "C" + std::to_string(c);
    for (int p = 1; p <= plan.sizes[c]; ++p) cls.nodes.push_back(node(c, p));
    eng.net.partition.push_back(std::move(cls));
  }
  eng.net.normalize();
  eng.net.validate();

  // The construction is checked before anything is returned: the network
  // must collapse back onto the requested chain, and its single-particle
  // transport must match the chain's at a few probe times.
  eng.chain = collapse_network(eng.net);
  for (std::size_t b = 0; b + 1 < k; ++b) {
    double got = eng.chain.alphas[b];
    if (std::abs(got - alphas[b]) > 1e-10 * std::max(1.0, std::abs(alphas[b])))
      throw check_error("expansion reproduces coupling " + std::to_string(b) + " as " +
                        format_double(got) + ", wanted " + format_double(alphas[b]));
    for (std::size_t p = 0; p < u[b + 1].size(); ++p)
      if (std::abs(eng.chain.weights[b + 1][p] - u[b + 1][p]) > 1e-10)
        throw check_error("expansion weight drifts in class " + std::to_string(b + 1));
  }
  SpinNetwork chain_net;
  chain_net.n = static_cast<int>(k);
  chain_net.source = 1;
  chain_net.target = static_cast<int>(k);
  for (std::size_t b = 0; b + 1 < k; ++b)
    chain_net.edges.push_back(
        {static_cast<int>(b) + 1, static_cast<int>(b) + 2, alphas[b]});
  chain_net.normalize();
  FermionPropagator net_prop(eng.net);
  FermionPropagator chain_prop(chain_net);
  for (double t : {0.3, 0.7, 1.3}) {
    double diff = std::abs(net_prop.fidelity(t) - chain_prop.fidelity(t));
    if (diff > 1e-9)
      throw check_error("expansion transport deviates from the chain at t = " +
                        format_double(t) + " by " + format_double(diff));
  }

  eng.provenance = "# expanded from chain couplings " + join_doubles(alphas) + "\n" +
                   "# class sizes " + join_ints(plan.sizes) + "\n";
  return eng;
}

TransportPeaks verify_perfect_transport(const SpinNetwork& net, double t_max,
                                        int samples) {
  net.validate();
  if (samples < 3) throw contract_error("need at least 3 samples");
  if (t_max <= 0) t_max = 4.0 * M_PI / net.alpha_ref();

  TransportPeaks peaks;
  FidelityTrace mxy = fermion_trace(net, t_max, samples);
  peaks.mxy_time = mxy.peak_time;
  peaks.mxy_fidelity = mxy.peak_value;
  if (net.n <= dense_cap()) {
    FidelityTrace xy = fidelity_trace(net, HamiltonianKind::XY, t_max, samples);
    peaks.has_xy = true;
    peaks.xy_time = xy.peak_time;
    peaks.xy_fidelity = xy.peak_value;
  }
  return peaks;
}

}  // namespace spinet
