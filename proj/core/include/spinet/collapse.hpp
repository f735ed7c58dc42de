#ifndef SPINET_COLLAPSE_HPP
#define SPINET_COLLAPSE_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spinet/network.hpp"
#include "spinet/pauli.hpp"

namespace spinet {

// The result of collapsing a partitioned network: per-class unit weight
// vectors and the effective chain couplings.  A valid collapse guarantees
// the network's end-to-end transport equals that of the weighted chain.
struct ClassChain {
  std::vector<std::vector<int>> classes;     // node labels, source class first
  std::vector<std::vector<double>> weights;  // unit vectors aligned with classes
  std::vector<double> alphas;                // couplings between consecutive classes
};

// Fixed-order key:value text for reports and golden files.
std::string render_chain(const ClassChain& chain);

// Normalized weighted sum of modified flip-flop operators between two node
// classes: sum_{a in I, b in J} gamma_ab T~_ab(sign) / ||gamma||.
// gamma is |I| x |J|; rows/columns follow the class vectors.
OperatorExpr collapsed_op(int n_sites, const std::vector<int>& I,
                          const std::vector<int>& J, const Eigen::MatrixXd& gamma,
                          int sign);

// Collapse a partitioned network onto its class chain.  Edges may connect
// consecutive classes only; the class coupling blocks must map the weight
// vectors onto each other (checked to 1e-10), otherwise a check_error
// reports the offending class pair and residual.
ClassChain collapse_network(const SpinNetwork& net);
ClassChain collapse_network(const SpinNetwork& net,
                            const std::vector<std::vector<int>>& classes);

// --- synthesis -------------------------------------------------------------

// How one bond of the expansion couples class i to class i+1:
//   complete: rank-1 full bipartite block (optional child class weights,
//             uniform when omitted);
//   paths:    equal sizes, k-th node to k-th node, child weights inherited;
//   fanout:   disjoint parent groups, each parent feeding its own children
//             with the given relative weights (a forest bond).
struct FanoutGroup {
  int parent = 0;                // 1-based position within class i
  std::vector<int> children;     // 1-based positions within class i+1
  std::vector<double> weights;   // relative, normalized internally
};

struct BondPlan {
  enum class Type { complete, paths, fanout };
  Type type = Type::complete;
  std::vector<double> weights;      // complete only (child class weights)
  std::vector<FanoutGroup> groups;  // fanout only
};

struct ExpansionPlan {
  std::vector<int> sizes;       // class sizes, ends must be 1
  std::vector<BondPlan> bonds;  // one per consecutive class pair
};

// JSON plan files:
//   {"sizes": [1,2,3,1],
//    "bonds": [{"type":"fanout","groups":[{"parent":1,"children":[1,2],
//               "weights":[0.8,0.6]}]},
//              {"type":"paths"},
//              {"type":"complete"}]}
ExpansionPlan parse_plan(const std::string& json_text);
std::string render_plan(const ExpansionPlan& plan);

struct EngineeredNetwork {
  SpinNetwork net;
  ClassChain chain;
  std::string provenance;  // '#' comment block for emitted network files
};

// Build a weighted network that collapses onto the chain with the given
// couplings, laying classes out in consecutive node ranges.  The result is
// self-verified (collapse_network plus single-particle spot checks) before
// it is returned; an unsatisfiable plan raises check_error.
EngineeredNetwork expand_chain(const std::vector<double>& alphas,
                               const ExpansionPlan& plan);

// Refined fidelity peak under the modified-XY evolution (single-particle
// backend), plus the dense bare-XY peak for contrast when the network fits
// under the dense cap.  t_max = 0 picks 4*pi/alpha_ref.
struct TransportPeaks {
  double mxy_time = 0;
  double mxy_fidelity = 0;
  bool has_xy = false;
  double xy_time = 0;
  double xy_fidelity = 0;
};

TransportPeaks verify_perfect_transport(const SpinNetwork& net, double t_max = 0.0,
                                        int samples = 4001);

}  // namespace spinet

#endif
