#ifndef SPINET_NETWORK_HPP
#define SPINET_NETWORK_HPP

#include <string>
#include <vector>

#include "spinet/pauli.hpp"

namespace spinet {

// One weighted edge; stored with i < j.
struct Edge {
  int i = 0;
  int j = 0;
  double alpha = 1.0;
};

// A named class of nodes for equitable-partition collapses.
struct NodeClass {
  std::string name;
  std::vector<int> nodes;
};

// A spin network: n nodes labeled 1..n, a distinguished (source, target)
// pair, weighted edges (couplings in angular-frequency units, hbar = 1) and
// an optional ordered partition for collapse work.
struct SpinNetwork {
  int n = 0;
  int source = 0;
  int target = 0;
  std::vector<Edge> edges;
  std::vector<NodeClass> partition;  // empty = none

  bool has_partition() const { return !partition.empty(); }
  double alpha_ref() const;  // max |alpha|, 1 for an edgeless network

  // Sort edges by (i,j) with i < j per edge.
  void normalize();

  // Enforce the structural invariants: labels in range, ends distinct,
  // no self-loops or duplicate edges, finite nonzero couplings; a partition,
  // when present, must be disjoint classes covering all nodes with
  // {source} first and {target} last.  Throws contract_error.
  void validate() const;
};

// Line-oriented file format ('#' starts a comment):
//   nodes <n>
//   ends <s> <t>
//   edge <i> <j> <alpha>      (repeatable)
//   class <name> <i> <j> ...  (repeatable, optional)
//   order <name1> <name2> ... (optional; defaults to appearance order)
// Floats are full-precision decimal and round-trip exactly.
SpinNetwork parse_network(const std::string& text);
std::string serialize_network(const SpinNetwork& net);

// Total Hamiltonian: sum over edges of alpha * coupling of the given kind.
// The modified-XY Z strings run over the node-index order of the labeling.
OperatorExpr hamiltonian(const SpinNetwork& net, HamiltonianKind kind);

// Renumber nodes: perm[old-1] = new label.  Edges and partition follow;
// class order is preserved.
SpinNetwork relabel(const SpinNetwork& net, const std::vector<int>& perm);

// Nearest-neighbor chain on m nodes with alpha_i = scale*sqrt(i(m-i)),
// which transfers perfectly at t = pi/(2*scale).
SpinNetwork pst_chain(int m, double scale = 1.0);

// --- bundled networks ------------------------------------------------------
//
// lambda3: 3-chain with both couplings 1/sqrt(2); transfers at t = pi.
// fig3:    5 nodes, ends (1,5), six unit edges 1-{2,3,4}-5.
// fig5:    6 nodes, ends (1,6), unit edges along paths 1-2-3-6 and 1-4-5-6,
//          partition {1},{2,4},{3,5},{6}.
// fig7a:   fig5 topology reweighted so the partition collapses onto the
//          4-node pst chain for every gamma in (0,1); gamma = 1 degenerates
//          to a single path and returns pst_chain(4) instead.
// fig7b:   7 nodes, ends (1,7), partition {1},{2,5},{3,4,6},{7}; collapses
//          onto the 4-node pst chain for gamma1, gamma2 in (0,1).
// fig8:    14 nodes, ends (1,14), interior classes of three; collapses onto
//          the 6-node pst chain; w1..w3 weight the first branch bond.
//
// The weighted families are synthesized through expand_chain rather than
// hard-coded, so their couplings are correct by construction.
SpinNetwork lambda3_network();
SpinNetwork fig3_network();
SpinNetwork fig5_network();
SpinNetwork fig7a_network(double gamma);
SpinNetwork fig7b_network(double gamma1, double gamma2);
SpinNetwork fig8_network(double w1, double w2, double w3);

// Dispatch by name: "lambda3", "fig3", "fig5", "fig7a:0.6",
// "fig7b:0.8,0.5", "fig8:0.36,0.48,0.8", "pst:6" or "pst:6,0.5".
SpinNetwork library_network(const std::string& name);

}  // namespace spinet

#endif
