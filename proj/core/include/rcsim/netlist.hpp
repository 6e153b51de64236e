#pragma once

#include <Eigen/Dense>
#include <string>

#include "rcsim/topology.hpp"

namespace rcsim {

/// Connectivity recovered from a netlist: booleans for edge presence plus
/// each line's R and C values.
struct NetlistGraph {
    int n = 0;
    Eigen::MatrixXi edges;    // 1 where a line i<-j exists
    Eigen::MatrixXd r_ohms;   // per existing edge
    Eigen::MatrixXd c_farads; // per existing edge
};

/// Render a topology as a line-oriented circuit listing: one `N<i>` neuron
/// instance per node and one `L<i>_<j> R=<ohms> C=<farads>` line per nonzero
/// recurrent edge. R scales inversely with |w| (strong couplings are
/// low-impedance) and C is chosen so R*C equals the edge's delay in steps
/// times step_seconds. Output is deterministic.
std::string netlist_string(const Topology& topo, double r0_ohms = 1.0e3,
                           double step_seconds = 1.0e-9);

void export_netlist(const Topology& topo, const std::string& path, double r0_ohms = 1.0e3,
                    double step_seconds = 1.0e-9);

/// Parse a netlist produced by export_netlist back into its connectivity.
NetlistGraph parse_netlist(const std::string& path);

}  // namespace rcsim
