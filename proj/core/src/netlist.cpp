#include "rcsim/netlist.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "rcsim/csv.hpp"  // format_double

namespace rcsim {

std::string netlist_string(const Topology& topo, double r0_ohms, double step_seconds) {
    topo.validate();
    if (!(r0_ohms > 0.0)) throw std::invalid_argument("netlist: r0_ohms must be > 0");
    if (!(step_seconds > 0.0)) throw std::invalid_argument("netlist: step_seconds must be > 0");

    double w_max = 0.0;
    for (int i = 0; i < topo.n; ++i)
        for (int j = 0; j < topo.n; ++j) w_max = std::max(w_max, std::abs(topo.w_self(i, j)));

    std::string out;
    out += "* reservoir interconnect listing\n";
    out += "* nodes=" + std::to_string(topo.n) + " step_seconds=" + format_double(step_seconds) +
           " r0_ohms=" + format_double(r0_ohms) + "\n";
    for (int i = 0; i < topo.n; ++i) out += "N" + std::to_string(i) + "\n";
    for (int i = 0; i < topo.n; ++i)
        for (int j = 0; j < topo.n; ++j) {
            const double w = topo.w_self(i, j);
            if (w == 0.0) continue;
            // Strong couplings get low impedance; the RC product encodes the
            // transport delay of the line.
            const double r = r0_ohms * w_max / std::abs(w);
            const double c = static_cast<double>(topo.delays(i, j)) * step_seconds / r;
            out += "L" + std::to_string(i) + "_" + std::to_string(j) + " R=" + format_double(r) +
                   " C=" + format_double(c) + "\n";
        }
    return out;
}

void export_netlist(const Topology& topo, const std::string& path, double r0_ohms,
                    double step_seconds) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("netlist: cannot write '" + path + "'");
    out << netlist_string(topo, r0_ohms, step_seconds);
    if (!out) throw std::runtime_error("netlist: write to '" + path + "' failed");
}

namespace {

double parse_value(const std::string& token, char name, const std::string& line) {
    if (token.size() < 3 || token[0] != name || token[1] != '=')
        throw std::runtime_error("netlist: expected " + std::string(1, name) + "=... in '" +
                                 line + "'");
    double v = 0.0;
    const char* begin = token.data() + 2;
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw std::runtime_error("netlist: bad number in '" + line + "'");
    return v;
}

int parse_index(const std::string& s, const std::string& line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0)
        throw std::runtime_error("netlist: bad node index in '" + line + "'");
    return v;
}

}  // namespace

NetlistGraph parse_netlist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("netlist: cannot open '" + path + "'");

    std::vector<int> nodes;
    struct Edge {
        int i, j;
        double r, c;
    };
    std::vector<Edge> edges;

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '*') continue;
        std::stringstream ss(line);
        std::string head;
        ss >> head;
        if (head.size() > 1 && head[0] == 'N') {
            nodes.push_back(parse_index(head.substr(1), line));
        } else if (head.size() > 1 && head[0] == 'L') {
            const auto sep = head.find('_');
            if (sep == std::string::npos)
                throw std::runtime_error("netlist: malformed line instance '" + line + "'");
            Edge e{};
            e.i = parse_index(head.substr(1, sep - 1), line);
            e.j = parse_index(head.substr(sep + 1), line);
            std::string r_tok, c_tok;
            if (!(ss >> r_tok >> c_tok))
                throw std::runtime_error("netlist: missing R/C on '" + line + "'");
            e.r = parse_value(r_tok, 'R', line);
            e.c = parse_value(c_tok, 'C', line);
            edges.push_back(e);
        } else {
            throw std::runtime_error("netlist: unrecognized line '" + line + "'");
        }
    }

    NetlistGraph g;
    g.n = static_cast<int>(nodes.size());
    if (g.n == 0) throw std::runtime_error("netlist: '" + path + "' declares no neurons");
    for (int k = 0; k < g.n; ++k)
        if (nodes[static_cast<std::size_t>(k)] != k)
            throw std::runtime_error("netlist: neuron indices must be contiguous from 0");
    g.edges = Eigen::MatrixXi::Zero(g.n, g.n);
    g.r_ohms = Eigen::MatrixXd::Zero(g.n, g.n);
    g.c_farads = Eigen::MatrixXd::Zero(g.n, g.n);
    for (const Edge& e : edges) {
        if (e.i >= g.n || e.j >= g.n)
            throw std::runtime_error("netlist: line references unknown neuron");
        g.edges(e.i, e.j) = 1;
        g.r_ohms(e.i, e.j) = e.r;
        g.c_farads(e.i, e.j) = e.c;
    }
    return g;
}

}  // namespace rcsim
