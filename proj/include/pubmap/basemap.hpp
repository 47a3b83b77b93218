#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pubmap/matrix.hpp"

namespace pubmap {

struct WeightedEdge {
    int a;
    int b;
    double weight;

    bool operator==(const WeightedEdge& o) const {
        return a == o.a && b == o.b && weight == o.weight;
    }
    bool operator<(const WeightedEdge& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return weight < o.weight;
    }
};

struct Graph {
    std::size_t n = 0;
    std::vector<WeightedEdge> edges;  // a < b, weight > threshold

    std::vector<std::vector<int>> adjacency() const;
};

/// Keep an edge only when its similarity strictly exceeds tau; kept
/// weights are unchanged.
Graph threshold_graph(const CosineMatrix& sim, double tau);

std::vector<int> component_ids(const Graph& g);

/// Maximum-cardinality component; ties go to the component holding the
/// smallest node index.
std::vector<int> largest_component(const Graph& g);

struct Point {
    double x;
    double y;
};

/// Seeded Fruchterman-Reingold layout, normalized to the unit square.
/// Identical graph + seed gives identical coordinates.
std::vector<Point> layout(const Graph& g, std::uint64_t seed,
                          int iterations = 300);

struct BaseMap {
    CategorySet cats;
    std::vector<long> occurrences;  // per node, attribution totals
    Graph graph;
    std::vector<int> partition;     // branch color class per node, 1-based
    std::vector<Point> coords;
    std::vector<int> component;     // component id per node
    std::vector<int> largest;       // node indices of the largest component
};

// branch class: C=1, D=2, E=3, remaining branches alphabetical after that
int branch_class(char branch);

BaseMap build_basemap(const IncidenceMatrix& m, double tau, std::uint64_t seed);

// Pajek project file: network (vertices + coordinates + edges), branch
// partition, and a default size vector; 1-based indices throughout
void emit_pajek(const BaseMap& bm, const std::string& path);

struct PajekProject {
    std::vector<std::string> labels;
    std::vector<Point> coords;
    std::vector<WeightedEdge> edges;
    std::vector<int> partition;
    std::vector<double> vector_values;
};

PajekProject parse_pajek(const std::string& path);

// VOSviewer-style map table: label, x, y, cluster, weight
void emit_vos_map(const BaseMap& bm, const std::vector<double>& weights,
                  const std::string& path);

struct VosMapRow {
    std::string label;
    double x, y;
    int cluster;
    double weight;
};

std::vector<VosMapRow> parse_vos_map(const std::string& path);

void emit_svg(const BaseMap& bm, const std::vector<double>& sizes,
              const std::string& path, const std::string& caption = "");

}  // namespace pubmap
