#include "pubmap/basemap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <queue>
#include <random>
#include <sstream>

namespace pubmap {

namespace {

void write_double(std::ostream& out, double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    out << s.str();
}

std::string color_of_class(int cls) {
    switch (cls) {
        case 1: return "#e41a1c";  // C, red
        case 2: return "#377eb8";  // D, blue
        case 3: return "#ffd92f";  // E, yellow
        default: return "#999999";
    }
}

}  // namespace

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    return adj;
}

Graph threshold_graph(const CosineMatrix& sim, double tau) {
    if (tau < 0) throw std::invalid_argument("threshold must be >= 0");
    Graph g;
    g.n = sim.n;
    for (std::size_t i = 0; i < sim.n; ++i)
        for (std::size_t j = i + 1; j < sim.n; ++j)
            if (sim.values[i][j] > tau)
                g.edges.push_back({static_cast<int>(i), static_cast<int>(j),
                                   sim.values[i][j]});
    return g;
}

std::vector<int> component_ids(const Graph& g) {
    std::vector<int> id(g.n, -1);
    auto adj = g.adjacency();
    int next = 0;
    for (std::size_t s = 0; s < g.n; ++s) {
        if (id[s] != -1) continue;
        id[s] = next;
        std::queue<int> q;
        q.push(static_cast<int>(s));
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (id[w] == -1) {
                    id[w] = next;
                    q.push(w);
                }
        }
        ++next;
    }
    return id;
}

std::vector<int> largest_component(const Graph& g) {
    if (g.n == 0) return {};
    auto id = component_ids(g);
    int n_comp = *std::max_element(id.begin(), id.end()) + 1;
    std::vector<std::size_t> size(n_comp, 0);
    for (int c : id) ++size[c];
    // ids are assigned in node order, so the first maximal id also holds
    // the smallest node index
    int best = 0;
    for (int c = 1; c < n_comp; ++c)
        if (size[c] > size[best]) best = c;
    std::vector<int> out;
    for (std::size_t v = 0; v < g.n; ++v)
        if (id[v] == best) out.push_back(static_cast<int>(v));
    return out;
}

std::vector<Point> layout(const Graph& g, std::uint64_t seed, int iterations) {
    std::vector<Point> pos(g.n);
    if (g.n == 0) return pos;
    if (g.n == 1) {
        pos[0] = {0.5, 0.5};
        return pos;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (auto& p : pos) p = {uni(rng), uni(rng)};

    const double k = std::sqrt(1.0 / static_cast<double>(g.n));
    double temperature = 0.1;
    const double cooling = std::pow(1e-3 / temperature, 1.0 / iterations);

    std::vector<Point> disp(g.n);
    for (int iter = 0; iter < iterations; ++iter) {
        for (auto& d : disp) d = {0.0, 0.0};
        for (std::size_t i = 0; i < g.n; ++i) {
            for (std::size_t j = i + 1; j < g.n; ++j) {
                double dx = pos[i].x - pos[j].x;
                double dy = pos[i].y - pos[j].y;
                double dist = std::max(std::hypot(dx, dy), 1e-9);
                double f = k * k / dist;
                disp[i].x += dx / dist * f;
                disp[i].y += dy / dist * f;
                disp[j].x -= dx / dist * f;
                disp[j].y -= dy / dist * f;
            }
        }
        for (const auto& e : g.edges) {
            double dx = pos[e.a].x - pos[e.b].x;
            double dy = pos[e.a].y - pos[e.b].y;
            double dist = std::max(std::hypot(dx, dy), 1e-9);
            double f = dist * dist / k;
            disp[e.a].x -= dx / dist * f;
            disp[e.a].y -= dy / dist * f;
            disp[e.b].x += dx / dist * f;
            disp[e.b].y += dy / dist * f;
        }
        for (std::size_t i = 0; i < g.n; ++i) {
            double len = std::max(std::hypot(disp[i].x, disp[i].y), 1e-12);
            double step = std::min(len, temperature);
            pos[i].x += disp[i].x / len * step;
            pos[i].y += disp[i].y / len * step;
        }
        temperature *= cooling;
    }

    double minx = pos[0].x, maxx = pos[0].x, miny = pos[0].y, maxy = pos[0].y;
    for (const auto& p : pos) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    double dx = maxx - minx, dy = maxy - miny;
    for (auto& p : pos) {
        p.x = dx > 0 ? (p.x - minx) / dx : 0.5;
        p.y = dy > 0 ? (p.y - miny) / dy : 0.5;
    }
    return pos;
}

int branch_class(char branch) {
    static const std::string order = "CDEABFGHIJKLMNVZ";
    auto i = order.find(branch);
    return i == std::string::npos ? static_cast<int>(order.size()) + 1
                                  : static_cast<int>(i) + 1;
}

BaseMap build_basemap(const IncidenceMatrix& m, double tau, std::uint64_t seed) {
    BaseMap bm;
    bm.cats = m.cols;
    bm.occurrences = m.col_occurrences;
    bm.graph = threshold_graph(cosine_matrix(m), tau);
    bm.component = component_ids(bm.graph);
    bm.largest = largest_component(bm.graph);
    bm.coords = layout(bm.graph, seed);
    bm.partition.reserve(bm.cats.size());
    for (const auto& c : bm.cats.categories)
        bm.partition.push_back(branch_class(c.branch));
    return bm;
}

void emit_pajek(const BaseMap& bm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    std::size_t n = bm.cats.size();
    out << "*Network basemap\n";
    out << "*Vertices " << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << (i + 1) << " \"" << bm.cats.categories[i].label << "\" ";
        write_double(out, bm.coords[i].x);
        out << ' ';
        write_double(out, bm.coords[i].y);
        out << '\n';
    }
    out << "*Edges\n";
    for (const auto& e : bm.graph.edges) {
        out << (e.a + 1) << ' ' << (e.b + 1) << ' ';
        write_double(out, e.weight);
        out << '\n';
    }
    out << "*Partition branches\n*Vertices " << n << '\n';
    for (int cls : bm.partition) out << cls << '\n';
    out << "*Vector occurrences\n*Vertices " << n << '\n';
    for (long occ : bm.occurrences) {
        write_double(out, static_cast<double>(occ));
        out << '\n';
    }
}

PajekProject parse_pajek(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    PajekProject p;
    enum class Section { none, vertices, edges, partition, vector };
    Section section = Section::none;
    bool network_vertices_done = false;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '*') {
            std::string head = line.substr(0, line.find(' '));
            if (head == "*Vertices") {
                if (!network_vertices_done) {
                    section = Section::vertices;
                }
                // later *Vertices headers belong to partition/vector blocks
            } else if (head == "*Edges" || head == "*Arcs") {
                network_vertices_done = true;
                section = Section::edges;
            } else if (head == "*Partition") {
                network_vertices_done = true;
                section = Section::partition;
            } else if (head == "*Vector") {
                network_vertices_done = true;
                section = Section::vector;
            }
            continue;
        }
        std::istringstream fields(line);
        switch (section) {
            case Section::vertices: {
                int idx;
                fields >> idx;
                std::string rest;
                std::getline(fields, rest);
                auto q1 = rest.find('"');
                auto q2 = rest.rfind('"');
                std::string label =
                    q1 != std::string::npos && q2 > q1 ? rest.substr(q1 + 1, q2 - q1 - 1) : "";
                p.labels.push_back(label);
                std::istringstream tail(rest.substr(q2 + 1));
                Point pt{0.5, 0.5};
                tail >> pt.x >> pt.y;
                p.coords.push_back(pt);
                break;
            }
            case Section::edges: {
                WeightedEdge e{};
                fields >> e.a >> e.b >> e.weight;
                --e.a;
                --e.b;
                p.edges.push_back(e);
                break;
            }
            case Section::partition: {
                int cls;
                fields >> cls;
                p.partition.push_back(cls);
                break;
            }
            case Section::vector: {
                double v;
                fields >> v;
                p.vector_values.push_back(v);
                break;
            }
            case Section::none:
                break;
        }
    }
    return p;
}

void emit_vos_map(const BaseMap& bm, const std::vector<double>& weights,
                  const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "label\tx\ty\tcluster\tweight\n";
    for (std::size_t i = 0; i < bm.cats.size(); ++i) {
        out << bm.cats.categories[i].label << '\t';
        write_double(out, bm.coords[i].x);
        out << '\t';
        write_double(out, bm.coords[i].y);
        out << '\t' << bm.partition[i] << '\t';
        write_double(out, i < weights.size() ? weights[i] : 0.0);
        out << '\n';
    }
}

std::vector<VosMapRow> parse_vos_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<VosMapRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream fields(line);
        VosMapRow r;
        std::string cell;
        std::getline(fields, r.label, '\t');
        std::getline(fields, cell, '\t');
        r.x = std::strtod(cell.c_str(), nullptr);
        std::getline(fields, cell, '\t');
        r.y = std::strtod(cell.c_str(), nullptr);
        std::getline(fields, cell, '\t');
        r.cluster = std::stoi(cell);
        std::getline(fields, cell, '\t');
        r.weight = std::strtod(cell.c_str(), nullptr);
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_svg(const BaseMap& bm, const std::vector<double>& sizes,
              const std::string& path, const std::string& caption) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    const double width = 1000.0, height = 800.0, margin = 60.0;
    auto px = [&](const Point& p) {
        return Point{margin + p.x * (width - 2 * margin),
                     margin + p.y * (height - 2 * margin)};
    };
    out << std::fixed << std::setprecision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    if (!caption.empty())
        out << "<text x=\"20\" y=\"30\" font-size=\"24\">" << caption
            << "</text>\n";
    double max_w = 0.0;
    for (const auto& e : bm.graph.edges) max_w = std::max(max_w, e.weight);
    for (const auto& e : bm.graph.edges) {
        Point a = px(bm.coords[e.a]), b = px(bm.coords[e.b]);
        double opacity = max_w > 0 ? 0.1 + 0.9 * e.weight / max_w : 0.1;
        out << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x
            << "\" y2=\"" << b.y << "\" stroke=\"#777777\" stroke-opacity=\""
            << opacity << "\"/>\n";
    }
    const double min_radius = 3.0;
    for (std::size_t i = 0; i < bm.cats.size(); ++i) {
        Point c = px(bm.coords[i]);
        double size = i < sizes.size() ? sizes[i] : 0.0;
        double radius = size > 0 ? min_radius + 4.0 * size : min_radius;
        double opacity = size > 0 ? 0.9 : 0.35;
        out << "<circle cx=\"" << c.x << "\" cy=\"" << c.y << "\" r=\"" << radius
            << "\" fill=\"" << color_of_class(bm.partition[i])
            << "\" fill-opacity=\"" << opacity << "\"/>\n";
        out << "<text x=\"" << c.x + radius + 2 << "\" y=\"" << c.y
            << "\" font-size=\"10\">" << bm.cats.categories[i].label
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace pubmap
