#include "pubmap/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace pubmap {

std::vector<double> Overlay::sizes() const {
    std::vector<double> out(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        out[i] = std::log2(static_cast<double>(counts[i]) + 1.0);
    return out;
}

std::size_t Overlay::active_count() const {
    return static_cast<std::size_t>(
        std::count_if(counts.begin(), counts.end(), [](long c) { return c > 0; }));
}

std::vector<int> Overlay::active() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] > 0) out.push_back(static_cast<int>(i));
    return out;
}

Overlay build_overlay(const Corpus& sample, const MeshTree& tree,
                      const CategorySet& cats, CountingMode counting) {
    Overlay o;
    o.basemap_fingerprint = cats.fingerprint();
    o.counting = counting;
    o.counts.assign(cats.size(), 0);
    o.n_records = sample.records.size();
    for (const auto& r : sample.records) {
        if (!r.headings.empty()) ++o.n_records_with_mesh;
        o.n_attributions += r.headings.size();
        if (!mesh_eligible(r)) continue;
        for (const auto& [idx, mult] : map_headings(r, tree, cats))
            o.counts[idx] += counting == CountingMode::attributions ? mult : 1;
    }
    return o;
}

void emit_vector(const Overlay& o, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "*Vertices " << o.counts.size() << '\n';
    auto sizes = o.sizes();
    for (double s : sizes) {
        std::ostringstream v;
        v << std::setprecision(17) << s;
        out << v.str() << '\n';
    }
}

std::vector<double> parse_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<double> out;
    std::string line;
    std::getline(in, line);  // *Vertices N
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(std::strtod(line.c_str(), nullptr));
    }
    return out;
}

std::vector<double> normalized_weights(const std::vector<double>& sizes) {
    double max_size = 0.0;
    for (double s : sizes) max_size = std::max(max_size, s);
    std::vector<double> out(sizes.size(), 0.0);
    if (max_size <= 0.0) return out;
    for (std::size_t i = 0; i < sizes.size(); ++i) out[i] = sizes[i] / max_size;
    return out;
}

void emit_overlay_map(const Overlay& o, const BaseMap& bm,
                      const std::string& path) {
    if (o.basemap_fingerprint != bm.cats.fingerprint())
        throw std::invalid_argument("overlay/base-map category-set mismatch");
    emit_vos_map(bm, normalized_weights(o.sizes()), path);
}

}  // namespace pubmap
