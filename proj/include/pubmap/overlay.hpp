#pragma once

#include <string>
#include <vector>

#include "pubmap/basemap.hpp"
#include "pubmap/matrix.hpp"

namespace pubmap {

/// Per-category activity of a document sample over a base map's category
/// set. Node size is log2(count + 1).
struct Overlay {
    std::uint64_t basemap_fingerprint = 0;
    CountingMode counting = CountingMode::attributions;
    std::vector<long> counts;  // per category
    std::size_t n_records = 0;
    std::size_t n_records_with_mesh = 0;
    std::size_t n_attributions = 0;  // MH headings in the sample

    std::vector<double> sizes() const;
    std::size_t active_count() const;
    std::vector<int> active() const;
};

Overlay build_overlay(const Corpus& sample, const MeshTree& tree,
                      const CategorySet& cats,
                      CountingMode counting = CountingMode::attributions);

/// Pajek vector file: "*Vertices N" then one size per base-map node in
/// base-map order, 0 for inactive nodes.
void emit_vector(const Overlay& o, const std::string& path);

std::vector<double> parse_vector(const std::string& path);

/// Map-file table with weight = size / max size; all zero when nothing
/// is active.
void emit_overlay_map(const Overlay& o, const BaseMap& bm,
                      const std::string& path);

std::vector<double> normalized_weights(const std::vector<double>& sizes);

}  // namespace pubmap
