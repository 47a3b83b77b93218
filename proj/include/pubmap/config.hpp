#pragma once

#include <cstdint>
#include <string>

#include "pubmap/basemap.hpp"
#include "pubmap/matrix.hpp"

namespace pubmap {

struct Config {
    std::string tree_path;
    std::string branch_filter = "CDE";
    DepthMode depth_mode = DepthMode::strict_levels_1_2;
    double cosine_threshold = 0.01;
    std::uint64_t layout_seed = 42;
    std::string output_dir = ".";
    SourceMode source_mode = SourceMode::pubmed;
    CountingMode counting_mode = CountingMode::attributions;
};

// key=value file, '#' comments; unknown keys rejected
void load_config_file(Config& config, const std::string& path);

DepthMode parse_depth_mode(const std::string& s);
SourceMode parse_source_mode(const std::string& s);
CountingMode parse_counting_mode(const std::string& s);

/// Base-map artifact with its category set and configuration, so
/// overlays can verify they target the map they were built for.
void save_basemap(const BaseMap& bm, const Config& config, const std::string& path);

struct LoadedBaseMap {
    BaseMap map;
    Config config;
};

LoadedBaseMap load_basemap(const std::string& path);

}  // namespace pubmap
