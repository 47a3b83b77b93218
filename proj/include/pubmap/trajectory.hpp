#pragma once

#include <string>
#include <vector>

#include "pubmap/overlay.hpp"

namespace pubmap {

struct YearStats {
    int year = 0;
    std::size_t n_records = 0;
    std::size_t n_records_with_mesh = 0;
    std::size_t n_mesh_attributions = 0;
    std::size_t n_distinct_categories = 0;  // distinct (label, tree number) pairs
    std::size_t n_active_on_basemap = 0;
};

struct TrajectoryRun {
    std::vector<int> years;
    std::vector<YearStats> stats;
    std::vector<Overlay> frames;
    DepthMode mode = DepthMode::strict_levels_1_2;
    std::size_t skipped_missing_year = 0;
    std::size_t skipped_out_of_range = 0;
};

TrajectoryRun run_trajectory(const Corpus& c, const MeshTree& tree,
                             const CategorySet& cats, int from, int to,
                             CountingMode counting = CountingMode::attributions);

std::string stats_table(const TrajectoryRun& t);

void emit_stats(const TrajectoryRun& t, const std::string& path);

/// One SVG per year, zero-padded file names, node positions taken from
/// the base map for every frame; a manifest lists frame order.
std::vector<std::string> render_frames(const TrajectoryRun& t, const BaseMap& bm,
                                       const std::string& dir);

}  // namespace pubmap
