#include "pubmap/trajectory.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace pubmap {

namespace {

std::size_t distinct_categories(const Corpus& c, const MeshTree& tree) {
    // (label, tree number) pairs at every depth; headings missing from
    // the tree count once per label
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : c.records) {
        for (const auto& h : r.headings) {
            const Descriptor* d = tree.find_label(h.label);
            if (!d) {
                seen.emplace(normalize_label(h.label), "");
                continue;
            }
            for (const auto& t : d->tree_numbers)
                seen.emplace(normalize_label(h.label), t.str());
        }
    }
    return seen.size();
}

}  // namespace

TrajectoryRun run_trajectory(const Corpus& c, const MeshTree& tree,
                             const CategorySet& cats, int from, int to,
                             CountingMode counting) {
    if (from > to) throw std::invalid_argument("year range inverted");
    TrajectoryRun run;
    run.mode = cats.depth_mode;
    auto slices = slice_by_year(c, from, to);
    run.skipped_missing_year = slices.missing_year;
    run.skipped_out_of_range = slices.out_of_range;
    for (int y = from; y <= to; ++y) {
        const Corpus& bucket = slices.by_year[y];
        Overlay o = build_overlay(bucket, tree, cats, counting);
        YearStats s;
        s.year = y;
        s.n_records = bucket.records.size();
        s.n_records_with_mesh = o.n_records_with_mesh;
        s.n_mesh_attributions = o.n_attributions;
        s.n_distinct_categories = distinct_categories(bucket, tree);
        s.n_active_on_basemap = o.active_count();
        run.years.push_back(y);
        run.stats.push_back(s);
        run.frames.push_back(std::move(o));
    }
    return run;
}

std::string stats_table(const TrajectoryRun& t) {
    std::ostringstream out;
    out << "Year\tNumber of Records\tNumber of Records with MeSH Terms\t"
           "Number of MeSH Terms\tNumber of Categories\t"
           "MeSH Terms Active in the Overlay\n";
    for (const auto& s : t.stats) {
        out << s.year << '\t' << s.n_records << '\t' << s.n_records_with_mesh
            << '\t' << s.n_mesh_attributions << '\t' << s.n_distinct_categories
            << '\t' << s.n_active_on_basemap << '\n';
    }
    return out.str();
}

void emit_stats(const TrajectoryRun& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << stats_table(t);
}

std::vector<std::string> render_frames(const TrajectoryRun& t, const BaseMap& bm,
                                       const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < t.years.size(); ++i) {
        std::ostringstream name;
        name << std::setw(4) << std::setfill('0') << t.years[i] << ".svg";
        std::string path = (std::filesystem::path(dir) / name.str()).string();
        emit_svg(bm, t.frames[i].sizes(), path, std::to_string(t.years[i]));
        names.push_back(name.str());
    }
    std::ofstream manifest(std::filesystem::path(dir) / "frames.txt");
    if (!manifest) throw std::runtime_error("cannot write frame manifest");
    for (const auto& n : names) manifest << n << '\n';
    return names;
}

}  // namespace pubmap
