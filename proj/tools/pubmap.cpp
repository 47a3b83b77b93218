#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "pubmap/bridge.hpp"
#include "pubmap/config.hpp"
#include "pubmap/ingest.hpp"
#include "pubmap/overlay.hpp"
#include "pubmap/trajectory.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace pubmap;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::stringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

MeshTree load_tree(const std::string& path) {
    if (path.empty()) throw std::runtime_error("no tree file given (--tree)");
    return MeshTree::parse_tree_file(read_input(path));
}

// prompt for the source only when the flag is absent and a terminal is
// attached, so scripted runs never block
SourceMode resolve_source(const Config& config, bool flag_given) {
    if (flag_given || !isatty(fileno(stdin))) return config.source_mode;
    std::cout << "Source of the tagged file [1=PubMed, 2=WoK] (default 1): "
              << std::flush;
    std::string answer;
    std::getline(std::cin, answer);
    return answer == "2" ? SourceMode::wok : SourceMode::pubmed;
}

void print_summary(const json& summary) {
    std::cout << summary.dump() << '\n';
}

std::string out_path(const Config& config, const std::string& name) {
    fs::create_directories(config.output_dir);
    return (fs::path(config.output_dir) / name).string();
}

void add_config_flags(CLI::App* cmd, Config& config, std::string& config_path) {
    cmd->add_option("--config", config_path, "key=value configuration file");
    cmd->add_option("--tree", config.tree_path, "MeSH tree file (label;number per line)");
    cmd->add_option("--branches", config.branch_filter,
                    "branch letters to keep (default CDE)");
    cmd->add_option("--tau", config.cosine_threshold,
                    "cosine threshold, edges require cosine > tau");
    cmd->add_option("--seed", config.layout_seed, "layout seed");
    cmd->add_option("--out", config.output_dir, "output directory");
}

struct ModeFlags {
    std::string depth;
    bool plus = false;
    std::string source;
    std::string counting;

    void apply(Config& config) const {
        if (!depth.empty()) config.depth_mode = parse_depth_mode(depth);
        if (plus) config.depth_mode = DepthMode::collapsed_to_level_2;
        if (!source.empty()) config.source_mode = parse_source_mode(source);
        if (!counting.empty()) config.counting_mode = parse_counting_mode(counting);
    }
};

void add_mode_flags(CLI::App* cmd, ModeFlags& flags) {
    cmd->add_option("--mode", flags.depth, "depth mode: strict | collapsed");
    cmd->add_flag("--plus", flags.plus,
                  "collapse deep categories to level 2, ignore level 1");
    cmd->add_option("--source", flags.source, "tagged-file source: pubmed | wok");
    cmd->add_option("--counting", flags.counting,
                    "overlay counting: attributions | documents");
}

json stats_block(const Corpus& corpus, const IncidenceMatrix& m, const BaseMap& bm) {
    return json{{"records", corpus.records.size()},
                {"eligible_records", corpus.records.size() - m.ineligible_records},
                {"mesh_categories", m.cols.size()},
                {"mesh_used", m.used_count()},
                {"largest_component", bm.largest.size()},
                {"edges", bm.graph.edges.size()},
                {"unmapped_headings", m.unmapped_headings}};
}

int run_basemap(const Config& config, const std::string& corpus_path) {
    MeshTree tree = load_tree(config.tree_path);
    Corpus corpus = parse_medline(read_input(corpus_path), config.source_mode);
    CategorySet cats =
        make_category_set(tree, config.depth_mode, config.branch_filter);
    IncidenceMatrix m = build_matrix(corpus, tree, cats);
    BaseMap bm = build_basemap(m, config.cosine_threshold, config.layout_seed);

    std::string basemap_path = out_path(config, "basemap.json");
    save_basemap(bm, config, basemap_path);
    std::string pajek_path = out_path(config, "basemap.paj");
    emit_pajek(bm, pajek_path);
    std::vector<double> weights(bm.occurrences.size(), 0.0);
    double max_occ = 0;
    for (long occ : bm.occurrences) max_occ = std::max(max_occ, static_cast<double>(occ));
    for (std::size_t i = 0; i < weights.size(); ++i)
        weights[i] = max_occ > 0 ? bm.occurrences[i] / max_occ : 0.0;
    std::string vos_path = out_path(config, "vos.txt");
    emit_vos_map(bm, weights, vos_path);
    std::string svg_path = out_path(config, "basemap.svg");
    emit_svg(bm, {}, svg_path);

    json stats = stats_block(corpus, m, bm);
    {
        std::ofstream s(out_path(config, "stats.txt"));
        s << "Number of Records\t" << stats["records"].get<std::size_t>() << '\n'
          << "MeSH Categories\t" << stats["mesh_categories"].get<std::size_t>() << '\n'
          << "MeSH used\t" << stats["mesh_used"].get<std::size_t>() << '\n'
          << "Largest Component\t" << stats["largest_component"].get<std::size_t>() << '\n';
    }
    print_summary(json{{"subcommand", "basemap"},
                       {"fingerprint", bm.cats.fingerprint()},
                       {"stats", stats},
                       {"outputs", {basemap_path, pajek_path, vos_path, svg_path,
                                    out_path(config, "stats.txt")}}});
    return 0;
}

int run_overlay(const Config& config, const std::string& basemap_path,
                const std::string& sample_path) {
    MeshTree tree = load_tree(config.tree_path);
    LoadedBaseMap loaded = load_basemap(basemap_path);
    CategorySet cats = make_category_set(tree, loaded.map.cats.depth_mode,
                                         loaded.map.cats.branch_filter);
    if (cats.fingerprint() != loaded.map.cats.fingerprint()) {
        std::ostringstream msg;
        msg << "category set from tree (fingerprint " << cats.fingerprint()
            << ") does not match base map (fingerprint "
            << loaded.map.cats.fingerprint() << ")";
        throw std::runtime_error(msg.str());
    }
    Corpus sample = parse_medline(read_input(sample_path), config.source_mode);
    IncidenceMatrix m = build_matrix(sample, tree, cats);
    Overlay o = build_overlay(sample, tree, cats, config.counting_mode);

    std::string matrix_path = out_path(config, "matrix.txt");
    std::string labels_path = out_path(config, "labels.sps");
    export_matrix(m, matrix_path, labels_path);
    std::string vec_path = out_path(config, "pajek.vec");
    emit_vector(o, vec_path);
    std::string vos_path = out_path(config, "vos.txt");
    emit_overlay_map(o, loaded.map, vos_path);
    std::string svg_path = out_path(config, "overlay.svg");
    emit_svg(loaded.map, o.sizes(), svg_path);

    print_summary(json{{"subcommand", "overlay"},
                       {"records", sample.records.size()},
                       {"attributions", o.n_attributions},
                       {"active", o.active_count()},
                       {"outputs", {matrix_path, labels_path, vec_path, vos_path,
                                    svg_path}}});
    return 0;
}

int run_trajectory(const Config& config, const std::string& basemap_path,
                   const std::string& sample_path, int from, int to) {
    MeshTree tree = load_tree(config.tree_path);
    LoadedBaseMap loaded = load_basemap(basemap_path);
    CategorySet cats = make_category_set(tree, loaded.map.cats.depth_mode,
                                         loaded.map.cats.branch_filter);
    if (cats.fingerprint() != loaded.map.cats.fingerprint())
        throw std::runtime_error("category set does not match base map");
    Corpus sample = parse_medline(read_input(sample_path), config.source_mode);
    TrajectoryRun run =
        pubmap::run_trajectory(sample, tree, cats, from, to, config.counting_mode);

    std::string stats_path = out_path(config, "trajectory_stats.txt");
    emit_stats(run, stats_path);
    std::string frames_dir = out_path(config, "frames");
    auto frames = render_frames(run, loaded.map, frames_dir);

    print_summary(json{{"subcommand", "trajectory"},
                       {"years", run.years},
                       {"frames", frames.size()},
                       {"skipped_missing_year", run.skipped_missing_year},
                       {"skipped_out_of_range", run.skipped_out_of_range},
                       {"outputs", {stats_path, frames_dir}}});
    return 0;
}

int run_matrix(const Config& config, const std::string& corpus_path,
               bool multiplicity_cells) {
    MeshTree tree = load_tree(config.tree_path);
    Corpus corpus = parse_medline(read_input(corpus_path), config.source_mode);
    CategorySet cats =
        make_category_set(tree, config.depth_mode, config.branch_filter);
    IncidenceMatrix m = build_matrix(corpus, tree, cats);
    std::string matrix_path = out_path(config, "matrix.txt");
    std::string labels_path = out_path(config, "labels.sps");
    export_matrix(m, matrix_path, labels_path,
                  multiplicity_cells ? CountingMode::attributions
                                     : CountingMode::documents);
    print_summary(json{{"subcommand", "matrix"},
                       {"records", corpus.records.size()},
                       {"categories", cats.size()},
                       {"used", m.used_count()},
                       {"outputs", {matrix_path, labels_path}}});
    return 0;
}

int run_eigen(const Config& config, const std::string& corpus_path) {
    MeshTree tree = load_tree(config.tree_path);
    Corpus corpus = parse_medline(read_input(corpus_path), config.source_mode);
    CategorySet cats =
        make_category_set(tree, config.depth_mode, config.branch_filter);
    IncidenceMatrix m = build_matrix(corpus, tree, cats);
    EigenSummary e = eigen_summary(m);
    std::cout << "n_vars\t" << e.n_vars << '\n'
              << "dropped_constant\t" << e.n_dropped_constant << '\n'
              << "n_eigen_gt_1\t" << e.n_eigen_gt_1 << '\n'
              << "pct_variance_eigen_gt_1\t" << e.pct_variance_eigen_gt_1 << '\n'
              << "pct_variance_top_10\t" << e.pct_variance_top_10 << '\n';
    print_summary(json{{"subcommand", "eigen"},
                       {"n_vars", e.n_vars},
                       {"n_eigen_gt_1", e.n_eigen_gt_1},
                       {"pct_variance_eigen_gt_1", e.pct_variance_eigen_gt_1},
                       {"pct_variance_top_10", e.pct_variance_top_10}});
    return 0;
}

int run_bridge(const Config& config, const std::string& kind,
               const std::string& input_path) {
    std::string text = read_input(input_path);
    PmidList pmids =
        kind == "scopus" ? parse_scopus_pmids(text) : parse_match(text);
    std::string pmid_path = out_path(config, "pmid.txt");
    {
        std::ofstream out(pmid_path);
        out << compose_query(pmids) << '\n';
    }
    print_summary(json{{"subcommand", "bridge"},
                       {"kind", kind},
                       {"pmids", pmids.pmids.size()},
                       {"unmatched", pmids.unmatched_keys.size()},
                       {"skipped_lines", pmids.skipped_lines},
                       {"outputs", {pmid_path}}});
    return 0;
}

int run_fetch(FetchJob job) {
    if (job.api_key.empty()) {
        if (const char* key = std::getenv("PUBMAP_API_KEY")) job.api_key = key;
    }
    FetchReport report = fetch(job);
    print_summary(json{{"subcommand", "fetch"},
                       {"expected", report.expected},
                       {"retrieved", report.retrieved},
                       {"search_requests", report.search_requests},
                       {"fetch_requests", report.fetch_requests},
                       {"retries", report.retries},
                       {"resumed_from", report.resumed_from},
                       {"warnings", report.warnings},
                       {"outputs", {job.out_path}}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MeSH-based science maps from Medline tagged files"};
    app.require_subcommand(1);

    Config config;
    std::string config_path;
    ModeFlags flags;
    std::string corpus_path = "-";
    std::string sample_path = "-";
    std::string basemap_path;
    int year_from = 0, year_to = 0;
    bool multiplicity_cells = false;
    std::string bridge_input = "-";
    FetchJob job;

    auto* cmd_basemap = app.add_subcommand("basemap", "build a base map from a corpus");
    add_config_flags(cmd_basemap, config, config_path);
    add_mode_flags(cmd_basemap, flags);
    cmd_basemap->add_option("corpus", corpus_path, "tagged Medline file, - for stdin");

    auto* cmd_overlay = app.add_subcommand("overlay", "overlay a sample on a base map");
    add_config_flags(cmd_overlay, config, config_path);
    add_mode_flags(cmd_overlay, flags);
    cmd_overlay->add_option("--basemap", basemap_path, "basemap.json from a basemap run")
        ->required();
    cmd_overlay->add_option("sample", sample_path, "tagged Medline sample, - for stdin");

    auto* cmd_traj = app.add_subcommand("trajectory", "year-sliced overlays and frames");
    add_config_flags(cmd_traj, config, config_path);
    add_mode_flags(cmd_traj, flags);
    cmd_traj->add_option("--basemap", basemap_path, "basemap.json")->required();
    cmd_traj->add_option("--from", year_from, "first year")->required();
    cmd_traj->add_option("--to", year_to, "last year")->required();
    cmd_traj->add_option("sample", sample_path, "tagged Medline sample");

    auto* cmd_matrix = app.add_subcommand("matrix", "export the document x category matrix");
    add_config_flags(cmd_matrix, config, config_path);
    add_mode_flags(cmd_matrix, flags);
    cmd_matrix->add_flag("--multiplicity", multiplicity_cells,
                         "write attribution counts instead of binary incidence");
    cmd_matrix->add_option("corpus", corpus_path, "tagged Medline file");

    auto* cmd_eigen = app.add_subcommand("eigen", "correlation eigenvalue summary");
    add_config_flags(cmd_eigen, config, config_path);
    add_mode_flags(cmd_eigen, flags);
    cmd_eigen->add_option("corpus", corpus_path, "tagged Medline file");

    auto* cmd_bridge = app.add_subcommand("bridge", "citation-database exports to pmid.txt");
    std::string bridge_kind;
    auto* cmd_wos = cmd_bridge->add_subcommand("wos", "parse a citation-matcher reply");
    auto* cmd_scopus = cmd_bridge->add_subcommand("scopus", "parse a Scopus export");
    cmd_bridge->require_subcommand(1);
    for (auto* sub : {cmd_wos, cmd_scopus}) {
        sub->add_option("input", bridge_input, "input file, - for stdin");
        sub->add_option("--out", config.output_dir, "output directory");
    }

    auto* cmd_fetch = app.add_subcommand("fetch", "retrieve tagged records over HTTP");
    cmd_fetch->add_option("--query", job.query, "search expression")->required();
    cmd_fetch->add_option("--from", job.date_from, "first publication year");
    cmd_fetch->add_option("--to", job.date_to, "last publication year");
    cmd_fetch->add_option("--page-size", job.page_size, "records per request");
    cmd_fetch->add_option("--base-url", job.base_url, "service base URL");
    cmd_fetch->add_option("--api-key", job.api_key, "credential (or PUBMAP_API_KEY)");
    cmd_fetch->add_option("--rate", job.max_requests_per_second,
                          "max requests per second");
    cmd_fetch->add_option("--out-file", job.out_path, "output tagged file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) load_config_file(config, config_path);
        flags.apply(config);
        config.source_mode = resolve_source(config, !flags.source.empty());

        if (cmd_basemap->parsed()) return run_basemap(config, corpus_path);
        if (cmd_overlay->parsed()) return run_overlay(config, basemap_path, sample_path);
        if (cmd_traj->parsed())
            return run_trajectory(config, basemap_path, sample_path, year_from, year_to);
        if (cmd_matrix->parsed()) return run_matrix(config, corpus_path, multiplicity_cells);
        if (cmd_eigen->parsed()) return run_eigen(config, corpus_path);
        if (cmd_bridge->parsed())
            return run_bridge(config, cmd_scopus->parsed() ? "scopus" : "wos",
                              bridge_input);
        if (cmd_fetch->parsed()) return run_fetch(job);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
