#include "pubmap/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pubmap {

using json = nlohmann::json;

DepthMode parse_depth_mode(const std::string& s) {
    if (s == "strict") return DepthMode::strict_levels_1_2;
    if (s == "collapsed" || s == "plus") return DepthMode::collapsed_to_level_2;
    throw std::invalid_argument("unknown depth mode: " + s);
}

SourceMode parse_source_mode(const std::string& s) {
    if (s == "pubmed") return SourceMode::pubmed;
    if (s == "wok") return SourceMode::wok;
    throw std::invalid_argument("unknown source mode: " + s);
}

CountingMode parse_counting_mode(const std::string& s) {
    if (s == "attributions") return CountingMode::attributions;
    if (s == "documents") return CountingMode::documents;
    throw std::invalid_argument("unknown counting mode: " + s);
}

void load_config_file(Config& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? "" : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "tree_path") config.tree_path = value;
        else if (key == "branch_filter") config.branch_filter = value;
        else if (key == "depth_mode") config.depth_mode = parse_depth_mode(value);
        else if (key == "cosine_threshold") config.cosine_threshold = std::stod(value);
        else if (key == "layout_seed") config.layout_seed = std::stoull(value);
        else if (key == "output_dir") config.output_dir = value;
        else if (key == "source_mode") config.source_mode = parse_source_mode(value);
        else if (key == "counting_mode") config.counting_mode = parse_counting_mode(value);
        else
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
    }
}

void save_basemap(const BaseMap& bm, const Config& config, const std::string& path) {
    json doc;
    doc["fingerprint"] = bm.cats.fingerprint();
    doc["depth_mode"] =
        bm.cats.depth_mode == DepthMode::strict_levels_1_2 ? "strict" : "collapsed";
    doc["branch_filter"] = bm.cats.branch_filter;
    doc["cosine_threshold"] = config.cosine_threshold;
    doc["layout_seed"] = config.layout_seed;
    json cats = json::array();
    for (const auto& c : bm.cats.categories)
        cats.push_back({{"label", c.label}, {"number", c.number.str()}});
    doc["categories"] = std::move(cats);
    doc["occurrences"] = bm.occurrences;
    json coords = json::array();
    for (const auto& p : bm.coords) coords.push_back({p.x, p.y});
    doc["coords"] = std::move(coords);
    json edges = json::array();
    for (const auto& e : bm.graph.edges) edges.push_back({e.a, e.b, e.weight});
    doc["edges"] = std::move(edges);
    doc["partition"] = bm.partition;
    doc["component"] = bm.component;
    doc["largest_component"] = bm.largest;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(1) << '\n';
}

LoadedBaseMap load_basemap(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read base map " + path);
    json doc = json::parse(in);

    LoadedBaseMap out;
    BaseMap& bm = out.map;
    bm.cats.depth_mode = parse_depth_mode(doc.at("depth_mode").get<std::string>());
    bm.cats.branch_filter = doc.at("branch_filter").get<std::string>();
    for (const auto& c : doc.at("categories")) {
        TreeNumber t = TreeNumber::parse_or_throw(c.at("number").get<std::string>());
        bm.cats.categories.push_back({c.at("label").get<std::string>(), t, t.branch()});
    }
    bm.occurrences = doc.at("occurrences").get<std::vector<long>>();
    for (const auto& p : doc.at("coords"))
        bm.coords.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    bm.graph.n = bm.cats.size();
    for (const auto& e : doc.at("edges"))
        bm.graph.edges.push_back(
            {e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    bm.partition = doc.at("partition").get<std::vector<int>>();
    bm.component = doc.at("component").get<std::vector<int>>();
    bm.largest = doc.at("largest_component").get<std::vector<int>>();

    if (doc.at("fingerprint").get<std::uint64_t>() != bm.cats.fingerprint())
        throw std::runtime_error("base map fingerprint mismatch in " + path);

    out.config.branch_filter = bm.cats.branch_filter;
    out.config.depth_mode = bm.cats.depth_mode;
    out.config.cosine_threshold = doc.at("cosine_threshold").get<double>();
    out.config.layout_seed = doc.at("layout_seed").get<std::uint64_t>();
    return out;
}

}  // namespace pubmap
