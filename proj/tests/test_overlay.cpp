#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pubmap/overlay.hpp"

using namespace pubmap;

namespace {

MeshTree fixture_tree() {
    return MeshTree::parse_tree_file(
        "Cardiovascular Diseases;C14\n"
        "Cardiovascular Infections;C14.260\n"
        "Endocarditis, Bacterial;C14.260.249\n"
        "Heart Diseases;C14.280\n"
        "Proteins;D12.776\n"
        "Amino Acids, Peptides, and Proteins;D12\n"
        "RNA;D13.150.650\n"
        "Nucleic Acids;D13.150\n"
        "Diagnosis;E01\n");
}

MedlineRecord record_with(std::uint64_t pmid, std::vector<std::string> labels) {
    MedlineRecord r;
    r.pmid = pmid;
    r.status = "MEDLINE";
    r.owner = "NLM";
    for (auto& l : labels) r.headings.push_back({std::move(l), false, {}});
    return r;
}

}  // namespace

TEST_CASE("overlay counts attributions and reports active nodes") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    Corpus sample;
    sample.records = {record_with(1, {"Proteins", "Diagnosis"}),
                      record_with(2, {"Proteins"})};
    Overlay o = build_overlay(sample, tree, cats);
    int proteins = cats.index_of(TreeNumber::parse_or_throw("D12.776"));
    int diagnosis = cats.index_of(TreeNumber::parse_or_throw("E01"));
    CHECK(o.counts[proteins] == 2);
    CHECK(o.counts[diagnosis] == 1);
    CHECK(o.active_count() == 2);
    CHECK(o.n_records == 2);
    CHECK(o.n_attributions == 3);
}

TEST_CASE("empty sample gives all-zero counts") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    Overlay o = build_overlay(Corpus{}, tree, cats);
    CHECK(o.active_count() == 0);
    for (long c : o.counts) CHECK(c == 0);
}

TEST_CASE("sizes are exactly log2(count + 1)") {
    Overlay o;
    o.counts = {0, 1, 3, 7, 31};
    auto sizes = o.sizes();
    CHECK(sizes[0] == 0.0);
    CHECK(sizes[1] == 1.0);
    CHECK(sizes[2] == 2.0);
    CHECK(sizes[3] == 3.0);
    CHECK(sizes[4] == 5.0);
}

TEST_CASE("document counting mode counts each record once per category") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::collapsed_to_level_2, "CDE");
    // RNA and Nucleic Acids both fold to D13.150 within one record
    Corpus sample;
    sample.records = {record_with(1, {"RNA", "Nucleic Acids"})};
    int idx = cats.index_of(TreeNumber::parse_or_throw("D13.150"));
    CHECK(build_overlay(sample, tree, cats, CountingMode::attributions).counts[idx] == 2);
    CHECK(build_overlay(sample, tree, cats, CountingMode::documents).counts[idx] == 1);
}

TEST_CASE("overlay additivity over disjoint samples") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    Corpus a, b, both;
    a.records = {record_with(1, {"Proteins"}), record_with(2, {"Diagnosis"})};
    b.records = {record_with(3, {"Proteins", "Heart Diseases"})};
    both.records = a.records;
    both.records.insert(both.records.end(), b.records.begin(), b.records.end());
    Overlay oa = build_overlay(a, tree, cats);
    Overlay ob = build_overlay(b, tree, cats);
    Overlay osum = build_overlay(both, tree, cats);
    for (std::size_t j = 0; j < cats.size(); ++j)
        CHECK(osum.counts[j] == oa.counts[j] + ob.counts[j]);
}

TEST_CASE("deep headings contribute only in collapsed mode, level-1 only in strict") {
    MeshTree tree = fixture_tree();
    CategorySet strict = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    CategorySet collapsed =
        make_category_set(tree, DepthMode::collapsed_to_level_2, "CDE");
    Corpus deep;
    deep.records = {record_with(1, {"Endocarditis, Bacterial"})};  // level 3
    CHECK(build_overlay(deep, tree, strict).active_count() == 0);
    CHECK(build_overlay(deep, tree, collapsed).active_count() == 1);
    Corpus shallow;
    shallow.records = {record_with(2, {"Diagnosis"})};  // level 1 only
    CHECK(build_overlay(shallow, tree, strict).active_count() == 1);
    CHECK(build_overlay(shallow, tree, collapsed).active_count() == 0);
}

TEST_CASE("vector file is positional over the whole base map") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    Corpus sample;
    sample.records = {record_with(1, {"Proteins"})};
    Overlay o = build_overlay(sample, tree, cats);

    auto dir = std::filesystem::temp_directory_path() / "pubmap_vec_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "pajek.vec").string();
    emit_vector(o, path);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "*Vertices " + std::to_string(cats.size()));
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == cats.size());

    auto values = parse_vector(path);
    REQUIRE(values.size() == cats.size());
    int proteins = cats.index_of(TreeNumber::parse_or_throw("D12.776"));
    CHECK(values[proteins] == 1.0);
    for (std::size_t j = 0; j < values.size(); ++j)
        if (static_cast<int>(j) != proteins) CHECK(values[j] == 0.0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("overlay map weights are size over max size") {
    std::vector<double> weights =
        normalized_weights({1.0, 2.0, 0.0});  // counts {1, 3} and inactive
    CHECK(weights[0] == 0.5);
    CHECK(weights[1] == 1.0);
    CHECK(weights[2] == 0.0);
    CHECK(normalized_weights({0.0, 0.0}) == std::vector<double>{0.0, 0.0});
    CHECK(normalized_weights({2.5}) == std::vector<double>{1.0});
}

TEST_CASE("overlay refuses a base map with a different category set") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    Overlay o = build_overlay(Corpus{}, tree, cats);
    BaseMap bm;
    bm.cats = make_category_set(tree, DepthMode::strict_levels_1_2, "C");
    bm.coords.assign(bm.cats.size(), {0.5, 0.5});
    bm.partition.assign(bm.cats.size(), 1);
    CHECK_THROWS_AS(emit_overlay_map(o, bm, "/tmp/should_not_exist.txt"),
                    std::invalid_argument);
}
