#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>

#include "pubmap/matrix.hpp"

using namespace pubmap;

namespace {

MeshTree fixture_tree() {
    return MeshTree::parse_tree_file(
        "Cardiovascular Diseases;C14\n"
        "Cardiovascular Infections;C14.260\n"
        "Cardiovascular Infections;C01.539.190\n"
        "Endocarditis, Bacterial;C14.260.249\n"
        "Infections;C01\n"
        "Proteins;D12.776\n"
        "RNA;D13.150.650\n"
        "Nucleic Acids;D13.150\n"
        "Diagnosis;E01\n");
}

MedlineRecord record_with(std::vector<std::string> labels) {
    MedlineRecord r;
    r.pmid = 1;
    r.status = "MEDLINE";
    r.owner = "NLM";
    for (auto& l : labels) r.headings.push_back({std::move(l), false, {}});
    return r;
}

// independent dot/norm oracle over binary columns
double cosine_oracle(const std::vector<std::vector<int>>& cells, int a, int b) {
    double dot = 0, na = 0, nb = 0;
    for (const auto& row : cells) {
        dot += row[a] * row[b];
        na += row[a] * row[a];
        nb += row[b] * row[b];
    }
    if (na == 0 || nb == 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

IncidenceMatrix matrix_from_cells(const std::vector<std::vector<int>>& cells,
                                  const CategorySet& cats) {
    IncidenceMatrix m;
    m.cols = cats;
    m.col_occurrences.assign(cats.size(), 0);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        m.row_pmids.push_back(i + 1);
        std::map<int, int> row;
        for (std::size_t j = 0; j < cells[i].size(); ++j)
            if (cells[i][j] > 0) {
                row[static_cast<int>(j)] = cells[i][j];
                m.col_occurrences[j] += cells[i][j];
            }
        m.attributions.push_back(std::move(row));
    }
    return m;
}

CategorySet synthetic_cats(int n) {
    CategorySet cats;
    cats.depth_mode = DepthMode::strict_levels_1_2;
    for (int j = 0; j < n; ++j) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "C%02d", j + 1);
        TreeNumber t = TreeNumber::parse_or_throw(buf);
        cats.categories.push_back({std::string("cat") + buf, t, 'C'});
    }
    return cats;
}

}  // namespace

TEST_CASE("category set in strict mode keeps levels 1 and 2, ordered") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    std::vector<std::string> numbers;
    for (const auto& c : cats.categories) numbers.push_back(c.number.str());
    CHECK(numbers == std::vector<std::string>{"C01", "C14", "C14.260", "D12.776",
                                              "D13.150", "E01"});
    CHECK(cats.index_of(TreeNumber::parse_or_throw("C14.260")) == 2);
}

TEST_CASE("category set in collapsed mode keeps only level 2") {
    CategorySet cats =
        make_category_set(fixture_tree(), DepthMode::collapsed_to_level_2, "CDE");
    std::vector<std::string> numbers;
    for (const auto& c : cats.categories) numbers.push_back(c.number.str());
    CHECK(numbers == std::vector<std::string>{"C14.260", "D12.776", "D13.150"});
}

TEST_CASE("branch filter restricts columns") {
    CategorySet cats =
        make_category_set(fixture_tree(), DepthMode::strict_levels_1_2, "C");
    for (const auto& c : cats.categories) CHECK(c.branch == 'C');
    CHECK(cats.size() == 3);
}

TEST_CASE("fingerprint changes with mode and content") {
    MeshTree tree = fixture_tree();
    auto a = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    auto b = make_category_set(tree, DepthMode::collapsed_to_level_2, "CDE");
    auto c = make_category_set(tree, DepthMode::strict_levels_1_2, "C");
    CHECK(a.fingerprint() != b.fingerprint());
    CHECK(a.fingerprint() != c.fingerprint());
    CHECK(a.fingerprint() ==
          make_category_set(tree, DepthMode::strict_levels_1_2, "CDE").fingerprint());
}

TEST_CASE("map_headings strict: multi-number label hits only shallow numbers") {
    // Cardiovascular Infections holds C14.260 (level 2) and C01.539.190
    // (level 3); only the former can hit in strict mode
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::strict_levels_1_2, "C");
    auto hits = map_headings(record_with({"Cardiovascular Infections"}), tree, cats);
    REQUIRE(hits.size() == 1);
    CHECK(cats.categories[hits[0].first].number.str() == "C14.260");
    CHECK(hits[0].second == 1);
}

TEST_CASE("map_headings collapsed: deep heading folds to its level-2 ancestor") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::collapsed_to_level_2, "C");
    auto hits = map_headings(record_with({"Endocarditis, Bacterial"}), tree, cats);
    REQUIRE(hits.size() == 1);
    CHECK(cats.categories[hits[0].first].number.str() == "C14.260");
}

TEST_CASE("map_headings collapsed: level-1-only heading never hits") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::collapsed_to_level_2, "CDE");
    CHECK(map_headings(record_with({"Diagnosis"}), tree, cats).empty());
}

TEST_CASE("map_headings dedups per heading and category, sums across headings") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::collapsed_to_level_2, "CDE");
    // RNA (D13.150.650) and Nucleic Acids (D13.150) both land on D13.150
    auto hits = map_headings(record_with({"RNA", "Nucleic Acids"}), tree, cats);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].second == 2);
}

TEST_CASE("unknown labels are counted as unmapped, not errors") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    std::size_t unmapped = 0;
    auto hits = map_headings(record_with({"No Such Heading", "Proteins"}), tree,
                             cats, &unmapped);
    CHECK(unmapped == 1);
    CHECK(hits.size() == 1);
}

TEST_CASE("build_matrix accumulates occurrences and flags unused columns") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    Corpus c;
    auto r1 = record_with({"Proteins"});
    r1.pmid = 1;
    auto r2 = record_with({"Proteins", "Diagnosis"});
    r2.pmid = 2;
    c.records = {r1, r2};
    IncidenceMatrix m = build_matrix(c, tree, cats);
    int proteins = cats.index_of(TreeNumber::parse_or_throw("D12.776"));
    CHECK(m.col_occurrences[proteins] == 2);
    CHECK(m.used_count() == 2);
    CHECK(m.cols.size() == 6);  // unused columns retained
    CHECK(m.row_pmids == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("build_matrix: ineligible records give empty rows") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    Corpus c;
    auto r = record_with({"Proteins"});
    r.owner = "NASA";
    c.records = {r};
    IncidenceMatrix m = build_matrix(c, tree, cats);
    CHECK(m.used_count() == 0);
    CHECK(m.ineligible_records == 1);
    CHECK(m.attributions[0].empty());
}

TEST_CASE("build_matrix rejects an empty category set") {
    CategorySet empty;
    CHECK_THROWS_AS(build_matrix(Corpus{}, fixture_tree(), empty),
                    std::invalid_argument);
}

TEST_CASE("cosine: identity, orthogonality, and the (1,1,0)x(1,0,1) case") {
    // columns over three documents: (1,1,0), (1,0,1), and an unused third
    CategorySet cats = synthetic_cats(3);
    IncidenceMatrix m = matrix_from_cells({{1, 1, 0}, {1, 0, 0}, {0, 1, 0}}, cats);
    CosineMatrix sim = cosine_matrix(m);
    CHECK(sim.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sim.at(0, 1) == 0.5);  // one shared document out of two apiece
    CHECK(sim.at(1, 2) == 0.0);  // unused column
}

TEST_CASE("cosine matches the brute-force oracle on random matrices") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> docs(1, 50), cols(2, 20), coin(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        int n_docs = docs(rng), n_cols = cols(rng);
        std::vector<std::vector<int>> cells(n_docs, std::vector<int>(n_cols, 0));
        for (auto& row : cells)
            for (auto& v : row) v = coin(rng) == 0 ? 1 : 0;
        CategorySet cats = synthetic_cats(n_cols);
        CosineMatrix sim = cosine_matrix(matrix_from_cells(cells, cats));
        for (int a = 0; a < n_cols; ++a)
            for (int b = 0; b < n_cols; ++b) {
                double expected = a == b && sim.used[a] ? 1.0 : cosine_oracle(cells, a, b);
                CHECK(std::abs(sim.at(a, b) - expected) < 1e-12);
            }
    }
}

TEST_CASE("cosine matrix is symmetric with entries in [0,1]") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> coin(0, 2);
    std::vector<std::vector<int>> cells(20, std::vector<int>(8, 0));
    for (auto& row : cells)
        for (auto& v : row) v = coin(rng) == 0 ? 1 : 0;
    CosineMatrix sim = cosine_matrix(matrix_from_cells(cells, synthetic_cats(8)));
    for (std::size_t a = 0; a < sim.n; ++a)
        for (std::size_t b = 0; b < sim.n; ++b) {
            CHECK(sim.at(a, b) == sim.at(b, a));
            CHECK(sim.at(a, b) >= 0.0);
            CHECK(sim.at(a, b) <= 1.0 + 1e-12);
        }
}

TEST_CASE("eigen summary: uncorrelated columns give no factor above unity") {
    // pairwise-uncorrelated design: the correlation matrix is the identity
    std::vector<std::vector<int>> cells = {
        {1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    EigenSummary e = eigen_summary(matrix_from_cells(cells, synthetic_cats(3)));
    CHECK(e.n_vars == 3);
    CHECK(e.n_eigen_gt_1 == 0);
    for (double ev : e.eigenvalues)
        CHECK(ev == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("eigen summary: two perfectly correlated columns") {
    std::vector<std::vector<int>> cells = {{1, 1}, {0, 0}, {1, 1}, {0, 0}};
    EigenSummary e = eigen_summary(matrix_from_cells(cells, synthetic_cats(2)));
    REQUIRE(e.eigenvalues.size() == 2);
    CHECK(e.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(e.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(e.n_eigen_gt_1 == 1);
    CHECK(e.pct_variance_eigen_gt_1 == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("eigen summary: trace identity on a random 30x6 fixture") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<std::vector<int>> cells(30, std::vector<int>(6, 0));
    for (auto& row : cells)
        for (auto& v : row) v = coin(rng);
    EigenSummary e = eigen_summary(matrix_from_cells(cells, synthetic_cats(6)));
    double sum = 0;
    for (double ev : e.eigenvalues) {
        sum += ev;
        CHECK(ev >= -1e-9);
    }
    CHECK(sum == doctest::Approx(static_cast<double>(e.n_vars)).epsilon(1e-9));
}

TEST_CASE("eigen summary drops constant columns and needs two usable ones") {
    std::vector<std::vector<int>> constant = {{1, 1}, {1, 0}, {1, 1}};
    CHECK_THROWS_AS(eigen_summary(matrix_from_cells(constant, synthetic_cats(2))),
                    std::invalid_argument);
    std::vector<std::vector<int>> mixed = {{1, 1, 0}, {1, 0, 1}, {1, 1, 1}};
    EigenSummary e = eigen_summary(matrix_from_cells(mixed, synthetic_cats(3)));
    CHECK(e.n_vars == 2);
    CHECK(e.n_dropped_constant == 1);
}

TEST_CASE("matrix export and import round trip") {
    MeshTree tree = fixture_tree();
    CategorySet cats = make_category_set(tree, DepthMode::strict_levels_1_2, "CDE");
    Corpus c;
    auto r1 = record_with({"Proteins", "Diagnosis"});
    r1.pmid = 11;
    auto r2 = record_with({"Cardiovascular Diseases"});
    r2.pmid = 12;
    c.records = {r1, r2};
    IncidenceMatrix m = build_matrix(c, tree, cats);

    auto dir = std::filesystem::temp_directory_path() / "pubmap_matrix_test";
    std::filesystem::create_directories(dir);
    std::string data = (dir / "matrix.txt").string();
    std::string labels = (dir / "labels.sps").string();
    export_matrix(m, data, labels);

    ImportedMatrix imported = import_matrix(data);
    REQUIRE(imported.labels.size() == cats.size());
    for (std::size_t j = 0; j < cats.size(); ++j)
        CHECK(imported.labels[j] == cats.categories[j].label);
    CHECK(imported.row_pmids == m.row_pmids);
    for (std::size_t i = 0; i < m.attributions.size(); ++i)
        for (std::size_t j = 0; j < cats.size(); ++j) {
            auto it = m.attributions[i].find(static_cast<int>(j));
            int expected = it == m.attributions[i].end() ? 0 : 1;
            CHECK(imported.cells[i][j] == expected);
        }

    // sidecar names every column in order
    std::ifstream sps(labels);
    std::string all((std::istreambuf_iterator<char>(sps)),
                    std::istreambuf_iterator<char>());
    for (const auto& cat : cats.categories)
        CHECK(all.find("\"" + cat.label + "\"") != std::string::npos);
    std::filesystem::remove_all(dir);
}
