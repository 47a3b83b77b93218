#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pubmap/medline.hpp"
#include "pubmap/mesh_tree.hpp"

namespace pubmap {

enum class DepthMode {
    strict_levels_1_2,  // columns are the level-1 and level-2 categories
    collapsed_to_level_2  // deep numbers fold into level-2; level-1 ignored
};

enum class CountingMode { attributions, documents };

struct Category {
    std::string label;
    TreeNumber number;
    char branch;
};

/// Ordered category columns; order is by tree number so indices are
/// reproducible across runs.
struct CategorySet {
    std::vector<Category> categories;
    DepthMode depth_mode = DepthMode::strict_levels_1_2;
    std::string branch_filter;  // branch letters, empty = all

    std::size_t size() const { return categories.size(); }
    // index by tree number; -1 if absent
    int index_of(const TreeNumber& t) const;
    // stable hash over categories + mode, used to pair overlays with maps
    std::uint64_t fingerprint() const;

private:
    mutable std::map<TreeNumber, int> index_;
};

CategorySet make_category_set(const MeshTree& tree, DepthMode mode,
                              const std::string& branch_filter);

struct IncidenceMatrix {
    std::vector<std::uint64_t> row_pmids;
    CategorySet cols;
    // per row: column -> attribution multiplicity (>= 1)
    std::vector<std::map<int, int>> attributions;
    std::vector<long> col_occurrences;  // total attributions per column
    std::size_t unmapped_headings = 0;
    std::size_t ineligible_records = 0;

    bool used(int col) const { return col_occurrences[col] > 0; }
    std::size_t used_count() const;
    // documents carrying column j (binary incidence)
    long doc_count(int col) const;
};

/// Category hits for one record. A heading hits each category at most
/// once, however many of its tree numbers land there.
std::vector<std::pair<int, int>> map_headings(const MedlineRecord& r,
                                              const MeshTree& tree,
                                              const CategorySet& cats,
                                              std::size_t* unmapped = nullptr);

IncidenceMatrix build_matrix(const Corpus& c, const MeshTree& tree,
                             const CategorySet& cats, bool drop_empty_rows = false);

/// Cosine similarity between used category columns over binary document
/// incidence. Unused columns keep their index but have no entries.
struct CosineMatrix {
    std::size_t n = 0;                     // column count incl. unused
    std::vector<std::vector<double>> values;  // n x n, zero where undefined
    std::vector<bool> used;

    double at(int i, int j) const { return values[i][j]; }
};

CosineMatrix cosine_matrix(const IncidenceMatrix& m);

struct EigenSummary {
    int n_vars = 0;                  // non-constant used columns
    int n_dropped_constant = 0;
    std::vector<double> eigenvalues;  // descending
    int n_eigen_gt_1 = 0;
    double pct_variance_eigen_gt_1 = 0.0;
    double pct_variance_top_10 = 0.0;
};

/// Eigenvalue spectrum of the Pearson correlation matrix over used,
/// non-constant columns. Totals match what an orthogonally rotated
/// factor solution would report.
EigenSummary eigen_summary(const IncidenceMatrix& m);

// tab-separated matrix with a header row of labels, plus a variable-label
// sidecar in statistical-package syntax
void export_matrix(const IncidenceMatrix& m, const std::string& data_path,
                   const std::string& labels_path,
                   CountingMode cells = CountingMode::documents);

struct ImportedMatrix {
    std::vector<std::string> labels;
    std::vector<std::uint64_t> row_pmids;
    std::vector<std::vector<int>> cells;
};

ImportedMatrix import_matrix(const std::string& data_path);

}  // namespace pubmap
