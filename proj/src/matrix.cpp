#include "pubmap/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pubmap {

int CategorySet::index_of(const TreeNumber& t) const {
    if (index_.empty() && !categories.empty()) {
        for (std::size_t i = 0; i < categories.size(); ++i)
            index_.emplace(categories[i].number, static_cast<int>(i));
    }
    auto it = index_.find(t);
    return it == index_.end() ? -1 : it->second;
}

std::uint64_t CategorySet::fingerprint() const {
    // FNV-1a
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0x1f;
        h *= 1099511628211ull;
    };
    for (const auto& c : categories) {
        mix(c.label);
        mix(c.number.str());
    }
    mix(depth_mode == DepthMode::strict_levels_1_2 ? "strict" : "collapsed");
    mix(branch_filter);
    return h;
}

CategorySet make_category_set(const MeshTree& tree, DepthMode mode,
                              const std::string& branch_filter) {
    CategorySet out;
    out.depth_mode = mode;
    out.branch_filter = branch_filter;
    std::map<TreeNumber, std::string> selected;
    for (const auto& d : tree.descriptors()) {
        for (const auto& t : d.tree_numbers) {
            if (!branch_filter.empty() &&
                branch_filter.find(t.branch()) == std::string::npos)
                continue;
            bool admit = mode == DepthMode::strict_levels_1_2 ? t.level() <= 2
                                                              : t.level() == 2;
            if (admit) selected.emplace(t, d.label);
        }
    }
    for (const auto& [number, label] : selected)
        out.categories.push_back({label, number, number.branch()});
    return out;
}

std::vector<std::pair<int, int>> map_headings(const MedlineRecord& r,
                                              const MeshTree& tree,
                                              const CategorySet& cats,
                                              std::size_t* unmapped) {
    std::map<int, int> hits;
    for (const auto& h : r.headings) {
        const Descriptor* d = tree.find_label(h.label);
        if (!d) {
            if (unmapped) ++*unmapped;
            continue;
        }
        std::set<int> per_heading;
        for (const auto& t : d->tree_numbers) {
            int idx = -1;
            if (cats.depth_mode == DepthMode::strict_levels_1_2) {
                if (t.level() <= 2) idx = cats.index_of(t);
            } else {
                if (t.level() >= 2) idx = cats.index_of(t.ancestor_at_level(2));
            }
            if (idx >= 0) per_heading.insert(idx);
        }
        for (int idx : per_heading) ++hits[idx];
    }
    return {hits.begin(), hits.end()};
}

IncidenceMatrix build_matrix(const Corpus& c, const MeshTree& tree,
                             const CategorySet& cats, bool drop_empty_rows) {
    if (cats.size() == 0)
        throw std::invalid_argument("empty category set");
    IncidenceMatrix m;
    m.cols = cats;
    m.col_occurrences.assign(cats.size(), 0);
    for (const auto& r : c.records) {
        std::map<int, int> row;
        if (mesh_eligible(r)) {
            for (const auto& [idx, mult] : map_headings(r, tree, cats, &m.unmapped_headings))
                row[idx] = mult;
        } else {
            ++m.ineligible_records;
        }
        if (row.empty() && drop_empty_rows) continue;
        for (const auto& [idx, mult] : row) m.col_occurrences[idx] += mult;
        m.row_pmids.push_back(r.pmid);
        m.attributions.push_back(std::move(row));
    }
    return m;
}

std::size_t IncidenceMatrix::used_count() const {
    return static_cast<std::size_t>(
        std::count_if(col_occurrences.begin(), col_occurrences.end(),
                      [](long n) { return n > 0; }));
}

long IncidenceMatrix::doc_count(int col) const {
    long n = 0;
    for (const auto& row : attributions) n += row.count(col) ? 1 : 0;
    return n;
}

CosineMatrix cosine_matrix(const IncidenceMatrix& m) {
    CosineMatrix out;
    out.n = m.cols.size();
    out.values.assign(out.n, std::vector<double>(out.n, 0.0));
    out.used.assign(out.n, false);

    std::vector<long> docs(out.n, 0);
    std::map<std::pair<int, int>, long> joint;
    for (const auto& row : m.attributions) {
        for (auto it = row.begin(); it != row.end(); ++it) {
            ++docs[it->first];
            for (auto jt = std::next(it); jt != row.end(); ++jt)
                ++joint[{it->first, jt->first}];
        }
    }
    for (std::size_t i = 0; i < out.n; ++i) {
        if (docs[i] > 0) {
            out.used[i] = true;
            out.values[i][i] = 1.0;
        }
    }
    for (const auto& [pair, both] : joint) {
        auto [i, j] = pair;
        double cos = static_cast<double>(both) /
                     std::sqrt(static_cast<double>(docs[i]) *
                               static_cast<double>(docs[j]));
        out.values[i][j] = cos;
        out.values[j][i] = cos;
    }
    return out;
}

EigenSummary eigen_summary(const IncidenceMatrix& m) {
    // usable = used and non-constant over the rows
    std::vector<int> cols;
    std::size_t n_rows = m.attributions.size();
    int dropped = 0;
    for (std::size_t j = 0; j < m.cols.size(); ++j) {
        if (!m.used(static_cast<int>(j))) continue;
        long d = m.doc_count(static_cast<int>(j));
        if (d == 0 || d == static_cast<long>(n_rows)) {
            ++dropped;  // constant column, correlation undefined
            continue;
        }
        cols.push_back(static_cast<int>(j));
    }
    if (cols.size() < 2)
        throw std::invalid_argument("eigen_summary needs at least 2 usable columns");

    Eigen::MatrixXd data(n_rows, cols.size());
    data.setZero();
    for (std::size_t i = 0; i < n_rows; ++i)
        for (std::size_t k = 0; k < cols.size(); ++k)
            data(i, k) = m.attributions[i].count(cols[k]) ? 1.0 : 0.0;

    Eigen::RowVectorXd mean = data.colwise().mean();
    Eigen::MatrixXd centered = data.rowwise() - mean;
    Eigen::VectorXd sd = (centered.array().square().colwise().sum() /
                          static_cast<double>(n_rows))
                             .sqrt();
    Eigen::MatrixXd corr =
        (centered.transpose() * centered) / static_cast<double>(n_rows);
    for (Eigen::Index a = 0; a < corr.rows(); ++a)
        for (Eigen::Index b = 0; b < corr.cols(); ++b)
            corr(a, b) /= sd(a) * sd(b);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr);
    EigenSummary out;
    out.n_vars = static_cast<int>(cols.size());
    out.n_dropped_constant = dropped;
    out.eigenvalues.assign(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());

    constexpr double kUnityTol = 1e-9;
    double sum_gt_1 = 0.0, sum_top_10 = 0.0;
    for (std::size_t i = 0; i < out.eigenvalues.size(); ++i) {
        double ev = out.eigenvalues[i];
        if (ev > 1.0 + kUnityTol) {
            ++out.n_eigen_gt_1;
            sum_gt_1 += ev;
        }
        if (i < 10) sum_top_10 += ev;
    }
    out.pct_variance_eigen_gt_1 = 100.0 * sum_gt_1 / out.n_vars;
    out.pct_variance_top_10 = 100.0 * sum_top_10 / out.n_vars;
    return out;
}

void export_matrix(const IncidenceMatrix& m, const std::string& data_path,
                   const std::string& labels_path, CountingMode cells) {
    std::ofstream data(data_path);
    if (!data) throw std::runtime_error("cannot write " + data_path);
    data << "PMID";
    for (const auto& c : m.cols.categories) data << '\t' << c.label;
    data << '\n';
    for (std::size_t i = 0; i < m.attributions.size(); ++i) {
        data << m.row_pmids[i];
        for (std::size_t j = 0; j < m.cols.size(); ++j) {
            auto it = m.attributions[i].find(static_cast<int>(j));
            int v = it == m.attributions[i].end() ? 0 : it->second;
            if (cells == CountingMode::documents && v > 0) v = 1;
            data << '\t' << v;
        }
        data << '\n';
    }

    std::ofstream labels(labels_path);
    if (!labels) throw std::runtime_error("cannot write " + labels_path);
    labels << "VARIABLE LABELS\n";
    for (std::size_t j = 0; j < m.cols.size(); ++j) {
        labels << " v" << (j + 1) << " \"" << m.cols.categories[j].label << "\"";
        labels << (j + 1 == m.cols.size() ? " .\n" : "\n");
    }
    labels << "EXECUTE.\n";
}

ImportedMatrix import_matrix(const std::string& data_path) {
    std::ifstream in(data_path);
    if (!in) throw std::runtime_error("cannot read " + data_path);
    ImportedMatrix out;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty matrix file");
    {
        std::istringstream hs(line);
        std::string cell;
        bool first = true;
        while (std::getline(hs, cell, '\t')) {
            if (first) {
                first = false;  // PMID column
            } else {
                out.labels.push_back(cell);
            }
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream rs(line);
        std::string cell;
        std::getline(rs, cell, '\t');
        out.row_pmids.push_back(std::strtoull(cell.c_str(), nullptr, 10));
        std::vector<int> row;
        while (std::getline(rs, cell, '\t')) row.push_back(std::stoi(cell));
        out.cells.push_back(std::move(row));
    }
    return out;
}

}  // namespace pubmap
