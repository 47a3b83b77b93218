#include "pubmap/mesh_tree.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

namespace pubmap {

namespace {

bool valid_first_segment(const std::string& s) {
    if (s.empty()) return false;
    if (std::strchr(TreeNumber::kBranchCodes, s.front()) == nullptr) return false;
    return std::all_of(s.begin() + 1, s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

bool valid_deep_segment(const std::string& s) {
    if (s.size() != 3) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::optional<TreeNumber> TreeNumber::parse(const std::string& text) {
    std::vector<std::string> segments;
    std::string segment;
    std::istringstream in(text);
    while (std::getline(in, segment, '.')) segments.push_back(segment);
    if (segments.empty()) return std::nullopt;
    if (!valid_first_segment(segments.front())) return std::nullopt;
    for (std::size_t i = 1; i < segments.size(); ++i)
        if (!valid_deep_segment(segments[i])) return std::nullopt;
    return TreeNumber(std::move(segments));
}

TreeNumber TreeNumber::parse_or_throw(const std::string& text) {
    auto t = parse(text);
    if (!t) throw std::invalid_argument("invalid tree number: '" + text + "'");
    return *t;
}

TreeNumber TreeNumber::ancestor_at_level(int k) const {
    if (k < 1 || k > level())
        throw std::out_of_range("ancestor level " + std::to_string(k) +
                                " out of range for " + str());
    return TreeNumber(std::vector<std::string>(segments_.begin(), segments_.begin() + k));
}

std::string TreeNumber::str() const {
    std::string out = segments_.front();
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        out += '.';
        out += segments_[i];
    }
    return out;
}

std::string normalize_label(const std::string& label) {
    std::string out = trim(label);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

MeshTree MeshTree::parse_tree_file(const std::string& text) {
    MeshTree tree;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto sep = line.rfind(';');
        if (sep == std::string::npos)
            throw ParseError("tree line missing ';'", lineno);
        std::string label = trim(line.substr(0, sep));
        std::string number_text = trim(line.substr(sep + 1));
        if (label.empty()) throw ParseError("tree line with empty label", lineno);
        auto number = TreeNumber::parse(number_text);
        if (!number)
            throw ParseError("invalid tree number '" + number_text + "'", lineno);

        std::string key = normalize_label(label);
        auto it = tree.by_label_.find(key);
        std::size_t idx;
        if (it == tree.by_label_.end()) {
            idx = tree.descriptors_.size();
            tree.descriptors_.push_back({label, {}});
            tree.by_label_.emplace(key, idx);
        } else {
            idx = it->second;
        }
        if (tree.descriptors_[idx].tree_numbers.insert(*number).second)
            tree.by_number_.emplace(*number, tree.descriptors_[idx].label);
    }
    return tree;
}

const Descriptor* MeshTree::find_label(const std::string& label) const {
    auto it = by_label_.find(normalize_label(label));
    if (it == by_label_.end()) return nullptr;
    return &descriptors_[it->second];
}

std::optional<std::string> MeshTree::label_of(const TreeNumber& number) const {
    auto it = by_number_.find(number);
    if (it == by_number_.end()) return std::nullopt;
    return it->second;
}

std::vector<BranchStats> MeshTree::branch_stats() const {
    std::map<char, BranchStats> stats;
    for (const auto& [number, label] : by_number_) {
        auto& s = stats.try_emplace(number.branch(),
                                    BranchStats{number.branch(), 0, 0}).first->second;
        ++s.term_count;
        s.max_depth = std::max(s.max_depth, number.level());
    }
    std::vector<BranchStats> out;
    for (const auto& [branch, s] : stats) out.push_back(s);
    return out;
}

std::vector<std::pair<std::string, TreeNumber>> MeshTree::entries() const {
    std::vector<std::pair<std::string, TreeNumber>> out;
    for (const auto& [number, label] : by_number_) out.emplace_back(label, number);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    return out;
}

}  // namespace pubmap
