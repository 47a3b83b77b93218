#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pubmap {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Dot-separated position in the MeSH tree, e.g. "C14.260.249".
/// The first segment carries the branch letter; deeper segments are
/// 3-digit groups.
class TreeNumber {
public:
    static constexpr const char* kBranchCodes = "ABCDEFGHIJKLMNVZ";

    static std::optional<TreeNumber> parse(const std::string& text);
    static TreeNumber parse_or_throw(const std::string& text);

    int level() const { return static_cast<int>(segments_.size()); }
    char branch() const { return segments_.front().front(); }

    // prefix with k segments; k must be in [1, level()]
    TreeNumber ancestor_at_level(int k) const;

    std::string str() const;

    bool operator==(const TreeNumber& o) const { return segments_ == o.segments_; }
    bool operator<(const TreeNumber& o) const { return segments_ < o.segments_; }

    const std::vector<std::string>& segments() const { return segments_; }

private:
    explicit TreeNumber(std::vector<std::string> segments) : segments_(std::move(segments)) {}
    std::vector<std::string> segments_;
};

/// One heading with all of its tree numbers. Labels that sit at several
/// positions in the tree keep every position; no deduplication across
/// meanings is attempted.
struct Descriptor {
    std::string label;
    std::set<TreeNumber> tree_numbers;
};

struct BranchStats {
    char branch;
    std::size_t term_count;
    int max_depth;
};

// case-insensitive, trimmed label key
std::string normalize_label(const std::string& label);

/// Bidirectional heading <-> tree number index, immutable once built.
class MeshTree {
public:
    static MeshTree parse_tree_file(const std::string& text);

    const Descriptor* find_label(const std::string& label) const;
    std::optional<std::string> label_of(const TreeNumber& number) const;

    const std::vector<Descriptor>& descriptors() const { return descriptors_; }
    std::size_t size() const { return descriptors_.size(); }

    std::vector<BranchStats> branch_stats() const;

    // all (label, tree number) pairs, sorted; the round-trip form
    std::vector<std::pair<std::string, TreeNumber>> entries() const;

private:
    std::vector<Descriptor> descriptors_;
    std::map<std::string, std::size_t> by_label_;  // normalized label -> index
    std::map<TreeNumber, std::string> by_number_;
};

}  // namespace pubmap
