#include "pubmap/bridge.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pubmap {

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c);
    });
}

std::string lower_trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    std::string out = s.substr(b, e - b + 1);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

// one delimited row, honoring double-quoted cells
std::vector<std::string> split_quoted(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == sep) {
            out.push_back(std::move(cell));
            cell.clear();
        } else {
            cell += c;
        }
    }
    out.push_back(std::move(cell));
    return out;
}

void add_pmid(PmidList& list, std::set<std::uint64_t>& seen, std::uint64_t pmid) {
    if (seen.insert(pmid).second) list.pmids.push_back(pmid);
}

}  // namespace

std::string make_batch(const std::vector<CitationStub>& stubs) {
    if (stubs.empty()) throw std::invalid_argument("empty stub list");
    std::set<std::string> keys;
    std::string duplicates;
    for (const auto& s : stubs)
        if (!keys.insert(s.user_key).second)
            duplicates += (duplicates.empty() ? "" : ", ") + s.user_key;
    if (!duplicates.empty())
        throw std::invalid_argument("duplicate user keys: " + duplicates);

    std::string out;
    for (const auto& s : stubs) {
        out += s.journal + '|' + s.year + '|' + s.volume + '|' + s.first_page +
               '|' + s.author + '|' + s.user_key + "|\n";
    }
    return out;
}

PmidList parse_match(const std::string& text) {
    PmidList out;
    std::set<std::uint64_t> seen;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line, '|');
        if (fields.size() != 7) {
            ++out.skipped_lines;
            continue;
        }
        const std::string& tail = fields.back();
        if (all_digits(tail)) {
            add_pmid(out, seen, std::strtoull(tail.c_str(), nullptr, 10));
        } else {
            out.unmatched_keys.push_back(fields[5]);
        }
    }
    return out;
}

PmidList parse_scopus_pmids(const std::string& table) {
    std::vector<std::string> lines;
    {
        std::istringstream in(table);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw std::runtime_error("empty export");

    char sep = lines.front().find('\t') != std::string::npos ? '\t' : ',';
    auto header = split_quoted(lines.front(), sep);
    int col = -1;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (lower_trim(header[i]) == "pubmed id") col = static_cast<int>(i);

    PmidList out;
    std::set<std::uint64_t> seen;
    if (col >= 0) {
        for (std::size_t r = 1; r < lines.size(); ++r) {
            if (lines[r].empty()) continue;
            auto cells = split_quoted(lines[r], sep);
            if (static_cast<int>(cells.size()) <= col) {
                ++out.skipped_lines;
                continue;
            }
            std::string cell = lower_trim(cells[col]);
            if (cell.empty()) continue;
            if (!all_digits(cell)) {
                ++out.skipped_lines;
                continue;
            }
            add_pmid(out, seen, std::strtoull(cell.c_str(), nullptr, 10));
        }
        return out;
    }
    // no header: accept a bare one-PMID-per-line file
    if (!all_digits(lower_trim(lines.front())))
        throw std::runtime_error("no 'PubMed ID' column and first line not numeric");
    for (const auto& line : lines) {
        std::string cell = lower_trim(line);
        if (cell.empty()) continue;
        if (!all_digits(cell)) {
            ++out.skipped_lines;
            continue;
        }
        add_pmid(out, seen, std::strtoull(cell.c_str(), nullptr, 10));
    }
    return out;
}

std::string compose_query(const PmidList& p) {
    if (p.pmids.empty()) throw std::invalid_argument("no PMIDs to compose");
    std::string out;
    for (std::size_t i = 0; i < p.pmids.size(); ++i) {
        if (i > 0) out += " OR ";
        out += std::to_string(p.pmids[i]) + "[PMID]";
    }
    return out;
}

}  // namespace pubmap
