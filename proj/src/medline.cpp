#include "pubmap/medline.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>

namespace pubmap {

namespace {

std::string rtrim(const std::string& s) {
    auto e = s.find_last_not_of(" \t\r");
    return e == std::string::npos ? "" : s.substr(0, e + 1);
}

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r") == std::string::npos;
}

// "TAG - value" with the tag padded to width 4
bool is_field_line(const std::string& line) {
    if (line.size() < 6 || line[4] != '-' || line[5] != ' ') return false;
    std::string tag = rtrim(line.substr(0, 4));
    if (tag.empty()) return false;
    return std::all_of(tag.begin(), tag.end(), [](unsigned char c) {
        return std::isupper(c) || std::isdigit(c);
    });
}

bool is_continuation_line(const std::string& line) {
    return line.size() > 6 && line.compare(0, 6, "      ") == 0;
}

MeshHeading parse_heading(const std::string& value) {
    MeshHeading h;
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(value);
    while (std::getline(in, part, '/')) parts.push_back(part);
    if (parts.empty()) parts.push_back(value);
    auto strip_major = [](std::string s, bool& major) {
        if (!s.empty() && s.front() == '*') {
            major = true;
            s.erase(s.begin());
        }
        return s;
    };
    h.label = strip_major(parts.front(), h.is_major);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        MeshQualifier q;
        q.text = strip_major(parts[i], q.is_major);
        h.qualifiers.push_back(std::move(q));
    }
    return h;
}

std::optional<int> parse_year(const std::string& dp) {
    for (std::size_t i = 0; i + 4 <= dp.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(dp[i])) &&
            std::isdigit(static_cast<unsigned char>(dp[i + 1])) &&
            std::isdigit(static_cast<unsigned char>(dp[i + 2])) &&
            std::isdigit(static_cast<unsigned char>(dp[i + 3]))) {
            return std::stoi(dp.substr(i, 4));
        }
    }
    return std::nullopt;
}

void finish_block(std::vector<std::pair<std::string, std::string>> fields,
                  Corpus& corpus, std::set<std::uint64_t>& seen, bool dedup) {
    if (fields.empty()) return;
    MedlineRecord r;
    r.raw_fields = std::move(fields);
    for (const auto& [tag, value] : r.raw_fields) {
        if (tag == "PMID") {
            r.pmid = std::strtoull(value.c_str(), nullptr, 10);
        } else if (tag == "STAT") {
            r.status = value;
        } else if (tag == "OWN") {
            r.owner = value;
        } else if (tag == "DP") {
            r.pub_year = parse_year(value);
        } else if (tag == "MH") {
            r.headings.push_back(parse_heading(value));
        }
    }
    if (r.pmid == 0) {
        ++corpus.stats.blocks_without_pmid;
        return;
    }
    if (dedup && !seen.insert(r.pmid).second) {
        ++corpus.stats.duplicate_pmids;
        return;
    }
    corpus.records.push_back(std::move(r));
}

}  // namespace

Corpus parse_medline(const std::string& text, SourceMode mode, bool dedup_pmids) {
    Corpus corpus;
    corpus.source_mode = mode;
    std::set<std::uint64_t> seen;

    std::string body = text;
    if (body.size() >= 3 && body.compare(0, 3, "\xEF\xBB\xBF") == 0)
        body.erase(0, 3);

    std::vector<std::pair<std::string, std::string>> fields;
    bool in_block = false;

    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) {
            if (in_block) {
                finish_block(std::move(fields), corpus, seen, dedup_pmids);
                fields.clear();
                in_block = false;
            }
            continue;
        }
        if (is_field_line(line)) {
            fields.emplace_back(rtrim(line.substr(0, 4)), line.substr(6));
            in_block = true;
        } else if (is_continuation_line(line) && !fields.empty()) {
            fields.back().second += ' ';
            fields.back().second += line.substr(6);
        } else if (mode == SourceMode::wok && !in_block) {
            // WoK exports may carry header lines before the first record
            continue;
        } else {
            ++corpus.stats.malformed_lines;
        }
    }
    if (in_block) finish_block(std::move(fields), corpus, seen, dedup_pmids);
    return corpus;
}

std::string serialize_record(const MedlineRecord& r) {
    std::string out;
    for (const auto& [tag, value] : r.raw_fields) {
        std::string padded = tag;
        padded.resize(4, ' ');
        out += padded + "- " + value + '\n';
    }
    return out;
}

bool mesh_eligible(const MedlineRecord& r) {
    return r.status == "MEDLINE" && r.owner == "NLM";
}

std::size_t total_attributions(const Corpus& c) {
    std::size_t n = 0;
    for (const auto& r : c.records) n += r.headings.size();
    return n;
}

YearSlices slice_by_year(const Corpus& c, int from, int to) {
    YearSlices out;
    for (int y = from; y <= to; ++y) {
        auto& bucket = out.by_year[y];
        bucket.source_mode = c.source_mode;
    }
    for (const auto& r : c.records) {
        if (!r.pub_year) {
            ++out.missing_year;
            continue;
        }
        int y = *r.pub_year;
        if (y < from || y > to) {
            ++out.out_of_range;
            continue;
        }
        out.by_year[y].records.push_back(r);
    }
    return out;
}

}  // namespace pubmap
