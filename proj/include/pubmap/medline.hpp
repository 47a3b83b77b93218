#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pubmap {

enum class SourceMode { pubmed, wok };

struct MeshQualifier {
    std::string text;
    bool is_major = false;
};

struct MeshHeading {
    std::string label;
    bool is_major = false;
    std::vector<MeshQualifier> qualifiers;
};

struct MedlineRecord {
    std::uint64_t pmid = 0;
    std::string status;  // STAT field, e.g. "MEDLINE"
    std::string owner;   // OWN field, e.g. "NLM"
    std::optional<int> pub_year;
    std::vector<MeshHeading> headings;
    // every field in input order, tag -> value (continuations joined)
    std::vector<std::pair<std::string, std::string>> raw_fields;
};

struct MedlineParseStats {
    std::size_t blocks_without_pmid = 0;
    std::size_t malformed_lines = 0;
    std::size_t duplicate_pmids = 0;
};

struct Corpus {
    std::vector<MedlineRecord> records;
    SourceMode source_mode = SourceMode::pubmed;
    MedlineParseStats stats;
};

/// Parse a Medline tagged-format export. Records are blank-line separated;
/// a field line is a tag padded to width 4, then "- ", then the value;
/// continuation lines start with 6 spaces. WoK mode additionally tolerates
/// a BOM and non-record preamble lines.
Corpus parse_medline(const std::string& text, SourceMode mode = SourceMode::pubmed,
                     bool dedup_pmids = true);

// canonicalized tagged form of one record (LF endings, no re-wrapping)
std::string serialize_record(const MedlineRecord& r);

bool mesh_eligible(const MedlineRecord& r);

std::size_t total_attributions(const Corpus& c);

struct YearSlices {
    std::map<int, Corpus> by_year;
    std::size_t missing_year = 0;
    std::size_t out_of_range = 0;
};

YearSlices slice_by_year(const Corpus& c, int from, int to);

}  // namespace pubmap
