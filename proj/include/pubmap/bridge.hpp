#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pubmap {

/// One bibliographic stub for the batch citation matcher; empty fields
/// are allowed, the field count is fixed.
struct CitationStub {
    std::string journal;
    std::string year;
    std::string volume;
    std::string first_page;
    std::string author;
    std::string user_key;
};

struct PmidList {
    std::vector<std::uint64_t> pmids;  // deduplicated, first occurrence kept
    std::vector<std::string> unmatched_keys;
    std::size_t skipped_lines = 0;
};

// "journal|year|volume|first_page|author|key|" per stub
std::string make_batch(const std::vector<CitationStub>& stubs);

/// Matcher reply: request fields echoed back plus a final field that is
/// either a PMID or a status token.
PmidList parse_match(const std::string& text);

/// Delimited export with a "PubMed ID" column (comma or tab separated,
/// quoted fields allowed), or a bare one-PMID-per-line file.
PmidList parse_scopus_pmids(const std::string& table);

// "N[PMID] OR M[PMID] ..." for the advanced search box
std::string compose_query(const PmidList& p);

}  // namespace pubmap
