#pragma once

#include <string>
#include <vector>

namespace pubmap {

/// One retrieval job against the E-utilities endpoints.
struct FetchJob {
    std::string base_url = "https://eutils.ncbi.nlm.nih.gov";
    std::string query;  // passed through verbatim apart from URL encoding
    int date_from = 0;  // publication years, 0 = open
    int date_to = 0;
    int page_size = 200;
    std::string api_key;
    std::string out_path;
    double max_requests_per_second = 0.0;  // 0 = policy default (3, 10 with key)
    int max_retries = 3;
    int retry_base_ms = 500;
};

struct FetchReport {
    std::size_t expected = 0;   // hit count reported by the search
    std::size_t retrieved = 0;  // records written (including resumed ones)
    std::size_t search_requests = 0;
    std::size_t fetch_requests = 0;
    std::size_t retries = 0;
    std::size_t resumed_from = 0;  // records already on disk before this run
    std::vector<std::string> warnings;
};

/// Search once for the hit count and a history token, then page through
/// the result set in tagged Medline format, appending blank-line
/// separated blocks to the output file. Rerunning with a partial output
/// file resumes after the records already present.
FetchReport fetch(const FetchJob& job);

}  // namespace pubmap
