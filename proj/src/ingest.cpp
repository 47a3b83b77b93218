#include "pubmap/ingest.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "pubmap/medline.hpp"

namespace pubmap {

namespace {

using json = nlohmann::json;

class RateLimiter {
public:
    explicit RateLimiter(double requests_per_second)
        : interval_(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
              std::chrono::duration<double>(1.0 / requests_per_second))) {}

    void wait() {
        auto now = std::chrono::steady_clock::now();
        if (armed_ && now < last_ + interval_) {
            std::this_thread::sleep_until(last_ + interval_);
        }
        last_ = std::chrono::steady_clock::now();
        armed_ = true;
    }

private:
    std::chrono::steady_clock::duration interval_;
    std::chrono::steady_clock::time_point last_{};
    bool armed_ = false;
};

bool retryable_status(int status) {
    return status == 429 || status >= 500;
}

// GET with rate limiting and bounded exponential backoff
httplib::Result request(httplib::Client& client, const std::string& path,
                        const httplib::Params& params, const FetchJob& job,
                        RateLimiter& limiter, FetchReport& report) {
    for (int attempt = 0;; ++attempt) {
        limiter.wait();
        auto res = client.Get(path, params, httplib::Headers{});
        bool failed = !res || retryable_status(res->status);
        if (!failed) return res;
        if (attempt >= job.max_retries) {
            if (!res) throw std::runtime_error("transport failure on " + path);
            throw std::runtime_error("HTTP " + std::to_string(res->status) +
                                     " on " + path);
        }
        ++report.retries;
        std::this_thread::sleep_for(
            std::chrono::milliseconds(job.retry_base_ms << attempt));
    }
}

std::size_t count_existing_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) return 0;
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_medline(buffer.str()).records.size();
}

}  // namespace

FetchReport fetch(const FetchJob& job) {
    if (job.query.empty()) throw std::invalid_argument("empty query");
    if (job.page_size < 1) throw std::invalid_argument("page size must be >= 1");
    if (job.date_from && job.date_to && job.date_from > job.date_to)
        throw std::invalid_argument("date range inverted");

    FetchReport report;
    double rate = job.max_requests_per_second > 0
                      ? job.max_requests_per_second
                      : (job.api_key.empty() ? 3.0 : 10.0);
    RateLimiter limiter(rate);

    httplib::Client client(job.base_url);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);

    std::string term = job.query;
    if (job.date_from && job.date_to) {
        term = "(" + term + ") AND (\"" + std::to_string(job.date_from) +
               "\"[Publication Date] : \"" + std::to_string(job.date_to) +
               "\"[Publication Date])";
    }

    httplib::Params search_params{{"db", "pubmed"},
                                  {"term", term},
                                  {"retmax", "0"},
                                  {"usehistory", "y"},
                                  {"retmode", "json"}};
    if (!job.api_key.empty()) search_params.emplace("api_key", job.api_key);

    ++report.search_requests;
    auto search = request(client, "/entrez/eutils/esearch.fcgi", search_params,
                          job, limiter, report);
    json result = json::parse(search->body).at("esearchresult");
    report.expected = std::stoull(result.at("count").get<std::string>());
    std::string webenv = result.value("webenv", "");
    std::string query_key = result.value("querykey", "");

    report.resumed_from = count_existing_records(job.out_path);
    report.retrieved = report.resumed_from;
    if (report.resumed_from > 0)
        report.warnings.push_back("resumed: " +
                                  std::to_string(report.resumed_from) +
                                  " records already present");

    if (report.expected == 0) {
        std::ofstream(job.out_path, std::ios::app);
        return report;
    }

    std::ofstream out(job.out_path, std::ios::app);
    if (!out) throw std::runtime_error("cannot write " + job.out_path);

    for (std::size_t start = report.resumed_from; start < report.expected;
         start += static_cast<std::size_t>(job.page_size)) {
        httplib::Params fetch_params{{"db", "pubmed"},
                                     {"rettype", "medline"},
                                     {"retmode", "text"},
                                     {"WebEnv", webenv},
                                     {"query_key", query_key},
                                     {"retstart", std::to_string(start)},
                                     {"retmax", std::to_string(job.page_size)}};
        if (!job.api_key.empty()) fetch_params.emplace("api_key", job.api_key);
        ++report.fetch_requests;
        auto page = request(client, "/entrez/eutils/efetch.fcgi", fetch_params,
                            job, limiter, report);
        std::size_t got = parse_medline(page->body).records.size();
        if (got == 0) break;  // service returned fewer pages than announced
        out << page->body;
        if (page->body.empty() || page->body.back() != '\n') out << '\n';
        out << '\n';
        report.retrieved += got;
    }
    out.flush();

    if (report.retrieved < report.expected) {
        report.warnings.push_back(
            "partial retrieval: " + std::to_string(report.retrieved) + " of " +
            std::to_string(report.expected) + " records");
    }
    return report;
}

}  // namespace pubmap
