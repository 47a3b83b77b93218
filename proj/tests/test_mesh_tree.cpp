#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pubmap/mesh_tree.hpp"

using namespace pubmap;

TEST_CASE("tree number parse and level") {
    CHECK(TreeNumber::parse_or_throw("C14").level() == 1);
    CHECK(TreeNumber::parse_or_throw("C14.260").level() == 2);
    CHECK(TreeNumber::parse_or_throw("C14.260.249").level() == 3);
    CHECK(TreeNumber::parse_or_throw("G05.355.315.203.374.790").level() == 6);
}

TEST_CASE("tree number round trip") {
    for (const char* text : {"C14", "C14.260", "D13.150.650.700", "Z01.107"}) {
        CHECK(TreeNumber::parse_or_throw(text).str() == text);
    }
}

TEST_CASE("tree number rejects malformed input") {
    CHECK(!TreeNumber::parse(""));
    CHECK(!TreeNumber::parse("Q14"));        // not a branch code
    CHECK(!TreeNumber::parse("C14.26"));     // deep segment must be 3 digits
    CHECK(!TreeNumber::parse("C14.2600"));
    CHECK(!TreeNumber::parse("C14..260"));
    CHECK(!TreeNumber::parse("14.260"));
}

TEST_CASE("ancestor_at_level truncates to a prefix") {
    auto t = TreeNumber::parse_or_throw("C14.260.249");
    CHECK(t.ancestor_at_level(2).str() == "C14.260");
    CHECK(t.ancestor_at_level(1).str() == "C14");
    CHECK(TreeNumber::parse_or_throw("C14").ancestor_at_level(1).str() == "C14");
    CHECK(TreeNumber::parse_or_throw("D13.150.650.700").ancestor_at_level(2).str() ==
          "D13.150");
    CHECK_THROWS_AS(t.ancestor_at_level(4), std::out_of_range);
    CHECK_THROWS_AS(t.ancestor_at_level(0), std::out_of_range);
}

TEST_CASE("branch is the leading letter") {
    CHECK(TreeNumber::parse_or_throw("C14.260").branch() == 'C');
    CHECK(TreeNumber::parse_or_throw("D13.150.650.319").branch() == 'D');
    CHECK(TreeNumber::parse_or_throw("G05.355.315.203.374.790").branch() == 'G');
}

TEST_CASE("ancestor properties on random tree numbers") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> depth(1, 8);
    std::uniform_int_distribution<int> group(0, 999);
    const std::string branches = TreeNumber::kBranchCodes;
    std::uniform_int_distribution<std::size_t> pick(0, branches.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::string text = std::string(1, branches[pick(rng)]) +
                           (group(rng) % 10 < 5 ? "14" : "05");
        int d = depth(rng);
        for (int i = 1; i < d; ++i) {
            char buf[5];
            std::snprintf(buf, sizeof buf, ".%03d", group(rng));
            text += buf;
        }
        auto t = TreeNumber::parse_or_throw(text);
        CHECK(t.ancestor_at_level(t.level()) == t);
        for (int k = 1; k <= t.level(); ++k) {
            auto a = t.ancestor_at_level(k);
            CHECK(a.level() == k);
            CHECK(a.branch() == t.branch());
            CHECK(a.ancestor_at_level(k) == a);  // idempotent
        }
    }
}

TEST_CASE("parse_tree_file indexes labels and numbers") {
    MeshTree tree = MeshTree::parse_tree_file(
        "Cardiovascular Diseases;C14\n"
        "Cardiovascular Infections;C14.260\n"
        "Cardiovascular Infections;C01.539.190\n");
    CHECK(tree.size() == 2);
    const Descriptor* d = tree.find_label("Cardiovascular Infections");
    REQUIRE(d != nullptr);
    CHECK(d->tree_numbers.size() == 2);
    CHECK(tree.label_of(TreeNumber::parse_or_throw("C14")) ==
          "Cardiovascular Diseases");
    // case-insensitive lookup
    CHECK(tree.find_label("  cardiovascular DISEASES ") == d - 1);
}

TEST_CASE("parse_tree_file handles empty input, CRLF and duplicates") {
    CHECK(MeshTree::parse_tree_file("").size() == 0);
    MeshTree tree = MeshTree::parse_tree_file(
        "Neoplasms;C04\r\nNeoplasms;C04\r\n\r\n");
    CHECK(tree.size() == 1);
    CHECK(tree.entries().size() == 1);
}

TEST_CASE("parse_tree_file reports malformed lines") {
    CHECK_THROWS_AS(MeshTree::parse_tree_file("no separator here"), ParseError);
    CHECK_THROWS_AS(MeshTree::parse_tree_file(";C14"), ParseError);
    CHECK_THROWS_AS(MeshTree::parse_tree_file("Label;NOT A NUMBER"), ParseError);
    try {
        MeshTree::parse_tree_file("Good;C14\nbad line\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("entries round trip is a fixed point") {
    std::string text =
        "Proteins;D12.776\nNeoplasms;C04\nRNA;D13.150.650\nProteins;D12.776\n";
    MeshTree tree = MeshTree::parse_tree_file(text);
    auto entries = tree.entries();
    std::string emitted;
    for (const auto& [label, number] : entries)
        emitted += label + ";" + number.str() + "\n";
    MeshTree again = MeshTree::parse_tree_file(emitted);
    CHECK(again.entries() == entries);
}

TEST_CASE("branch stats expose per-branch counts and depth") {
    MeshTree tree = MeshTree::parse_tree_file(
        "A;C14\nB;C14.260\nC;C14.260.249\nD;D12\n");
    auto stats = tree.branch_stats();
    REQUIRE(stats.size() == 2);
    CHECK(stats[0].branch == 'C');
    CHECK(stats[0].term_count == 3);
    CHECK(stats[0].max_depth == 3);
    CHECK(stats[1].branch == 'D');
    CHECK(stats[1].term_count == 1);
    CHECK(stats[1].max_depth == 1);
}
