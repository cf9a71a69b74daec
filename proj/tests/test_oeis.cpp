#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "chordgrid/oeis.hpp"

using namespace chordgrid;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("chordgrid-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

oeis::FetchOptions isolated(const TempDir& cache) {
    oeis::FetchOptions opt;
    opt.cache_dir = cache.path.string();
    opt.offline = true;  // tests never touch the network
    return opt;
}

}  // namespace

TEST_CASE("a-number canonicalization") {
    CHECK(oeis::canonical_a_number("A306302") == "A306302");
    CHECK(oeis::canonical_a_number("306302") == "A306302");
    CHECK(oeis::canonical_a_number("a1") == "A000001");
    CHECK_THROWS_AS(oeis::canonical_a_number("Axyz"), std::invalid_argument);
    CHECK_THROWS_AS(oeis::canonical_a_number("1234567"), std::invalid_argument);
    CHECK_THROWS_AS(oeis::canonical_a_number(""), std::invalid_argument);
}

TEST_CASE("b-file parsing") {
    const std::string text =
        "# comment line\n"
        "\n"
        "1 4\n"
        "2 16\n"
        "3 -46\n";
    const oeis::OeisSequence seq = oeis::parse_b_file("A000001", text, oeis::Source::Vendored);
    CHECK(seq.offset == 1);
    REQUIRE(seq.terms.size() == 3);
    CHECK(seq.at(1) == 4);
    CHECK(seq.at(3) == -46);
    CHECK(seq.last_index() == 3);
    CHECK_THROWS_AS(seq.at(4), std::out_of_range);

    CHECK_THROWS_AS(oeis::parse_b_file("A000001", "1 4\n3 9\n", oeis::Source::Vendored),
                    std::runtime_error);  // gap
    CHECK_THROWS_AS(oeis::parse_b_file("A000001", "1 x\n", oeis::Source::Vendored),
                    std::runtime_error);
    CHECK_THROWS_AS(oeis::parse_b_file("A000001", "oops\n", oeis::Source::Vendored),
                    std::runtime_error);
    CHECK_THROWS_AS(oeis::parse_b_file("A000001", "# only comments\n", oeis::Source::Vendored),
                    std::runtime_error);

    // Zero-offset b-files are accepted as-is.
    const oeis::OeisSequence z = oeis::parse_b_file("A000002", "0 7\n1 9\n", oeis::Source::Cache);
    CHECK(z.offset == 0);
    CHECK(z.at(0) == 7);
}

TEST_CASE("vendored snapshots resolve offline") {
    TempDir cache;
    const oeis::OeisSequence seq = oeis::fetch("A306302", isolated(cache));
    CHECK(seq.source == oeis::Source::Vendored);
    REQUIRE(seq.terms.size() >= 10);
    CHECK(seq.at(1) == 4);
    CHECK(seq.at(2) == 16);
    CHECK(seq.at(3) == 46);
    CHECK(seq.at(4) == 104);
    CHECK(seq.at(5) == 214);

    const oeis::OeisSequence t8 = oeis::fetch("A334701", isolated(cache));
    CHECK(t8.at(1) == 1);
    CHECK(t8.at(2) == 6);
    CHECK(t8.at(3) == 24);
    CHECK(t8.at(4) == 54);
    CHECK(t8.at(5) == 124);
    CHECK(t8.terms.size() == 100);

    const oeis::OeisSequence diag = oeis::fetch("A255011", isolated(cache));
    REQUIRE(diag.terms.size() == 5);
    CHECK(diag.at(1) == 4);
    CHECK(diag.at(2) == 56);
    CHECK(diag.at(3) == 340);
    CHECK(diag.at(4) == 1120);
    CHECK(diag.at(5) == 3264);
}

TEST_CASE("cache takes precedence over vendored data") {
    TempDir cache;
    {
        std::ofstream out(cache.path / "b306302.txt");
        out << "1 999\n";
    }
    const oeis::OeisSequence seq = oeis::fetch("A306302", isolated(cache));
    CHECK(seq.source == oeis::Source::Cache);
    CHECK(seq.at(1) == 999);
}

TEST_CASE("offline fetch of an unknown sequence fails") {
    TempDir cache;
    CHECK_THROWS_AS(oeis::fetch("A999999", isolated(cache)), std::runtime_error);
}

TEST_CASE("verification compares element-wise and reports truncation") {
    TempDir cache;
    const oeis::SequenceBinding* binding = oeis::find_binding("A306302");
    REQUIRE(binding != nullptr);
    const oeis::VerifyReport rep = oeis::verify(*binding, 10, isolated(cache));
    CHECK(rep.compared == 10);
    CHECK(rep.ok());
    CHECK_FALSE(rep.truncated);

    // More than vendored: compares the available prefix and flags it.
    const oeis::VerifyReport longer = oeis::verify(*binding, 400, isolated(cache));
    CHECK(longer.truncated);
    CHECK(longer.compared == 10);
    CHECK(longer.ok());
}

TEST_CASE("verification detects mismatches") {
    TempDir cache;
    oeis::SequenceBinding bogus{"A306302", "wrong on purpose", 10, [](long long upto) {
                                    std::vector<Integer> out;
                                    for (long long i = 1; i <= upto; ++i) out.emplace_back(1);
                                    return out;
                                }};
    const oeis::VerifyReport rep = oeis::verify(bogus, 5, isolated(cache));
    CHECK(rep.compared == 5);
    CHECK_FALSE(rep.ok());
    REQUIRE(rep.mismatches.size() == 5);
    CHECK(rep.mismatches[0].index == 1);
    CHECK(rep.mismatches[0].expected == 4);
    CHECK(rep.mismatches[0].actual == 1);
}

TEST_CASE("row-structured bindings line up with their reading order") {
    TempDir cache;
    // Interior-crossing rows: linear index 7 is row 4, second entry.
    const oeis::SequenceBinding* rows = oeis::find_binding("A333275");
    REQUIRE(rows != nullptr);
    const oeis::VerifyReport rep = oeis::verify(*rows, 15, isolated(cache));
    CHECK(rep.compared == 15);
    CHECK(rep.ok());

    // Antidiagonal grid binding.
    const oeis::SequenceBinding* grid = oeis::find_binding("A331452");
    REQUIRE(grid != nullptr);
    const oeis::VerifyReport grep = oeis::verify(*grid, 10, isolated(cache));
    CHECK(grep.compared == 10);
    CHECK(grep.ok());

    // Side-count rows, including the interior zero in row 9.
    const oeis::SequenceBinding* sides = oeis::find_binding("A335701");
    REQUIRE(sides != nullptr);
    const oeis::VerifyReport srep = oeis::verify(*sides, 40, isolated(cache));
    CHECK(srep.compared == 40);
    CHECK(srep.ok());
}

TEST_CASE("registry covers every bound statistic") {
    const char* expected[] = {"A331755", "A331757", "A306302", "A159065", "A333286", "A333287",
                              "A333288", "A333275", "A334701", "A331763", "A331766", "A331453",
                              "A331452", "A288180", "A288187", "A333284", "A333282", "A333285",
                              "A335701", "A255011", "A331449", "A332632", "A332360", "A332358"};
    for (const char* a : expected) {
        CAPTURE(a);
        CHECK(oeis::find_binding(a) != nullptr);
    }
    CHECK(oeis::binding_registry().size() == std::size(expected));
    CHECK(oeis::find_binding("A000001") == nullptr);
}
