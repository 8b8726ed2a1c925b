#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pfwg/corpus.hpp"
#include "pfwg/suffix_bwt.hpp"

using namespace pfwg;

namespace {

SymbolString sym(const std::string& s) { return Text::from_string(s).symbols; }

std::string str(const SymbolString& s, const std::string& source) {
    return Text{s, Text::from_string(source).alphabet}.to_string();
}

} // namespace

TEST_CASE("suffix arrays of small texts") {
    CHECK(build_suffix_array(sym("banana$")) == SuffixArray{6, 5, 3, 1, 0, 4, 2});
    CHECK(build_suffix_array(sym("a$")) == SuffixArray{1, 0});
    CHECK(build_suffix_array(sym("aaaa$")) == SuffixArray{4, 3, 2, 1, 0});
    CHECK(build_suffix_array(sym("$")) == SuffixArray{0});
}

TEST_CASE("suffix array rejects a missing or repeated terminator") {
    CHECK_THROWS_AS(build_suffix_array(sym("banana")), ParameterError);
    CHECK_THROWS_AS(build_suffix_array(sym("ba$na$")), ParameterError);
    CHECK_THROWS_AS(build_suffix_array(sym("ban$ana")), ParameterError);
}

TEST_CASE("BWT of small texts") {
    const std::string fig = "ACGTCGTT$";
    CHECK(str(bwt_from_sa(sym(fig), build_suffix_array(sym(fig))).symbols, fig) == "T$ATCCTGG");
    CHECK(str(naive_bwt_oracle(sym(fig)).symbols, fig) == "T$ATCCTGG");
    CHECK(str(bwt_from_sa(sym("a$"), build_suffix_array(sym("a$"))).symbols, "a$") == "a$");
    CHECK(str(bwt_from_sa(sym("banana$"), build_suffix_array(sym("banana$"))).symbols, "banana$") == "annb$aa");
    CHECK(naive_bwt_oracle(sym("$")).symbols == sym("$"));
}

TEST_CASE("BWT inversion") {
    const auto banana = Text::from_string("banana$");
    CHECK(invert_bwt(BwtString::from(Text::from_string("annb$aa", banana.alphabet).symbols)) == banana.symbols);
    CHECK(invert_bwt(BwtString::from(sym("a$"))) == sym("a$"));
    CHECK(invert_bwt(BwtString::from(sym("b$a"))) == sym("ab$"));
    // LF splits into two cycles
    CHECK_THROWS_AS(invert_bwt(BwtString::from(sym("ba$"))), CorruptionError);
    CHECK_THROWS_AS(invert_bwt(BwtString::from(sym("ab"))), CorruptionError);
}

TEST_CASE("random texts: SA, BWT and inversion agree with brute force") {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 1000; ++it) {
        const unsigned sigma = std::vector<unsigned>{2, 4, 26}[it % 3];
        const std::size_t n = rng() % 512;
        const std::string body = it % 2 ? oracle::random_text(rng, n, sigma) : oracle::repetitive_text(rng, n, sigma);
        const SymbolString t = sym(body + "$");
        const SuffixArray sa = build_suffix_array(t);
        REQUIRE(sa == oracle::suffix_array(t));
        const BwtString bwt = bwt_from_sa(t, sa);
        REQUIRE(bwt.symbols == oracle::rotation_bwt(t));
        REQUIRE(bwt.symbols == naive_bwt_oracle(t).symbols);
        REQUIRE(invert_bwt(bwt) == t);
    }
}

TEST_CASE("induced sorting over integer alphabets") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 300; ++it) {
        const std::size_t n = 1 + rng() % 300;
        const std::size_t sigma = 2 + rng() % 1000;
        SymbolString t(n);
        for (auto& c : t)
            c = 1 + rng() % (it % 2 ? 3 : sigma - 1);
        t.push_back(0);
        REQUIRE(induced_sort(t, sigma + 1) == oracle::suffix_array(t));
    }
}

TEST_CASE("LF keeps symbol ranks") {
    const SymbolString t = sym("mississippi$");
    const BwtString bwt = bwt_from_sa(t, build_suffix_array(t));
    const SuffixArray sa = build_suffix_array(t);
    // the k-th c in L and the k-th c in F are the same text position
    std::vector<std::uint64_t> seen(bwt.counts.size(), 0);
    std::vector<std::uint64_t> before(bwt.counts.size() + 1, 0);
    for (std::size_t c = 0; c < bwt.counts.size(); ++c)
        before[c + 1] = before[c] + bwt.counts[c];
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Symbol c = bwt.symbols[i];
        const std::uint64_t f = before[c] + seen[c]++;
        CHECK(sa[f] == (sa[i] + t.size() - 1) % t.size());
    }
}
