#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pfwg/corpus.hpp"

using namespace pfwg;

TEST_CASE("ingest_fasta keeps ACGT from every record") {
    CHECK(ingest_fasta(">s1\nACGT\n>s2\nNNAC\n").to_string() == "ACGTAC");
    CHECK(ingest_fasta(">a\nacgt\n").to_string() == "ACGT");
    CHECK(ingest_fasta("AC\r\nGT\n").to_string() == "ACGT");
    CHECK(ingest_fasta(">h ACGT in header\nTT\n").to_string() == "TT");
}

TEST_CASE("ingest_fasta rejects an empty corpus") {
    CHECK_THROWS_WITH_AS(ingest_fasta(">x\n\n"), "empty corpus", ParameterError);
    CHECK_THROWS_AS(ingest_fasta("NNNN\n"), ParameterError);
}

TEST_CASE("ingest_fasta output is over ACGT only") {
    std::mt19937_64 rng(5);
    std::string raw;
    for (int i = 0; i < 5000; ++i) {
        const char c = static_cast<char>(rng() % 128);
        raw.push_back(c == '>' ? 'N' : c);
    }
    raw += "A";
    for (char c : ingest_fasta(raw).to_string())
        CHECK(std::string("ACGT").find(c) != std::string::npos);
}

TEST_CASE("frame adds the start marker and w terminators") {
    CHECK(frame(Text::from_string("AB"), 2).to_string() == "#AB$$");
    CHECK(frame(Text::from_string("ABDACDABDACDA"), 1).to_string() == "#ABDACDABDACDA$");
    CHECK(frame(Text::from_string(""), 1).to_string() == "#$");
    const Text t = frame(Text::from_string("AB"), 3);
    CHECK(t.framed);
    CHECK(t.padding == 3);
    CHECK(t.symbols.front() == kStartMarker);
}

TEST_CASE("frame rejects framed input and w = 0") {
    const Text t = frame(Text::from_string("AB"), 1);
    CHECK_THROWS_AS(frame(t, 1), ParameterError);
    CHECK_THROWS_AS(frame(Text::from_string("AB"), 0), ParameterError);
}

TEST_CASE("frame length and injectivity") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        const std::size_t w = 1 + rng() % 5;
        const std::string a = oracle::random_text(rng, rng() % 8, 2);
        const std::string b = oracle::random_text(rng, rng() % 8, 2);
        const Alphabet ab = Alphabet::of("ab");
        const Text fa = frame(Text::from_string(a, ab), w);
        const Text fb = frame(Text::from_string(b, ab), w);
        CHECK(fa.size() == a.size() + 1 + w);
        CHECK((fa.symbols == fb.symbols) == (a == b));
    }
}

TEST_CASE("alphabet codes put the sentinels first") {
    const Alphabet dna = Alphabet::dna();
    CHECK(dna.encode('A') == 2);
    CHECK(dna.encode('T') == 5);
    CHECK(dna.decode(kTerminator) == '$');
    CHECK(dna.decode(kStartMarker) == '#');
    CHECK(dna.decode(3) == 'C');
    CHECK_THROWS_AS(dna.encode('N'), ParameterError);
    CHECK_THROWS_AS(dna.decode(6), ParameterError);
    for (unsigned char c : std::string("ACGT"))
        CHECK(kTerminator < dna.encode(c));
}

TEST_CASE("from_string maps '$' and '#' to sentinels") {
    const Text t = Text::from_string("#ab$");
    CHECK(t.symbols == SymbolString{kStartMarker, 2, 3, kTerminator});
    CHECK(t.alphabet.size() == 2);
    CHECK(t.to_string() == "#ab$");
}
