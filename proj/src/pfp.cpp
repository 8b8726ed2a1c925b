#include "pfwg/pfp.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>

#include "pfwg/io_util.hpp"

namespace pfwg {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(product & RollingHash::kModulus);
    std::uint64_t hi = static_cast<std::uint64_t>(product >> 61);
    std::uint64_t r = lo + hi;
    if (r >= RollingHash::kModulus)
        r -= RollingHash::kModulus;
    return r;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return r >= RollingHash::kModulus ? r - RollingHash::kModulus : r;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + RollingHash::kModulus - b;
}

std::uint64_t lift(Symbol s) {
    return (s % RollingHash::kModulus) + 1;
}

struct PhraseHash {
    std::size_t operator()(const SymbolString& s) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (Symbol c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

RollingHash::RollingHash(std::size_t window) : window_(window) {
    if (window == 0)
        throw ParameterError("window length must be at least 1");
    for (std::size_t i = 1; i < window; ++i)
        top_power_ = mul_mod(top_power_, kBase);
}

std::uint64_t RollingHash::reset(std::span<const Symbol> window) {
    if (window.size() != window_)
        throw ParameterError("window has the wrong length");
    value_ = of(window);
    return value_;
}

std::uint64_t RollingHash::roll(Symbol outgoing, Symbol incoming) {
    value_ = sub_mod(value_, mul_mod(lift(outgoing), top_power_));
    value_ = add_mod(mul_mod(value_, kBase), lift(incoming));
    return value_;
}

std::uint64_t RollingHash::of(std::span<const Symbol> window) {
    std::uint64_t h = 0;
    for (Symbol s : window)
        h = add_mod(mul_mod(h, kBase), lift(s));
    return h;
}

std::uint64_t rolling_hash(std::span<const Symbol> window, std::uint64_t p) {
    if (p == 0)
        throw ParameterError("hash modulus p must be positive");
    return RollingHash::of(window) % p;
}

std::size_t PfpOutput::dictionary_symbols() const {
    std::size_t total = 0;
    for (const auto& phrase : dictionary)
        total += phrase.size();
    return total;
}

PfpOutput parse_pfp(const Text& framed, const PfpParams& params) {
    const std::size_t w = params.w;
    if (w == 0)
        throw ParameterError("window length must be at least 1");
    if (params.p == 0)
        throw ParameterError("hash modulus p must be positive");
    if (!framed.framed || framed.padding != w)
        throw ParameterError("text must be framed with the same window length");

    std::set<SymbolString> explicit_triggers;
    if (params.triggers) {
        for (const auto& word : *params.triggers) {
            if (word.size() != w)
                throw ParameterError("trigger word length " + std::to_string(word.size()) +
                                     " differs from window length " + std::to_string(w));
            explicit_triggers.insert(word);
        }
    }

    const auto& t = framed.symbols;
    const std::size_t n = t.size();
    // Framing guarantees n >= w + 1. The start marker opens the first phrase,
    // so windows are tested from position 1; the terminator window at n - w
    // always closes the last one.
    const std::size_t last = n - w;

    std::vector<std::pair<std::size_t, std::size_t>> spans; // [begin, end)
    std::size_t begin = 0;
    RollingHash hash(w);
    if (!params.triggers)
        hash.reset(std::span(t).subspan(1, w));
    for (std::size_t pos = 1; pos <= last; ++pos) {
        if (!params.triggers && pos > 1)
            hash.roll(t[pos - 1], t[pos + w - 1]);
        bool trigger = (pos == last);
        if (!trigger) {
            if (params.triggers)
                trigger = explicit_triggers.count(SymbolString(t.begin() + pos, t.begin() + pos + w)) > 0;
            else
                trigger = hash.value() % params.p == 0;
        }
        if (trigger) {
            spans.emplace_back(begin, pos + w);
            begin = pos;
        }
    }

    std::unordered_map<SymbolString, std::uint64_t, PhraseHash> ids;
    std::vector<SymbolString> phrases;
    std::vector<std::uint64_t> raw_parse;
    raw_parse.reserve(spans.size());
    for (auto [b, e] : spans) {
        SymbolString phrase(t.begin() + b, t.begin() + e);
        auto [it, inserted] = ids.try_emplace(std::move(phrase), phrases.size());
        if (inserted)
            phrases.push_back(it->first);
        raw_parse.push_back(it->second);
    }

    std::vector<std::uint64_t> order(phrases.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::uint64_t a, std::uint64_t b) { return phrases[a] < phrases[b]; });
    std::vector<std::uint64_t> rank_of(phrases.size());
    for (std::size_t r = 0; r < order.size(); ++r)
        rank_of[order[r]] = r;

    PfpOutput out;
    out.w = w;
    out.dictionary.reserve(phrases.size());
    for (std::uint64_t id : order)
        out.dictionary.push_back(std::move(phrases[id]));
    out.parse.reserve(raw_parse.size());
    out.occurrences.assign(out.dictionary.size(), 0);
    for (std::uint64_t id : raw_parse) {
        out.parse.push_back(rank_of[id]);
        ++out.occurrences[rank_of[id]];
    }
    return out;
}

SymbolString reconstruct(const PfpOutput& pfp) {
    if (pfp.parse.empty())
        throw CorruptionError("empty parse");
    SymbolString text;
    for (std::size_t i = 0; i < pfp.parse.size(); ++i) {
        const std::uint64_t rank = pfp.parse[i];
        if (rank >= pfp.dictionary.size())
            throw CorruptionError("parse rank " + std::to_string(rank) + " out of range");
        const SymbolString& phrase = pfp.dictionary[rank];
        if (i == 0) {
            text = phrase;
            continue;
        }
        if (phrase.size() < pfp.w || text.size() < pfp.w ||
            !std::equal(phrase.begin(), phrase.begin() + pfp.w, text.end() - pfp.w))
            throw CorruptionError("phrase overlap mismatch at parse position " + std::to_string(i));
        text.insert(text.end(), phrase.begin() + pfp.w, phrase.end());
    }
    return text;
}

void write_dictionary(std::ostream& out, const PfpOutput& pfp, const Alphabet& alphabet) {
    for (const auto& phrase : pfp.dictionary) {
        for (Symbol s : phrase) {
            const unsigned char byte = alphabet.decode(s);
            if (byte <= 0x01)
                throw ParameterError("alphabet byte collides with a dictionary separator");
            out.put(static_cast<char>(byte));
        }
        out.put('\x01');
    }
    out.put('\x00');
}

void write_parse(std::ostream& out, const PfpOutput& pfp) {
    for (std::uint64_t rank : pfp.parse)
        io::write_u64(out, rank);
}

std::vector<SymbolString> read_dictionary(std::istream& in, const Alphabet& alphabet) {
    std::vector<SymbolString> dictionary;
    SymbolString phrase;
    for (int ch = in.get(); ; ch = in.get()) {
        if (ch == std::char_traits<char>::eof())
            throw FormatError("dictionary is not terminated");
        if (ch == 0x00) {
            if (!phrase.empty())
                throw FormatError("unterminated phrase at end of dictionary");
            break;
        }
        if (ch == 0x01) {
            dictionary.push_back(std::move(phrase));
            phrase.clear();
            continue;
        }
        const auto byte = static_cast<unsigned char>(ch);
        if (byte == '$')
            phrase.push_back(kTerminator);
        else if (byte == '#')
            phrase.push_back(kStartMarker);
        else
            phrase.push_back(alphabet.encode(byte));
    }
    return dictionary;
}

std::vector<std::uint64_t> read_parse(std::istream& in) {
    std::vector<std::uint64_t> parse;
    std::uint64_t rank = 0;
    while (io::try_read_u64(in, rank))
        parse.push_back(rank);
    return parse;
}

std::size_t dictionary_file_bytes(const PfpOutput& pfp) {
    return pfp.dictionary_symbols() + pfp.dictionary.size() + 1;
}

} // namespace pfwg
