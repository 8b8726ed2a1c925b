#include "pfwg/suffix_bwt.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "pfwg/io_util.hpp"

namespace pfwg {

namespace {

constexpr std::uint64_t kEmpty = std::numeric_limits<std::uint64_t>::max();

class InducedSorter {
public:
    InducedSorter(std::span<const Symbol> s, std::size_t k) : s_(s), k_(k), stype_(s.size(), false) {}

    SuffixArray run() {
        const std::size_t n = s_.size();
        if (n == 1)
            return {0};
        classify();
        count_buckets();

        SuffixArray sa(n, kEmpty);
        {
            auto ends = bucket_ends();
            for (std::size_t i = 1; i < n; ++i)
                if (is_lms(i))
                    sa[--ends[s_[i]]] = i;
        }
        induce(sa);

        std::size_t m = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (is_lms(sa[i]))
                sa[m++] = sa[i];

        std::vector<std::uint64_t> name_of(n, kEmpty);
        std::uint64_t names = 0;
        std::uint64_t prev = kEmpty;
        for (std::size_t i = 0; i < m; ++i) {
            const std::uint64_t pos = sa[i];
            if (prev == kEmpty || !same_lms_substring(pos, prev))
                ++names;
            prev = pos;
            name_of[pos] = names - 1;
        }

        std::vector<std::uint64_t> lms_positions;
        lms_positions.reserve(m);
        SymbolString reduced;
        reduced.reserve(m);
        for (std::size_t i = 1; i < n; ++i) {
            if (is_lms(i)) {
                lms_positions.push_back(i);
                reduced.push_back(name_of[i]);
            }
        }
        name_of.clear();
        name_of.shrink_to_fit();

        SuffixArray reduced_sa;
        if (names < m) {
            reduced_sa = InducedSorter(reduced, names).run();
        } else {
            reduced_sa.assign(m, 0);
            for (std::size_t i = 0; i < m; ++i)
                reduced_sa[reduced[i]] = i;
        }

        std::fill(sa.begin(), sa.end(), kEmpty);
        {
            auto ends = bucket_ends();
            for (std::size_t i = m; i-- > 0;) {
                const std::uint64_t j = lms_positions[reduced_sa[i]];
                sa[--ends[s_[j]]] = j;
            }
        }
        induce(sa);
        return sa;
    }

private:
    void classify() {
        const std::size_t n = s_.size();
        stype_[n - 1] = true;
        for (std::size_t i = n - 1; i-- > 0;)
            stype_[i] = s_[i] < s_[i + 1] || (s_[i] == s_[i + 1] && stype_[i + 1]);
    }

    void count_buckets() {
        sizes_.assign(k_, 0);
        for (Symbol c : s_)
            ++sizes_[c];
    }

    std::vector<std::uint64_t> bucket_starts() const {
        std::vector<std::uint64_t> b(k_);
        std::uint64_t sum = 0;
        for (std::size_t c = 0; c < k_; ++c) {
            b[c] = sum;
            sum += sizes_[c];
        }
        return b;
    }

    std::vector<std::uint64_t> bucket_ends() const {
        std::vector<std::uint64_t> b(k_);
        std::uint64_t sum = 0;
        for (std::size_t c = 0; c < k_; ++c) {
            sum += sizes_[c];
            b[c] = sum;
        }
        return b;
    }

    bool is_lms(std::uint64_t i) const {
        return i != kEmpty && i > 0 && stype_[i] && !stype_[i - 1];
    }

    bool same_lms_substring(std::uint64_t a, std::uint64_t b) const {
        for (std::size_t d = 0;; ++d) {
            if (s_[a + d] != s_[b + d] || stype_[a + d] != stype_[b + d])
                return false;
            if (d > 0 && (is_lms(a + d) || is_lms(b + d)))
                return is_lms(a + d) && is_lms(b + d);
        }
    }

    void induce(SuffixArray& sa) const {
        const std::size_t n = s_.size();
        auto starts = bucket_starts();
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t j = sa[i];
            if (j != kEmpty && j > 0 && !stype_[j - 1])
                sa[starts[s_[j - 1]]++] = j - 1;
        }
        auto ends = bucket_ends();
        for (std::size_t i = n; i-- > 0;) {
            const std::uint64_t j = sa[i];
            if (j != kEmpty && j > 0 && stype_[j - 1])
                sa[--ends[s_[j - 1]]] = j - 1;
        }
    }

    std::span<const Symbol> s_;
    std::size_t k_;
    std::vector<bool> stype_;
    std::vector<std::uint64_t> sizes_;
};

} // namespace

BwtString BwtString::from(SymbolString symbols) {
    BwtString out;
    Symbol max_symbol = 0;
    for (Symbol c : symbols)
        max_symbol = std::max(max_symbol, c);
    out.counts.assign(symbols.empty() ? 0 : max_symbol + 1, 0);
    for (Symbol c : symbols)
        ++out.counts[c];
    out.symbols = std::move(symbols);
    return out;
}

SuffixArray induced_sort(std::span<const Symbol> text, std::size_t alphabet_size) {
    if (text.empty())
        return {};
    const Symbol last = text.back();
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] >= alphabet_size)
            throw ParameterError("symbol outside the declared alphabet");
        if (text[i] <= last)
            throw ParameterError("the last symbol must be the unique minimum");
    }
    return InducedSorter(text, alphabet_size).run();
}

SuffixArray build_suffix_array(std::span<const Symbol> text) {
    if (text.empty() || text.back() != kTerminator)
        throw ParameterError("text is not null-terminated");
    if (std::count(text.begin(), text.end(), kTerminator) != 1)
        throw ParameterError("terminator occurs more than once");
    const Symbol max_symbol = *std::max_element(text.begin(), text.end());
    return InducedSorter(text, max_symbol + 1).run();
}

BwtString bwt_from_sa(std::span<const Symbol> text, const SuffixArray& sa) {
    const std::size_t n = text.size();
    if (sa.size() != n)
        throw ParameterError("suffix array length differs from text length");
    SymbolString bwt(n);
    for (std::size_t i = 0; i < n; ++i)
        bwt[i] = sa[i] == 0 ? text[n - 1] : text[sa[i] - 1];
    return BwtString::from(std::move(bwt));
}

SymbolString invert_bwt(const BwtString& bwt) {
    const std::size_t n = bwt.size();
    const auto& b = bwt.symbols;
    if (n == 0 || bwt.counts.empty() || bwt.counts[kTerminator] != 1)
        throw CorruptionError("BWT must contain exactly one terminator");

    std::vector<std::uint64_t> first(bwt.counts.size() + 1, 0);
    for (std::size_t c = 0; c < bwt.counts.size(); ++c)
        first[c + 1] = first[c] + bwt.counts[c];
    std::vector<std::uint64_t> lf(n);
    std::vector<std::uint64_t> seen(bwt.counts.size(), 0);
    for (std::size_t i = 0; i < n; ++i)
        lf[i] = first[b[i]] + seen[b[i]]++;

    SymbolString text(n);
    text[n - 1] = kTerminator;
    std::uint64_t row = 0;
    for (std::size_t k = n - 1; k-- > 0;) {
        if (b[row] == kTerminator)
            throw CorruptionError("LF cycle shorter than the BWT");
        text[k] = b[row];
        row = lf[row];
    }
    if (b[row] != kTerminator)
        throw CorruptionError("LF walk did not close at the terminator");
    return text;
}

BwtString naive_bwt_oracle(std::span<const Symbol> text) {
    const std::size_t n = text.size();
    std::vector<std::size_t> rotations(n);
    std::iota(rotations.begin(), rotations.end(), 0);
    std::stable_sort(rotations.begin(), rotations.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t k = 0; k < n; ++k) {
            const Symbol x = text[(a + k) % n];
            const Symbol y = text[(b + k) % n];
            if (x != y)
                return x < y;
        }
        return false;
    });
    SymbolString last(n);
    for (std::size_t i = 0; i < n; ++i)
        last[i] = text[(rotations[i] + n - 1) % n];
    return BwtString::from(std::move(last));
}

void write_suffix_array(std::ostream& out, const SuffixArray& sa) {
    for (std::uint64_t v : sa)
        io::write_u64(out, v);
}

} // namespace pfwg
