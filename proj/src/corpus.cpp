#include "pfwg/corpus.hpp"

#include <algorithm>

namespace pfwg {

Alphabet::Alphabet(std::vector<unsigned char> bytes) : bytes_(std::move(bytes)) {
    std::sort(bytes_.begin(), bytes_.end());
    bytes_.erase(std::unique(bytes_.begin(), bytes_.end()), bytes_.end());
    for (std::size_t i = 0; i < bytes_.size(); ++i)
        code_of_[bytes_[i]] = kFirstCorpusSymbol + i;
}

Alphabet Alphabet::dna() {
    return Alphabet({'A', 'C', 'G', 'T'});
}

Alphabet Alphabet::of(std::string_view bytes) {
    return Alphabet(std::vector<unsigned char>(bytes.begin(), bytes.end()));
}

Symbol Alphabet::encode(unsigned char byte) const {
    const Symbol code = code_of_[byte];
    if (code == 0)
        throw ParameterError(std::string("symbol '") + static_cast<char>(byte) + "' is not in the alphabet");
    return code;
}

unsigned char Alphabet::decode(Symbol code) const {
    if (code == kTerminator)
        return '$';
    if (code == kStartMarker)
        return '#';
    const Symbol index = code - kFirstCorpusSymbol;
    if (index >= bytes_.size())
        throw ParameterError("symbol code " + std::to_string(code) + " is outside the alphabet");
    return bytes_[index];
}

std::string Text::to_string() const {
    std::string out;
    out.reserve(symbols.size());
    for (Symbol s : symbols)
        out.push_back(static_cast<char>(alphabet.decode(s)));
    return out;
}

Text Text::from_string(std::string_view bytes, const Alphabet& alphabet) {
    Text text;
    text.alphabet = alphabet;
    text.symbols.reserve(bytes.size());
    for (unsigned char b : bytes) {
        if (!alphabet.contains(b) && b == '$')
            text.symbols.push_back(kTerminator);
        else if (!alphabet.contains(b) && b == '#')
            text.symbols.push_back(kStartMarker);
        else
            text.symbols.push_back(alphabet.encode(b));
    }
    return text;
}

Text Text::from_string(std::string_view bytes) {
    std::vector<unsigned char> corpus;
    for (unsigned char b : bytes)
        if (b != '$' && b != '#')
            corpus.push_back(b);
    return from_string(bytes, Alphabet(std::move(corpus)));
}

Text ingest_fasta(std::string_view raw) {
    Text text;
    text.alphabet = Alphabet::dna();
    bool in_header = false;
    bool line_start = true;
    for (char ch : raw) {
        if (line_start && ch == '>')
            in_header = true;
        line_start = (ch == '\n');
        if (in_header) {
            if (ch == '\n')
                in_header = false;
            continue;
        }
        unsigned char up = static_cast<unsigned char>(ch);
        if (up >= 'a' && up <= 'z')
            up = static_cast<unsigned char>(up - 'a' + 'A');
        if (text.alphabet.contains(up))
            text.symbols.push_back(text.alphabet.encode(up));
    }
    if (text.symbols.empty())
        throw ParameterError("empty corpus");
    return text;
}

Text frame(const Text& text, std::size_t w) {
    if (text.framed)
        throw ParameterError("text is already framed");
    if (w == 0)
        throw ParameterError("window length must be at least 1");
    Text out;
    out.alphabet = text.alphabet;
    out.framed = true;
    out.padding = w;
    out.symbols.reserve(text.size() + 1 + w);
    out.symbols.push_back(kStartMarker);
    out.symbols.insert(out.symbols.end(), text.symbols.begin(), text.symbols.end());
    out.symbols.insert(out.symbols.end(), w, kTerminator);
    return out;
}

} // namespace pfwg
