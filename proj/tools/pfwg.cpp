// Command-line front end: build, decode, query, validate, bench, pfp.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "pfwg/corpus.hpp"
#include "pfwg/memory.hpp"
#include "pfwg/pfp.hpp"
#include "pfwg/pipeline.hpp"
#include "pfwg/tunnel.hpp"
#include "pfwg/wheeler.hpp"

namespace fs = std::filesystem;
using namespace pfwg;

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct InputFlags {
    std::string input;
    std::string format = "fasta";
    std::size_t w = 4;
    std::uint64_t p = 50;
    std::string trigger_set;
};

void add_input_flags(CLI::App* cmd, InputFlags& f) {
    cmd->add_option("input", f.input, "Input file")->required();
    cmd->add_option("--format", f.format, "fasta (keep ACGT only) or raw (every byte is a symbol)")
        ->check(CLI::IsMember({"fasta", "raw"}));
    cmd->add_option("-w", f.w, "Trigger window length")->check(CLI::PositiveNumber);
    cmd->add_option("-p", f.p, "Hash modulus for trigger selection")->check(CLI::PositiveNumber);
    cmd->add_option("--trigger-set", f.trigger_set, "File with one trigger word per line; disables hashing");
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParameterError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Text load_body(const InputFlags& f) {
    std::string raw = slurp(f.input);
    if (f.format == "fasta")
        return ingest_fasta(raw);
    while (!raw.empty() && (raw.back() == '\n' || raw.back() == '\r'))
        raw.pop_back();
    if (raw.empty())
        throw ParameterError("empty corpus");
    if (raw.find_first_of("$#") != std::string::npos)
        throw ParameterError("raw input must not contain '$' or '#'");
    return Text::from_string(raw);
}

PfpParams pfp_params(const InputFlags& f, const Alphabet& alphabet) {
    PfpParams params;
    params.w = f.w;
    params.p = f.p;
    if (!f.trigger_set.empty()) {
        std::ifstream in(f.trigger_set);
        if (!in)
            throw ParameterError("cannot open " + f.trigger_set);
        std::vector<SymbolString> words;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (!line.empty())
                words.push_back(Text::from_string(line, alphabet).symbols);
        }
        params.triggers = std::move(words);
    }
    return params;
}

std::string render(const SymbolString& symbols, const Alphabet& alphabet) {
    std::string out;
    out.reserve(symbols.size());
    for (Symbol s : symbols)
        out.push_back(static_cast<char>(alphabet.decode(s)));
    return out;
}

std::map<std::string, std::string> load_meta(const fs::path& index) {
    std::ifstream in(index.string() + ".meta");
    return in ? read_meta(in) : std::map<std::string, std::string>{};
}

int cmd_build(const InputFlags& f, const std::string& out, const std::string& tunnel) {
    const auto start = std::chrono::steady_clock::now();
    memory::reset_peak();
    const std::size_t baseline = memory::current_bytes();
    const Text body = load_body(f);
    BuildOptions options;
    options.pfp = pfp_params(f, body.alphabet);
    options.tunnel = tunnel == "on";
    const BuildResult result = build_index(body, options);
    save_index(out, result, options);
    BenchRecord record;
    record.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    record.peak_mem_bytes = memory::peak_bytes() - baseline;
    record.label = fs::path(f.input).filename().string();
    record.input_bytes = body.size();
    record.index_bytes = fs::file_size(out);
    record.parse_len = result.pfp.parse.size();
    record.dict_bytes = dictionary_file_bytes(result.pfp);
    record.edge_saving = result.plan.projected_edge_saving;
    std::cout << bench_csv_header() << '\n' << bench_csv_row(record) << '\n';
    return 0;
}

int cmd_decode(const std::string& index, const std::string& out) {
    const WheelerGraph wg = load_index(index);
    const std::string text = render(decode_tunnelled(wg), meta_alphabet(load_meta(index)));
    if (out.empty()) {
        std::cout << text << '\n';
        return 0;
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!(file << text << '\n')) {
        std::error_code ec;
        fs::remove(out, ec);
        throw ParameterError("cannot write " + out);
    }
    return 0;
}

int cmd_query(const std::string& index, const std::string& pattern) {
    const WheelerGraph wg = load_index(index);
    const Alphabet alphabet = meta_alphabet(load_meta(index));
    SymbolString symbols;
    for (unsigned char c : pattern) {
        if (!alphabet.contains(c)) {
            std::cout << "absent\n";
            return kExitNegative;
        }
        symbols.push_back(alphabet.encode(c));
    }
    const bool present = matches(wg, symbols);
    std::cout << (present ? "present" : "absent") << '\n';
    return present ? 0 : kExitNegative;
}

int cmd_validate(const std::string& index) {
    WheelerGraph wg;
    try {
        wg = load_index(index);
    } catch (const FormatError& e) {
        std::cout << "invalid: " << e.what() << '\n';
        return kExitNegative;
    } catch (const CorruptionError& e) {
        std::cout << "invalid: " << e.what() << '\n';
        return kExitNegative;
    }
    const WheelerVerdict verdict = check_wheeler(succinct_to_edges(wg));
    if (!verdict) {
        std::cout << "invalid: Wheeler condition " << verdict.condition << " fails for edges (" << verdict.first.source
                  << "->" << verdict.first.target << ") and (" << verdict.second.source << "->"
                  << verdict.second.target << ")\n";
        return kExitNegative;
    }
    try {
        walk_tunnelled(wg, 0);
    } catch (const CorruptionError& e) {
        std::cout << "invalid: " << e.what() << '\n';
        return kExitNegative;
    }
    std::cout << "valid: " << wg.n_vertices() << " vertices, " << wg.n_edges() << " edges\n";
    return 0;
}

int cmd_bench(const std::string& manifest, const std::string& out, std::uint64_t seed, std::size_t w,
              std::uint64_t p, const std::string& tunnel) {
    std::ifstream in(manifest);
    if (!in)
        throw ParameterError("cannot open " + manifest);
    BenchOptions options;
    options.seed = seed;
    options.build.pfp.w = w;
    options.build.pfp.p = p;
    options.build.tunnel = tunnel == "on";
    options.manifest_dir = fs::absolute(manifest).parent_path();
    options.work_dir = fs::temp_directory_path();

    std::ofstream file;
    if (!out.empty()) {
        file.open(out, std::ios::trunc);
        if (!file)
            throw ParameterError("cannot write " + out);
    }
    std::ostream& csv = out.empty() ? std::cout : file;
    csv << bench_csv_header() << '\n';
    for (const ManifestEntry& entry : read_manifest(in))
        csv << bench_csv_row(run_bench_entry(entry, options)) << '\n' << std::flush;
    return 0;
}

int cmd_pfp(const InputFlags& f, const std::string& prefix) {
    const Text body = load_body(f);
    const PfpOutput pfp = parse_pfp(frame(body, f.w), pfp_params(f, body.alphabet));
    const fs::path dict = prefix + ".dict";
    const fs::path parse = prefix + ".parse";
    std::vector<fs::path> opened; // only these are removed on failure
    try {
        std::ofstream d(dict, std::ios::binary | std::ios::trunc);
        if (!d)
            throw ParameterError("cannot write " + dict.string());
        opened.push_back(dict);
        std::ofstream q(parse, std::ios::binary | std::ios::trunc);
        if (!q)
            throw ParameterError("cannot write " + parse.string());
        opened.push_back(parse);
        write_dictionary(d, pfp, body.alphabet);
        write_parse(q, pfp);
        if (!d.flush() || !q.flush())
            throw ParameterError("write failed for " + prefix);
    } catch (...) {
        std::error_code ec;
        for (const auto& p : opened)
            fs::remove(p, ec);
        throw;
    }
    std::cout << "phrases=" << pfp.dictionary.size() << " parse_length=" << pfp.parse.size()
              << " dict_bytes=" << dictionary_file_bytes(pfp) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prefix-free-parsing Wheeler graph indexes"};
    app.require_subcommand(1);

    InputFlags build_flags;
    std::string build_out;
    std::string tunnel = "on";
    auto* build = app.add_subcommand("build", "Build an index from a FASTA or raw text file");
    add_input_flags(build, build_flags);
    build->add_option("--out", build_out, "Index path; metadata goes to <out>.meta")->required();
    build->add_option("--tunnel", tunnel, "Tunnel the parse graph")->check(CLI::IsMember({"on", "off"}));

    std::string index;
    std::string decode_out;
    auto* decode = app.add_subcommand("decode", "Print the text stored in an index");
    decode->add_option("index", index)->required();
    decode->add_option("--out", decode_out, "Write the text here instead of stdout");

    std::string pattern;
    auto* query = app.add_subcommand("query", "Report whether a pattern occurs (exit 1 when absent)");
    query->add_option("index", index)->required();
    query->add_option("pattern", pattern)->required();

    auto* validate = app.add_subcommand("validate", "Check an index file (exit 1 when invalid)");
    validate->add_option("index", index)->required();

    std::string manifest;
    std::string bench_out;
    std::uint64_t seed = 1;
    std::size_t bench_w = 4;
    std::uint64_t bench_p = 50;
    auto* bench = app.add_subcommand("bench", "Build every manifest entry and print one CSV row each");
    bench->add_option("--manifest", manifest, "Lines of '<label> <fasta path|synthetic> <records|copies>'")
        ->required();
    bench->add_option("--out", bench_out, "CSV path (default stdout)");
    bench->add_option("--seed", seed, "Seed for synthetic corpora");
    bench->add_option("-w", bench_w)->check(CLI::PositiveNumber);
    bench->add_option("-p", bench_p)->check(CLI::PositiveNumber);
    bench->add_option("--tunnel", tunnel)->check(CLI::IsMember({"on", "off"}));

    InputFlags pfp_flags;
    std::string pfp_out;
    auto* pfp = app.add_subcommand("pfp", "Write the dictionary (.dict) and parse (.parse) of a text");
    add_input_flags(pfp, pfp_flags);
    pfp->add_option("--out", pfp_out, "Output prefix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*build)
            return cmd_build(build_flags, build_out, tunnel);
        if (*decode)
            return cmd_decode(index, decode_out);
        if (*query)
            return cmd_query(index, pattern);
        if (*validate)
            return cmd_validate(index);
        if (*bench)
            return cmd_bench(manifest, bench_out, seed, bench_w, bench_p, tunnel);
        if (*pfp)
            return cmd_pfp(pfp_flags, pfp_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
