#include "pfwg/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <random>
#include <sstream>

#include "pfwg/expand.hpp"
#include "pfwg/memory.hpp"

namespace pfwg {

namespace {

template <typename Fn>
auto run_stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

std::string to_hex(const std::vector<unsigned char>& bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned char b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

std::vector<unsigned char> from_hex(const std::string& hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        throw FormatError("bad hex digit in metadata");
    };
    if (hex.size() % 2 != 0)
        throw FormatError("odd-length hex string in metadata");
    std::vector<unsigned char> out;
    for (std::size_t i = 0; i < hex.size(); i += 2)
        out.push_back(static_cast<unsigned char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParameterError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

BuildResult build_index(const Text& body, const BuildOptions& options) {
    BuildResult result;
    result.alphabet = body.alphabet;
    result.body_length = body.size();
    const Text framed = run_stage("frame", [&] { return frame(body, options.pfp.w); });
    result.pfp = run_stage("parse_pfp", [&] { return parse_pfp(framed, options.pfp); });
    WheelerGraph g_p = run_stage("parse_bwt", [&] { return build_parse_graph(result.pfp); });
    result.parse_edges = g_p.n_edges();
    if (options.tunnel) {
        run_stage("tunnel", [&] {
            result.plan = find_blocks(g_p);
            g_p = apply_tunnel(g_p, result.plan);
            return 0;
        });
    }
    result.parse_edges_tunnelled = g_p.n_edges();
    result.graph = run_stage("expand", [&] {
        const auto idx = build_dictionary_index(result.pfp);
        return expand_wg(g_p, result.pfp, idx);
    });
    return result;
}

void write_meta(std::ostream& out, const BuildResult& result, const BuildOptions& options) {
    out << "alphabet_hex=" << to_hex(result.alphabet.bytes()) << '\n';
    out << "w=" << result.pfp.w << '\n';
    if (options.pfp.triggers)
        out << "triggers=explicit\n" << "trigger_words=" << options.pfp.triggers->size() << '\n';
    else
        out << "triggers=hash\n" << "p=" << options.pfp.p << '\n';
    out << "body_length=" << result.body_length << '\n';
    out << "dictionary_phrases=" << result.pfp.dictionary.size() << '\n';
    out << "dictionary_bytes=" << dictionary_file_bytes(result.pfp) << '\n';
    out << "parse_length=" << result.pfp.parse.size() << '\n';
    out << "tunnel=" << (options.tunnel ? "on" : "off") << '\n';
    out << "tunnel_blocks=" << result.plan.blocks.size() << '\n';
    out << "parse_edges=" << result.parse_edges << '\n';
    out << "parse_edges_tunnelled=" << result.parse_edges_tunnelled << '\n';
    out << "edge_saving=" << result.plan.projected_edge_saving << '\n';
    out << "n_vertices=" << result.graph.n_vertices() << '\n';
    out << "n_edges=" << result.graph.n_edges() << '\n';
}

std::map<std::string, std::string> read_meta(std::istream& in) {
    std::map<std::string, std::string> meta;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError("metadata line without '=': " + line);
        meta[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return meta;
}

Alphabet meta_alphabet(const std::map<std::string, std::string>& meta) {
    const auto it = meta.find("alphabet_hex");
    return it == meta.end() ? Alphabet::dna() : Alphabet(from_hex(it->second));
}

void save_index(const std::filesystem::path& path, const BuildResult& result, const BuildOptions& options) {
    auto meta_path = path;
    meta_path += ".meta";
    std::vector<std::filesystem::path> opened; // only these are removed on failure
    try {
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw ParameterError("cannot write " + path.string());
            opened.push_back(path);
            write_index(out, result.graph);
            if (!out.flush())
                throw ParameterError("write failed for " + path.string());
        }
        std::ofstream meta(meta_path, std::ios::trunc);
        if (!meta)
            throw ParameterError("cannot write " + meta_path.string());
        opened.push_back(meta_path);
        write_meta(meta, result, options);
        if (!meta.flush())
            throw ParameterError("write failed for " + meta_path.string());
    } catch (...) {
        std::error_code ec;
        for (const auto& p : opened)
            std::filesystem::remove(p, ec);
        throw;
    }
}

WheelerGraph load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParameterError("cannot open " + path.string());
    return read_index(in);
}

std::string bench_csv_header() {
    return "label,input_bytes,time_s,peak_mem_bytes,index_bytes,parse_len,dict_bytes,edge_saving";
}

std::string bench_csv_row(const BenchRecord& r) {
    if (r.failed)
        return r.label + ",failed,,,,,,";
    char time[32];
    std::snprintf(time, sizeof time, "%.3f", r.time_s);
    std::ostringstream row;
    row << r.label << ',' << r.input_bytes << ',' << time << ',' << r.peak_mem_bytes << ',' << r.index_bytes << ','
        << r.parse_len << ',' << r.dict_bytes << ',' << r.edge_saving;
    return row.str();
}

std::vector<ManifestEntry> read_manifest(std::istream& in) {
    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line);
        ManifestEntry entry;
        std::string extra;
        if (!(fields >> entry.label >> entry.source >> entry.subset) || (fields >> extra))
            throw FormatError("manifest line " + std::to_string(line_no) + ": expected '<label> <source> <subset>'");
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string synthetic_fasta(std::uint64_t copies, std::uint64_t seed, std::size_t base_length) {
    static constexpr char bases[] = "ACGT";
    std::mt19937_64 rng(seed);
    std::string base(base_length, 'A');
    for (char& c : base)
        c = bases[rng() % 4];

    struct Variant {
        std::size_t pos;
        char alt;
    };
    std::vector<Variant> variants;
    const std::size_t sites = std::max<std::size_t>(1, base_length / 500);
    std::vector<bool> taken(base_length, false);
    while (variants.size() < sites && variants.size() < base_length) {
        const std::size_t pos = rng() % base_length;
        if (taken[pos])
            continue;
        taken[pos] = true;
        char alt = base[pos];
        while (alt == base[pos])
            alt = bases[rng() % 4];
        variants.push_back({pos, alt});
    }

    std::string fasta;
    fasta.reserve(copies * (base_length + base_length / 80 + 16));
    for (std::uint64_t i = 0; i < copies; ++i) {
        std::string seq = base;
        for (const Variant& v : variants)
            if (rng() & 1)
                seq[v.pos] = v.alt;
        fasta += ">copy_" + std::to_string(i + 1) + '\n';
        for (std::size_t at = 0; at < seq.size(); at += 80) {
            fasta.append(seq, at, 80);
            fasta.push_back('\n');
        }
    }
    return fasta;
}

std::string_view take_fasta_records(std::string_view fasta, std::uint64_t records) {
    std::uint64_t seen = 0;
    bool line_start = true;
    for (std::size_t i = 0; i < fasta.size(); ++i) {
        if (line_start && fasta[i] == '>' && seen++ == records)
            return fasta.substr(0, i);
        line_start = fasta[i] == '\n';
    }
    return fasta;
}

BenchRecord run_bench_entry(const ManifestEntry& entry, const BenchOptions& options) {
    BenchRecord record;
    record.label = entry.label;
    try {
        std::string raw;
        if (entry.source == "synthetic") {
            raw = synthetic_fasta(entry.subset, options.seed);
        } else {
            std::filesystem::path source = entry.source;
            if (source.is_relative())
                source = options.manifest_dir / source;
            raw = read_file(source);
            if (entry.subset > 0)
                raw = std::string(take_fasta_records(raw, entry.subset));
        }
        const Text body = ingest_fasta(raw);
        raw = std::string();

        const auto index_path = options.work_dir / (entry.label + ".pfwg");
        memory::reset_peak();
        const std::size_t baseline = memory::current_bytes();
        const auto start = std::chrono::steady_clock::now();
        const BuildResult result = build_index(body, options.build);
        save_index(index_path, result, options.build);
        record.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        record.peak_mem_bytes = memory::peak_bytes() - baseline;

        record.input_bytes = body.size();
        record.index_bytes = std::filesystem::file_size(index_path);
        record.parse_len = result.pfp.parse.size();
        record.dict_bytes = dictionary_file_bytes(result.pfp);
        record.edge_saving = result.plan.projected_edge_saving;
        std::error_code ec;
        std::filesystem::remove(index_path, ec);
        std::filesystem::remove(index_path.string() + ".meta", ec);
    } catch (const std::exception&) {
        record = BenchRecord{};
        record.label = entry.label;
        record.failed = true;
    }
    return record;
}

} // namespace pfwg
