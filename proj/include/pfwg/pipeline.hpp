#ifndef PFWG_PIPELINE_HPP
#define PFWG_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pfwg/corpus.hpp"
#include "pfwg/pfp.hpp"
#include "pfwg/tunnel.hpp"
#include "pfwg/wheeler.hpp"

namespace pfwg {

// Failure inside one pipeline stage; what() reads "<stage>: <cause>".
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& cause)
        : std::runtime_error(stage + ": " + cause), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct BuildOptions {
    PfpParams pfp;
    bool tunnel = true;
};

struct BuildResult {
    Alphabet alphabet;
    std::uint64_t body_length = 0;
    PfpOutput pfp;
    std::uint64_t parse_edges = 0;          // before tunnelling
    std::uint64_t parse_edges_tunnelled = 0; // equal to parse_edges when off
    TunnelPlan plan;
    WheelerGraph graph;
};

// frame -> parse_pfp -> parse_bwt -> tunnel -> expand
BuildResult build_index(const Text& body, const BuildOptions& options);

// Sidecar "<index>.meta": key=value lines.
void write_meta(std::ostream& out, const BuildResult& result, const BuildOptions& options);
std::map<std::string, std::string> read_meta(std::istream& in);
// Alphabet recorded in a sidecar; DNA when absent.
Alphabet meta_alphabet(const std::map<std::string, std::string>& meta);

// Writes `<path>` and `<path>.meta`; removes both on failure.
void save_index(const std::filesystem::path& path, const BuildResult& result, const BuildOptions& options);
WheelerGraph load_index(const std::filesystem::path& path);

struct BenchRecord {
    std::string label;
    bool failed = false;
    std::uint64_t input_bytes = 0;
    double time_s = 0;
    std::uint64_t peak_mem_bytes = 0;
    std::uint64_t index_bytes = 0;
    std::uint64_t parse_len = 0;
    std::uint64_t dict_bytes = 0;
    std::uint64_t edge_saving = 0;
};

std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& record);

// Manifest line: "<label> <source> <subset>". source is a FASTA path
// (subset = number of records to keep) or "synthetic" (subset = copies).
// Blank lines and lines starting with '#' are skipped.
struct ManifestEntry {
    std::string label;
    std::string source;
    std::uint64_t subset = 0;
};
std::vector<ManifestEntry> read_manifest(std::istream& in);

// `copies` variants of one random base sequence. Variant sites are drawn
// once at 0.2% density; each copy carries each variant with probability 1/2.
std::string synthetic_fasta(std::uint64_t copies, std::uint64_t seed, std::size_t base_length = 10000);
// First `records` FASTA records of `fasta`.
std::string_view take_fasta_records(std::string_view fasta, std::uint64_t records);

struct BenchOptions {
    BuildOptions build;
    std::uint64_t seed = 1;
    std::filesystem::path manifest_dir; // relative sources resolve here
    std::filesystem::path work_dir;     // scratch index files
};

// Never throws; a failing entry comes back with failed = true.
BenchRecord run_bench_entry(const ManifestEntry& entry, const BenchOptions& options);

} // namespace pfwg

#endif // PFWG_PIPELINE_HPP
