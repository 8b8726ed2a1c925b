// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pfwg/corpus.hpp"
#include "pfwg/expand.hpp"
#include "pfwg/pfp.hpp"
#include "pfwg/pipeline.hpp"
#include "pfwg/suffix_bwt.hpp"
#include "pfwg/tunnel.hpp"
#include "pfwg/wheeler.hpp"

using namespace pfwg;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, double limit_s, const std::function<Outcome()>& check) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = check();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[96];
    if (limit_s > 0)
        std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", elapsed, limit_s);
    else
        std::snprintf(timing, sizeof timing, "%.2f s", elapsed);
    if (limit_s > 0 && elapsed >= limit_s) {
        out.pass = false;
        out.detail += "; over time limit";
    }
    failures += !out.pass;
    std::cout << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << "  " << out.detail << "  (" << timing
              << ")" << std::endl;
}

std::string render(const SymbolString& s, const Alphabet& a) {
    std::string out;
    for (Symbol c : s)
        out.push_back(static_cast<char>(a.decode(c)));
    return out;
}

// The shared corpus of criteria 2-5: 1200 texts, 60 (w, p) combinations.
struct CorpusCase {
    Text framed;
    PfpParams params;
};

std::vector<CorpusCase> oracle_corpus() {
    std::vector<std::pair<std::size_t, std::uint64_t>> combos;
    for (std::size_t w = 1; w <= 5; ++w)
        for (std::uint64_t p : {1, 2, 3, 4, 5, 7, 10, 13, 20, 30, 50, 100})
            combos.push_back({w, p});
    std::mt19937_64 rng(20240601);
    std::vector<CorpusCase> cases;
    const unsigned sigmas[] = {2, 4, 26};
    for (int i = 0; i < 1200; ++i) {
        const unsigned sigma = sigmas[i % 3];
        const auto [w, p] = combos[i % combos.size()];
        const std::size_t max_body = 512 - 1 - w;
        const std::size_t n = rng() % (max_body + 1);
        const std::string body =
            (i / 3) % 2 ? oracle::random_text(rng, n, sigma) : oracle::repetitive_text(rng, n, sigma);
        std::string letters;
        for (unsigned c = 0; c < sigma; ++c)
            letters.push_back(static_cast<char>('a' + c));
        PfpParams params;
        params.w = w;
        params.p = p;
        cases.push_back({frame(Text::from_string(body, Alphabet::of(letters)), w), params});
    }
    return cases;
}

struct CorpusGraphs {
    WheelerGraph parse_graph;
    WheelerGraph expanded;
    TunnelPlan plan;
    WheelerGraph tunnelled_parse;
    WheelerGraph tunnelled_expanded;
    std::uint64_t def_edges = 0; // sum over parse edges of |phrase| - w
};

} // namespace

int main() {
    std::cout << "acceptance suite" << std::endl;

    report(1, 1, [] {
        const Alphabet abcd = Alphabet::of("ABCD");
        Text t = Text::from_string("#ABDACDABDACDA$", abcd);
        t.framed = true;
        t.padding = 1;
        PfpParams params;
        params.w = 1;
        params.triggers = std::vector<SymbolString>{{abcd.encode('A')}};
        const PfpOutput pfp = parse_pfp(t, params);
        std::vector<std::string> dict;
        std::string shown = "D=[";
        for (const auto& d : pfp.dictionary) {
            dict.push_back(render(d, abcd));
            shown += (dict.size() > 1 ? ", " : "") + dict.back();
        }
        shown += "] P=[";
        for (std::size_t i = 0; i < pfp.parse.size(); ++i)
            shown += (i ? "," : "") + std::to_string(pfp.parse[i]);
        shown += "]";
        const bool ok = dict == std::vector<std::string>{"#A", "A$", "ABDA", "ACDA"} &&
                        pfp.parse == std::vector<std::uint64_t>{0, 2, 3, 2, 3, 1};
        return Outcome{ok, "example parse " + shown};
    });

    const std::vector<CorpusCase> corpus = oracle_corpus();
    std::vector<CorpusGraphs> graphs(corpus.size());
    std::vector<PfpOutput> parses(corpus.size());

    report(2, 60, [&] {
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            parses[i] = parse_pfp(corpus[i].framed, corpus[i].params);
            CorpusGraphs& g = graphs[i];
            g.parse_graph = build_parse_graph(parses[i]);
            g.expanded = expand_wg(g.parse_graph, parses[i], build_dictionary_index(parses[i]));
            for (std::uint64_t pos = 0; pos < g.parse_graph.n_edges(); ++pos)
                g.def_edges += parses[i].dictionary[g.parse_graph.label(pos)].size() - parses[i].w;
            mismatches += g.expanded.labels() != naive_bwt_oracle(corpus[i].framed.symbols).symbols;
        }
        return Outcome{mismatches == 0, std::to_string(corpus.size()) + " texts, 60 (w,p) combinations, " +
                                            std::to_string(mismatches) + " BWT mismatches"};
    });

    report(3, 120, [&] {
        std::size_t mismatches = 0, with_blocks = 0;
        std::uint64_t saving = 0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            CorpusGraphs& g = graphs[i];
            g.plan = find_blocks(g.parse_graph);
            g.tunnelled_parse = apply_tunnel(g.parse_graph, g.plan);
            g.tunnelled_expanded = expand_wg(g.tunnelled_parse, parses[i], build_dictionary_index(parses[i]));
            mismatches += decode_tunnelled(g.tunnelled_expanded) != corpus[i].framed.symbols;
            with_blocks += !g.plan.blocks.empty();
            saving += g.plan.projected_edge_saving;
        }
        return Outcome{mismatches == 0, std::to_string(corpus.size()) + " texts (" + std::to_string(with_blocks) +
                                            " tunnelled, " + std::to_string(saving) + " parse edges saved), " +
                                            std::to_string(mismatches) + " decode mismatches"};
    });

    report(4, 0, [&] {
        std::size_t checked = 0, invalid = 0;
        for (const CorpusGraphs& g : graphs) {
            for (const WheelerGraph* wg : {&g.parse_graph, &g.expanded, &g.tunnelled_parse, &g.tunnelled_expanded}) {
                invalid += !validate_wheeler(succinct_to_edges(*wg)).valid();
                ++checked;
            }
        }
        return Outcome{invalid == 0, std::to_string(checked) + " graphs through the exhaustive validator, " +
                                         std::to_string(invalid) + " invalid"};
    });

    report(5, 0, [&] {
        std::size_t tunnel_bad = 0, expand_bad = 0;
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            const CorpusGraphs& g = graphs[i];
            tunnel_bad += g.tunnelled_parse.n_edges() != g.parse_graph.n_edges() - g.plan.projected_edge_saving;
            std::uint64_t sum = 0;
            for (const Block& b : g.plan.blocks)
                sum += (b.width - 1) * (b.length() - 1);
            tunnel_bad += sum != g.plan.projected_edge_saving;
            // The terminator run of the last phrase is spelled in full so that
            // the expanded L is the BWT of the framed text (criterion 2).
            expand_bad += g.expanded.n_edges() != g.def_edges + parses[i].w;
            std::uint64_t tunnelled_sum = 0;
            for (std::uint64_t pos = 0; pos < g.tunnelled_parse.n_edges(); ++pos)
                tunnelled_sum += parses[i].dictionary[g.tunnelled_parse.label(pos)].size() - parses[i].w;
            expand_bad += g.tunnelled_expanded.n_edges() != tunnelled_sum + parses[i].w;
        }
        return Outcome{tunnel_bad == 0 && expand_bad == 0,
                       "tunnel: edges = original - sum (k-1)(l-1) on " + std::to_string(graphs.size()) +
                           " applications (" + std::to_string(tunnel_bad) +
                           " off); expansion: edges = sum(|phrase|-w) + w on " + std::to_string(2 * graphs.size()) +
                           " graphs (" + std::to_string(expand_bad) + " off)"};
    });
    graphs.clear();
    parses.clear();

    report(6, 300, [] {
        double worst = 1.0;
        std::string worst_text;
        std::size_t texts = 0, with_optimum = 0;
        for (std::size_t len = 0; len <= 11; ++len) {
            for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) {
                std::string body;
                for (std::size_t i = 0; i < len; ++i)
                    body.push_back(code >> i & 1 ? 'b' : 'a');
                const SymbolString t = Text::from_string(body + "$", Alphabet::of("ab")).symbols;
                const WheelerGraph wg = wg_from_bwt(bwt_from_sa(t, build_suffix_array(t)));
                const std::uint64_t greedy = find_blocks(wg).projected_edge_saving;
                const std::uint64_t best =
                    oracle::optimal_saving(wg.n_vertices(), oracle::all_blocks(succinct_to_edges(wg)));
                ++texts;
                if (best == 0)
                    continue;
                ++with_optimum;
                const double ratio = double(greedy) / double(best);
                if (ratio < worst) {
                    worst = ratio;
                    worst_text = body + "$";
                }
            }
        }
        char line[160];
        std::snprintf(line, sizeof line, "%zu binary texts (n <= 12), %zu with a non-empty optimum, worst ratio %.3f%s%s",
                      texts, with_optimum, worst, worst_text.empty() ? "" : " on ", worst_text.c_str());
        return Outcome{worst >= 0.5, std::string(line) + " (threshold 0.5)"};
    });

    report(7, 120, [] {
        BenchOptions options;
        options.seed = 1;
        options.work_dir = std::filesystem::temp_directory_path();
        std::vector<BenchRecord> rows;
        std::vector<BuildResult> builds;
        for (std::uint64_t copies : {10, 50, 100}) {
            rows.push_back(run_bench_entry({"synthetic_" + std::to_string(copies), "synthetic", copies}, options));
            builds.push_back(build_index(ingest_fasta(synthetic_fasta(copies, options.seed)), options.build));
        }
        for (const auto& r : rows)
            if (r.failed)
                return Outcome{false, "bench row " + r.label + " failed"};
        const auto size = [](const BenchRecord& r) { return double(r.parse_len + r.dict_bytes); };
        const double ratio = size(rows[2]) / size(rows[0]);
        const auto disk = [](const BenchRecord& r) { return double(8 * r.parse_len + r.dict_bytes); };
        const double disk_ratio = disk(rows[2]) / disk(rows[0]);
        bool fewer = true;
        std::string edges;
        for (const auto& b : builds) {
            fewer = fewer && b.parse_edges_tunnelled < b.parse_edges;
            edges += (edges.empty() ? "" : ", ") + std::to_string(b.parse_edges) + "->" +
                     std::to_string(b.parse_edges_tunnelled);
        }
        bool monotone = true;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const BenchRecord &a = rows[i - 1], &b = rows[i];
            monotone = monotone && a.input_bytes < b.input_bytes && a.time_s <= b.time_s &&
                       a.peak_mem_bytes <= b.peak_mem_bytes && a.index_bytes <= b.index_bytes &&
                       a.parse_len <= b.parse_len && a.dict_bytes <= b.dict_bytes && a.edge_saving <= b.edge_saving;
        }
        char line[400];
        std::snprintf(line, sizeof line,
                      "(a) size(100)/size(10) = %.2f < 5 [parse_len + dict_bytes; %.2f with 8-byte parse ranks]; "
                      "(b) parse edges untunnelled->tunnelled %s; (c) CSV rows monotone: %s",
                      ratio, disk_ratio, edges.c_str(), monotone ? "yes" : "no");
        return Outcome{ratio < 5 && fewer && monotone, line};
    });

    report(8, 30, [] {
        std::mt19937_64 rng(8888);
        std::size_t pairs = 0, present = 0, disagreements = 0;
        while (pairs < 10000) {
            const unsigned sigma = 2 + rng() % 3;
            std::string letters;
            for (unsigned c = 0; c < sigma; ++c)
                letters.push_back(static_cast<char>('a' + c));
            const Alphabet alphabet = Alphabet::of(letters);
            const std::size_t n = 1 + rng() % 300;
            const std::string body = pairs % 2 ? oracle::random_text(rng, n, sigma) : oracle::repetitive_text(rng, n, sigma);
            const Text text = Text::from_string(body, alphabet);

            SymbolString terminated = text.symbols;
            terminated.push_back(kTerminator);
            PfpParams params;
            params.w = 1 + rng() % 4;
            params.p = 1 + rng() % 10;
            const PfpOutput pfp = parse_pfp(frame(text, params.w), params);
            const WheelerGraph cycle = wg_from_bwt(bwt_from_sa(terminated, build_suffix_array(terminated)));
            const WheelerGraph expanded = expand_wg(build_parse_graph(pfp), pfp, build_dictionary_index(pfp));

            for (int q = 0; q < 50; ++q) {
                const std::size_t len = 1 + rng() % 16;
                SymbolString pattern;
                if (q % 2 == 0 && len <= body.size()) {
                    const std::size_t at = rng() % (body.size() - len + 1);
                    pattern.assign(text.symbols.begin() + at, text.symbols.begin() + at + len);
                } else {
                    pattern = Text::from_string(oracle::random_text(rng, len, sigma), alphabet).symbols;
                }
                const bool expected = oracle::contains(text.symbols, pattern);
                present += expected;
                const WheelerGraph& wg = pairs % 2 ? cycle : expanded;
                disagreements += matches(wg, pattern) != expected;
                ++pairs;
            }
        }
        return Outcome{disagreements == 0, std::to_string(pairs) + " pairs (" + std::to_string(present) + " present, " +
                                               std::to_string(pairs - present) + " absent) on BWT cycles and expanded graphs, " +
                                               std::to_string(disagreements) + " disagreements"};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
