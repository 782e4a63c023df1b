#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <lzt/corpus.hpp>
#include <lzt/runner.hpp>

namespace lzt {

// ostream that discards its bytes, so timed runs do not measure disk I/O
class NullStream : public std::ostream {
public:
    NullStream() : std::ostream(&m_buf) {}

private:
    class NullBuf : public std::streambuf {
    protected:
        int overflow(int c) override { return traits_type::not_eof(c); }
        std::streamsize xsputn(const char*, std::streamsize n) override {
            return n;
        }
    };
    NullBuf m_buf;
};

struct BenchRow {
    std::string backend;
    std::string format;
    std::string corpus;
    std::uint64_t n = 0;
    std::uint64_t z = 0;
    double time_ms = 0;
    std::uint64_t peak_bytes = 0;
    std::uint64_t collisions = 0;
    std::uint64_t table_M = 0;
    std::uint64_t seed = 0;
};

inline const char* bench_csv_header() {
    return "backend,format,corpus,n,z,time_ms,peak_bytes,collisions,table_M,seed";
}

inline std::string to_csv(const BenchRow& r) {
    std::ostringstream os;
    os << r.backend << ',' << r.format << ',' << r.corpus << ',' << r.n << ','
       << r.z << ',';
    os.precision(3);
    os << std::fixed << r.time_ms << ',' << r.peak_bytes << ',' << r.collisions
       << ',' << r.table_M << ',' << r.seed;
    return os.str();
}

inline std::string bench_backend_label(const RunConfig& cfg) {
    std::string b = backend_name(cfg.backend);
    if (backend_is_rolling(cfg.backend)) {
        b += cfg.rolling_fn == RollingFn::fermat ? "/fermat" : "/id37";
        if (cfg.scramble) b += "/s";
    }
    return b;
}

inline BenchRow bench_one(const RunConfig& cfg, const std::string& corpus_name,
                          std::span<const std::uint8_t> data) {
    NullStream null;
    MemorySource src(data);
    const CompressResult res = run_compress(cfg, src, data.size(), null);
    BenchRow row;
    row.backend = bench_backend_label(cfg);
    row.format = cfg.format == Format::lz78 ? "lz78" : "lzw";
    row.corpus = corpus_name;
    row.n = res.n;
    row.z = res.z;
    row.time_ms = res.time_ms;
    row.peak_bytes = res.peak_bytes;
    row.collisions = res.stats.collisions;
    row.table_M = res.stats.table_size_M;
    row.seed = cfg.seed;
    return row;
}

struct BenchOptions {
    std::uint64_t n = std::uint64_t(16) << 20;
    std::uint64_t seed = 1;
    std::string english_path = "data/english-sample.txt";
};

// The default sweep: four corpora of n bytes (uniform letters, a period-5
// repeat, one repeated letter, natural-language text cycled to length)
// against every backend in both formats. progress, when given, gets one
// line per finished run.
inline std::vector<BenchRow> run_bench(const BenchOptions& opt,
                                       std::ostream* progress = nullptr) {
    std::vector<std::pair<std::string, std::vector<std::uint8_t>>> corpora;
    corpora.emplace_back("random-26", gen_random(opt.n, 26, opt.seed));
    corpora.emplace_back("periodic-5", gen_periodic(opt.n, 5, opt.seed));
    corpora.emplace_back("all-equal", gen_all_equal(opt.n));
    corpora.emplace_back(
        "english", cycle_to_length(read_file(opt.english_path), opt.n));

    std::vector<BenchRow> rows;
    for (const auto& [name, data] : corpora) {
        for (const BackendId backend : ALL_BACKENDS) {
            for (const Format format : {Format::lz78, Format::lzw}) {
                RunConfig cfg;
                cfg.backend = backend;
                cfg.format = format;
                cfg.seed = opt.seed;
                rows.push_back(bench_one(cfg, name, data));
                if (progress) {
                    *progress << "bench: " << to_csv(rows.back()) << '\n';
                }
            }
        }
    }
    return rows;
}

// process-level high-water mark, for context next to the tracked peaks
inline std::optional<std::uint64_t> peak_rss_bytes() {
    std::ifstream st("/proc/self/status");
    std::string line;
    while (std::getline(st, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::istringstream ls(line.substr(6));
            std::uint64_t kb = 0;
            ls >> kb;
            if (ls) return kb * 1024;
        }
    }
    return std::nullopt;
}

} // namespace lzt
