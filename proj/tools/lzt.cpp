#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <lzt/lzt.hpp>

namespace {

// exit codes: 0 ok, 1 usage, 2 I/O, 3 corrupt archive, 4 mismatch or
// detected fingerprint collision

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << '\n';
    return 1;
}

lzt::RunConfig make_config(const std::string& backend, const std::string& format,
                           const std::string& rolling_fn, bool scramble,
                           std::uint64_t seed) {
    lzt::RunConfig cfg;
    cfg.backend = *lzt::backend_from_name(backend);
    cfg.format = format == "lzw" ? lzt::Format::lzw : lzt::Format::lz78;
    cfg.rolling_fn =
        rolling_fn == "id37" ? lzt::RollingFn::id37 : lzt::RollingFn::fermat;
    cfg.scramble = scramble;
    cfg.seed = seed;
    return cfg;
}

void write_stats_file(const std::string& path, const lzt::RunConfig& cfg,
                      const lzt::CompressResult& res) {
    std::ofstream st(path, std::ios::trunc);
    if (!st) throw std::runtime_error("cannot open stats file " + path);
    st << "backend=" << lzt::backend_name(cfg.backend) << '\n'
       << "format=" << (cfg.format == lzt::Format::lz78 ? "lz78" : "lzw") << '\n'
       << "n=" << res.n << '\n'
       << "z=" << res.z << '\n'
       << "payload_bits=" << res.payload_bits << '\n'
       << "archive_bytes=" << lzt::HEADER_BYTES + (res.payload_bits + 7) / 8 << '\n'
       << "time_ms=" << res.time_ms << '\n'
       << "peak_bytes=" << res.peak_bytes << '\n'
       << "collisions=" << res.stats.collisions << '\n'
       << "table_M=" << res.stats.table_size_M << '\n'
       << "seed=" << cfg.seed << '\n';
    if (!st) throw std::runtime_error("write failed: " + path);
}

struct CompressArgs {
    std::string input = "-";
    std::string output = "-";
    std::string backend = "binary";
    std::string format = "lz78";
    std::string rolling_fn = "fermat";
    bool scramble = false;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> length;
    std::string stats_path;
    bool verify = false;
};

int cmd_compress(const CompressArgs& a) {
    const bool from_stdin = a.input == "-";
    if (from_stdin && !a.length) {
        return usage_error("--length is required when reading from stdin");
    }
    if (!from_stdin && a.length) {
        return usage_error("--length only applies to stdin input");
    }
    if (a.stats_path == "-") {
        return usage_error("--stats needs a file path, not stdout");
    }
    if (a.verify && from_stdin) {
        return usage_error("--verify re-reads the input and cannot be used "
                           "with stdin");
    }
    if (a.verify && a.output == "-") {
        return usage_error("--verify re-reads the archive; use -o FILE");
    }

    const lzt::RunConfig cfg = make_config(a.backend, a.format, a.rolling_fn,
                                           a.scramble, a.seed);
    if (lzt::backend_is_rolling(cfg.backend) && !a.verify) {
        std::cerr << "warning: " << lzt::backend_name(cfg.backend)
                  << " identifies trie nodes by fingerprint; a collision "
                     "silently corrupts the archive. Consider --verify.\n";
    }

    std::uint64_t n = 0;
    std::ifstream fin;
    std::istream* in = &std::cin;
    if (from_stdin) {
        n = *a.length;
    } else {
        n = std::filesystem::file_size(a.input);
        fin.open(a.input, std::ios::binary);
        if (!fin) throw std::runtime_error("cannot open " + a.input);
        in = &fin;
    }

    std::ofstream fout;
    std::ostream* out = &std::cout;
    if (a.output != "-") {
        fout.open(a.output, std::ios::binary | std::ios::trunc);
        if (!fout) throw std::runtime_error("cannot open " + a.output);
        out = &fout;
    }

    lzt::StreamSource src(*in);
    const lzt::CompressResult res = lzt::run_compress(cfg, src, n, *out);
    out->flush();
    if (!*out) throw std::runtime_error("write failed: " + a.output);

    if (!a.stats_path.empty()) write_stats_file(a.stats_path, cfg, res);

    if (a.verify) {
        fout.close();
        fin.close();
        std::ifstream arc(a.output, std::ios::binary);
        std::ifstream orig(a.input, std::ios::binary);
        if (!arc || !orig) throw std::runtime_error("cannot reopen for verify");
        const lzt::VerifyResult v = lzt::run_verify(arc, orig);
        if (!v.ok) {
            std::cerr << "verify failed: " << v.message;
            if (lzt::backend_is_rolling(cfg.backend)) {
                std::cerr << " (fingerprint collision)";
            }
            std::cerr << '\n';
            return 4;
        }
        std::cerr << "verify ok: " << v.header.n << " bytes, " << v.z
                  << " factors\n";
    }
    return 0;
}

struct StreamArgs {
    std::string input = "-";
    std::string output = "-";
};

int cmd_decompress(const StreamArgs& a) {
    std::ifstream fin;
    std::istream* in = &std::cin;
    if (a.input != "-") {
        fin.open(a.input, std::ios::binary);
        if (!fin) throw std::runtime_error("cannot open " + a.input);
        in = &fin;
    }
    std::ofstream fout;
    std::ostream* out = &std::cout;
    if (a.output != "-") {
        fout.open(a.output, std::ios::binary | std::ios::trunc);
        if (!fout) throw std::runtime_error("cannot open " + a.output);
        out = &fout;
    }
    lzt::run_decompress(*in, *out);
    out->flush();
    if (!*out) throw std::runtime_error("write failed: " + a.output);
    return 0;
}

int cmd_verify(const std::string& archive, const std::string& original) {
    if (original == "-") {
        return usage_error("the original must be a file, not stdin");
    }
    std::ifstream farc;
    std::istream* arc = &std::cin;
    if (archive != "-") {
        farc.open(archive, std::ios::binary);
        if (!farc) throw std::runtime_error("cannot open " + archive);
        arc = &farc;
    }
    std::ifstream orig(original, std::ios::binary);
    if (!orig) throw std::runtime_error("cannot open " + original);
    const lzt::VerifyResult v = lzt::run_verify(*arc, orig);
    if (!v.ok) {
        std::cerr << "verify failed: " << v.message << '\n';
        return 4;
    }
    std::cout << "ok: " << v.header.n << " bytes, " << v.z << " factors\n";
    return 0;
}

struct BenchArgs {
    std::uint64_t n = std::uint64_t(16) << 20;
    std::uint64_t seed = 1;
    std::string english_path = "data/english-sample.txt";
    std::string output = "-";
};

int cmd_bench(const BenchArgs& a) {
    lzt::BenchOptions opt;
    opt.n = a.n;
    opt.seed = a.seed;
    opt.english_path = a.english_path;
    const auto rows = lzt::run_bench(opt, &std::cerr);

    std::ofstream fout;
    std::ostream* out = &std::cout;
    if (a.output != "-") {
        fout.open(a.output, std::ios::trunc);
        if (!fout) throw std::runtime_error("cannot open " + a.output);
        out = &fout;
    }
    *out << lzt::bench_csv_header() << '\n';
    for (const auto& row : rows) *out << lzt::to_csv(row) << '\n';
    out->flush();
    if (const auto rss = lzt::peak_rss_bytes()) {
        std::cerr << "process peak RSS: " << *rss << " bytes (tracked peaks "
                     "in the CSV count trie structures only)\n";
    }
    return 0;
}

struct GenArgs {
    std::string kind;
    std::uint64_t n = std::uint64_t(1) << 20;
    std::uint32_t alphabet = 26;
    std::uint32_t period = 5;
    std::uint64_t seed = 1;
    std::string output = "-";
};

int cmd_gen(const GenArgs& a) {
    std::vector<std::uint8_t> data;
    if (a.kind == "random") {
        data = lzt::gen_random(a.n, a.alphabet, a.seed);
    } else if (a.kind == "periodic") {
        data = lzt::gen_periodic(a.n, a.period, a.seed);
    } else {
        data = lzt::gen_all_equal(a.n);
    }
    std::ofstream fout;
    std::ostream* out = &std::cout;
    if (a.output != "-") {
        fout.open(a.output, std::ios::binary | std::ios::trunc);
        if (!fout) throw std::runtime_error("cannot open " + a.output);
        out = &fout;
    }
    out->write(reinterpret_cast<const char*>(data.data()),
               std::streamsize(data.size()));
    out->flush();
    if (!*out) throw std::runtime_error("write failed: " + a.output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LZ78/LZW compressor over exchangeable LZ-trie backends"};
    app.require_subcommand(1);

    const std::vector<std::string> backend_names = {
        "binary", "ternary", "hash", "hash+", "cht", "rolling", "rolling+"};

    CompressArgs ca;
    CLI::App* compress = app.add_subcommand("compress", "compress a file or stdin");
    compress->add_option("input", ca.input, "input file, - for stdin");
    compress->add_option("-o,--output", ca.output, "archive file, - for stdout");
    compress->add_option("-b,--backend", ca.backend, "trie backend")
        ->check(CLI::IsMember(backend_names));
    compress->add_option("-f,--format", ca.format, "factorization format")
        ->check(CLI::IsMember({"lz78", "lzw"}));
    compress->add_option("--rolling-fn", ca.rolling_fn,
                         "fingerprint function for rolling backends")
        ->check(CLI::IsMember({"fermat", "id37"}));
    compress->add_flag("--scramble", ca.scramble,
                       "scramble fingerprints before table addressing");
    compress->add_option("--seed", ca.seed, "seed for randomized backends");
    compress->add_option("--length", ca.length,
                         "input length in bytes (stdin only)");
    compress->add_option("--stats", ca.stats_path,
                         "write compression statistics to this file");
    compress->add_flag("--verify", ca.verify,
                       "decode the archive again and compare (file input only)");

    StreamArgs da;
    CLI::App* decompress =
        app.add_subcommand("decompress", "decompress an archive");
    decompress->add_option("input", da.input, "archive file, - for stdin");
    decompress->add_option("-o,--output", da.output, "output file, - for stdout");

    std::string varchive = "-", voriginal;
    CLI::App* verify = app.add_subcommand(
        "verify", "check that an archive decodes to exactly a given file");
    verify->add_option("archive", varchive, "archive file, - for stdin");
    verify->add_option("original", voriginal, "original file")->required();

    BenchArgs ba;
    CLI::App* bench = app.add_subcommand(
        "bench", "run the backend/corpus sweep and print CSV");
    bench->add_option("--n", ba.n, "corpus size in bytes");
    bench->add_option("--seed", ba.seed, "corpus and backend seed");
    bench->add_option("--english", ba.english_path, "natural-language sample");
    bench->add_option("-o,--output", ba.output, "CSV file, - for stdout");

    GenArgs ga;
    CLI::App* gen = app.add_subcommand("gen", "generate a test corpus");
    gen->add_option("kind", ga.kind, "random | periodic | all-equal")
        ->required()
        ->check(CLI::IsMember({"random", "periodic", "all-equal"}));
    gen->add_option("--n", ga.n, "length in bytes");
    gen->add_option("--alphabet", ga.alphabet, "alphabet size for random")
        ->check(CLI::Range(1, 256));
    gen->add_option("--period", ga.period, "period for periodic");
    gen->add_option("--seed", ga.seed, "corpus seed");
    gen->add_option("-o,--output", ga.output, "output file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (compress->parsed()) return cmd_compress(ca);
        if (decompress->parsed()) return cmd_decompress(da);
        if (verify->parsed()) return cmd_verify(varchive, voriginal);
        if (bench->parsed()) return cmd_bench(ba);
        if (gen->parsed()) return cmd_gen(ga);
    } catch (const lzt::decode_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
