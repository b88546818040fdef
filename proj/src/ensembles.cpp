#include "dam/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dam {

PatternSet generate_random(const ModelParams& params, Xoshiro256ss& rng) {
    const long long total = params.num_patterns * params.num_neurons;
    std::vector<std::int8_t> data(total);
    for (long long idx = 0; idx < total; ++idx)
        data[idx] = static_cast<std::int8_t>(rng.next_spin());
    return PatternSet(params, std::move(data));
}

PatternSet generate_correlated(const ModelParams& params, Xoshiro256ss& rng, double copy_prob,
                               double copy_fraction) {
    if (params.num_patterns < 3)
        throw std::invalid_argument("generate_correlated requires p >= 3");
    if (copy_prob < 0.0 || copy_prob > 1.0)
        throw std::invalid_argument("copy_prob must be in [0,1]");
    if (copy_fraction < 0.0 || copy_fraction > 1.0)
        throw std::invalid_argument("copy_fraction must be in [0,1]");

    const long long p = params.num_patterns;
    const long long n = params.num_neurons;
    const long long correlated_end =
        static_cast<long long>(std::floor(static_cast<double>(p) * copy_fraction));

    std::vector<std::int8_t> data(p * n);
    for (long long i = 0; i < n; ++i) data[i] = static_cast<std::int8_t>(rng.next_spin());
    for (long long mu = 1; mu < p; ++mu) {
        for (long long i = 0; i < n; ++i) {
            if (mu < correlated_end && rng.next_double() < copy_prob)
                data[mu * n + i] = data[i];
            else
                data[mu * n + i] = static_cast<std::int8_t>(rng.next_spin());
        }
    }
    return PatternSet(params, std::move(data));
}

PatternSet make_patterns(const EnsembleSpec& spec, Xoshiro256ss& rng) {
    switch (spec.kind) {
        case EnsembleKind::random_iid:
            return generate_random(spec.params, rng);
        case EnsembleKind::correlated:
            return generate_correlated(spec.params, rng, spec.copy_prob, spec.copy_fraction);
        case EnsembleKind::file:
            return load_patterns(spec.source_path, spec.params.order);
    }
    throw std::invalid_argument("unknown ensemble kind");
}

PatternSet binarize_median(const std::vector<std::vector<double>>& vectors, int order) {
    if (vectors.empty()) throw std::invalid_argument("binarize_median: empty input");
    const long long n = static_cast<long long>(vectors.front().size());
    const long long p = static_cast<long long>(vectors.size());
    if (n == 0) throw std::invalid_argument("binarize_median: empty vectors");

    std::vector<std::int8_t> data(p * n);
    std::vector<double> sorted;
    for (long long mu = 0; mu < p; ++mu) {
        const auto& vec = vectors[mu];
        if (static_cast<long long>(vec.size()) != n)
            throw std::invalid_argument("binarize_median: inconsistent vector lengths");
        sorted = vec;
        std::sort(sorted.begin(), sorted.end());
        double median;
        if (n % 2 == 1)
            median = sorted[n / 2];
        else
            median = 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
        for (long long i = 0; i < n; ++i)
            data[mu * n + i] = vec[i] >= median ? 1 : -1;  // ties go up
    }
    return PatternSet(ModelParams(order, n, p), std::move(data));
}

namespace {

constexpr char kMagic[4] = {'D', 'A', 'M', 'B'};
constexpr std::uint8_t kVersion = 0x01;

void put_u32le(std::ostream& out, std::uint32_t v) {
    char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                     static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
    out.write(bytes, 4);
}

std::uint32_t get_u32le(const unsigned char* b) {
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

PatternSet parse_binary(const std::vector<unsigned char>& bytes, int order) {
    if (bytes.size() < 13) throw MalformedHeaderError("binary pattern file: header too short");
    if (bytes[4] != kVersion) throw MalformedHeaderError("binary pattern file: bad version byte");
    const std::uint32_t n = get_u32le(bytes.data() + 5);
    const std::uint32_t p = get_u32le(bytes.data() + 9);
    if (n == 0 || p == 0) throw MalformedHeaderError("binary pattern file: zero dimension");

    const std::size_t expected = static_cast<std::size_t>(n) * p;
    if (bytes.size() - 13 < expected)
        throw TruncatedFileError("binary pattern file: payload shorter than p*N");

    std::vector<std::int8_t> data(expected);
    for (std::size_t idx = 0; idx < expected; ++idx) {
        const unsigned char b = bytes[13 + idx];
        if (b == 0x01)
            data[idx] = 1;
        else if (b == 0x00)
            data[idx] = -1;
        else
            throw BadEntryError("binary pattern file: payload byte outside {0x00, 0x01}");
    }
    return PatternSet(ModelParams(order, n, p), std::move(data));
}

PatternSet parse_text(const std::string& content, int order) {
    std::istringstream in(content);
    std::string first_line;
    if (!std::getline(in, first_line))
        throw MalformedHeaderError("text pattern file: missing header line");
    std::istringstream header(first_line);
    long long n = 0, p = 0;
    if (!(header >> n >> p) || n < 1 || p < 1)
        throw MalformedHeaderError("text pattern file: header must be \"<N> <p>\"");
    std::string extra;
    if (header >> extra)
        throw MalformedHeaderError("text pattern file: trailing tokens in header");

    std::vector<std::int8_t> data(p * n);
    std::string token;
    for (long long idx = 0; idx < p * n; ++idx) {
        if (!(in >> token))
            throw TruncatedFileError("text pattern file: fewer than p*N entries");
        if (token == "1")
            data[idx] = 1;
        else if (token == "-1")
            data[idx] = -1;
        else
            throw BadEntryError("text pattern file: entry outside {-1, 1}: " + token);
    }
    return PatternSet(ModelParams(order, n, p), std::move(data));
}

}  // namespace

void save_patterns(const PatternSet& patterns, const std::filesystem::path& path,
                   PatternFileFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PatternIoError("cannot open for writing: " + path.string());

    const long long n = patterns.num_neurons();
    const long long p = patterns.num_patterns();
    if (format == PatternFileFormat::binary) {
        out.write(kMagic, 4);
        out.put(static_cast<char>(kVersion));
        put_u32le(out, static_cast<std::uint32_t>(n));
        put_u32le(out, static_cast<std::uint32_t>(p));
        for (std::int8_t v : patterns.raw_rows()) out.put(v > 0 ? '\x01' : '\x00');
    } else {
        out << n << ' ' << p << '\n';
        for (long long mu = 0; mu < p; ++mu) {
            const std::int8_t* row = patterns.row(mu).data();
            for (long long i = 0; i < n; ++i) {
                if (i) out << ' ';
                out << static_cast<int>(row[i]);
            }
            out << '\n';
        }
    }
    if (!out) throw PatternIoError("write failed: " + path.string());
}

PatternSet load_patterns(const std::filesystem::path& path, int order) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PatternIoError("cannot open: " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() >= 4 && std::equal(kMagic, kMagic + 4, bytes.begin()))
        return parse_binary(bytes, order);
    return parse_text(std::string(bytes.begin(), bytes.end()), order);
}

}  // namespace dam
