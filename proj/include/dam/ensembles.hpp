#pragma once

// Pattern generation (i.i.d. random, adversarially correlated), median
// binarization of real-valued vectors, and the two pattern file formats.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dam/model.hpp"
#include "dam/rng.hpp"

namespace dam {

enum class EnsembleKind { random_iid, correlated, file };

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::random_iid;
    ModelParams params;
    double copy_prob = 0.25;          // correlated only
    double copy_fraction = 1.0 / 3.0; // fraction of patterns correlated
    std::string source_path;          // file only
};

// i.i.d. +-1 entries, one PRNG output per entry in row-major order:
// +1 iff the top bit is set.
PatternSet generate_random(const ModelParams& params, Xoshiro256ss& rng);

// Pattern 0 random; patterns 1..floor(p*copy_fraction)-1 copy each
// coordinate from pattern 0 with probability copy_prob (fresh random
// otherwise); remaining patterns fully random. Requires p >= 3.
PatternSet generate_correlated(const ModelParams& params, Xoshiro256ss& rng,
                               double copy_prob = 0.25, double copy_fraction = 1.0 / 3.0);

PatternSet make_patterns(const EnsembleSpec& spec, Xoshiro256ss& rng);

// Per-vector median thresholding: entries >= that vector's median map to +1
// (ties up), the rest to -1. An even count takes the mean of the two middle
// values. Interaction order of the result defaults to 3.
PatternSet binarize_median(const std::vector<std::vector<double>>& vectors, int order = 3);

enum class PatternFileFormat { binary, text };

struct PatternIoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedHeaderError : PatternIoError {
    using PatternIoError::PatternIoError;
};
struct BadEntryError : PatternIoError {
    using PatternIoError::PatternIoError;
};
struct TruncatedFileError : PatternIoError {
    using PatternIoError::PatternIoError;
};

// Binary format: magic "DAMB", version byte 0x01, N as LE uint32, p as LE
// uint32, then p*N payload bytes with 0x01 = +1 and 0x00 = -1, row-major.
// Text format: first line "<N> <p>", then p lines of N tokens from {-1, 1}.
void save_patterns(const PatternSet& patterns, const std::filesystem::path& path,
                   PatternFileFormat format);

// Auto-detects the format by magic bytes. Loaded sets get interaction order
// `order` (the file stores only N, p and the entries).
PatternSet load_patterns(const std::filesystem::path& path, int order = 3);

}  // namespace dam
