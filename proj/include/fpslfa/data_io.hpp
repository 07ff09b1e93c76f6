#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpslfa/types.hpp"

namespace fpslfa {

enum class FileKind { movielens_dat, csv, tsv };

std::optional<FileKind> parse_file_kind(std::string_view name);
std::string to_string(FileKind kind);

// Column order is fixed as (user, item, rating[, timestamp-ignored]).
struct DatasetFormat {
    FileKind kind = FileKind::csv;
    bool has_header = false;  // csv/tsv only
};

struct ParsedDataset {
    SparseMatrix matrix;
    // Dense index -> original identifier, in first-appearance order.
    std::vector<std::string> row_ids;
    std::vector<std::string> col_ids;
};

// Reads a ratings file, remapping identifiers to dense 0-based indices in
// first-appearance order. A repeated (user, item) pair keeps the value of
// its last occurrence, at the position of its first. Throws ParseError with
// the offending line number, or std::invalid_argument for an empty file.
ParsedDataset parse_dataset(const std::filesystem::path& path, const DatasetFormat& format);

struct SyntheticDataset {
    SparseMatrix matrix;
    std::size_t ground_truth_rank = 0;
    FactorModel ground_truth;  // the factors the entries were generated from
};

// Draws rank-r factor matrices with entries uniform in [0, 1), samples
// round(density * cells) distinct cells uniformly, and fills them with the
// factor products plus N(0, noise_std^2) noise. Deterministic under seed.
SyntheticDataset generate_synthetic(std::uint32_t num_rows, std::uint32_t num_cols,
                                    std::uint32_t rank, double density, double noise_std,
                                    std::uint64_t seed);

// Binary snapshot: magic "FPSLFA" + 2-digit version, then |M|, |N|, f as
// little-endian u64, then X and Y row-major as little-endian f64. load(save)
// is bit-exact; any size, magic, or version mismatch raises FormatError.
void save_model(const FactorModel& model, const std::filesystem::path& path);
FactorModel load_model(const std::filesystem::path& path);

// Identifier maps persisted next to a snapshot, so predictions can be
// reported in the original identifier space.
struct IdMaps {
    std::vector<std::string> row_ids;
    std::vector<std::string> col_ids;
};

void save_id_maps(const IdMaps& maps, const std::filesystem::path& path);
IdMaps load_id_maps(const std::filesystem::path& path);

// Plain (row, col, value) CSV with full double round-trip precision.
void write_dataset_csv(const SparseMatrix& matrix, const std::filesystem::path& path);

}  // namespace fpslfa
