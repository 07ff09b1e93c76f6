#include "fpslfa/data_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "fpslfa/errors.hpp"
#include "fpslfa/rng.hpp"

namespace fpslfa {

namespace {

constexpr char kMagic[6] = {'F', 'P', 'S', 'L', 'F', 'A'};
constexpr char kVersion[2] = {'0', '1'};

bool split_fields(const std::string& line, const std::string& sep,
                  std::vector<std::string_view>& fields) {
    fields.clear();
    std::string_view rest = line;
    while (true) {
        const std::size_t pos = rest.find(sep);
        if (pos == std::string_view::npos) {
            fields.push_back(rest);
            return true;
        }
        fields.push_back(rest.substr(0, pos));
        rest.remove_prefix(pos + sep.size());
    }
}

std::optional<double> parse_double(std::string_view token) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

}  // namespace

std::optional<FileKind> parse_file_kind(std::string_view name) {
    if (name == "movielens_dat") return FileKind::movielens_dat;
    if (name == "csv") return FileKind::csv;
    if (name == "tsv") return FileKind::tsv;
    return std::nullopt;
}

std::string to_string(FileKind kind) {
    switch (kind) {
        case FileKind::movielens_dat: return "movielens_dat";
        case FileKind::csv: return "csv";
        case FileKind::tsv: return "tsv";
    }
    return "unknown";
}

ParsedDataset parse_dataset(const std::filesystem::path& path, const DatasetFormat& format) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open file");
    }
    const std::string sep = format.kind == FileKind::movielens_dat ? "::"
                            : format.kind == FileKind::tsv         ? "\t"
                                                                   : ",";
    const bool skip_header = format.kind != FileKind::movielens_dat && format.has_header;

    ParsedDataset out;
    std::unordered_map<std::string, std::uint32_t> row_index;
    std::unordered_map<std::string, std::uint32_t> col_index;
    std::unordered_map<std::uint64_t, std::size_t> position;  // (row, col) -> entries slot

    std::string line;
    std::vector<std::string_view> fields;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && skip_header) continue;

        split_fields(line, sep, fields);
        if (fields.size() < 3 || fields.size() > 4) {
            throw ParseError(path.string(), line_no,
                             "expected 3 or 4 fields, found " + std::to_string(fields.size()));
        }
        const auto rating = parse_double(fields[2]);
        if (!rating || !std::isfinite(*rating)) {
            throw ParseError(path.string(), line_no,
                             "non-numeric rating '" + std::string(fields[2]) + "'");
        }

        auto intern = [](std::unordered_map<std::string, std::uint32_t>& index,
                         std::vector<std::string>& ids, std::string_view raw) {
            auto [it, inserted] = index.try_emplace(std::string(raw),
                                                    static_cast<std::uint32_t>(ids.size()));
            if (inserted) ids.emplace_back(raw);
            return it->second;
        };
        const std::uint32_t row = intern(row_index, out.row_ids, fields[0]);
        const std::uint32_t col = intern(col_index, out.col_ids, fields[1]);

        const std::uint64_t key = (std::uint64_t{row} << 32) | col;
        auto [slot, fresh] = position.try_emplace(key, out.matrix.entries.size());
        if (fresh) {
            out.matrix.entries.push_back({row, col, *rating});
        } else {
            out.matrix.entries[slot->second].value = *rating;  // last occurrence wins
        }
    }
    if (out.matrix.entries.empty()) {
        throw std::invalid_argument(path.string() + ": no ratings found");
    }
    out.matrix.num_rows = static_cast<std::uint32_t>(out.row_ids.size());
    out.matrix.num_cols = static_cast<std::uint32_t>(out.col_ids.size());
    return out;
}

SyntheticDataset generate_synthetic(std::uint32_t num_rows, std::uint32_t num_cols,
                                    std::uint32_t rank, double density, double noise_std,
                                    std::uint64_t seed) {
    if (num_rows == 0 || num_cols == 0 || rank == 0) {
        throw std::invalid_argument("generate_synthetic requires positive dimensions and rank");
    }
    if (rank > std::min(num_rows, num_cols)) {
        throw std::invalid_argument("rank exceeds min(num_rows, num_cols)");
    }
    if (!(density > 0.0) || density > 1.0) {
        throw std::invalid_argument("density must be in (0, 1]");
    }
    if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) {
        throw std::invalid_argument("noise_std must be non-negative and finite");
    }
    const std::uint64_t cells = std::uint64_t{num_rows} * num_cols;
    const std::uint64_t count =
        static_cast<std::uint64_t>(std::llround(density * static_cast<double>(cells)));
    if (count == 0) {
        throw std::invalid_argument("density yields zero entries");
    }

    rng::Engine engine(seed);
    SyntheticDataset out;
    out.ground_truth_rank = rank;
    out.ground_truth = FactorModel(num_rows, num_cols, rank);
    for (double& v : out.ground_truth.x_data()) v = rng::uniform01(engine);
    for (double& v : out.ground_truth.y_data()) v = rng::uniform01(engine);

    std::vector<std::uint64_t> cell_ids(cells);
    std::iota(cell_ids.begin(), cell_ids.end(), std::uint64_t{0});
    if (count < cells) {
        // Partial Fisher-Yates: the first `count` slots become a uniform
        // sample without replacement.
        for (std::uint64_t i = 0; i < count; ++i) {
            const std::uint64_t j = i + rng::below(engine, cells - i);
            std::swap(cell_ids[i], cell_ids[j]);
        }
        cell_ids.resize(count);
        std::sort(cell_ids.begin(), cell_ids.end());
    }

    rng::NormalSampler normal;
    out.matrix.num_rows = num_rows;
    out.matrix.num_cols = num_cols;
    out.matrix.entries.reserve(cell_ids.size());
    for (const std::uint64_t cell : cell_ids) {
        const auto row = static_cast<std::uint32_t>(cell / num_cols);
        const auto col = static_cast<std::uint32_t>(cell % num_cols);
        double value = out.ground_truth.predict(row, col);
        if (noise_std > 0.0) value += noise_std * normal.sample(engine);
        out.matrix.entries.push_back({row, col, value});
    }
    return out;
}

namespace {

void put_u64_le(std::ofstream& out, std::uint64_t v) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(bytes, 8);
}

std::uint64_t get_u64_le(std::ifstream& in, const std::string& path) {
    char bytes[8];
    if (!in.read(bytes, 8)) throw FormatError(path + ": truncated snapshot");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= std::uint64_t{static_cast<unsigned char>(bytes[i])} << (8 * i);
    }
    return v;
}

void put_doubles_le(std::ofstream& out, std::span<const double> values) {
    for (double d : values) put_u64_le(out, std::bit_cast<std::uint64_t>(d));
}

void get_doubles_le(std::ifstream& in, std::span<double> values, const std::string& path) {
    for (double& d : values) d = std::bit_cast<double>(get_u64_le(in, path));
}

}  // namespace

void save_model(const FactorModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError(path.string() + ": cannot open for writing");
    out.write(kMagic, sizeof(kMagic));
    out.write(kVersion, sizeof(kVersion));
    put_u64_le(out, model.num_rows());
    put_u64_le(out, model.num_cols());
    put_u64_le(out, model.f());
    put_doubles_le(out, model.x_data());
    put_doubles_le(out, model.y_data());
    if (!out) throw FormatError(path.string() + ": write failed");
}

FactorModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path.string() + ": cannot open");

    char magic[6];
    char version[2];
    if (!in.read(magic, sizeof(magic)) || !in.read(version, sizeof(version))) {
        throw FormatError(path.string() + ": truncated snapshot");
    }
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw FormatError(path.string() + ": not a model snapshot (bad magic)");
    }
    if (std::memcmp(version, kVersion, sizeof(kVersion)) != 0) {
        throw FormatError(path.string() + ": expected snapshot version " +
                          std::string(kVersion, 2) + ", found " + std::string(version, 2));
    }

    const std::uint64_t rows = get_u64_le(in, path.string());
    const std::uint64_t cols = get_u64_le(in, path.string());
    const std::uint64_t f = get_u64_le(in, path.string());
    if (rows == 0 || cols == 0 || f == 0 || rows > UINT32_MAX || cols > UINT32_MAX ||
        f > UINT32_MAX) {
        throw FormatError(path.string() + ": implausible dimensions");
    }

    FactorModel model(static_cast<std::uint32_t>(rows), static_cast<std::uint32_t>(cols),
                      static_cast<std::uint32_t>(f));
    get_doubles_le(in, model.x_data(), path.string());
    get_doubles_le(in, model.y_data(), path.string());
    in.peek();
    if (!in.eof()) throw FormatError(path.string() + ": trailing bytes after payload");
    return model;
}

void save_id_maps(const IdMaps& maps, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FormatError(path.string() + ": cannot open for writing");
    out << "rows " << maps.row_ids.size() << "\n";
    for (const std::string& id : maps.row_ids) out << id << "\n";
    out << "cols " << maps.col_ids.size() << "\n";
    for (const std::string& id : maps.col_ids) out << id << "\n";
    if (!out) throw FormatError(path.string() + ": write failed");
}

IdMaps load_id_maps(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(path.string() + ": cannot open");
    auto read_section = [&](const std::string& expected) {
        std::string tag;
        std::size_t n = 0;
        if (!(in >> tag >> n) || tag != expected) {
            throw FormatError(path.string() + ": malformed id map (expected '" + expected + "')");
        }
        in.ignore();  // rest of the count line
        std::vector<std::string> ids(n);
        for (std::string& id : ids) {
            if (!std::getline(in, id)) {
                throw FormatError(path.string() + ": truncated id map");
            }
        }
        return ids;
    };
    IdMaps maps;
    maps.row_ids = read_section("rows");
    maps.col_ids = read_section("cols");
    return maps;
}

void write_dataset_csv(const SparseMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FormatError(path.string() + ": cannot open for writing");
    char buf[64];
    for (const Entry& e : matrix.entries) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.value);
        out << e.row << ',' << e.col << ',' << buf << "\n";
    }
    if (!out) throw FormatError(path.string() + ": write failed");
}

}  // namespace fpslfa
