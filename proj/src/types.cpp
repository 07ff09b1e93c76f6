#include "fpslfa/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "fpslfa/rng.hpp"

namespace fpslfa {

void SparseMatrix::validate() const {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(entries.size());
    for (const Entry& e : entries) {
        if (e.row >= num_rows || e.col >= num_cols) {
            throw std::invalid_argument("entry (" + std::to_string(e.row) + ", " +
                                        std::to_string(e.col) + ") outside " +
                                        std::to_string(num_rows) + "x" +
                                        std::to_string(num_cols) + " matrix");
        }
        if (!std::isfinite(e.value)) {
            throw std::invalid_argument("non-finite value at entry (" + std::to_string(e.row) +
                                        ", " + std::to_string(e.col) + ")");
        }
        const std::uint64_t key = (std::uint64_t{e.row} << 32) | e.col;
        if (!seen.insert(key).second) {
            throw std::invalid_argument("duplicate entry (" + std::to_string(e.row) + ", " +
                                        std::to_string(e.col) + ")");
        }
    }
}

DatasetSplit split_dataset(const SparseMatrix& source, std::uint64_t split_seed) {
    std::vector<Entry> shuffled = source.entries;
    rng::Engine engine(split_seed);
    rng::shuffle(std::span<Entry>(shuffled), engine);

    const std::size_t n = shuffled.size();
    const std::size_t n_validation = n / 10;
    const std::size_t n_test = n / 5;
    const std::size_t n_train = n - n_validation - n_test;

    DatasetSplit split;
    split.split_seed = split_seed;
    for (SparseMatrix* part : {&split.train, &split.validation, &split.test}) {
        part->num_rows = source.num_rows;
        part->num_cols = source.num_cols;
    }
    split.train.entries.assign(shuffled.begin(), shuffled.begin() + n_train);
    split.validation.entries.assign(shuffled.begin() + n_train,
                                    shuffled.begin() + n_train + n_validation);
    split.test.entries.assign(shuffled.begin() + n_train + n_validation, shuffled.end());
    return split;
}

FactorModel::FactorModel(std::uint32_t num_rows, std::uint32_t num_cols, std::uint32_t f)
    : rows_(num_rows),
      cols_(num_cols),
      f_(f),
      x_(std::size_t{num_rows} * f, 0.0),
      y_(std::size_t{num_cols} * f, 0.0) {}

double FactorModel::predict(std::uint32_t row, std::uint32_t col) const {
    if (row >= rows_ || col >= cols_) {
        throw std::invalid_argument("predict index (" + std::to_string(row) + ", " +
                                    std::to_string(col) + ") outside " + std::to_string(rows_) +
                                    "x" + std::to_string(cols_) + " model");
    }
    const std::span<const double> x = x_row(row);
    const std::span<const double> y = y_row(col);
    double dot = 0.0;
    for (std::uint32_t k = 0; k < f_; ++k) dot += x[k] * y[k];
    return dot;
}

FactorModel init_factors(std::uint32_t num_rows, std::uint32_t num_cols, std::uint32_t f,
                         std::uint64_t seed) {
    if (num_rows == 0 || num_cols == 0 || f == 0) {
        throw std::invalid_argument("init_factors requires num_rows, num_cols, f >= 1");
    }
    FactorModel model(num_rows, num_cols, f);
    rng::Engine engine(seed);
    for (double& v : model.x_data()) v = rng::uniform01(engine) * 0.1;
    for (double& v : model.y_data()) v = rng::uniform01(engine) * 0.1;
    return model;
}

Hyperparams Hyperparams::from_eta_lambda(double eta, double lambda) {
    Hyperparams h{eta, lambda, eta * lambda};
    h.validate();
    return h;
}

Hyperparams Hyperparams::with_phi(double eta, double phi) {
    Hyperparams h{eta, phi / eta, phi};
    h.validate();
    return h;
}

void Hyperparams::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw std::invalid_argument("eta must be positive and finite");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be non-negative and finite");
    }
    if (!(phi >= 0.0) || !std::isfinite(phi)) {
        throw std::invalid_argument("phi must be non-negative and finite");
    }
}

}  // namespace fpslfa
