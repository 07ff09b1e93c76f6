#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fpslfa {

struct Entry {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    double value = 0.0;
};

// Known entries of a high-dimensional incomplete matrix in coordinate form.
// Absent (row, col) pairs are unknown, not zero, and are never materialized.
struct SparseMatrix {
    std::uint32_t num_rows = 0;
    std::uint32_t num_cols = 0;
    std::vector<Entry> entries;

    // Throws std::invalid_argument on an out-of-range index or a duplicate
    // (row, col) pair.
    void validate() const;
};

// Disjoint train/validation/test partition of a known-entry set.
// Proportions are 70/10/20 with integer remainders assigned to train.
struct DatasetSplit {
    SparseMatrix train;
    SparseMatrix validation;
    SparseMatrix test;
    std::uint64_t split_seed = 0;
};

// Shuffles the entries once under split_seed, then partitions. The shuffled
// order inside each part is kept; training visits entries in that order.
DatasetSplit split_dataset(const SparseMatrix& source, std::uint64_t split_seed);

// Row-factor matrix X (num_rows x f) and column-factor matrix Y (num_cols x f)
// of a rank-f approximation, stored row-major.
class FactorModel {
public:
    FactorModel() = default;
    FactorModel(std::uint32_t num_rows, std::uint32_t num_cols, std::uint32_t f);

    std::uint32_t num_rows() const { return rows_; }
    std::uint32_t num_cols() const { return cols_; }
    std::uint32_t f() const { return f_; }

    std::span<double> x_row(std::uint32_t m) { return {x_.data() + std::size_t{m} * f_, f_}; }
    std::span<double> y_row(std::uint32_t n) { return {y_.data() + std::size_t{n} * f_, f_}; }
    std::span<const double> x_row(std::uint32_t m) const {
        return {x_.data() + std::size_t{m} * f_, f_};
    }
    std::span<const double> y_row(std::uint32_t n) const {
        return {y_.data() + std::size_t{n} * f_, f_};
    }

    std::span<const double> x_data() const { return x_; }
    std::span<const double> y_data() const { return y_; }
    std::span<double> x_data() { return x_; }
    std::span<double> y_data() { return y_; }

    // Inner product <x_row, y_col>. Throws std::invalid_argument on an
    // out-of-range index.
    double predict(std::uint32_t row, std::uint32_t col) const;

private:
    std::uint32_t rows_ = 0;
    std::uint32_t cols_ = 0;
    std::uint32_t f_ = 0;
    std::vector<double> x_;
    std::vector<double> y_;
};

// Every factor drawn independently and uniformly from [0, 0.1); the same seed
// yields bit-identical matrices across runs and platforms. X is filled first,
// then Y, both row-major.
FactorModel init_factors(std::uint32_t num_rows, std::uint32_t num_cols, std::uint32_t f,
                         std::uint64_t seed);

// Learning rate, regularization coefficient, and their folded product.
struct Hyperparams {
    double eta = 0.005;
    double lambda = 0.03;
    double phi = 0.005 * 0.03;

    static Hyperparams from_eta_lambda(double eta, double lambda);
    // For the folded scheme, where phi is configured directly; lambda is
    // derived as phi / eta and only informative.
    static Hyperparams with_phi(double eta, double phi);

    void validate() const;
};

// Proportional/integral/derivative weights. Used both for raw gains and for
// their eta-folded forms; which folding applies is decided by the optimizer
// that owns the instance.
struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
};

}  // namespace fpslfa
