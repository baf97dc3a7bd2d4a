#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mondyn {

inline constexpr double kSimplexTolerance = 1e-12;

// A point of the probability simplex over a finite strategy set.
class MixedStrategy {
public:
    MixedStrategy() = default;

    // Validating constructor; see validate_simplex.
    static MixedStrategy from(std::vector<double> weights, double tol = kSimplexTolerance);
    // Divides by the sum. Weights must be finite, nonnegative, with a positive sum.
    static MixedStrategy normalized(std::vector<double> weights);
    static MixedStrategy vertex(std::size_t n, std::size_t i);
    static MixedStrategy uniform(std::size_t n);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::span<const double> weights() const { return weights_; }
    const std::vector<double>& vec() const { return weights_; }

    bool operator==(const MixedStrategy&) const = default;

private:
    explicit MixedStrategy(std::vector<double> w) : weights_(std::move(w)) {}
    std::vector<double> weights_;
};

// Rejects negative weights and sums further than tol from 1. Never renormalizes.
MixedStrategy validate_simplex(std::span<const double> v, double tol = kSimplexTolerance);

// Focal player's payoff matrix: rows are focal pure strategies, columns the
// opponent's pure strategies.
class Game {
public:
    Game() = default;
    explicit Game(std::vector<std::vector<double>> payoff,
                  std::vector<std::string> row_labels = {},
                  std::vector<std::string> col_labels = {});

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double at(std::size_t i, std::size_t j) const { return payoff_[i * cols_ + j]; }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(payoff_).subspan(i * cols_, cols_);
    }

    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    double min_entry() const;
    double max_entry() const;

    std::vector<std::vector<double>> matrix() const;
    Game transposed() const;

    // Hex FNV-1a digest of the dimensions and entries.
    std::string digest() const;

    bool operator==(const Game&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> payoff_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
};

// U_i(y) = sum_j A[i][j] y_j. Index is zero-based.
double payoff_pure(const Game& game, std::size_t i, const MixedStrategy& y);
// U_p(y) = sum_i p_i U_i(y).
double payoff_mixed(const Game& game, const MixedStrategy& p, const MixedStrategy& y);

// All U_i(y) at once, written into out (size rows()). No dimension checks.
void payoff_vector(const Game& game, std::span<const double> y, std::span<double> out);

}  // namespace mondyn
