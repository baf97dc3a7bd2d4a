#include "mondyn/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <cstdio>

#include "mondyn/error.hpp"

namespace mondyn {

MixedStrategy MixedStrategy::from(std::vector<double> weights, double tol) {
    if (weights.empty()) throw InvalidArgument("empty weight vector");
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!std::isfinite(weights[i])) throw InvalidArgument("non-finite weight at index " + std::to_string(i));
        if (weights[i] < 0.0) throw InvalidArgument("negative weight at index " + std::to_string(i));
        sum += weights[i];
    }
    if (std::abs(sum - 1.0) > tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "sum deviation %.3g exceeds tolerance %.3g", sum - 1.0, tol);
        throw InvalidArgument(buf);
    }
    return MixedStrategy(std::move(weights));
}

MixedStrategy MixedStrategy::normalized(std::vector<double> weights) {
    if (weights.empty()) throw InvalidArgument("empty weight vector");
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("weights must be finite and nonnegative");
        sum += w;
    }
    if (!(sum > 0.0)) throw InvalidArgument("weights have zero sum");
    for (double& w : weights) w /= sum;
    return MixedStrategy(std::move(weights));
}

MixedStrategy MixedStrategy::vertex(std::size_t n, std::size_t i) {
    if (i >= n) throw InvalidArgument("vertex index out of range");
    std::vector<double> w(n, 0.0);
    w[i] = 1.0;
    return MixedStrategy(std::move(w));
}

MixedStrategy MixedStrategy::uniform(std::size_t n) {
    if (n == 0) throw InvalidArgument("empty strategy set");
    return MixedStrategy(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

MixedStrategy validate_simplex(std::span<const double> v, double tol) {
    return MixedStrategy::from(std::vector<double>(v.begin(), v.end()), tol);
}

Game::Game(std::vector<std::vector<double>> payoff,
           std::vector<std::string> row_labels,
           std::vector<std::string> col_labels)
    : row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {
    if (payoff.empty() || payoff.front().empty()) throw InvalidArgument("payoff matrix must be at least 1x1");
    rows_ = payoff.size();
    cols_ = payoff.front().size();
    payoff_.reserve(rows_ * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (payoff[i].size() != cols_) throw InvalidArgument("payoff row " + std::to_string(i) + " has wrong length");
        for (double a : payoff[i]) {
            if (!std::isfinite(a)) throw InvalidArgument("payoff entries must be finite");
            payoff_.push_back(a);
        }
    }
    if (!row_labels_.empty() && row_labels_.size() != rows_) throw InvalidArgument("row_labels length mismatch");
    if (!col_labels_.empty() && col_labels_.size() != cols_) throw InvalidArgument("col_labels length mismatch");
}

double Game::min_entry() const { return *std::min_element(payoff_.begin(), payoff_.end()); }
double Game::max_entry() const { return *std::max_element(payoff_.begin(), payoff_.end()); }

std::vector<std::vector<double>> Game::matrix() const {
    std::vector<std::vector<double>> m(rows_);
    for (std::size_t i = 0; i < rows_; ++i) m[i].assign(row(i).begin(), row(i).end());
    return m;
}

Game Game::transposed() const {
    std::vector<std::vector<double>> t(cols_, std::vector<double>(rows_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t[j][i] = at(i, j);
    return Game(std::move(t), col_labels_, row_labels_);
}

std::string Game::digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t k = 0; k < n; ++k) {
            h ^= p[k];
            h *= 1099511628211ULL;
        }
    };
    const std::uint64_t dims[2] = {rows_, cols_};
    mix(dims, sizeof dims);
    for (double a : payoff_) {
        double v = a == 0.0 ? 0.0 : a;  // fold -0.0
        mix(&v, sizeof v);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double payoff_pure(const Game& game, std::size_t i, const MixedStrategy& y) {
    if (i >= game.rows()) throw InvalidArgument("pure strategy index out of range");
    if (y.size() != game.cols()) throw InvalidArgument("opponent strategy has wrong dimension");
    double u = 0.0;
    auto r = game.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) u += r[j] * y[j];
    return u;
}

double payoff_mixed(const Game& game, const MixedStrategy& p, const MixedStrategy& y) {
    if (p.size() != game.rows()) throw InvalidArgument("focal strategy has wrong dimension");
    if (y.size() != game.cols()) throw InvalidArgument("opponent strategy has wrong dimension");
    double u = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0.0) u += p[i] * payoff_pure(game, i, y);
    return u;
}

void payoff_vector(const Game& game, std::span<const double> y, std::span<double> out) {
    const std::size_t m = game.cols();
    for (std::size_t i = 0; i < game.rows(); ++i) {
        auto r = game.row(i);
        double u = 0.0;
        for (std::size_t j = 0; j < m; ++j) u += r[j] * y[j];
        out[i] = u;
    }
}

}  // namespace mondyn
