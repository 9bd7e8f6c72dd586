#pragma once

// Least-squares fit of r_k ~ A + B (ln ln k / ln k) + C (1 / ln k), with A
// either free or held fixed. A = 2, B = -1 is the k^2 / ln k growth law.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stanley {

class FitInput {
   public:
    /// Throws PreconditionError unless sizes match, every k >= 3, k strictly
    /// increasing and every r finite.
    FitInput(std::string label, std::vector<std::int64_t> ks, std::vector<double> rs);

    const std::string& label() const { return label_; }
    std::span<const std::int64_t> ks() const { return ks_; }
    std::span<const double> rs() const { return rs_; }
    std::size_t size() const { return ks_.size(); }

    /// Points [first, first + count) as a new input with the same label.
    FitInput slice(std::size_t first, std::size_t count) const;

   private:
    std::string label_;
    std::vector<std::int64_t> ks_;
    std::vector<double> rs_;
};

enum class FitSubset { full, drop_first, drop_last };
std::string_view to_string(FitSubset subset);

struct GrowthFit {
    std::string label;
    FitSubset subset = FitSubset::full;
    std::optional<double> fixed_A;
    double A = 0, B = 0, C = 0;
    double r_squared = 0;
    std::vector<std::int64_t> k_values;
};

GrowthFit fit_growth_model(const FitInput& input, std::optional<double> fixed_A = std::nullopt);

/// Fits tagged full, drop_last, drop_first, in that order.
std::vector<GrowthFit> robustness_sweep(const FitInput& input, std::optional<double> fixed_A = std::nullopt);

/// Row-major design matrix for the model: columns [1, ln ln k / ln k, 1 / ln k],
/// or without the constant column when A is fixed.
std::vector<double> design_matrix(std::span<const std::int64_t> ks, bool include_intercept);

/// Least-squares solution of the m x n row-major system via Householder QR.
/// Throws FitError when m < n or the column-scaled R is numerically singular.
std::vector<double> least_squares(std::span<const double> matrix, std::size_t rows, std::size_t cols,
                                  std::span<const double> rhs);

}  // namespace stanley
