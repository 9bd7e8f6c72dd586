#include "stanley/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stanley/error.hpp"

namespace stanley {

namespace {

// Reciprocal condition estimate below this rejects the solve.
constexpr double kMinRcond = 1e-12;

}  // namespace

FitInput::FitInput(std::string label, std::vector<std::int64_t> ks, std::vector<double> rs)
    : label_(std::move(label)), ks_(std::move(ks)), rs_(std::move(rs)) {
    if (ks_.size() != rs_.size()) throw PreconditionError("fit input: k and r lengths differ");
    for (std::size_t i = 0; i < ks_.size(); ++i) {
        if (ks_[i] < 3) throw PreconditionError("fit input: k must be >= 3, got " + std::to_string(ks_[i]));
        if (i > 0 && ks_[i] <= ks_[i - 1])
            throw PreconditionError("fit input: k not strictly increasing at k=" + std::to_string(ks_[i]));
        if (!std::isfinite(rs_[i]))
            throw PreconditionError("fit input: non-finite r at k=" + std::to_string(ks_[i]));
    }
}

FitInput FitInput::slice(std::size_t first, std::size_t count) const {
    return FitInput(label_, {ks_.begin() + first, ks_.begin() + first + count},
                    {rs_.begin() + first, rs_.begin() + first + count});
}

std::string_view to_string(FitSubset subset) {
    switch (subset) {
        case FitSubset::full:
            return "full";
        case FitSubset::drop_first:
            return "drop_first";
        case FitSubset::drop_last:
            return "drop_last";
    }
    return "unknown";
}

std::vector<double> design_matrix(std::span<const std::int64_t> ks, bool include_intercept) {
    const std::size_t cols = include_intercept ? 3 : 2;
    std::vector<double> x;
    x.reserve(ks.size() * cols);
    for (auto k : ks) {
        const double lk = std::log(static_cast<double>(k));
        if (include_intercept) x.push_back(1.0);
        x.push_back(std::log(lk) / lk);
        x.push_back(1.0 / lk);
    }
    return x;
}

std::vector<double> least_squares(std::span<const double> matrix, std::size_t rows, std::size_t cols,
                                  std::span<const double> rhs) {
    if (cols == 0 || rows < cols)
        throw FitError("underdetermined fit: " + std::to_string(rows) + " points for " + std::to_string(cols) +
                       " parameters");
    if (matrix.size() != rows * cols || rhs.size() != rows) throw PreconditionError("least_squares: shape mismatch");

    // Column scaling keeps the conditioning check independent of units.
    std::vector<double> scale(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < rows; ++i) s += matrix[i * cols + j] * matrix[i * cols + j];
        scale[j] = std::sqrt(s);
        if (scale[j] == 0.0) throw FitError("design column " + std::to_string(j) + " is zero");
    }

    // Column-major working copy.
    std::vector<double> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[j * rows + i] = matrix[i * cols + j] / scale[j];
    std::vector<double> b(rhs.begin(), rhs.end());
    std::vector<double> diag(cols);

    for (std::size_t j = 0; j < cols; ++j) {
        double* col = &a[j * rows];
        double norm = 0;
        for (std::size_t i = j; i < rows; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        const double alpha = col[j] > 0 ? -norm : norm;
        diag[j] = alpha;
        if (norm == 0.0) continue;

        // Householder vector v = x - alpha e_j stored in place; H = I - 2 v v^T / (v^T v).
        col[j] -= alpha;
        double vtv = 0;
        for (std::size_t i = j; i < rows; ++i) vtv += col[i] * col[i];
        if (vtv == 0.0) continue;
        for (std::size_t c = j + 1; c < cols; ++c) {
            double* other = &a[c * rows];
            double dot = 0;
            for (std::size_t i = j; i < rows; ++i) dot += col[i] * other[i];
            const double f = 2.0 * dot / vtv;
            for (std::size_t i = j; i < rows; ++i) other[i] -= f * col[i];
        }
        double dot = 0;
        for (std::size_t i = j; i < rows; ++i) dot += col[i] * b[i];
        const double f = 2.0 * dot / vtv;
        for (std::size_t i = j; i < rows; ++i) b[i] -= f * col[i];
    }

    double dmax = 0, dmin = INFINITY;
    for (double d : diag) {
        dmax = std::max(dmax, std::abs(d));
        dmin = std::min(dmin, std::abs(d));
    }
    if (!(dmin > kMinRcond * dmax))
        throw FitError("design matrix is numerically rank deficient (rcond ~ " + std::to_string(dmin / dmax) +
                       "); use more or wider-spread points, or fix A");

    std::vector<double> coeffs(cols);
    for (std::size_t j = cols; j-- > 0;) {
        double s = b[j];
        for (std::size_t c = j + 1; c < cols; ++c) s -= a[c * rows + j] * coeffs[c];
        coeffs[j] = s / diag[j];
    }
    for (std::size_t j = 0; j < cols; ++j) coeffs[j] /= scale[j];
    return coeffs;
}

GrowthFit fit_growth_model(const FitInput& input, std::optional<double> fixed_A) {
    const std::size_t n = input.size();
    const bool free_A = !fixed_A.has_value();
    const std::size_t cols = free_A ? 3 : 2;
    if (n < cols)
        throw FitError("fit '" + input.label() + "' has " + std::to_string(n) + " points; " +
                       (free_A ? "A free needs at least 3" : "A fixed needs at least 2"));

    const auto x = design_matrix(input.ks(), free_A);
    std::vector<double> y(input.rs().begin(), input.rs().end());
    if (fixed_A)
        for (double& v : y) v -= *fixed_A;

    const auto coeffs = least_squares(x, n, cols, y);

    GrowthFit fit;
    fit.label = input.label();
    fit.fixed_A = fixed_A;
    fit.k_values.assign(input.ks().begin(), input.ks().end());
    if (free_A) {
        fit.A = coeffs[0];
        fit.B = coeffs[1];
        fit.C = coeffs[2];
    } else {
        fit.A = *fixed_A;
        fit.B = coeffs[0];
        fit.C = coeffs[1];
    }

    const auto r = input.rs();
    const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(n);
    double ss_tot = 0, ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = fixed_A ? *fixed_A : 0.0;
        for (std::size_t j = 0; j < cols; ++j) pred += x[i * cols + j] * coeffs[j];
        ss_res += (r[i] - pred) * (r[i] - pred);
        ss_tot += (r[i] - mean) * (r[i] - mean);
    }
    fit.r_squared = ss_tot != 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

std::vector<GrowthFit> robustness_sweep(const FitInput& input, std::optional<double> fixed_A) {
    const std::size_t n = input.size();
    if (n < 2) throw FitError("robustness sweep needs at least 2 points");
    std::vector<GrowthFit> out;
    out.push_back(fit_growth_model(input, fixed_A));
    out.push_back(fit_growth_model(input.slice(0, n - 1), fixed_A));
    out.back().subset = FitSubset::drop_last;
    out.push_back(fit_growth_model(input.slice(1, n - 1), fixed_A));
    out.back().subset = FitSubset::drop_first;
    return out;
}

}  // namespace stanley
