#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "entvar/dims.hpp"

namespace entvar {

/// Dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::complex<double>& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const std::complex<double>& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<std::complex<double>>& data() const { return data_; }

    /// this * this^dagger.
    ComplexMatrix gram() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::complex<double>> data_;
};

/// Standard normal draws by Box-Muller over a 64-bit Mersenne twister.
/// Substream `stream` of `seed` is seeded through std::seed_seq, so distinct
/// (seed, stream) pairs give independent engines.
class NormalSource {
public:
    NormalSource(std::uint64_t seed, std::uint64_t stream);

    double next();

private:
    double uniform_open();

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// m x n matrix of i.i.d. complex normals with E|Y_ij|^2 = 1
/// (real and imaginary parts N(0, 1/2)).
ComplexMatrix sample_ginibre(const Dims& d, NormalSource& rng);

struct EigensolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::size_t kMaxEigenDimension = 32;

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations, in
/// descending order. The input is symmetrized; it must be square, at most
/// 32 x 32 and Hermitian within 1e-12 relative to its Frobenius norm
/// (std::invalid_argument otherwise). Throws EigensolverFailure if the
/// off-diagonal norm does not drop below 1e-13 * |H| within the sweep limit.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

struct SpectralSample {
    /// Wishart eigenvalues, descending.
    std::vector<double> theta;
    double r;
    /// Fixed-trace eigenvalues theta / r, descending.
    std::vector<double> lambda;
    /// -sum lambda ln lambda.
    double S;
    /// sum theta ln theta.
    double T;
};

SpectralSample draw_sample(const Dims& d, NormalSource& rng);

struct Estimate {
    double value;
    double standard_error;
};

/// Worst per-sample deviations seen over a run.
struct InvariantAudit {
    std::size_t samples = 0;
    /// max |r ln r - r S - T|
    double max_trace_identity_error = 0.0;
    /// max |sum lambda - 1|
    double max_unit_trace_error = 0.0;
    double min_S = 0.0;
    double max_S = 0.0;
    /// Samples that broke a non-negativity or ordering invariant.
    std::size_t ordering_violations = 0;
};

struct EstimatorReport {
    Dims dims;
    std::size_t samples;
    std::uint64_t seed;
    Estimate mean_S;
    Estimate var_S;
    Estimate E_T;
    Estimate E_T2;
    Estimate mean_r;
    Estimate var_r;
    /// Pearson correlation of r and S; 0 when S is constant (m = 1).
    double corr_rS;
    InvariantAudit audit;
};

/// Samples per substream. Part of the determinism contract: changing it
/// changes every report.
constexpr std::size_t kChunkSize = 4096;

/// Moment estimates from `samples` draws split into chunks of kChunkSize;
/// chunk c draws from NormalSource(seed, c). Chunks are merged in index
/// order, so the report is identical for any thread count. threads = 0
/// means hardware concurrency. Requires samples >= 1000.
EstimatorReport estimate_moments(const Dims& d, std::size_t samples, std::uint64_t seed, unsigned threads);

/// One estimate compared against its closed-form prediction.
struct MonteCarloCheck {
    std::string name;
    double estimate;
    double standard_error;
    double prediction;
    /// (estimate - prediction) / standard_error; 0 when both the error and the
    /// deviation vanish (deterministic quantity).
    double z;
    double z_limit;
    bool pass;
};

/// z-score limits per quantity; corr_rS passes when |corr| < corr_factor / sqrt(N).
struct MonteCarloTolerances {
    double mean_S = 3.0;
    double var_S = 4.0;
    double E_T = 3.0;
    double E_T2 = 3.0;
    double mean_r = 3.0;
    double var_r = 3.0;
    double corr_factor = 3.0;

    static MonteCarloTolerances uniform(double z);
};

std::vector<MonteCarloCheck> compare_with_closed_forms(const EstimatorReport& report,
                                                       const MonteCarloTolerances& tol = {});

}  // namespace entvar
