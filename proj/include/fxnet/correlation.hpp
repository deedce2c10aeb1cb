#pragma once

#include <vector>

#include "fxnet/currency.hpp"
#include "fxnet/matrix.hpp"
#include "fxnet/returns.hpp"

namespace fxnet {

/// Complete weighted network over the price currencies of one base:
/// Pearson matrix R, edge weights |R|, and metric distances sqrt(2(1-R)).
struct CorrelationNetwork {
    CurrencyCode base;
    std::vector<CurrencyCode> nodes;
    Matrix R;          // N x N, symmetric, unit diagonal
    Matrix weights;    // |R|
    Matrix distances;  // sqrt(2(1-R)), in [0, 2]

    std::size_t size() const { return nodes.size(); }
    std::size_t index_of(const CurrencyCode& code) const;  // throws NotFoundError
};

/// Metric distance for a correlation coefficient: sqrt(2(1-r)).
/// Maps 1 -> 0, 0 -> sqrt(2), -1 -> 2. Throws DomainError when |r| > 1 + 1e-9;
/// smaller overshoot is clamped.
double distance_from_correlation(double r);

/// Inverse map: r = 1 - d^2/2.
double correlation_from_distance(double d);

namespace kernels {

/// result(i,j) = (1/t) * sum_k m(i,k) m(j,k) for an n x t row matrix.
/// Serial reference implementation.
void correlation_serial(const double* m, std::size_t n, std::size_t t, double* result);

/// Same computation, OpenMP-parallel over row pairs. Bit-identical to the
/// serial kernel for any thread count.
void correlation_parallel(const double* m, std::size_t n, std::size_t t, double* result);

} // namespace kernels

/// Build the network from normalized returns: R = (1/T) M M~. Off-diagonal
/// values marginally outside [-1, 1] from accumulation are clamped before the
/// distance map. Throws SizeError for fewer than two rows.
CorrelationNetwork correlation_matrix(const ReturnMatrix& m);

/// Dominant eigenvalue of R by power iteration (seeded deterministic start,
/// relative-change tolerance 1e-12, 10000 iteration cap). Throws NumericError
/// on non-convergence.
double largest_eigenvalue(const CorrelationNetwork& net);
double largest_eigenvalue(const Matrix& symmetric);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, ascending.
/// Dense small-N routine used for spectrum checks and PSD validation.
std::vector<double> symmetric_eigenvalues(Matrix a, int max_sweeps = 64);

} // namespace fxnet
