#include "fxnet/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fxnet/error.hpp"

namespace fxnet {

std::size_t CorrelationNetwork::index_of(const CurrencyCode& code) const {
    auto it = std::find(nodes.begin(), nodes.end(), code);
    if (it == nodes.end()) throw NotFoundError("node " + code.str() + " not in network");
    return static_cast<std::size_t>(it - nodes.begin());
}

double distance_from_correlation(double r) {
    if (std::abs(r) > 1.0 + 1e-9)
        throw DomainError("correlation " + std::to_string(r) + " outside [-1, 1]");
    r = std::clamp(r, -1.0, 1.0);
    return std::sqrt(2.0 * (1.0 - r));
}

double correlation_from_distance(double d) {
    if (d < 0.0 || d > 2.0 + 1e-9)
        throw DomainError("distance " + std::to_string(d) + " outside [0, 2]");
    return 1.0 - d * d / 2.0;
}

namespace kernels {

namespace {

inline double pair_dot(const double* a, const double* b, std::size_t t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < t; ++k) acc += a[k] * b[k];
    return acc;
}

} // namespace

void correlation_serial(const double* m, std::size_t n, std::size_t t, double* result) {
    const double inv_t = 1.0 / static_cast<double>(t);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double r = pair_dot(m + i * t, m + j * t, t) * inv_t;
            result[i * n + j] = r;
            result[j * n + i] = r;
        }
    }
}

void correlation_parallel(const double* m, std::size_t n, std::size_t t, double* result) {
    const double inv_t = 1.0 / static_cast<double>(t);
    #pragma omp parallel for schedule(dynamic)
    for (long ii = 0; ii < static_cast<long>(n); ++ii) {
        auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = i; j < n; ++j) {
            double r = pair_dot(m + i * t, m + j * t, t) * inv_t;
            result[i * n + j] = r;
            result[j * n + i] = r;
        }
    }
}

} // namespace kernels

CorrelationNetwork correlation_matrix(const ReturnMatrix& m) {
    const std::size_t n = m.size();
    if (n < 2) throw SizeError("correlation network needs at least 2 series");
    const std::size_t t = m.days();
    if (t < 2) throw SizeError("correlation network needs at least 2 observations");

    CorrelationNetwork net{m.base, m.price_currencies, Matrix(n, n), Matrix(n, n), Matrix(n, n)};
    kernels::correlation_parallel(m.values.data(), n, t, net.R.data());

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double r = net.R(i, j);
            if (std::abs(r) > 1.0) {
                // accumulation overshoot; anything beyond rounding noise is a bug
                if (std::abs(r) > 1.0 + 1e-9)
                    throw NumericError("correlation entry " + std::to_string(r) +
                                       " outside [-1, 1]");
                r = r > 0 ? 1.0 : -1.0;
                net.R(i, j) = r;
            }
            net.weights(i, j) = std::abs(r);
            net.distances(i, j) = i == j ? 0.0 : distance_from_correlation(r);
        }
    }
    return net;
}

std::vector<double> symmetric_eigenvalues(Matrix a, int max_sweeps) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n) throw SizeError("eigenvalues need a square matrix");

    // cyclic Jacobi: zero out the largest off-diagonal entries until convergence
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-26) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (apq == 0.0) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double sign = theta >= 0.0 ? 1.0 : -1.0;
                double tau = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(tau * tau + 1.0);
                double s = tau * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double largest_eigenvalue(const Matrix& symmetric) {
    const std::size_t n = symmetric.rows();
    if (n == 0 || symmetric.cols() != n) throw SizeError("power iteration needs a square matrix");

    // deterministic pseudo-random start avoids pathological orthogonality
    std::mt19937_64 gen(0x5eedf00dULL);
    std::vector<double> v(n), av(n);
    for (auto& x : v)
        x = 0.5 + static_cast<double>(gen() >> 11) * (0x1.0p-53);

    constexpr int kMaxIter = 10000;
    constexpr double kRelTol = 1e-12;
    double lambda = 0.0;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += symmetric(i, j) * v[j];
            av[i] = acc;
        }
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            num += v[i] * av[i];
            den += v[i] * v[i];
        }
        double next = num / den;
        double norm = 0.0;
        for (double x : av) norm += x * x;
        norm = std::sqrt(norm);
        if (!(norm > 0.0)) return 0.0;  // v landed in the null space: A v = 0
        for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / norm;
        if (iter > 0 && std::abs(next - lambda) <= kRelTol * std::max(1.0, std::abs(next)))
            return next;
        lambda = next;
    }
    throw NumericError("power iteration did not converge in 10000 iterations");
}

double largest_eigenvalue(const CorrelationNetwork& net) {
    return largest_eigenvalue(net.R);
}

} // namespace fxnet
