// Copyright 2026 The covertlat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// Multi-shot covertness budgets and a small dense oracle for the quantum
/// Pinsker inequality behind them.
///
/// Relative entropies are in bits unless a base is given. In bits the Pinsker
/// inequality reads 1/2 ||rho - sigma||_1 <= sqrt(D(rho||sigma) ln 2 / 2), and
/// for k independent shots 1/4 ||rho^k - sigma^k||_1 <= sqrt(k D ln 2 / 8).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "covertlat/errors.hpp"
#include "covertlat/random.hpp"

namespace covertlat {

using Complex = std::complex<double>;

/// Dense real symmetric matrix, row-major.
struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    explicit SymMatrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {
    }
    double &operator()(std::size_t r, std::size_t c) {
        return a[r * n + c];
    }
    double operator()(std::size_t r, std::size_t c) const {
        return a[r * n + c];
    }
};

struct EigenSystem {
    std::vector<double> values;
    SymMatrix vectors;  // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix.
inline EigenSystem jacobi_eigen(SymMatrix m) {
    const std::size_t n = m.n;
    SymMatrix v(n);
    for (std::size_t k = 0; k < n; ++k) {
        v(k, k) = 1.0;
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        double total = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                total += m(p, q) * m(p, q);
                if (p != q) {
                    off += m(p, q) * m(p, q);
                }
            }
        }
        if (off <= 1e-30 * std::max(total, 1e-300)) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = m(p, q);
                if (std::abs(apq) < 1e-300) {
                    continue;
                }
                double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double mkp = m(k, p);
                    double mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double mpk = m(p, k);
                    double mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p);
                    double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    EigenSystem out{std::vector<double>(n), std::move(v)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = m(k, k);
    }
    return out;
}

/// Complex square matrix, row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    }

    std::size_t dim() const {
        return dim_;
    }
    Complex &operator()(std::size_t r, std::size_t c) {
        return data_[r * dim_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * dim_ + c];
    }

    ComplexMatrix operator-(const ComplexMatrix &o) const {
        ComplexMatrix out(dim_);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            out.data_[k] = data_[k] - o.data_[k];
        }
        return out;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
            t += (*this)(k, k);
        }
        return t;
    }

    /// Real symmetric embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix.
    /// Each eigenvalue appears twice; for Hermitian X and any real function f,
    /// tr(X f(Y)) = 1/2 tr(R(X) f(R(Y))).
    SymMatrix real_embedding() const {
        SymMatrix out(2 * dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                const Complex &z = (*this)(r, c);
                out(r, c) = z.real();
                out(r + dim_, c + dim_) = z.real();
                out(r, c + dim_) = -z.imag();
                out(r + dim_, c) = z.imag();
            }
        }
        return out;
    }

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            for (std::size_t k = 0; k < b.dim(); ++k) {
                for (std::size_t l = 0; l < b.dim(); ++l) {
                    out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Eigenvalues of a Hermitian matrix, each once, ascending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m) {
    auto es = jacobi_eigen(m.real_embedding());
    std::sort(es.values.begin(), es.values.end());
    std::vector<double> out;
    for (std::size_t k = 0; k < es.values.size(); k += 2) {
        out.push_back(0.5 * (es.values[k] + es.values[k + 1]));
    }
    return out;
}

inline constexpr double kStateTolerance = 1e-12;
inline constexpr std::size_t kMaxStateDim = 8;
inline constexpr std::size_t kMaxProductDim = 64;

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
   public:
    /// Validates; dimensions above `max_dim` are rejected.
    explicit DensityMatrix(ComplexMatrix m, std::size_t max_dim = kMaxStateDim) : m_(std::move(m)) {
        std::size_t d = m_.dim();
        if (d == 0 || d > max_dim) {
            throw PreconditionError("density matrix dimension must be in [1, " + std::to_string(max_dim) + "]");
        }
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                if (std::abs(m_(r, c) - std::conj(m_(c, r))) > kStateTolerance) {
                    throw PreconditionError("density matrix is not Hermitian");
                }
            }
        }
        if (std::abs(m_.trace() - Complex(1.0)) > kStateTolerance) {
            throw PreconditionError("density matrix trace is not 1");
        }
        for (double ev : hermitian_eigenvalues(m_)) {
            if (ev < -kStateTolerance) {
                throw PreconditionError("density matrix is not positive semidefinite");
            }
        }
    }

    static DensityMatrix pure(const std::vector<Complex> &psi) {
        double norm = 0.0;
        for (const auto &z : psi) {
            norm += std::norm(z);
        }
        ComplexMatrix m(psi.size());
        for (std::size_t r = 0; r < psi.size(); ++r) {
            for (std::size_t c = 0; c < psi.size(); ++c) {
                m(r, c) = psi[r] * std::conj(psi[c]) / norm;
            }
        }
        return DensityMatrix(std::move(m));
    }

    static DensityMatrix basis(std::size_t dim, std::size_t k) {
        std::vector<Complex> psi(dim, 0.0);
        psi.at(k) = 1.0;
        return pure(psi);
    }

    static DensityMatrix maximally_mixed(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            m(k, k) = 1.0 / double(dim);
        }
        return DensityMatrix(std::move(m));
    }

    std::size_t dim() const {
        return m_.dim();
    }
    const ComplexMatrix &matrix() const {
        return m_;
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return m_(r, c);
    }

   private:
    ComplexMatrix m_;
};

/// A A^dagger / tr, A with i.i.d. complex Gaussian entries.
inline DensityMatrix random_density_matrix(std::size_t dim, Rng &rng) {
    auto normal = [&] {
        double u1 = uniform01(rng);
        double u2 = uniform01(rng);
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    ComplexMatrix a(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            a(r, c) = Complex(normal(), normal());
        }
    }
    ComplexMatrix m(dim);
    double tr = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                s += a(r, k) * std::conj(a(c, k));
            }
            m(r, c) = s;
        }
        tr += m(r, r).real();
    }
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            m(r, c) /= tr;
        }
        m(r, r) = Complex(m(r, r).real(), 0.0);
    }
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r + 1; c < dim; ++c) {
            m(c, r) = std::conj(m(r, c));
        }
    }
    return DensityMatrix(std::move(m));
}

inline DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix(kron(a.matrix(), b.matrix()), kMaxProductDim);
}

inline DensityMatrix tensor_power(const DensityMatrix &a, int k) {
    if (k < 1) {
        throw PreconditionError("tensor power needs k >= 1");
    }
    std::size_t dim = 1;
    for (int i = 0; i < k; ++i) {
        dim *= a.dim();
    }
    if (dim > kMaxProductDim) {
        throw PreconditionError("tensor power dimension exceeds " + std::to_string(kMaxProductDim));
    }
    ComplexMatrix m = a.matrix();
    for (int i = 1; i < k; ++i) {
        m = kron(m, a.matrix());
    }
    return DensityMatrix(std::move(m), kMaxProductDim);
}

/// 1/2 sum |eigenvalues(rho - sigma)|.
inline double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw PreconditionError("trace distance needs equal dimensions");
    }
    double s = 0.0;
    for (double ev : hermitian_eigenvalues(rho.matrix() - sigma.matrix())) {
        s += std::abs(ev);
    }
    return std::min(0.5 * s, 1.0);
}

inline constexpr double kSupportThreshold = 1e-10;

/// tr(rho (log rho - log sigma)) in the given log base; +infinity when the
/// support of rho is not inside the support of sigma.
inline double quantum_relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma, double base = 2.0) {
    if (rho.dim() != sigma.dim()) {
        throw PreconditionError("relative entropy needs equal dimensions");
    }
    double nat = 0.0;
    for (double ev : hermitian_eigenvalues(rho.matrix())) {
        if (ev > kSupportThreshold) {
            nat += ev * std::log(ev);
        }
    }
    SymMatrix r = rho.matrix().real_embedding();
    EigenSystem es = jacobi_eigen(sigma.matrix().real_embedding());
    const std::size_t n = r.n;
    double cross = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double weight = 0.0;  // u_k^T R(rho) u_k
        for (std::size_t a = 0; a < n; ++a) {
            double ra = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                ra += r(a, b) * es.vectors(b, k);
            }
            weight += es.vectors(a, k) * ra;
        }
        if (es.values[k] <= kSupportThreshold) {
            if (weight > kSupportThreshold) {
                return std::numeric_limits<double>::infinity();
            }
            continue;
        }
        cross += 0.5 * weight * std::log(es.values[k]);
    }
    double d = std::max(nat - cross, 0.0);
    return d / std::log(base);
}

struct PinskerCheck {
    double lhs = 0.0;  // trace distance
    double rhs = 0.0;  // sqrt(D ln 2 / 2), D in bits
    bool holds = true;
    bool infinite_qre = false;
};

inline PinskerCheck pinsker_check(const DensityMatrix &rho, const DensityMatrix &sigma) {
    PinskerCheck out;
    out.lhs = trace_distance(rho, sigma);
    double d = quantum_relative_entropy(rho, sigma);
    if (std::isinf(d)) {
        out.rhs = std::numeric_limits<double>::infinity();
        out.infinite_qre = true;
        out.holds = true;
        return out;
    }
    out.rhs = std::sqrt(d * std::numbers::ln2 / 2.0);
    out.holds = out.lhs <= out.rhs + 1e-9;
    return out;
}

struct ProductPinsker {
    int k = 1;
    double exact_lhs = 0.0;    // 1/4 ||rho^k - sigma^k||_1
    double pinsker_rhs = 0.0;  // sqrt(k D ln 2 / 8)
    bool holds = true;
};

inline ProductPinsker product_pinsker_demo(const DensityMatrix &rho, const DensityMatrix &sigma, int k) {
    if (k < 1 || k > 4) {
        throw PreconditionError("product demo supports 1 <= k <= 4");
    }
    ProductPinsker out;
    out.k = k;
    out.exact_lhs = 0.5 * trace_distance(tensor_power(rho, k), tensor_power(sigma, k));
    double d = quantum_relative_entropy(rho, sigma);
    out.pinsker_rhs = std::isinf(d) ? d : std::sqrt(double(k) * d * std::numbers::ln2 / 8.0);
    out.holds = out.exact_lhs <= out.pinsker_rhs + 1e-9;
    return out;
}

// ---------------------------------------------------------------------------
// Budgets.

struct CovertBudget {
    double delta = 0.0;
    std::uint64_t k = 1;
    double delta_qre = 0.0;     // 8 delta^2: per-shot relative entropy budget (nats)
    double k_shot_bound = 0.0;  // delta sqrt(k)
    /// k * delta_qre: bound on the exponent of the adversary's optimal
    /// missed-detection probability for i.i.d. shots.
    double stein_exponent_bound = 0.0;
};

inline CovertBudget k_shot_budget(double delta, std::uint64_t k) {
    if (!(delta >= 0.0)) {
        throw PreconditionError("delta must be nonnegative");
    }
    if (k < 1) {
        throw PreconditionError("k must be at least 1");
    }
    CovertBudget b;
    b.delta = delta;
    b.k = k;
    b.delta_qre = 8.0 * delta * delta;
    b.k_shot_bound = delta * std::sqrt(double(k));
    b.stein_exponent_bound = double(k) * b.delta_qre;
    return b;
}

/// Largest k with delta sqrt(k) <= target; the maximum uint64 when delta is 0.
inline std::uint64_t max_shots(double delta, double target) {
    if (!(delta >= 0.0) || !(target >= 0.0)) {
        throw PreconditionError("delta and target must be nonnegative");
    }
    if (delta == 0.0) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    double ratio = target / delta;
    double est = std::floor(ratio * ratio);
    if (est >= 1.8e19) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    auto k = std::uint64_t(est);
    while (delta * std::sqrt(double(k + 1)) <= target) {
        ++k;
    }
    while (k > 0 && delta * std::sqrt(double(k)) > target) {
        --k;
    }
    return k;
}

}  // namespace covertlat
