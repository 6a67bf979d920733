// Copyright 2026 The toricq Authors
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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "toricq/linear_operator.hpp"

namespace toricq {

/// Thrown when an iterative method misses its tolerance; carries the best
/// residuals reached.
class ConvergenceError : public std::runtime_error {
   public:
    ConvergenceError(const std::string &what, std::vector<double> residuals)
        : std::runtime_error(what), residuals_(std::move(residuals)) {
    }
    const std::vector<double> &residuals() const {
        return residuals_;
    }

   private:
    std::vector<double> residuals_;
};

/// Fixed seed of the Lanczos start vectors; eigenpair j uses seed + j.
inline constexpr std::uint64_t kLanczosSeed = 20120217;

struct LanczosOptions {
    int k = 1;
    double tol = 1e-10;
    int max_basis = 120;
    int max_restarts = 400;
    std::uint64_t seed = kLanczosSeed;
};

struct EigenPair {
    double value;
    std::vector<cplx> vector;
    double residual;
};

namespace detail {

template <LinearOperator Op>
double residual_norm(const Op &op, std::span<const cplx> x, double theta) {
    std::vector<cplx> hx(x.size());
    op.apply(x, hx);
    vec::axpy(-theta, x, hx);
    return vec::norm(hx);
}

}  // namespace detail

/// k lowest eigenpairs of a Hermitian operator.
///
/// Each eigenpair is found by an explicitly restarted Lanczos iteration with
/// full reorthogonalization, run in the orthogonal complement of the pairs
/// already converged. The deflation is what lets degenerate levels (four-fold
/// at zero field) come out with a full set of vectors.
template <LinearOperator Op>
std::vector<EigenPair> lanczos_extremal(const Op &op, const LanczosOptions &opt = {}) {
    const std::size_t dim = op.dim();
    if (opt.k < 1 || opt.tol <= 0) {
        throw std::invalid_argument("lanczos_extremal: need k >= 1 and tol > 0");
    }
    if (static_cast<std::size_t>(opt.k) > dim) {
        throw std::invalid_argument("lanczos_extremal: k exceeds the operator dimension");
    }
    std::vector<std::vector<cplx>> locked;
    std::vector<EigenPair> pairs;
    std::vector<double> achieved;

    for (int j = 0; j < opt.k; j++) {
        std::vector<cplx> start = vec::random_vector(dim, opt.seed + static_cast<std::uint64_t>(j));
        vec::orthogonalize(start, locked);
        vec::scale(1.0 / vec::norm(start), start);
        const std::size_t max_basis =
            std::min<std::size_t>(static_cast<std::size_t>(std::max(opt.max_basis, 2)), dim - locked.size());

        bool converged = false;
        double best_residual = INFINITY;
        for (int restart = 0; restart <= opt.max_restarts && !converged; restart++) {
            std::vector<std::vector<cplx>> basis{start};
            std::vector<double> alpha;
            std::vector<double> beta;
            std::vector<cplx> w(dim);
            Eigen::VectorXd ritz;
            double theta = 0;
            for (std::size_t m = 0;; m++) {
                op.apply(basis[m], w);
                vec::orthogonalize(w, locked);
                alpha.push_back(vec::dot(basis[m], w).real());
                vec::axpy(-alpha.back(), basis[m], w);
                if (m > 0) {
                    vec::axpy(-beta.back(), basis[m - 1], w);
                }
                vec::orthogonalize(w, basis);
                vec::orthogonalize(w, locked);
                double b = vec::norm(w);

                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
                Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
                Eigen::VectorXd e = Eigen::Map<Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
                tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
                theta = tri.eigenvalues()(0);
                ritz = tri.eigenvectors().col(0);
                double estimate = b * std::abs(ritz(static_cast<Eigen::Index>(m)));
                double scale = std::abs(theta) + 1.0;
                bool breakdown = b < 1e-13 * scale;
                if (breakdown || estimate < 0.1 * opt.tol || m + 1 >= max_basis) {
                    break;
                }
                beta.push_back(b);
                vec::scale(1.0 / b, w);
                basis.push_back(w);
            }
            std::vector<cplx> x(dim);
            for (std::size_t i = 0; i < basis.size(); i++) {
                vec::axpy(ritz(static_cast<Eigen::Index>(i)), basis[i], x);
            }
            vec::orthogonalize(x, locked);
            vec::scale(1.0 / vec::norm(x), x);
            double r = detail::residual_norm(op, x, theta);
            best_residual = std::min(best_residual, r);
            if (r <= opt.tol) {
                pairs.push_back({theta, x, r});
                locked.push_back(std::move(x));
                converged = true;
            } else {
                start = std::move(x);
            }
        }
        achieved.push_back(best_residual);
        if (!converged) {
            std::ostringstream msg;
            msg << "lanczos_extremal: eigenpair " << j << " did not reach tolerance " << opt.tol
                << " (best residual " << best_residual << ")";
            throw ConvergenceError(msg.str(), achieved);
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair &a, const EigenPair &b) {
        return a.value < b.value;
    });
    return pairs;
}

/// Default cap on the dimension handled by dense diagonalization.
inline constexpr std::size_t kFullSpectrumCap = 4096;

struct Spectrum {
    Eigen::VectorXd values;    ///< ascending
    Eigen::MatrixXcd vectors;  ///< orthonormal columns
};

/// Materializes the operator as a dense matrix, column by column.
template <LinearOperator Op>
Eigen::MatrixXcd dense_matrix(const Op &op) {
    const std::size_t dim = op.dim();
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<cplx> e(dim);
    std::vector<cplx> col(dim);
    for (std::size_t j = 0; j < dim; j++) {
        e[j] = 1;
        op.apply(e, col);
        e[j] = 0;
        for (std::size_t i = 0; i < dim; i++) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
        }
    }
    return m;
}

template <LinearOperator Op>
Spectrum full_spectrum(const Op &op, std::size_t cap = kFullSpectrumCap) {
    if (op.dim() > cap) {
        throw std::invalid_argument("full_spectrum: dimension " + std::to_string(op.dim()) + " exceeds cap " +
                                    std::to_string(cap));
    }
    Eigen::MatrixXcd m = dense_matrix(op);
    double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("full_spectrum: operator is not Hermitian");
    }
    Spectrum s;
    if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real());
        s.values = solver.eigenvalues();
        s.vectors = solver.eigenvectors().cast<cplx>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
        s.values = solver.eigenvalues();
        s.vectors = solver.eigenvectors();
    }
    return s;
}

}  // namespace toricq
