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
#include <sstream>
#include <stdexcept>
#include <vector>

#include "toricq/lanczos.hpp"
#include "toricq/linear_operator.hpp"
#include "toricq/state.hpp"

namespace toricq {

struct KrylovOptions {
    double tol = 1e-10;     ///< bound on the estimated error of each substep
    int max_subspace = 30;  ///< Krylov vectors per substep
    std::size_t max_substeps = 1000000;
};

struct PropagationStats {
    std::size_t substeps = 0;
    double max_local_error = 0;
};

/// psi <- exp(-i H t) psi by adaptive Lanczos-Krylov substeps.
///
/// Each substep projects H onto the Krylov space of the current vector and
/// exponentiates the small tridiagonal matrix exactly. The substep length is
/// halved until the standard a posteriori estimate
/// beta_m |e_m^T exp(-i T tau) e_1| falls below the tolerance.
template <LinearOperator Op>
void evolve_in_place(std::span<cplx> psi, const Op &op, double t, const KrylovOptions &opt = {},
                     PropagationStats *stats = nullptr) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("evolve: time must be finite");
    }
    if (psi.size() != op.dim()) {
        throw std::invalid_argument("evolve: state and operator dimensions differ");
    }
    if (opt.max_subspace < 2 || opt.tol <= 0) {
        throw std::invalid_argument("evolve: need max_subspace >= 2 and tol > 0");
    }
    const std::size_t dim = op.dim();
    const double direction = t < 0 ? -1.0 : 1.0;
    double remaining = std::abs(t);
    double step = remaining;
    std::size_t substeps = 0;
    double max_error = 0;
    std::vector<cplx> w(dim);

    while (remaining > 0) {
        double beta0 = vec::norm(psi);
        if (beta0 == 0) {
            break;
        }
        std::vector<std::vector<cplx>> basis{std::vector<cplx>(psi.begin(), psi.end())};
        vec::scale(1.0 / beta0, basis[0]);
        std::vector<double> alpha;
        std::vector<double> beta;
        double beta_last = 0;
        const auto max_m = std::min<std::size_t>(static_cast<std::size_t>(opt.max_subspace), dim);
        for (std::size_t m = 0; m < max_m; m++) {
            op.apply(basis[m], w);
            alpha.push_back(vec::dot(basis[m], w).real());
            vec::axpy(-alpha.back(), basis[m], w);
            if (m > 0) {
                vec::axpy(-beta.back(), basis[m - 1], w);
            }
            vec::orthogonalize(w, basis);
            double b = vec::norm(w);
            if (b < 1e-13 * (std::abs(alpha.back()) + 1.0)) {
                beta_last = 0;  // invariant subspace: projection is exact
                break;
            }
            beta_last = b;
            if (m + 1 == max_m) {
                break;
            }
            beta.push_back(b);
            vec::scale(1.0 / b, w);
            basis.push_back(w);
        }
        const auto m = static_cast<Eigen::Index>(alpha.size());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(Eigen::Map<Eigen::VectorXd>(alpha.data(), m),
                                   Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1), Eigen::ComputeEigenvectors);
        const Eigen::MatrixXd &q = tri.eigenvectors();
        const Eigen::VectorXd &theta = tri.eigenvalues();

        step = std::min(step, remaining);
        Eigen::VectorXcd coeffs;
        double err = 0;
        for (;;) {
            Eigen::VectorXcd phases(m);
            for (Eigen::Index i = 0; i < m; i++) {
                phases(i) = std::exp(cplx(0, -direction * theta(i) * step)) * q(0, i);
            }
            coeffs = q * phases;
            err = beta0 * beta_last * std::abs(coeffs(m - 1));
            if (err <= opt.tol) {
                break;
            }
            step *= 0.5;
            if (step < 1e-300) {
                throw ConvergenceError("evolve: substep underflow", {err});
            }
        }
        std::fill(psi.begin(), psi.end(), cplx{0});
        for (Eigen::Index i = 0; i < m; i++) {
            vec::axpy(beta0 * coeffs(i), basis[static_cast<std::size_t>(i)], psi);
        }
        remaining -= step;
        if (remaining < 1e-14 * std::abs(t)) {
            remaining = 0;
        }
        max_error = std::max(max_error, err);
        if (++substeps > opt.max_substeps) {
            std::ostringstream msg;
            msg << "evolve: tolerance " << opt.tol << " not reached within " << opt.max_substeps << " substeps";
            throw ConvergenceError(msg.str(), {max_error});
        }
        if (err < 0.01 * opt.tol) {
            step *= 2;
        }
    }
    if (stats) {
        stats->substeps += substeps;
        stats->max_local_error = std::max(stats->max_local_error, max_error);
    }
}

template <LinearOperator Op>
StateVector evolve(const StateVector &psi, const Op &op, double t, const KrylovOptions &opt = {},
                   PropagationStats *stats = nullptr) {
    StateVector out = psi;
    evolve_in_place(out.amplitudes(), op, t, opt, stats);
    return out;
}

/// Exact propagation through a full eigendecomposition.
class SpectralPropagator {
   public:
    SpectralPropagator(Spectrum spectrum, const StateVector &initial)
        : spectrum_(std::move(spectrum)), template_(StateVector::zeros(initial.n_spins(), initial.sector())) {
        if (static_cast<std::size_t>(spectrum_.values.size()) != initial.dim()) {
            throw std::invalid_argument("SpectralPropagator: spectrum and state dimensions differ");
        }
        Eigen::Map<const Eigen::VectorXcd> psi(initial.amplitudes().data(),
                                               static_cast<Eigen::Index>(initial.dim()));
        coefficients_ = spectrum_.vectors.adjoint() * psi;
    }

    StateVector at(double t) const {
        Eigen::VectorXcd rotated(coefficients_.size());
        for (Eigen::Index i = 0; i < coefficients_.size(); i++) {
            rotated(i) = std::exp(cplx(0, -spectrum_.values(i) * t)) * coefficients_(i);
        }
        StateVector out = template_;
        Eigen::Map<Eigen::VectorXcd>(out.amplitudes().data(), rotated.size()) = spectrum_.vectors * rotated;
        return out;
    }

    /// Energy-eigenbasis coefficients of the initial state.
    const Eigen::VectorXcd &coefficients() const {
        return coefficients_;
    }
    const Spectrum &spectrum() const {
        return spectrum_;
    }

   private:
    Spectrum spectrum_;
    StateVector template_;
    Eigen::VectorXcd coefficients_;
};

}  // namespace toricq
