// Copyright 2026 The qapprox Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Dense complex linear-algebra kernels: SVD, unitary eigendecomposition,
 * null spaces, orthonormalization, Frobenius-nearest unitaries and the
 * construction of a unitary relating two matrices with equal Gram matrices.
 *
 * SVD and Schur factorizations are delegated to Eigen; everything built on
 * top of them lives here.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qapprox/error.hpp"

namespace qapprox {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// ‖M*M − I‖_F; zero for an exact unitary.
inline double unitarity_defect(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols()))
        .norm();
}

inline bool is_unitary(const ComplexMatrix &m, double tol = 1e-8) {
    return unitarity_defect(m) <= tol;
}

inline bool all_finite(const ComplexMatrix &m) {
    return m.allFinite();
}

/// A = left * diag(singular_values) * right^*, with full unitary factors.
struct Svd {
    ComplexMatrix left;
    RealVector singular_values; // descending, length min(rows, cols)
    ComplexMatrix right;

    [[nodiscard]] ComplexMatrix sigma() const {
        ComplexMatrix s = ComplexMatrix::Zero(left.cols(), right.cols());
        for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
            s(i, i) = singular_values(i);
        }
        return s;
    }
    [[nodiscard]] ComplexMatrix reconstruct() const {
        return left * sigma() * right.adjoint();
    }
};

inline Svd svd(const ComplexMatrix &a) {
    detail::require(a.rows() > 0 && a.cols() > 0, "svd: empty matrix");
    detail::require(all_finite(a), "svd: non-finite entries");

    Svd out;
    constexpr Eigen::Index kJacobiLimit = 64;
    if (std::max(a.rows(), a.cols()) <= kJacobiLimit) {
        Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU |
                                                      Eigen::ComputeFullV);
        out = {solver.matrixU(), solver.singularValues(), solver.matrixV()};
    } else {
        Eigen::BDCSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU |
                                                   Eigen::ComputeFullV);
        out = {solver.matrixU(), solver.singularValues(), solver.matrixV()};
    }

    const double scale = std::max(1.0, a.norm());
    if (!out.left.allFinite() || !out.right.allFinite() ||
        (out.reconstruct() - a).norm() > 1e-9 * scale) {
        throw NumericalError("svd: factorization did not converge");
    }
    return out;
}

/**
 * Modified Gram–Schmidt with one re-orthogonalization pass.
 *
 * Columns whose residual norm falls below `tol` are dropped; the number of
 * returned columns tells the caller how many survived.
 */
inline ComplexMatrix gram_schmidt(const ComplexMatrix &columns,
                                  double tol = 1e-10) {
    std::vector<ComplexVector> kept;
    kept.reserve(static_cast<std::size_t>(columns.cols()));
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        ComplexVector v = columns.col(j);
        const double original = v.norm();
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &q : kept) {
                v -= q.dot(v) * q; // dot() conjugates its left argument
            }
        }
        const double r = v.norm();
        if (r < tol || r < tol * original) {
            continue;
        }
        kept.emplace_back(v / r);
    }
    ComplexMatrix out(columns.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = kept[j];
    }
    return out;
}

/**
 * Orthonormal basis (as columns) of the numerical null space of `a`.
 *
 * Uses the right singular vectors whose singular values are at most
 * 1e-10·σ_max, plus the ones beyond the row count. Throws NumericalError
 * when fewer than `min_dim` vectors qualify.
 */
inline ComplexMatrix null_space(const ComplexMatrix &a, Eigen::Index min_dim) {
    const Svd f = svd(a);
    const double smax = f.singular_values.size() ? f.singular_values(0) : 0.0;
    const double cut = 1e-10 * smax;
    Eigen::Index rank = 0;
    if (smax > 0.0) {
        for (Eigen::Index i = 0; i < f.singular_values.size(); ++i) {
            if (f.singular_values(i) > cut) {
                ++rank;
            }
        }
    }
    const Eigen::Index dim = a.cols() - rank;
    if (dim < min_dim) {
        throw NumericalError("null_space: found " + std::to_string(dim) +
                             " null vectors, needed " +
                             std::to_string(min_dim));
    }
    return f.right.rightCols(dim);
}

struct UnitaryEigen {
    ComplexVector values;  // on the unit circle
    ComplexMatrix vectors; // unitary; column i pairs with values(i)
};

/**
 * Eigendecomposition of a unitary matrix via the complex Schur form.
 *
 * For normal input the triangular factor is diagonal, so the Schur vectors
 * are an orthonormal eigenbasis. Eigenvectors whose eigenvalues lie within
 * `cluster_tol` of each other are re-orthonormalized together.
 */
inline UnitaryEigen eig_unitary(const ComplexMatrix &u,
                                double cluster_tol = 1e-7) {
    detail::require(u.rows() == u.cols() && u.rows() > 0,
                    "eig_unitary: matrix must be square");
    detail::require(is_unitary(u, 1e-8), "eig_unitary: matrix is not unitary");

    Eigen::ComplexSchur<ComplexMatrix> schur(u);
    if (schur.info() != Eigen::Success) {
        throw NumericalError("eig_unitary: Schur iteration did not converge");
    }
    UnitaryEigen out{schur.matrixT().diagonal(), schur.matrixU()};

    // Single-linkage clustering of eigenvalues.
    const Eigen::Index n = u.rows();
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), Eigen::Index{0});
    auto find = [&](Eigen::Index i) {
        while (parent[i] != i) {
            i = parent[i] = parent[parent[i]];
        }
        return i;
    };
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(out.values(i) - out.values(j)) < cluster_tol) {
                parent[find(j)] = find(i);
            }
        }
    }
    for (Eigen::Index root = 0; root < n; ++root) {
        std::vector<Eigen::Index> members;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (find(i) == root) {
                members.push_back(i);
            }
        }
        if (members.size() < 2) {
            continue;
        }
        ComplexMatrix block(n, static_cast<Eigen::Index>(members.size()));
        for (std::size_t c = 0; c < members.size(); ++c) {
            block.col(static_cast<Eigen::Index>(c)) =
                out.vectors.col(members[c]);
        }
        const ComplexMatrix q = gram_schmidt(block, 1e-12);
        if (q.cols() != block.cols()) {
            throw NumericalError("eig_unitary: degenerate eigenspace collapsed");
        }
        for (std::size_t c = 0; c < members.size(); ++c) {
            out.vectors.col(members[c]) = q.col(static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

/**
 * Frobenius-nearest unitary W V* of a square, numerically full-rank matrix
 * with SVD A = W Σ V*.
 */
inline ComplexMatrix nearest_unitary(const ComplexMatrix &a) {
    detail::require(a.rows() == a.cols(), "nearest_unitary: matrix must be square");
    const Svd f = svd(a);
    if (f.singular_values(f.singular_values.size() - 1) <= 1e-12) {
        throw NumericalError("nearest_unitary: matrix is rank deficient");
    }
    return f.left * f.right.adjoint();
}

/**
 * Given n×m matrices X and Y with X*X = Y*Y, returns a unitary U with
 * UX = Y.
 *
 * With Y = W Σ V* we rotate coordinates by V so that Y V = W Σ has
 * orthogonal columns; then X V has orthogonal columns of the same lengths.
 * A unitary W' sending those columns onto the axes (scaled by Σ) composes
 * with W to give U = W W'. When X has rank r < m, both column families are
 * completed to orthonormal bases, which fixes U on the complement.
 */
inline ComplexMatrix unitary_from_congruence(const ComplexMatrix &x,
                                             const ComplexMatrix &y) {
    detail::require(x.rows() == y.rows() && x.cols() == y.cols(),
                    "unitary_from_congruence: X and Y must have equal shape");
    const double xn2 = x.squaredNorm();
    detail::require((x.adjoint() * x - y.adjoint() * y).norm() <=
                        1e-8 * std::max(1.0, xn2),
                    "unitary_from_congruence: X*X differs from Y*Y");

    const Eigen::Index n = x.rows();
    const Svd fy = svd(y);
    const ComplexMatrix xr = x * fy.right;

    const double smax = fy.singular_values.size() ? fy.singular_values(0) : 0.0;
    const double cut = std::max(1e-10 * smax, 1e-13);

    // Normalized rotated columns of X paired with axes of W, then the
    // standard basis to complete.
    std::vector<Eigen::Index> axes;
    ComplexMatrix source(n, n + fy.singular_values.size());
    Eigen::Index filled = 0;
    for (Eigen::Index i = 0; i < fy.singular_values.size(); ++i) {
        if (fy.singular_values(i) <= cut) {
            break;
        }
        const double len = xr.col(i).norm();
        if (len <= cut) {
            continue;
        }
        source.col(filled++) = xr.col(i) / len;
        axes.push_back(i);
    }
    const Eigen::Index r = filled;
    source.middleCols(r, n) = ComplexMatrix::Identity(n, n);
    ComplexMatrix basis = gram_schmidt(source.leftCols(r + n), 1e-8);
    if (basis.cols() != n) {
        throw NumericalError("unitary_from_congruence: basis completion failed");
    }

    // Target basis: columns of W matched to the first r source vectors in
    // order, then the remaining columns of W.
    ComplexMatrix target(n, n);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (Eigen::Index c = 0; c < r; ++c) {
        target.col(c) = fy.left.col(axes[static_cast<std::size_t>(c)]);
        used[static_cast<std::size_t>(axes[static_cast<std::size_t>(c)])] = true;
    }
    Eigen::Index next = r;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!used[static_cast<std::size_t>(i)]) {
            target.col(next++) = fy.left.col(i);
        }
    }
    return target * basis.adjoint();
}

} // namespace qapprox
