// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace measurekit {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Cyclic Jacobi on the real symmetric embedding [[Re, -Im], [Im, Re]],
/// whose spectrum is that of the input with every eigenvalue doubled.
/// Only the Hermitian part (H + H^dagger)/2 is used.
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

double min_eigenvalue(const CMatrix& h);

/// max |H - H^dagger| entrywise.
double hermiticity_defect(const CMatrix& h);

/// Real symmetric eigenvalues by cyclic Jacobi, ascending. `a` is row-major n x n.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

}  // namespace measurekit
