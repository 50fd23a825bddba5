// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "measurekit/hermitian.hpp"
#include "measurekit/instrument.hpp"
#include "measurekit/mean_state.hpp"
#include "measurekit/space.hpp"

namespace measurekit {

/// A finite set of pure states |psi_k> standing in for the projective
/// space of a d-dimensional Hilbert space. Each point's payload is the
/// rank-one projector |psi_k><psi_k|.
class PureStateFrame {
 public:
  /// Throws InvalidArgument for non-unit vectors, mixed dimensions, or two
  /// vectors equal up to global phase.
  PureStateFrame(FiniteSpace labels, std::vector<CVector> vectors);

  const FiniteSpace& space() const { return space_; }
  std::size_t size() const { return vectors_.size(); }
  int dimension() const { return static_cast<int>(vectors_.front().size()); }
  const CVector& vector(std::size_t k) const { return vectors_.at(k); }
  CMatrix projector(std::size_t k) const;

 private:
  FiniteSpace space_;
  std::vector<CVector> vectors_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Throws InvalidArgument when the matrix is not a valid state.
  explicit DensityMatrix(CMatrix rho);

  static DensityMatrix pure(const CVector& psi);

  const CMatrix& matrix() const { return rho_; }
  int dimension() const { return static_cast<int>(rho_.rows()); }

 private:
  CMatrix rho_;
};

/// Normalized positive operator-valued measure on a finite outcome space.
class POVM {
 public:
  /// Throws InvalidArgument when an effect is not Hermitian PSD or the
  /// effects do not sum to the identity.
  POVM(FiniteSpace outcome_space, std::vector<CMatrix> effects);

  const FiniteSpace& outcome_space() const { return outcome_space_; }
  const CMatrix& effect(std::size_t omega) const { return effects_.at(omega); }
  const std::vector<CMatrix>& effects() const { return effects_; }
  int dimension() const { return static_cast<int>(effects_.front().rows()); }

 private:
  FiniteSpace outcome_space_;
  std::vector<CMatrix> effects_;
};

/// Quantum instrument in Kraus form: per outcome, operators d_out x d_in
/// with sum over all operators of A^dagger A equal to the identity.
class KrausInstrument {
 public:
  KrausInstrument(FiniteSpace outcome_space, std::vector<std::vector<CMatrix>> kraus);

  const FiniteSpace& outcome_space() const { return outcome_space_; }
  const std::vector<CMatrix>& kraus(std::size_t omega) const { return kraus_.at(omega); }
  int input_dimension() const { return d_in_; }
  int output_dimension() const { return d_out_; }

  /// Effects M(omega) = sum_j A_j^dagger A_j.
  POVM induced_povm() const;

 private:
  FiniteSpace outcome_space_;
  std::vector<std::vector<CMatrix>> kraus_;
  int d_in_ = 0;
  int d_out_ = 0;
};

/// tr[rho M(event)]. Throws DimensionMismatch.
double born_probability(const POVM& povm, const DensityMatrix& rho, const Event& event);

/// Born distribution over every outcome.
InformationState born_distribution(const POVM& povm, const DensityMatrix& rho);

/// Unnormalized post-measurement operator sum_{omega in event, j} A rho A^dagger.
CMatrix apply_operation(const KrausInstrument& instr, const Event& event,
                        const DensityMatrix& rho);

struct StateUpdate {
  double probability;
  DensityMatrix state;
};

/// Probability of the event and the conditional output state.
/// Throws ZeroProbabilityEvent, DimensionMismatch.
StateUpdate instrument_state_update(const KrausInstrument& instr, const Event& event,
                                    const DensityMatrix& rho);

/// Choi matrix sum_j vec(A_j) vec(A_j)^dagger of one outcome's operation,
/// with column-stacking vec. Dimension d_in * d_out, input index major.
CMatrix choi_matrix(const KrausInstrument& instr, std::size_t omega);

/// Choi matrix sum_{ij} |i><j| (x) Phi(|i><j|) of an arbitrary linear map
/// given by its superoperator S: vec(Phi(X)) = S vec(X), column-stacking.
CMatrix choi_from_superoperator(const CMatrix& superop, int d_in, int d_out);

/// Real flattening of a d x d matrix: row-major real parts, then row-major
/// imaginary parts (2 d^2 components).
std::vector<double> flatten(const CMatrix& m);
CMatrix unflatten(const std::vector<double>& v, int d);

/// Covector l with l[flatten(X)] = Re tr X.
std::vector<double> trace_covector(int d);

/// Frame as an embedded information space: payloads are flattened
/// projectors, the functional is the trace, the norm bound is 1.
EmbeddedSpace to_embedded_space(const PureStateFrame& frame);

/// Relations (1/d) sum_{basis B1} p = (1/d) sum_{basis B2} p = I/d between
/// orthonormal bases found inside the frame. Each relation pairs the first
/// basis found with another one.
std::vector<ConvexRelation> basis_relations(const PureStateFrame& frame);

struct LuedersObservable {
  ExtendedObservable observable;
  PureStateFrame frame_out;
};

/// Frame-level extended observable of a single-Kraus-per-outcome
/// instrument: input point psi_k goes under outcome omega to the pure
/// state A psi_k / |A psi_k| with probability |A psi_k|^2. Posterior states
/// equal up to global phase share one output point.
/// Throws MultiKrausUnsupported.
LuedersObservable lueders_extended_observable(const KrausInstrument& instr,
                                              const PureStateFrame& frame_in);

/// The Lueders observable with both frames embedded.
EmbeddedExtendedObservable embedded_lueders(const KrausInstrument& instr,
                                            const PureStateFrame& frame_in);

/// Density matrix of a mean state on a frame embedding.
DensityMatrix to_density(const MeanState& mean, int d);

}  // namespace measurekit
