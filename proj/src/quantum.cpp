// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include "measurekit/quantum.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "measurekit/error.hpp"
#include "measurekit/tolerance.hpp"

namespace measurekit {
namespace {

// Posterior vectors closer than this (in |<a,b>|) are one frame point.
constexpr double kPhaseMerge = 1e-10;
constexpr std::size_t kMaxBases = 64;

double identity_defect(const CMatrix& m) {
  return (m - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

void find_bases(const std::vector<std::vector<bool>>& orth, std::size_t d,
                std::vector<std::size_t>& current, std::size_t start,
                std::vector<std::vector<std::size_t>>& out) {
  if (out.size() >= kMaxBases) return;
  if (current.size() == d) {
    out.push_back(current);
    return;
  }
  for (std::size_t k = start; k < orth.size(); ++k) {
    bool ok = true;
    for (auto j : current) ok = ok && orth[j][k];
    if (!ok) continue;
    current.push_back(k);
    find_bases(orth, d, current, k + 1, out);
    current.pop_back();
  }
}

}  // namespace

PureStateFrame::PureStateFrame(FiniteSpace labels, std::vector<CVector> vectors)
    : space_(std::move(labels)), vectors_(std::move(vectors)) {
  if (vectors_.size() != space_.size()) {
    throw InvalidArgument("pure-state frame needs one vector per label");
  }
  const auto d = vectors_.front().size();
  if (d == 0) throw InvalidArgument("pure-state frame vectors must be nonempty");
  for (std::size_t k = 0; k < vectors_.size(); ++k) {
    if (vectors_[k].size() != d) throw DimensionMismatch("frame vectors differ in dimension");
    if (std::abs(vectors_[k].norm() - 1.0) > tolerance()) {
      throw InvalidArgument("frame vector " + space_.label(k) + " is not normalized");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (std::abs(vectors_[j].dot(vectors_[k])) >= 1.0 - tolerance()) {
        throw InvalidArgument("frame vectors " + space_.label(j) + " and " + space_.label(k) +
                              " coincide up to phase");
      }
    }
  }
}

CMatrix PureStateFrame::projector(std::size_t k) const {
  const CVector& v = vector(k);
  return v * v.adjoint();
}

DensityMatrix::DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw DimensionMismatch("density matrix must be square and nonempty");
  }
  const double tol = tolerance();
  if (hermiticity_defect(rho_) > tol) throw InvalidArgument("density matrix is not Hermitian");
  if (std::abs(rho_.trace() - std::complex<double>(1.0, 0.0)) > tol) {
    throw InvalidArgument("density matrix trace is not 1");
  }
  if (min_eigenvalue(rho_) < -kEigenTolerance) {
    throw InvalidArgument("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const CVector unit = psi.normalized();
  return DensityMatrix(unit * unit.adjoint());
}

POVM::POVM(FiniteSpace outcome_space, std::vector<CMatrix> effects)
    : outcome_space_(std::move(outcome_space)), effects_(std::move(effects)) {
  if (effects_.size() != outcome_space_.size()) {
    throw InvalidArgument("POVM needs one effect per outcome");
  }
  const auto d = effects_.front().rows();
  CMatrix total = CMatrix::Zero(d, d);
  for (std::size_t o = 0; o < effects_.size(); ++o) {
    const CMatrix& e = effects_[o];
    if (e.rows() != d || e.cols() != d) throw DimensionMismatch("POVM effects differ in shape");
    if (hermiticity_defect(e) > tolerance()) {
      throw InvalidArgument("POVM effect " + outcome_space_.label(o) + " is not Hermitian");
    }
    if (min_eigenvalue(e) < -kEigenTolerance) {
      throw InvalidArgument("POVM effect " + outcome_space_.label(o) + " is not positive");
    }
    total += e;
  }
  if (identity_defect(total) > tolerance()) {
    throw InvalidArgument("POVM effects do not sum to the identity");
  }
}

KrausInstrument::KrausInstrument(FiniteSpace outcome_space,
                                 std::vector<std::vector<CMatrix>> kraus)
    : outcome_space_(std::move(outcome_space)), kraus_(std::move(kraus)) {
  if (kraus_.size() != outcome_space_.size()) {
    throw InvalidArgument("instrument needs one Kraus list per outcome");
  }
  bool first = true;
  for (std::size_t o = 0; o < kraus_.size(); ++o) {
    if (kraus_[o].empty()) {
      throw InvalidArgument("outcome " + outcome_space_.label(o) + " has no Kraus operators");
    }
    for (const auto& a : kraus_[o]) {
      if (first) {
        d_out_ = static_cast<int>(a.rows());
        d_in_ = static_cast<int>(a.cols());
        first = false;
      }
      if (a.rows() != d_out_ || a.cols() != d_in_ || d_in_ == 0 || d_out_ == 0) {
        throw DimensionMismatch("Kraus operators differ in shape");
      }
    }
  }
  CMatrix total = CMatrix::Zero(d_in_, d_in_);
  for (const auto& list : kraus_) {
    for (const auto& a : list) total += a.adjoint() * a;
  }
  if (identity_defect(total) > tolerance()) {
    throw InvalidArgument("Kraus operators are not trace preserving");
  }
}

POVM KrausInstrument::induced_povm() const {
  std::vector<CMatrix> effects;
  effects.reserve(kraus_.size());
  for (const auto& list : kraus_) {
    CMatrix m = CMatrix::Zero(d_in_, d_in_);
    for (const auto& a : list) m += a.adjoint() * a;
    effects.push_back(0.5 * (m + m.adjoint()));
  }
  return POVM(outcome_space_, std::move(effects));
}

double born_probability(const POVM& povm, const DensityMatrix& rho, const Event& event) {
  require_same_space(povm.outcome_space(), event.space(), "born_probability");
  if (rho.dimension() != povm.dimension()) {
    throw DimensionMismatch("state and POVM dimensions differ");
  }
  double p = 0.0;
  for (std::size_t o = 0; o < event.space().size(); ++o) {
    if (event.contains(o)) p += (rho.matrix() * povm.effect(o)).trace().real();
  }
  return p;
}

InformationState born_distribution(const POVM& povm, const DensityMatrix& rho) {
  if (rho.dimension() != povm.dimension()) {
    throw DimensionMismatch("state and POVM dimensions differ");
  }
  const auto& omega = povm.outcome_space();
  std::vector<double> p(omega.size());
  for (std::size_t o = 0; o < p.size(); ++o) {
    p[o] = std::max((rho.matrix() * povm.effect(o)).trace().real(), 0.0);
  }
  return InformationState(omega, std::move(p));
}

CMatrix apply_operation(const KrausInstrument& instr, const Event& event,
                        const DensityMatrix& rho) {
  require_same_space(instr.outcome_space(), event.space(), "apply_operation");
  if (rho.dimension() != instr.input_dimension()) {
    throw DimensionMismatch("state and instrument input dimensions differ");
  }
  const int d = instr.output_dimension();
  CMatrix out = CMatrix::Zero(d, d);
  for (std::size_t o = 0; o < event.space().size(); ++o) {
    if (!event.contains(o)) continue;
    for (const auto& a : instr.kraus(o)) out += a * rho.matrix() * a.adjoint();
  }
  return out;
}

StateUpdate instrument_state_update(const KrausInstrument& instr, const Event& event,
                                    const DensityMatrix& rho) {
  const CMatrix t = apply_operation(instr, event, rho);
  const double p = t.trace().real();
  if (p <= kZeroProbability) {
    throw ZeroProbabilityEvent("event has Born probability " + std::to_string(p));
  }
  CMatrix state = t / p;
  state = 0.5 * (state + state.adjoint());
  return StateUpdate{p, DensityMatrix(std::move(state))};
}

CMatrix choi_matrix(const KrausInstrument& instr, std::size_t omega) {
  const int n = instr.input_dimension() * instr.output_dimension();
  CMatrix c = CMatrix::Zero(n, n);
  for (const auto& a : instr.kraus(omega)) {
    const Eigen::Map<const CVector> v(a.data(), n);  // Eigen storage is column-major
    c += v * v.adjoint();
  }
  return c;
}

CMatrix choi_from_superoperator(const CMatrix& superop, int d_in, int d_out) {
  if (superop.rows() != d_out * d_out || superop.cols() != d_in * d_in) {
    throw DimensionMismatch("superoperator shape does not match the dimensions");
  }
  const int n = d_in * d_out;
  CMatrix c = CMatrix::Zero(n, n);
  for (int i = 0; i < d_in; ++i) {
    for (int j = 0; j < d_in; ++j) {
      const int src = j * d_in + i;  // vec(|i><j|)
      for (int r = 0; r < d_out; ++r) {
        for (int s = 0; s < d_out; ++s) {
          c(i * d_out + r, j * d_out + s) = superop(s * d_out + r, src);
        }
      }
    }
  }
  return c;
}

std::vector<double> flatten(const CMatrix& m) {
  const auto d = m.rows();
  std::vector<double> v(2 * d * d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      v[r * d + c] = m(r, c).real();
      v[d * d + r * d + c] = m(r, c).imag();
    }
  }
  return v;
}

CMatrix unflatten(const std::vector<double>& v, int d) {
  if (v.size() != static_cast<std::size_t>(2 * d * d)) {
    throw DimensionMismatch("flattened matrix has the wrong length");
  }
  CMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m(r, c) = {v[r * d + c], v[d * d + r * d + c]};
  }
  return m;
}

std::vector<double> trace_covector(int d) {
  std::vector<double> l(2 * d * d, 0.0);
  for (int i = 0; i < d; ++i) l[i * d + i] = 1.0;
  return l;
}

EmbeddedSpace to_embedded_space(const PureStateFrame& frame) {
  std::vector<std::vector<double>> payloads;
  payloads.reserve(frame.size());
  for (std::size_t k = 0; k < frame.size(); ++k) payloads.push_back(flatten(frame.projector(k)));
  return EmbeddedSpace(frame.space(), std::move(payloads), trace_covector(frame.dimension()),
                       1.0);
}

std::vector<ConvexRelation> basis_relations(const PureStateFrame& frame) {
  const std::size_t n = frame.size();
  const auto d = static_cast<std::size_t>(frame.dimension());
  std::vector<std::vector<bool>> orth(n, std::vector<bool>(n, false));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      orth[j][k] = j != k && std::abs(frame.vector(j).dot(frame.vector(k))) <= kPhaseMerge;
    }
  }
  std::vector<std::vector<std::size_t>> bases;
  std::vector<std::size_t> current;
  find_bases(orth, d, current, 0, bases);

  std::vector<ConvexRelation> relations;
  const double w = 1.0 / static_cast<double>(d);
  auto uniform = [w](const std::vector<std::size_t>& basis) {
    ConvexCombination c;
    for (auto k : basis) c.emplace_back(k, w);
    return c;
  };
  for (std::size_t b = 1; b < bases.size(); ++b) {
    relations.push_back({uniform(bases.front()), uniform(bases[b])});
  }
  return relations;
}

LuedersObservable lueders_extended_observable(const KrausInstrument& instr,
                                              const PureStateFrame& frame_in) {
  if (frame_in.dimension() != instr.input_dimension()) {
    throw DimensionMismatch("frame and instrument input dimensions differ");
  }
  const auto& omega = instr.outcome_space();
  for (std::size_t o = 0; o < omega.size(); ++o) {
    if (instr.kraus(o).size() != 1) {
      throw MultiKrausUnsupported("outcome " + omega.label(o) + " has " +
                                  std::to_string(instr.kraus(o).size()) +
                                  " Kraus operators; pure-state frames need exactly one");
    }
  }

  struct Entry {
    std::size_t omega, out, in;
    double p;
  };
  std::vector<CVector> outs;
  std::vector<std::string> out_labels;
  std::vector<Entry> entries;
  for (std::size_t o = 0; o < omega.size(); ++o) {
    const CMatrix& a = instr.kraus(o).front();
    for (std::size_t k = 0; k < frame_in.size(); ++k) {
      const CVector image = a * frame_in.vector(k);
      const double p = image.squaredNorm();
      if (p <= kZeroProbability) continue;
      const CVector phi = image / std::sqrt(p);
      std::size_t idx = outs.size();
      for (std::size_t j = 0; j < outs.size(); ++j) {
        if (std::abs(outs[j].dot(phi)) >= 1.0 - kPhaseMerge) {
          idx = j;
          break;
        }
      }
      if (idx == outs.size()) {
        outs.push_back(phi);
        out_labels.push_back(omega.label(o) + ":" + frame_in.space().label(k));
      }
      entries.push_back({o, idx, k, p});
    }
  }
  if (outs.empty()) throw InvalidArgument("instrument annihilates every frame state");

  PureStateFrame frame_out(FiniteSpace(std::move(out_labels)), std::move(outs));
  const std::size_t nq = frame_out.size();
  const std::size_t ni = frame_in.size();
  std::vector<double> kernel(omega.size() * nq * ni, 0.0);
  for (const auto& e : entries) kernel[(e.omega * nq + e.out) * ni + e.in] += e.p;
  // Dropped null branches and rounding leave columns within tolerance of 1;
  // rescale so they sum to 1 exactly.
  for (std::size_t t = 0; t < ni; ++t) {
    double s = 0.0;
    for (std::size_t i = t; i < kernel.size(); i += ni) s += kernel[i];
    for (std::size_t i = t; i < kernel.size(); i += ni) kernel[i] /= s;
  }
  ExtendedObservable y(omega, frame_out.space(), frame_in.space(), std::move(kernel));
  return LuedersObservable{std::move(y), std::move(frame_out)};
}

EmbeddedExtendedObservable embedded_lueders(const KrausInstrument& instr,
                                            const PureStateFrame& frame_in) {
  auto lo = lueders_extended_observable(instr, frame_in);
  return EmbeddedExtendedObservable(lo.observable, to_embedded_space(frame_in),
                                    to_embedded_space(lo.frame_out));
}

DensityMatrix to_density(const MeanState& mean, int d) {
  return DensityMatrix(unflatten(mean.vector, d));
}

}  // namespace measurekit
