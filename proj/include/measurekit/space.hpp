// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "measurekit/error.hpp"

namespace measurekit {

/// A finite measurable space: an ordered list of distinct labels.
///
/// Every subset is measurable, so no sigma-algebra is stored. A space may
/// carry a declared two-factor product structure, in which case its points
/// are the pairs of factor points in row-major order and its labels read
/// "(a,b)". The value is immutable and cheap to copy (shared storage).
class FiniteSpace {
 public:
  /// Throws InvalidArgument on an empty list or duplicate labels.
  explicit FiniteSpace(std::vector<std::string> labels);
  FiniteSpace(std::initializer_list<std::string> labels)
      : FiniteSpace(std::vector<std::string>(labels)) {}

  /// Labels `prefix0`, `prefix1`, ...
  static FiniteSpace indexed(std::size_t size, const std::string& prefix);

  /// The product space first x second with row-major point order.
  static FiniteSpace product(const FiniteSpace& first,
                             const FiniteSpace& second);

  std::size_t size() const { return data_->labels.size(); }
  const std::string& label(std::size_t i) const;
  const std::vector<std::string>& labels() const { return data_->labels; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  bool is_product() const { return data_->factors != nullptr; }
  /// Throws NotProductSpace when no factorization is declared.
  const FiniteSpace& factor(int which) const;

  /// Point index of the pair (i, j) in a product space.
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b);

 private:
  struct Factors;
  struct Data {
    std::vector<std::string> labels;
    std::shared_ptr<const Factors> factors;
  };
  explicit FiniteSpace(std::shared_ptr<const Data> data)
      : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

struct FiniteSpace::Factors {
  FiniteSpace first;
  FiniteSpace second;
};

/// A subset of a finite space, stored as a membership mask.
class Event {
 public:
  Event(FiniteSpace space, std::vector<bool> mask);

  static Event all(const FiniteSpace& space);
  static Event none(const FiniteSpace& space);
  /// Throws IndexOutOfRange for an index >= space.size().
  static Event of(const FiniteSpace& space,
                  const std::vector<std::size_t>& members);
  static Event single(const FiniteSpace& space, std::size_t member);
  /// Rectangle first x second inside a product space.
  static Event rectangle(const FiniteSpace& product, const Event& first,
                         const Event& second);

  const FiniteSpace& space() const { return space_; }
  bool contains(std::size_t i) const { return mask_.at(i); }
  const std::vector<bool>& mask() const { return mask_; }
  std::vector<std::size_t> members() const;
  bool empty() const;

  Event operator|(const Event& other) const;
  Event operator&(const Event& other) const;

 private:
  FiniteSpace space_;
  std::vector<bool> mask_;
};

/// Throws SpaceMismatch naming `context` when the spaces differ.
void require_same_space(const FiniteSpace& expected, const FiniteSpace& got,
                        const char* context);

}  // namespace measurekit
