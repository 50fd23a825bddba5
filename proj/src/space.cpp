// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include "measurekit/space.hpp"

#include <unordered_set>

#include "measurekit/error.hpp"

namespace measurekit {

FiniteSpace::FiniteSpace(std::vector<std::string> labels) {
  if (labels.empty()) throw InvalidArgument("finite space needs at least one point");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw InvalidArgument("duplicate label '" + l + "' in finite space");
    }
  }
  data_ = std::make_shared<const Data>(Data{std::move(labels), nullptr});
}

FiniteSpace FiniteSpace::indexed(std::size_t size, const std::string& prefix) {
  std::vector<std::string> labels;
  labels.reserve(size);
  for (std::size_t i = 0; i < size; ++i) labels.push_back(prefix + std::to_string(i));
  return FiniteSpace(std::move(labels));
}

FiniteSpace FiniteSpace::product(const FiniteSpace& first,
                                 const FiniteSpace& second) {
  std::vector<std::string> labels;
  labels.reserve(first.size() * second.size());
  for (const auto& a : first.labels()) {
    for (const auto& b : second.labels()) labels.push_back("(" + a + "," + b + ")");
  }
  // Pair labels can collide when factor labels contain commas/parentheses;
  // the regular constructor catches that.
  FiniteSpace flat(std::move(labels));
  auto data = std::make_shared<Data>();
  data->labels = flat.data_->labels;
  data->factors = std::make_shared<const Factors>(Factors{first, second});
  return FiniteSpace(std::shared_ptr<const Data>(std::move(data)));
}

const std::string& FiniteSpace::label(std::size_t i) const {
  if (i >= size()) throw IndexOutOfRange("point index " + std::to_string(i) + " out of range");
  return data_->labels[i];
}

std::optional<std::size_t> FiniteSpace::index_of(const std::string& label) const {
  const auto& ls = data_->labels;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i] == label) return i;
  }
  return std::nullopt;
}

const FiniteSpace& FiniteSpace::factor(int which) const {
  if (!is_product()) throw NotProductSpace("space has no declared product factorization");
  if (which == 1) return data_->factors->first;
  if (which == 2) return data_->factors->second;
  throw InvalidArgument("product factor must be 1 or 2");
}

std::size_t FiniteSpace::pair_index(std::size_t i, std::size_t j) const {
  const auto& b = factor(2);
  if (i >= factor(1).size() || j >= b.size()) throw IndexOutOfRange("pair index out of range");
  return i * b.size() + j;
}

bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
  if (a.data_ == b.data_) return true;
  if (a.data_->labels != b.data_->labels) return false;
  if (a.is_product() != b.is_product()) return false;
  if (!a.is_product()) return true;
  return a.data_->factors->first == b.data_->factors->first &&
         a.data_->factors->second == b.data_->factors->second;
}

void require_same_space(const FiniteSpace& expected, const FiniteSpace& got,
                        const char* context) {
  if (!(expected == got)) throw SpaceMismatch(std::string(context) + ": space mismatch");
}

Event::Event(FiniteSpace space, std::vector<bool> mask)
    : space_(std::move(space)), mask_(std::move(mask)) {
  if (mask_.size() != space_.size()) {
    throw IndexOutOfRange("event mask length does not match space size");
  }
}

Event Event::all(const FiniteSpace& space) {
  return Event(space, std::vector<bool>(space.size(), true));
}

Event Event::none(const FiniteSpace& space) {
  return Event(space, std::vector<bool>(space.size(), false));
}

Event Event::of(const FiniteSpace& space, const std::vector<std::size_t>& members) {
  std::vector<bool> mask(space.size(), false);
  for (auto i : members) {
    if (i >= space.size()) {
      throw IndexOutOfRange("event member " + std::to_string(i) + " out of range");
    }
    mask[i] = true;
  }
  return Event(space, std::move(mask));
}

Event Event::single(const FiniteSpace& space, std::size_t member) {
  return of(space, {member});
}

Event Event::rectangle(const FiniteSpace& product, const Event& first,
                       const Event& second) {
  require_same_space(product.factor(1), first.space(), "Event::rectangle");
  require_same_space(product.factor(2), second.space(), "Event::rectangle");
  std::vector<bool> mask(product.size(), false);
  for (std::size_t i = 0; i < first.space().size(); ++i) {
    for (std::size_t j = 0; j < second.space().size(); ++j) {
      mask[product.pair_index(i, j)] = first.contains(i) && second.contains(j);
    }
  }
  return Event(product, std::move(mask));
}

std::vector<std::size_t> Event::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(i);
  }
  return out;
}

bool Event::empty() const {
  for (bool b : mask_) {
    if (b) return false;
  }
  return true;
}

Event Event::operator|(const Event& other) const {
  require_same_space(space_, other.space_, "Event union");
  std::vector<bool> mask(mask_.size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = mask_[i] || other.mask_[i];
  return Event(space_, std::move(mask));
}

Event Event::operator&(const Event& other) const {
  require_same_space(space_, other.space_, "Event intersection");
  std::vector<bool> mask(mask_.size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = mask_[i] && other.mask_[i];
  return Event(space_, std::move(mask));
}

}  // namespace measurekit
