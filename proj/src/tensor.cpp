// Copyright 2026 The entbreak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entbreak/tensor.hpp"

#include <set>

namespace entbreak {

SubsystemLayout::SubsystemLayout(LabelList labels, std::vector<int> dims)
    : labels_(std::move(labels)), dims_(std::move(dims)) {
  if (labels_.size() != dims_.size())
    throw DimensionError("layout: " + std::to_string(labels_.size()) +
                         " labels but " + std::to_string(dims_.size()) + " dims");
  std::set<std::string> seen;
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k].empty()) throw LabelError("layout: empty label");
    if (!seen.insert(labels_[k]).second)
      throw LabelError("layout: duplicate label '" + labels_[k] + "'");
    if (dims_[k] < 2)
      throw DimensionError("layout: subsystem '" + labels_[k] +
                           "' has dimension " + std::to_string(dims_[k]));
    total_dim_ *= dims_[k];
  }
}

SubsystemLayout SubsystemLayout::qubits(const LabelList& labels) {
  return SubsystemLayout(labels, std::vector<int>(labels.size(), 2));
}

bool SubsystemLayout::contains(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

int SubsystemLayout::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw LabelError("unknown subsystem '" + std::string(label) + "' in layout " +
                     to_string());
  return static_cast<int>(it - labels_.begin());
}

SubsystemLayout SubsystemLayout::select(const LabelList& keep) const {
  for (const auto& l : keep) index_of(l);
  LabelList labels;
  std::vector<int> dims;
  for (int k = 0; k < size(); ++k) {
    if (std::find(keep.begin(), keep.end(), labels_[k]) != keep.end()) {
      labels.push_back(labels_[k]);
      dims.push_back(dims_[k]);
    }
  }
  if (labels.size() != keep.size())
    throw LabelError("select: duplicate labels in keep set");
  return SubsystemLayout(std::move(labels), std::move(dims));
}

SubsystemLayout SubsystemLayout::without(const LabelList& drop) const {
  for (const auto& l : drop) index_of(l);
  LabelList labels;
  std::vector<int> dims;
  for (int k = 0; k < size(); ++k) {
    if (std::find(drop.begin(), drop.end(), labels_[k]) == drop.end()) {
      labels.push_back(labels_[k]);
      dims.push_back(dims_[k]);
    }
  }
  return SubsystemLayout(std::move(labels), std::move(dims));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  LabelList labels = labels_;
  std::vector<int> dims = dims_;
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return SubsystemLayout(std::move(labels), std::move(dims));
}

Eigen::Index SubsystemLayout::stride(int k) const {
  Eigen::Index s = 1;
  for (int j = size() - 1; j > k; --j) s *= dims_[j];
  return s;
}

std::string SubsystemLayout::to_string() const {
  std::string out = "[";
  for (int k = 0; k < size(); ++k) {
    if (k) out += ",";
    out += labels_[k] + ":" + std::to_string(dims_[k]);
  }
  return out + "]";
}

}  // namespace entbreak
