// Copyright 2026 The iccbf Authors
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

#include "iccbf/system.hpp"

namespace iccbf {

bool StateBox::contains(std::span<const double> x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

double ControlAffineSystem::param(const std::string& key) const {
  const auto it = params_.find(key);
  if (it == params_.end()) throw std::out_of_range("model " + name_ + " has no parameter " + key);
  return it->second;
}

std::vector<double> ControlAffineSystem::vector_field(std::span<const double> x,
                                                      std::span<const double> u) const {
  if (x.size() != state_dim_ || u.size() != input_dim_) {
    throw std::invalid_argument("vector_field: dimension mismatch for model " + name_);
  }
  std::vector<double> dx = drift<double>(x);
  const Matrix<double> g = input_map<double>(x);
  for (std::size_t i = 0; i < state_dim_; ++i) {
    for (std::size_t j = 0; j < input_dim_; ++j) dx[i] += g(i, j) * u[j];
  }
  return dx;
}

}  // namespace iccbf
