// Copyright 2026 The tweetmeds Authors
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

#ifndef TWEETMEDS_TYPES_HPP
#define TWEETMEDS_TYPES_HPP

#include <Eigen/Dense>

// Dense math types, templated on the scalar. The pipeline instantiates
// double; tests also exercise float.

namespace tweetmeds {

template <class T>
using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <class T>
using RowVecX = Eigen::Matrix<T, 1, Eigen::Dynamic>;

using Matd = MatX<double>;
using Vecd = VecX<double>;
using RowVecd = RowVecX<double>;

}  // namespace tweetmeds

#endif  // TWEETMEDS_TYPES_HPP
