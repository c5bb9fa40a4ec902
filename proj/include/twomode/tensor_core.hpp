// Copyright 2026 The twomode Authors.
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

#ifndef TWOMODE_TENSOR_CORE_HPP
#define TWOMODE_TENSOR_CORE_HPP

#include "twomode/errors.hpp"
#include "twomode/linalg.hpp"
#include "twomode/operator.hpp"
#include "twomode/space.hpp"
#include "twomode/states.hpp"

#endif  // TWOMODE_TENSOR_CORE_HPP
