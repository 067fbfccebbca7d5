// Copyright (c) 2026 The voxsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOXSEL_PARALLEL_HPP_
#define VOXSEL_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace voxsel {

// Runs fn(i) for i in [0, n). Each index must write only its own output
// slot; results are then independent of the worker count, which is what
// lets callers guarantee byte-identical artifacts for any --threads value.
// threads == 0 means hardware concurrency.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

unsigned effective_thread_count(unsigned requested);

}  // namespace voxsel

#endif  // VOXSEL_PARALLEL_HPP_
