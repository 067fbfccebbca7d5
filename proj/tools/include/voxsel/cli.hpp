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

#ifndef VOXSEL_CLI_HPP_
#define VOXSEL_CLI_HPP_

#include <string>
#include <vector>

namespace voxsel::cli {

// Executes one voxsel invocation. args excludes the program name.
// Exit codes: 0 success, 1 usage error, 2 data error.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace voxsel::cli

#endif  // VOXSEL_CLI_HPP_
