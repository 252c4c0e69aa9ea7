// SPDX-License-Identifier: Apache-2.0
//
// rckit - K-factor and envelope statistics for reverberation chamber OTA measurements
// Copyright (C) 2026 The rckit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RCKIT_TOOLS_CLI_HPP
#define RCKIT_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rckit::cli
{

enum ExitCode : int
{
    kSuccess = 0,
    kRuntimeError = 1,
    kUsageError = 2,
};

// Entry point of the `rckit` binary; args exclude the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace rckit::cli

#endif
