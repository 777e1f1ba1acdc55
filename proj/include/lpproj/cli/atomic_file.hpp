// Copyright 2026 The lpproj Authors.
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

#ifndef LPPROJ_CLI_ATOMIC_FILE_HPP_
#define LPPROJ_CLI_ATOMIC_FILE_HPP_

#include <string>
#include <utility>
#include <vector>

namespace lpproj::cli {

/// Writes contents to a temporary file beside path, then renames it into
/// place. Throws std::runtime_error on failure and leaves path untouched.
void write_file_atomic(const std::string& path, const std::string& contents);

/// Writes every file to its temporary first and renames only once all
/// writes succeeded.
void write_files_atomic(const std::vector<std::pair<std::string, std::string>>& files);

std::string read_file(const std::string& path);

}  // namespace lpproj::cli

#endif  // LPPROJ_CLI_ATOMIC_FILE_HPP_
