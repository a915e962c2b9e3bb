// Copyright 2026 The Authors.
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

#ifndef PANDORA_INSTANCE_IO_HPP_
#define PANDORA_INSTANCE_IO_HPP_

// Instance files (JSON). The schema is documented in README.md.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "pandora/model.hpp"
#include "pandora/multiarm.hpp"

namespace pandora {

using AnyInstance = std::variant<Instance, MultiArmInstance>;

// Carries the JSON path of the offending field, e.g. "boxes[1].per_type.0".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

AnyInstance parse_instance(std::string_view text);

// Reads and parses a file; a missing "id" defaults to the file stem.
// Throws std::runtime_error if the file cannot be read.
AnyInstance load_instance(const std::filesystem::path& path);

std::string to_json(const Instance& instance);
std::string to_json(const MultiArmInstance& instance);

}  // namespace pandora

#endif  // PANDORA_INSTANCE_IO_HPP_
