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

#ifndef HRUSH_EMBEDDING_H_
#define HRUSH_EMBEDDING_H_

#include <map>
#include <optional>
#include <string>

namespace hrush {

// An injective point map between two structures or two pregeometries.
struct EmbeddingMap {
  std::map<std::string, std::string> image;
  // Set when the image is known to be self-sufficient (structures) or
  // strong in the relevant sense (pregeometries).
  bool strong = false;

  std::optional<std::string> operator()(const std::string& from) const {
    auto it = image.find(from);
    if (it == image.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const EmbeddingMap&, const EmbeddingMap&) = default;
};

}  // namespace hrush

#endif  // HRUSH_EMBEDDING_H_
