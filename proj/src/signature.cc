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

#include "hrush/signature.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <utility>

#include "hrush/error.h"

namespace hrush {

Signature::Signature(std::vector<Symbol> symbols, bool open_mode)
    : symbols_(std::move(symbols)), open_mode_(open_mode) {
  std::set<std::string> names;
  for (const Symbol& s : symbols_) {
    if (s.name.empty()) throw ArgumentError("symbol with empty name");
    if (s.arity < 1) {
      throw ArgumentError("symbol " + s.name + " has arity < 1");
    }
    if (s.weight < 1) {
      throw ArgumentError("symbol " + s.name + " has weight < 1");
    }
    if (!names.insert(s.name).second) {
      throw ArgumentError("duplicate symbol " + s.name);
    }
    if (open_mode_) {
      std::optional<int> n = OpenSymbolArity(s.name);
      if (n && (*n != s.arity || s.weight != 1)) {
        throw ArgumentError("symbol " + s.name +
                            " clashes with the implicit open-mode symbol");
      }
    }
  }
  std::sort(symbols_.begin(), symbols_.end(),
            [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
}

Signature Signature::Single(int arity, int weight, std::string name) {
  return Signature({Symbol{std::move(name), arity, weight}});
}

Signature Signature::Open() { return Signature({}, /*open_mode=*/true); }

std::optional<int> Signature::Find(std::string_view name) const {
  auto it = std::lower_bound(
      symbols_.begin(), symbols_.end(), name,
      [](const Symbol& s, std::string_view n) { return s.name < n; });
  if (it == symbols_.end() || it->name != name) return std::nullopt;
  return static_cast<int>(it - symbols_.begin());
}

std::optional<Symbol> Signature::Resolve(std::string_view name) const {
  if (std::optional<int> i = Find(name)) return symbols_[*i];
  if (open_mode_) {
    if (std::optional<int> n = OpenSymbolArity(name)) {
      return Symbol{std::string(name), *n, 1};
    }
  }
  return std::nullopt;
}

std::optional<Symbol> Signature::UnitSymbolOfArity(int arity) const {
  for (const Symbol& s : symbols_) {
    if (s.arity == arity && s.weight == 1) return s;
  }
  if (open_mode_) {
    Symbol s{"R" + std::to_string(arity), arity, 1};
    if (!Find(s.name)) return s;
  }
  return std::nullopt;
}

Signature Signature::With(const Symbol& symbol) const {
  if (std::optional<int> i = Find(symbol.name)) {
    if (symbols_[*i] == symbol) return *this;
    throw ArgumentError("symbol " + symbol.name +
                        " already declared with a different arity or weight");
  }
  std::vector<Symbol> symbols = symbols_;
  symbols.push_back(symbol);
  return Signature(std::move(symbols), open_mode_);
}

std::optional<int> OpenSymbolArity(std::string_view name) {
  if (name.size() < 2 || name[0] != 'R') return std::nullopt;
  int n = 0;
  const char* begin = name.data() + 1;
  const char* end = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(begin, end, n);
  if (ec != std::errc() || ptr != end || n < 1 || name[1] == '0') {
    return std::nullopt;
  }
  return n;
}

}  // namespace hrush
