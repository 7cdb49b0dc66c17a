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

#ifndef HRUSH_SIGNATURE_H_
#define HRUSH_SIGNATURE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hrush {

// A relation symbol R_i with arity n_i and predimension weight alpha_i.
struct Symbol {
  std::string name;
  int arity = 0;
  int weight = 1;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

// A relational signature with positive integer weights.
//
// In open mode the signature stands for the language with one weight-1
// symbol of every arity. Those symbols are named R<n> and are materialized on
// demand, so a signature value only ever lists finitely many of them and all
// predimension sums stay finite.
//
// Symbols are kept sorted by name; the symbol index used throughout the
// library is the position in that order.
class Signature {
 public:
  Signature() = default;
  // Throws ArgumentError on duplicate names, arity < 1 or weight < 1.
  explicit Signature(std::vector<Symbol> symbols, bool open_mode = false);

  // The single-symbol language L_n (symbol "R", weight 1 unless given).
  static Signature Single(int arity, int weight = 1,
                          std::string name = "R");
  // Open-mode signature with no materialized symbols yet.
  static Signature Open();

  const std::vector<Symbol>& symbols() const { return symbols_; }
  int size() const { return static_cast<int>(symbols_.size()); }
  const Symbol& symbol(int index) const { return symbols_.at(index); }
  bool open_mode() const { return open_mode_; }

  std::optional<int> Find(std::string_view name) const;

  // Looks `name` up among the declared symbols, falling back to the implicit
  // R<n> symbols in open mode.
  std::optional<Symbol> Resolve(std::string_view name) const;

  // A weight-1 symbol of the given arity: a declared one if present, else the
  // implicit R<n> in open mode.
  std::optional<Symbol> UnitSymbolOfArity(int arity) const;

  // Copy with `symbol` added. Adding a symbol that is already present with
  // the same arity and weight is a no-op; a conflicting one throws.
  Signature With(const Symbol& symbol) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Symbol> symbols_;
  bool open_mode_ = false;
};

// Parses "R<n>" and returns n, or nullopt for any other name.
std::optional<int> OpenSymbolArity(std::string_view name);

}  // namespace hrush

#endif  // HRUSH_SIGNATURE_H_
