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

#include "hrush/transforms.h"

#include <cstdio>
#include <deque>
#include <functional>
#include <set>

#include "hrush/closure.h"
#include "hrush/core.h"
#include "hrush/error.h"
#include "hrush/pregeometry.h"

namespace hrush {
namespace {

uint32_t Fnv1a(const std::string& text) {
  uint32_t h = 2166136261u;
  for (unsigned char c : text) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

std::string TupleText(const std::string& symbol,
                      const std::vector<std::string>& names) {
  std::string text = symbol + "(";
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) text += ",";
    text += names[i];
  }
  return text + ")";
}

std::vector<std::string> FreshNames(
    const std::string& symbol, const std::vector<std::string>& names,
    const std::function<bool(const std::string&)>& exists) {
  const std::string text = TupleText(symbol, names);
  const int count = static_cast<int>(names.size()) - 1;
  for (int salt = 0;; ++salt) {
    const std::string key = salt ? text + "#" + std::to_string(salt) : text;
    char hex[9];
    std::snprintf(hex, sizeof(hex), "%08x", Fnv1a(key));
    std::vector<std::string> out;
    bool clash = false;
    for (int k = 1; k <= count && !clash; ++k) {
      out.push_back(std::string(hex) + "." + std::to_string(k));
      clash = exists(out.back());
    }
    if (!clash) return out;
  }
}

// Ternary and (n-1)-ary weight-1 symbols, and the family check.
void CheckDeriveSignature(const Signature& sig, int n) {
  for (const Symbol& s : sig.symbols()) {
    if (s.arity < 3 || s.weight != 1) {
      throw ArgumentError(
          "derivation needs a signature of weight-1 symbols of arity >= 3");
    }
  }
  if (!sig.UnitSymbolOfArity(3) || !sig.UnitSymbolOfArity(n - 1)) {
    throw ArgumentError("signature lacks a weight-1 symbol of arity 3 or " +
                        std::to_string(n - 1));
  }
}

// Applies one derivation inside `builder`. Returns the derivative tuple.
std::pair<std::string, std::vector<std::string>> DeriveInto(
    StructureBuilder& builder, const std::string& symbol,
    const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  const Signature& sig = builder.signature();
  CheckDeriveSignature(sig, n);
  std::vector<std::string> xs =
      FreshNames(symbol, names, [&](const std::string& name) {
        return builder.HasPoint(name);
      });
  const std::string ternary = sig.UnitSymbolOfArity(3)->name;
  const std::string derived = sig.UnitSymbolOfArity(n - 1)->name;
  builder.RemoveTuple(symbol, names);
  builder.AddPoints(xs);
  for (int k = 0; k + 1 < n; ++k) {
    builder.AddTuple(ternary, {names[k], xs[k], names[k + 1]});
  }
  builder.AddTuple(derived, xs);
  return {derived, xs};
}

}  // namespace

RelStructure ReplaceSubstructure(const RelStructure& m, const PointSet& a,
                                 const RelStructure& a_new,
                                 const ReplaceOptions& options) {
  CheckSubset(m, a);
  if (SubsetNames(m, a) != a_new.points()) {
    throw ArgumentError("replacement must have exactly the points of " +
                        FormatSubset(SubsetNames(m, a)));
  }
  for (int s = 0; s < a_new.signature().size(); ++s) {
    if (a_new.relation(s).empty()) continue;
    const Symbol& symbol = a_new.signature().symbol(s);
    auto resolved = m.signature().Resolve(symbol.name);
    if (!resolved || !(*resolved == symbol)) {
      throw ArgumentError("symbol " + symbol.name +
                          " does not match the ambient signature");
    }
  }
  if (!InClass(a_new)) {
    throw DomainError("replacement structure is not in the class");
  }
  if (options.require_self_sufficient && !IsSelfSufficient(m, a)) {
    throw NotSelfSufficientError(FormatSubset(SubsetNames(m, a)) +
                                 " is not self-sufficient");
  }
  if (options.require_same_pregeometry &&
      !(PgExtract(Induced(m, a)) == PgExtract(a_new))) {
    throw DomainError("replacement has a different pregeometry");
  }
  std::vector<std::string> names = SubsetNames(m, a);
  StructureBuilder builder(m);
  builder.RemoveTuplesInside(std::set<std::string>(names.begin(), names.end()));
  for (int s = 0; s < a_new.signature().size(); ++s) {
    for (const Tuple& t : a_new.relation(s)) {
      builder.AddTuple(a_new.signature().symbol(s).name, TupleNames(a_new, t));
    }
  }
  return builder.Build();
}

RelStructure DiagonalSaturate(const std::vector<std::string>& z, int n) {
  if (n < 1) throw ArgumentError("arity must be positive");
  return DiagonalSaturate(z, n, Signature::Single(n));
}

RelStructure DiagonalSaturate(const std::vector<std::string>& z, int n,
                              const Signature& signature) {
  if (n < 1) throw ArgumentError("arity must be positive");
  auto symbol = signature.UnitSymbolOfArity(n);
  if (!symbol) {
    throw ArgumentError("no weight-1 symbol of arity " + std::to_string(n));
  }
  StructureBuilder builder(signature);
  builder.AddPoints(z);
  for (const std::string& c : z) {
    builder.AddTuple(symbol->name, std::vector<std::string>(n, c));
  }
  return builder.Build();
}

RelStructure PiReduce(const RelStructure& m,
                      const std::map<std::string, std::string>& target) {
  const Signature& sig = m.signature();
  auto resolve = [&](const std::string& name) {
    auto s = sig.Resolve(name);
    if (!s) throw ArgumentError("unknown symbol " + name);
    return *s;
  };
  auto image = [&](const std::string& name) {
    auto it = target.find(name);
    return it == target.end() ? name : it->second;
  };
  for (const auto& [from, to] : target) {
    const Symbol i = resolve(from);
    const Symbol j = resolve(to);
    if (image(to) != to) {
      throw ArgumentError("target symbol " + to + " must map to itself");
    }
    if (i.arity > j.arity || i.weight % j.weight != 0) {
      throw ArgumentError("cannot reduce " + from + " to " + to +
                          ": need arity(" + from + ") <= arity(" + to +
                          ") and weight(" + to + ") | weight(" + from + ")");
    }
  }
  if (!InClass(m)) throw DomainError("structure is not in the class");

  std::vector<Symbol> kept;
  for (const Symbol& s : sig.symbols()) {
    if (image(s.name) == s.name) kept.push_back(s);
  }
  for (const auto& [from, to] : target) {
    Symbol j = resolve(to);
    if (std::find(kept.begin(), kept.end(), j) == kept.end()) {
      kept.push_back(j);
    }
  }
  std::sort(kept.begin(), kept.end(),
            [](const Symbol& x, const Symbol& y) { return x.name < y.name; });
  StructureBuilder builder(Signature(kept, sig.open_mode()));
  builder.AddPoints(m.points());

  std::map<std::string, std::set<Tuple>> present;
  for (int s = 0; s < sig.size(); ++s) {
    const std::string& name = sig.symbol(s).name;
    if (image(name) != name) continue;
    for (const Tuple& t : m.relation(s)) {
      builder.AddTuple(name, TupleNames(m, t));
      present[name].insert(t);
    }
  }
  for (int s = 0; s < sig.size(); ++s) {
    const Symbol& from = sig.symbol(s);
    const std::string to_name = image(from.name);
    if (to_name == from.name) continue;
    const Symbol to = resolve(to_name);
    const int copies = from.weight / to.weight;
    std::set<Tuple>& used = present[to_name];
    for (const Tuple& t : m.relation(s)) {
      std::vector<int> u(t.begin(), t.end());
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      const int k = static_cast<int>(u.size());
      int found = 0;
      Tuple cur(to.arity);
      std::vector<int> hits(k, 0);
      int missing = k;
      // Lexicographic DFS over surjections onto u.
      std::function<void(int)> dfs = [&](int pos) {
        if (found == copies) return;
        if (pos == to.arity) {
          if (missing == 0 && !used.count(cur)) {
            used.insert(cur);
            builder.AddTuple(to_name, TupleNames(m, cur));
            ++found;
          }
          return;
        }
        if (to.arity - pos < missing) return;
        for (int c = 0; c < k && found < copies; ++c) {
          cur[pos] = u[c];
          if (hits[c]++ == 0) --missing;
          dfs(pos + 1);
          if (--hits[c] == 0) ++missing;
        }
      };
      dfs(0);
      if (found < copies) {
        throw DomainError("no room to reduce " + from.name +
                          TupleText("", TupleNames(m, t)) + " into " +
                          to_name);
      }
    }
  }
  return builder.Build();
}

std::vector<std::string> DerivedPointNames(
    const RelStructure& m, const std::string& symbol,
    const std::vector<std::string>& names) {
  return FreshNames(symbol, names, [&](const std::string& name) {
    return m.IndexOf(name).has_value();
  });
}

RelStructure DeriveTuple(const RelStructure& m, const std::string& symbol,
                         const std::vector<std::string>& names) {
  auto index = m.signature().Find(symbol);
  if (!index) throw ArgumentError("unknown symbol " + symbol);
  const int n = m.signature().symbol(*index).arity;
  if (n < 4) throw ArgumentError("only tuples of arity >= 4 can be derived");
  Tuple t;
  for (const std::string& name : names) {
    auto p = m.IndexOf(name);
    if (!p) throw ArgumentError("unknown point " + name);
    t.push_back(*p);
  }
  if (static_cast<int>(t.size()) != n || !m.Contains(*index, t)) {
    throw ArgumentError("tuple " + TupleText(symbol, names) + " not present");
  }
  StructureBuilder builder(m);
  DeriveInto(builder, symbol, names);
  return builder.Build();
}

RelStructure DeriveSaturate(const RelStructure& m) {
  const Signature& sig = m.signature();
  for (const Symbol& s : sig.symbols()) {
    if (s.arity < 3 || s.weight != 1) {
      throw ArgumentError(
          "derivation needs a signature of weight-1 symbols of arity >= 3");
    }
  }
  if (!InClass(m)) throw DomainError("structure is not in the class");
  std::deque<std::pair<std::string, std::vector<std::string>>> queue;
  for (int s = 0; s < sig.size(); ++s) {
    if (sig.symbol(s).arity < 4) continue;
    for (const Tuple& t : m.relation(s)) {
      queue.emplace_back(sig.symbol(s).name, TupleNames(m, t));
    }
  }
  StructureBuilder builder(m);
  while (!queue.empty()) {
    auto [symbol, names] = queue.front();
    queue.pop_front();
    auto derived = DeriveInto(builder, symbol, names);
    if (derived.second.size() >= 4) queue.push_front(std::move(derived));
  }
  return builder.Build();
}

RelStructure PadArity(const RelStructure& m, int n) {
  if (n < 3) throw ArgumentError("target arity must be at least 3");
  const Signature& sig = m.signature();
  if (sig.size() != 1 || sig.symbol(0).arity != 3 ||
      sig.symbol(0).weight != 1) {
    throw ArgumentError("padding needs a single ternary weight-1 symbol");
  }
  const std::string& name = sig.symbol(0).name;
  std::string out_name = name;
  if (sig.open_mode()) out_name = "R" + std::to_string(n);
  StructureBuilder builder(sig.open_mode()
                               ? Signature::Open()
                               : Signature::Single(n, 1, name));
  builder.AddPoints(m.points());
  for (const Tuple& t : m.relation(0)) {
    std::vector<std::string> names = TupleNames(m, t);
    names.resize(n, names[2]);
    builder.AddTuple(out_name, names);
  }
  return builder.Build();
}

}  // namespace hrush
