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

#include "hrush/workspace.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "hrush/error.h"

namespace hrush {
namespace {

const std::set<std::string, std::less<>> kConfigKeys = {
    "budget", "cap", "catalog_cap", "lift_arity_cap", "lift_cap", "rounds",
    "seed"};

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == '.' || c == '\'';
}

struct Token {
  enum Kind { kIdent, kPunct, kEnd } kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (IsIdentChar(c)) {
      size_t j = i;
      while (j < text.size() && IsIdentChar(text[j])) ++j;
      out.push_back({Token::kIdent, std::string(text.substr(i, j - i)), line,
                     column});
      advance(j - i);
    } else if (std::string_view("{}(),;:=").find(c) != std::string_view::npos) {
      out.push_back({Token::kPunct, std::string(1, c), line, column});
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line,
                       column);
    }
  }
  out.push_back({Token::kEnd, "", line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Tokenize(text)) {}

  Workspace Run() {
    while (Peek().kind != Token::kEnd) {
      const Token& t = ExpectIdent("a declaration");
      if (t.text == "signature") {
        ParseSignature();
      } else if (t.text == "structure") {
        ParseStructure();
      } else if (t.text == "pregeometry") {
        ParsePregeometry();
      } else if (t.text == "config") {
        ParseConfig();
      } else {
        Fail(t, "expected signature, structure, pregeometry or config, got '" +
                    t.text + "'");
      }
    }
    return std::move(ws_);
  }

 private:
  [[noreturn]] static void Fail(const Token& t, const std::string& message) {
    throw ParseError(message, t.line, t.column);
  }

  const Token& Peek(size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& Next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool IsPunct(const char* p, size_t ahead = 0) const {
    return Peek(ahead).kind == Token::kPunct && Peek(ahead).text == p;
  }
  bool IsWord(const char* w) const {
    return Peek().kind == Token::kIdent && Peek().text == w;
  }
  bool Accept(const char* p) {
    if (!IsPunct(p)) return false;
    Next();
    return true;
  }
  void Expect(const char* p) {
    if (!Accept(p)) {
      Fail(Peek(), std::string("expected '") + p + "'" + Describe(Peek()));
    }
  }
  static std::string Describe(const Token& t) {
    if (t.kind == Token::kEnd) return ", got end of input";
    return ", got '" + t.text + "'";
  }
  const Token& ExpectIdent(const std::string& what) {
    if (Peek().kind != Token::kIdent) {
      Fail(Peek(), "expected " + what + Describe(Peek()));
    }
    return Next();
  }
  void ExpectWord(const char* w) {
    if (!IsWord(w)) {
      Fail(Peek(), std::string("expected '") + w + "'" + Describe(Peek()));
    }
    Next();
  }
  int64_t ExpectInt(const std::string& what) {
    const Token& t = ExpectIdent(what);
    int64_t v = 0;
    auto [end, ec] = std::from_chars(t.text.data(),
                                     t.text.data() + t.text.size(), v);
    if (ec != std::errc() || end != t.text.data() + t.text.size()) {
      Fail(t, "expected " + what + ", got '" + t.text + "'");
    }
    return v;
  }

  void ParseSignature() {
    const Token& name = ExpectIdent("a signature name");
    for (const NamedSignature& s : ws_.signatures) {
      if (s.name == name.text) Fail(name, "duplicate signature " + name.text);
    }
    bool open = false;
    if (IsWord("open")) {
      Next();
      open = true;
    }
    Expect("{");
    std::vector<Symbol> symbols;
    while (!Accept("}")) {
      const Token& sym = ExpectIdent("a symbol name");
      for (const Symbol& s : symbols) {
        if (s.name == sym.text) Fail(sym, "duplicate symbol " + sym.text);
      }
      Expect(":");
      ExpectWord("arity");
      const Token& at = Peek();
      const int64_t arity = ExpectInt("an arity");
      if (arity < 1) Fail(at, "arity must be at least 1");
      int64_t weight = 1;
      if (IsWord("weight")) {
        Next();
        const Token& wt = Peek();
        weight = ExpectInt("a weight");
        if (weight < 1) Fail(wt, "weight must be at least 1");
      }
      if (open && OpenSymbolArity(sym.text) &&
          (*OpenSymbolArity(sym.text) != arity || weight != 1)) {
        Fail(sym, "in an open signature " + sym.text + " has arity " +
                      std::to_string(*OpenSymbolArity(sym.text)) +
                      " and weight 1");
      }
      symbols.push_back({sym.text, static_cast<int>(arity),
                         static_cast<int>(weight)});
      if (!Accept(";")) Accept(",");
    }
    ws_.signatures.push_back({name.text, Signature(symbols, open)});
  }

  // Point names up to ';', a keyword in `stop`, a relation line or '}'.
  std::vector<std::string> ParsePoints(const char* stop) {
    std::vector<std::string> points;
    std::set<std::string> seen;
    while (Peek().kind == Token::kIdent) {
      if (stop != nullptr && IsWord(stop)) break;
      if (IsPunct("(", 1)) break;
      const Token& t = Next();
      if (!seen.insert(t.text).second) Fail(t, "duplicate point " + t.text);
      points.push_back(t.text);
    }
    Accept(";");
    return points;
  }

  void ParseStructure() {
    const Token& name = ExpectIdent("a structure name");
    for (const NamedStructure& s : ws_.structures) {
      if (s.name == name.text) Fail(name, "duplicate structure " + name.text);
    }
    ExpectWord("over");
    const Token& sig_name = ExpectIdent("a signature name");
    const Signature* sig = nullptr;
    for (const NamedSignature& s : ws_.signatures) {
      if (s.name == sig_name.text) sig = &s.signature;
    }
    if (sig == nullptr) Fail(sig_name, "unknown signature " + sig_name.text);
    Expect("{");
    std::vector<std::string> points;
    if (IsWord("points") && !IsPunct("(", 1)) {
      Next();
      points = ParsePoints(nullptr);
    }
    const std::set<std::string> declared(points.begin(), points.end());
    StructureBuilder builder(*sig);
    builder.AddPoints(points);
    while (!Accept("}")) {
      const Token& sym = ExpectIdent("a relation symbol or '}'");
      std::optional<Symbol> symbol = sig->Resolve(sym.text);
      if (!symbol) {
        Fail(sym, "symbol " + sym.text + " is not in signature " +
                      sig_name.text);
      }
      while (IsPunct("(")) {
        const Token& open = Next();
        std::vector<std::string> names;
        do {
          const Token& p = ExpectIdent("a point name");
          if (!declared.count(p.text)) {
            Fail(p, "point " + p.text + " is not declared");
          }
          names.push_back(p.text);
        } while (Accept(","));
        Expect(")");
        if (static_cast<int>(names.size()) != symbol->arity) {
          Fail(open, "arity mismatch: " + sym.text + " has arity " +
                         std::to_string(symbol->arity) + ", tuple has " +
                         std::to_string(names.size()) + " entries");
        }
        builder.AddTuple(sym.text, std::move(names));
      }
      Accept(";");
    }
    ws_.structures.push_back({name.text, sig_name.text, builder.Build()});
  }

  void ParsePregeometry() {
    const Token& name = ExpectIdent("a pregeometry name");
    for (const NamedPregeometry& p : ws_.pregeometries) {
      if (p.name == name.text) {
        Fail(name, "duplicate pregeometry " + name.text);
      }
    }
    Expect("{");
    ExpectWord("points");
    std::vector<std::string> points = ParsePoints("rank");
    if (points.size() > static_cast<size_t>(kHardUniverseCap)) {
      Fail(name, "too many points for a rank table");
    }
    const size_t entries = size_t{1} << points.size();
    std::vector<int> table(entries, -1);
    ExpectWord("rank");
    while (!IsPunct("}")) {
      const Token& open = Peek();
      Expect("{");
      PgMask mask = 0;
      if (!IsPunct("}")) {
        do {
          const Token& p = ExpectIdent("a point name");
          auto it = std::find(points.begin(), points.end(), p.text);
          if (it == points.end()) {
            Fail(p, "point " + p.text + " is not declared");
          }
          mask |= PgMask{1} << (it - points.begin());
        } while (Accept(","));
      }
      Expect("}");
      Expect("=");
      const Token& vt = Peek();
      const int64_t v = ExpectInt("a rank");
      if (v < 0 || v > static_cast<int64_t>(points.size())) {
        Fail(vt, "rank out of range");
      }
      if (table[mask] >= 0) Fail(open, "rank given twice for this subset");
      table[mask] = static_cast<int>(v);
      if (!Accept(";")) Accept(",");
    }
    const Token& close = Next();
    for (size_t s = 0; s < entries; ++s) {
      if (table[s] < 0) {
        std::vector<std::string> missing;
        for (size_t i = 0; i < points.size(); ++i) {
          if (s >> i & 1) missing.push_back(points[i]);
        }
        Fail(close, "missing rank for " + FormatSubset(missing));
      }
    }
    try {
      ws_.pregeometries.push_back(
          {name.text, Pregeometry::Create(points, table)});
    } catch (const Error& e) {
      Fail(name, e.what());
    }
  }

  void ParseConfig() {
    Expect("{");
    while (!Accept("}")) {
      const Token& key = ExpectIdent("a config key");
      if (!kConfigKeys.count(key.text)) {
        Fail(key, "unknown config key " + key.text);
      }
      if (ws_.config.count(key.text)) {
        Fail(key, "duplicate config key " + key.text);
      }
      Expect("=");
      const Token& vt = Peek();
      const int64_t v = ExpectInt("an integer");
      if (v < 0) Fail(vt, "config values must be non-negative");
      ws_.config[key.text] = v;
      Accept(";");
    }
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  Workspace ws_;
};

template <typename T>
const T* FindNamed(const std::vector<T>& items, std::string_view name) {
  for (const T& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

void CheckName(const std::string& name) {
  if (name.empty() ||
      !std::all_of(name.begin(), name.end(), IsIdentChar)) {
    throw ArgumentError("name '" + name + "' cannot be written as a token");
  }
}

}  // namespace

const Signature& Workspace::GetSignature(std::string_view name) const {
  if (const auto* s = FindNamed(signatures, name)) return s->signature;
  throw ArgumentError("unknown signature " + std::string(name));
}

const RelStructure& Workspace::GetStructure(std::string_view name) const {
  if (const auto* s = FindNamed(structures, name)) return s->structure;
  throw ArgumentError("unknown structure " + std::string(name));
}

const Pregeometry& Workspace::GetPregeometry(std::string_view name) const {
  if (const auto* p = FindNamed(pregeometries, name)) return p->pregeometry;
  throw ArgumentError("unknown pregeometry " + std::string(name));
}

bool Workspace::HasStructure(std::string_view name) const {
  return FindNamed(structures, name) != nullptr;
}

bool Workspace::HasPregeometry(std::string_view name) const {
  return FindNamed(pregeometries, name) != nullptr;
}

Limits Workspace::limits() const {
  Limits limits;
  auto get = [&](const char* key, int& field) {
    auto it = config.find(key);
    if (it != config.end()) field = static_cast<int>(it->second);
  };
  get("cap", limits.universe_cap);
  get("lift_cap", limits.lift_ground_cap);
  get("lift_arity_cap", limits.lift_arity_cap);
  get("catalog_cap", limits.catalog_cap);
  return limits;
}

void Workspace::Merge(const Workspace& other) {
  for (const auto& s : other.signatures) {
    if (FindNamed(signatures, s.name)) {
      throw ArgumentError("duplicate signature " + s.name);
    }
    signatures.push_back(s);
  }
  for (const auto& s : other.structures) {
    if (FindNamed(structures, s.name)) {
      throw ArgumentError("duplicate structure " + s.name);
    }
    structures.push_back(s);
  }
  for (const auto& p : other.pregeometries) {
    if (FindNamed(pregeometries, p.name)) {
      throw ArgumentError("duplicate pregeometry " + p.name);
    }
    pregeometries.push_back(p);
  }
  for (const auto& [key, value] : other.config) {
    if (config.count(key)) throw ArgumentError("duplicate config key " + key);
    config[key] = value;
  }
}

Workspace Parse(std::string_view text) { return Parser(text).Run(); }

std::string SerializeSignature(const std::string& name, const Signature& s) {
  CheckName(name);
  std::ostringstream out;
  out << "signature " << name << (s.open_mode() ? " open" : "") << " {\n";
  for (const Symbol& sym : s.symbols()) {
    out << "  " << sym.name << ": arity " << sym.arity << " weight "
        << sym.weight << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string SerializeStructure(const std::string& name,
                               const std::string& signature,
                               const RelStructure& m) {
  CheckName(name);
  std::ostringstream out;
  out << "structure " << name << " over " << signature << " {\n";
  out << "  points";
  for (const std::string& p : m.points()) {
    CheckName(p);
    out << " " << p;
  }
  out << ";\n";
  for (int s = 0; s < m.signature().size(); ++s) {
    if (m.relation(s).empty()) continue;
    out << "  " << m.signature().symbol(s).name;
    for (const Tuple& t : m.relation(s)) {
      out << " (";
      for (size_t i = 0; i < t.size(); ++i) {
        out << (i ? "," : "") << m.point(t[i]);
      }
      out << ")";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string SerializePregeometry(const std::string& name,
                                 const Pregeometry& p) {
  CheckName(name);
  std::ostringstream out;
  out << "pregeometry " << name << " {\n  points";
  for (const std::string& x : p.ground()) {
    CheckName(x);
    out << " " << x;
  }
  out << ";\n  rank";
  for (PgMask s = 0; s <= p.full(); ++s) {
    out << (s % 8 == 0 ? "\n   " : "") << " " << FormatSubset(p.Names(s))
        << "=" << p.Rank(s);
  }
  out << "\n}\n";
  return out.str();
}

std::string SerializeStandalone(const std::string& name,
                                const RelStructure& m) {
  return SerializeSignature(name + "_sig", m.signature()) +
         SerializeStructure(name, name + "_sig", m);
}

std::string Serialize(const Workspace& w) {
  std::string out;
  if (!w.config.empty()) {
    out += "config {\n";
    for (const auto& [key, value] : w.config) {
      out += "  " + key + " = " + std::to_string(value) + ";\n";
    }
    out += "}\n";
  }
  for (const auto& s : w.signatures) {
    out += SerializeSignature(s.name, s.signature);
  }
  for (const auto& s : w.structures) {
    out += SerializeStructure(s.name, s.signature, s.structure);
  }
  for (const auto& p : w.pregeometries) {
    out += SerializePregeometry(p.name, p.pregeometry);
  }
  return out;
}

}  // namespace hrush
