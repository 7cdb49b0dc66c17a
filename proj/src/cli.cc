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

#include "hrush/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "hrush/closure.h"
#include "hrush/core.h"
#include "hrush/error.h"
#include "hrush/genesis.h"
#include "hrush/pclass.h"
#include "hrush/pregeometry.h"
#include "hrush/proptest.h"
#include "hrush/transforms.h"
#include "hrush/workspace.h"

namespace hrush {
namespace {

using Json = nlohmann::json;
using Names = std::vector<std::string>;

struct Flags {
  std::vector<std::string> args;
  std::vector<std::string> files;
  bool json = false;
  int cap = -1;
  int64_t seed = -1;
  std::string subset;
  bool has_subset = false;
  std::string base;
  std::string target;
  std::string suite;
  std::string tuple;
  int arity = 3;
  int catalog = 3;
  int rounds = -1;
  int budget = -1;
  int64_t trials = 1000;
  int max_points = 0;
  int max_failures = 20;
  bool embed = false;
  bool geometry = false;
  bool same_pg = false;
  bool print = false;
};

// Collects the fields of one report; JSON objects keep their keys sorted.
class Output {
 public:
  void Value(const std::string& key, Json value, const std::string& text) {
    json_[key] = std::move(value);
    human_ += key + " = " + text + "\n";
  }
  void Block(const std::string& key, Json value, const std::string& text) {
    json_[key] = std::move(value);
    human_ += text;
  }
  void Write(std::ostream& out, bool json) const {
    if (json) {
      out << json_.dump(2) << "\n";
    } else {
      out << human_;
    }
  }

 private:
  Json json_ = Json::object();
  std::string human_;
};

struct Context {
  Workspace ws;
  Limits limits;
  uint64_t seed = 0;
  Names names;
  Flags flags;
  Output out;
};

Names SplitNames(std::string text) {
  std::erase_if(text, [](char c) {
    return c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c));
  });
  Names out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string FormatNames(const Names& names) { return FormatSubset(names); }

Json StructureJson(const RelStructure& m) {
  Json j;
  j["points"] = m.points();
  Json sig = Json::array();
  Json rel = Json::object();
  for (int s = 0; s < m.signature().size(); ++s) {
    const Symbol& sym = m.signature().symbol(s);
    sig.push_back({{"name", sym.name}, {"arity", sym.arity},
                   {"weight", sym.weight}});
    Json tuples = Json::array();
    for (const Tuple& t : m.relation(s)) tuples.push_back(TupleNames(m, t));
    rel[sym.name] = tuples;
  }
  j["signature"] = {{"symbols", sig}, {"open", m.signature().open_mode()}};
  j["relations"] = rel;
  return j;
}

Json PregeometryJson(const Pregeometry& p) {
  std::vector<int> table(p.table().begin(), p.table().end());
  return {{"ground", p.ground()}, {"rank", table}};
}

Json MapJson(const EmbeddingMap& g) {
  Json j = Json::object();
  for (const auto& [from, to] : g.image) j[from] = to;
  return j;
}

std::string MapText(const EmbeddingMap& g) {
  std::string s = "{";
  bool first = true;
  for (const auto& [from, to] : g.image) {
    s += (first ? "" : ", ") + from + "->" + to;
    first = false;
  }
  return s + "}";
}

void NeedNames(const Context& c, size_t n, const char* usage) {
  if (c.names.size() != n) {
    throw ArgumentError(std::string("usage: ") + usage);
  }
}

const RelStructure& StructureArg(const Context& c, size_t i) {
  return c.ws.GetStructure(c.names.at(i));
}

// A pregeometry by name, or the pregeometry of a named structure.
Pregeometry PregeometryArg(const Context& c, size_t i) {
  const std::string& name = c.names.at(i);
  if (c.ws.HasPregeometry(name)) return c.ws.GetPregeometry(name);
  if (c.ws.HasStructure(name)) {
    return PgExtract(c.ws.GetStructure(name), c.limits);
  }
  throw ArgumentError("unknown pregeometry or structure " + name);
}

PointSet SubsetArg(const Context& c, const RelStructure& m) {
  if (!c.flags.has_subset) return FullSet(m);
  return MakeSubset(m, SplitNames(c.flags.subset));
}

PointSet RequiredSubset(const Context& c, const RelStructure& m) {
  if (!c.flags.has_subset) throw ArgumentError("--subset is required");
  return MakeSubset(m, SplitNames(c.flags.subset));
}

void EmitStructure(Context& c, const std::string& name, const RelStructure& m) {
  c.out.Block("structure", StructureJson(m), SerializeStandalone(name, m));
}

void EmitPregeometry(Context& c, const std::string& name,
                     const Pregeometry& p) {
  c.out.Block("pregeometry", PregeometryJson(p),
              SerializePregeometry(name, p));
}

GenericChainOptions ChainOptions(const Context& c) {
  GenericChainOptions o;
  o.catalog_bound = c.flags.catalog;
  o.rounds = c.flags.rounds;
  if (o.rounds < 0) {
    auto it = c.ws.config.find("rounds");
    o.rounds = it != c.ws.config.end() ? static_cast<int>(it->second) : 1;
  }
  o.seed = c.seed;
  o.budget = c.flags.budget;
  if (o.budget < 0) {
    auto it = c.ws.config.find("budget");
    o.budget = it != c.ws.config.end() ? static_cast<int>(it->second) : 64;
  }
  o.limits = c.limits;
  return o;
}

void ChainSummary(Context& c, const GenericChain& chain) {
  Json sizes = Json::array();
  Json tuples = Json::array();
  std::string sizes_text;
  std::string tuples_text;
  for (const RelStructure& s : chain.stages) {
    sizes.push_back(s.size());
    tuples.push_back(s.TupleCount());
    sizes_text += (sizes_text.empty() ? "" : " ") + std::to_string(s.size());
    tuples_text +=
        (tuples_text.empty() ? "" : " ") + std::to_string(s.TupleCount());
  }
  int64_t glued = 0;
  for (const RoundLog& log : chain.log) glued += log.glued;
  c.out.Value("catalog_size", chain.catalog.size(),
              std::to_string(chain.catalog.size()));
  c.out.Value("rounds", chain.rounds_done, std::to_string(chain.rounds_done));
  c.out.Value("stage_points", sizes, sizes_text);
  c.out.Value("stage_tuples", tuples, tuples_text);
  c.out.Value("gluings", glued, std::to_string(glued));
  c.out.Value("truncated", chain.truncated,
              chain.truncated ? "true (" + chain.truncation + ")" : "false");
}

int CmdDelta(Context& c) {
  NeedNames(c, 1, "delta M [--subset a,b]");
  const RelStructure& m = StructureArg(c, 0);
  const int64_t d = Predim(m, SubsetArg(c, m));
  c.out.Value("delta", d, std::to_string(d));
  return kExitOk;
}

int CmdInClass(Context& c) {
  NeedNames(c, 1, "inclass M");
  const bool in = InClass(StructureArg(c, 0));
  c.out.Value("inclass", in, in ? "true" : "false");
  return kExitOk;
}

int CmdSsuff(Context& c) {
  NeedNames(c, 1, "ssuff M --subset a,b");
  const RelStructure& m = StructureArg(c, 0);
  const bool ss = IsSelfSufficient(m, RequiredSubset(c, m));
  c.out.Value("self_sufficient", ss, ss ? "true" : "false");
  return kExitOk;
}

int CmdSsClosure(Context& c) {
  NeedNames(c, 1, "ssclosure M --subset a,b");
  const RelStructure& m = StructureArg(c, 0);
  Names cl = SubsetNames(m, SsClosure(m, RequiredSubset(c, m)));
  c.out.Value("ssclosure", cl, FormatNames(cl));
  return kExitOk;
}

int CmdDim(Context& c) {
  NeedNames(c, 1, "dim M [--subset a,b]");
  const RelStructure& m = StructureArg(c, 0);
  const int64_t d = Dimension(m, SubsetArg(c, m));
  c.out.Value("dim", d, std::to_string(d));
  return kExitOk;
}

int CmdDClosure(Context& c) {
  NeedNames(c, 1, "dclosure M --subset a,b");
  const RelStructure& m = StructureArg(c, 0);
  Names cl = SubsetNames(m, DClosure(m, RequiredSubset(c, m)));
  c.out.Value("dclosure", cl, FormatNames(cl));
  return kExitOk;
}

int CmdRelDim(Context& c) {
  NeedNames(c, 1, "reldim M --subset X --base Z");
  const RelStructure& m = StructureArg(c, 0);
  const int64_t d = RelDim(m, RequiredSubset(c, m),
                           MakeSubset(m, SplitNames(c.flags.base)));
  c.out.Value("reldim", d, std::to_string(d));
  return kExitOk;
}

int CmdPg(Context& c) {
  NeedNames(c, 1, "pg M");
  EmitPregeometry(c, "PG_" + c.names[0], PregeometryArg(c, 0));
  return kExitOk;
}

int CmdPgIso(Context& c) {
  NeedNames(c, 2, "pgiso P Q [--embed] [--geometry]");
  PgIsoOptions o;
  o.mode = c.flags.embed ? PgIsoMode::kEmbed : PgIsoMode::kIso;
  o.geometry_quotient = c.flags.geometry;
  o.limits = c.limits;
  auto g = PgIso(PregeometryArg(c, 0), PregeometryArg(c, 1), o);
  const std::string key = c.flags.embed ? "embedding" : "iso";
  if (g) {
    c.out.Value(key, MapJson(*g), MapText(*g));
  } else {
    c.out.Value(key, nullptr, "none");
  }
  return kExitOk;
}

int CmdLocalize(Context& c) {
  NeedNames(c, 1, "localize P --subset Z");
  Pregeometry p = PregeometryArg(c, 0);
  if (!c.flags.has_subset) throw ArgumentError("--subset is required");
  EmitPregeometry(c, c.names[0] + "_loc",
                  PgLocalize(p, p.MaskOf(SplitNames(c.flags.subset))));
  return kExitOk;
}

int CmdReplace(Context& c) {
  NeedNames(c, 2, "replace M N [--same-pg]  (N replaces M on N's points)");
  const RelStructure& m = StructureArg(c, 0);
  const RelStructure& n = StructureArg(c, 1);
  ReplaceOptions o;
  o.require_same_pregeometry = c.flags.same_pg;
  EmitStructure(c, c.names[0] + "_new",
                ReplaceSubstructure(m, MakeSubset(m, n.points()), n, o));
  return kExitOk;
}

int CmdPiReduce(Context& c) {
  NeedNames(c, 1, "pireduce M --target R3=R4[,...]");
  std::map<std::string, std::string> target;
  for (const std::string& pair : SplitNames(c.flags.target)) {
    const size_t eq = pair.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError("--target entries look like FROM=TO");
    }
    target[pair.substr(0, eq)] = pair.substr(eq + 1);
  }
  if (target.empty()) throw ArgumentError("--target is required");
  EmitStructure(c, c.names[0] + "_pi", PiReduce(StructureArg(c, 0), target));
  return kExitOk;
}

int CmdDerive(Context& c) {
  NeedNames(c, 1, "derive M [--tuple SYM:a,b,c,d]");
  const RelStructure& m = StructureArg(c, 0);
  if (c.flags.tuple.empty()) {
    EmitStructure(c, c.names[0] + "_der", DeriveSaturate(m));
    return kExitOk;
  }
  const size_t colon = c.flags.tuple.find(':');
  if (colon == std::string::npos) {
    throw ArgumentError("--tuple looks like SYM:a,b,c,d");
  }
  EmitStructure(c, c.names[0] + "_der",
                DeriveTuple(m, c.flags.tuple.substr(0, colon),
                            SplitNames(c.flags.tuple.substr(colon + 1))));
  return kExitOk;
}

int CmdPad(Context& c) {
  NeedNames(c, 1, "pad M --arity n");
  EmitStructure(c, c.names[0] + "_pad",
                PadArity(StructureArg(c, 0), c.flags.arity));
  return kExitOk;
}

int CmdDiag(Context& c) {
  NeedNames(c, 1, "diag M --subset Z --arity n");
  const RelStructure& m = StructureArg(c, 0);
  Names z = SubsetNames(m, RequiredSubset(c, m));
  EmitStructure(c, c.names[0] + "_diag",
                DiagonalSaturate(z, c.flags.arity, m.signature()));
  return kExitOk;
}

int CmdAmalgam(Context& c) {
  NeedNames(c, 2, "amalgam A1 A2 [--subset A0]");
  const RelStructure& a1 = StructureArg(c, 0);
  const RelStructure& a2 = StructureArg(c, 1);
  RelStructure f = c.flags.has_subset
                       ? FreeAmalgam(a1, a2, SplitNames(c.flags.subset))
                       : FreeAmalgam(a1, a2);
  EmitStructure(c, "F", f);
  return kExitOk;
}

int CmdGeneric(Context& c) {
  NeedNames(c, 0, "generic --arity n --catalog k --rounds r");
  GenericChain chain =
      GenericBuild(Signature::Single(c.flags.arity), ChainOptions(c));
  ChainSummary(c, chain);
  if (c.flags.print) {
    Json stages = Json::array();
    std::string text;
    for (size_t i = 0; i < chain.stages.size(); ++i) {
      stages.push_back(StructureJson(chain.stages[i]));
      text += SerializeStandalone("M" + std::to_string(i), chain.stages[i]);
    }
    c.out.Block("stages", stages, text);
  }
  return kExitOk;
}

int CmdExtCheck(Context& c) {
  NeedNames(c, 0, "extcheck --arity n --catalog k --rounds r");
  GenericChain chain =
      GenericBuild(Signature::Single(c.flags.arity), ChainOptions(c));
  ChainSummary(c, chain);
  ExtensionReport r = ExtensionCheck(chain, c.flags.max_failures);
  c.out.Value("pass", r.pass, r.pass ? "true" : "false");
  c.out.Value("copies_checked", r.copies_checked,
              std::to_string(r.copies_checked));
  Json failures = Json::array();
  std::string text;
  for (const ExtensionFailure& f : r.failures) {
    EmbeddingMap g{{f.copy.begin(), f.copy.end()}, true};
    failures.push_back(
        {{"stage", f.stage}, {"pair", f.pair}, {"copy", MapJson(g)}});
    text += "unwitnessed: stage " + std::to_string(f.stage) + ", pair " +
            std::to_string(f.pair) + ", copy " + MapText(g) + "\n";
  }
  c.out.Value("failures_truncated", r.failures_truncated,
              r.failures_truncated ? "true" : "false");
  c.out.Block("failures", failures, text);
  return r.pass ? kExitOk : kExitDomain;
}

int CmdLift(Context& c) {
  NeedNames(c, 1, "lift P --arity n");
  LiftResult r = LiftSearch(PregeometryArg(c, 0), c.flags.arity, c.limits);
  c.out.Value("exhaustive", r.exhaustive, r.exhaustive ? "true" : "false");
  if (r.lift) {
    c.out.Value("found", true, "true");
    EmitStructure(c, c.names[0] + "_lift", *r.lift);
  } else {
    c.out.Value("found", false, "false");
  }
  return kExitOk;
}

int CmdStrongSub(Context& c) {
  NeedNames(c, 2, "strongsub A B --arity n");
  StrongSubResult r = IsStrongSub(PregeometryArg(c, 0), PregeometryArg(c, 1),
                                  c.flags.arity, c.limits);
  c.out.Value("strong", r.holds, r.holds ? "true" : "false");
  c.out.Value("exhaustive", r.exhaustive, r.exhaustive ? "true" : "false");
  if (r.lift) EmitStructure(c, c.names[1] + "_lift", *r.lift);
  return kExitOk;
}

int CmdPgAmalgam(Context& c) {
  NeedNames(c, 3, "pgamalgam A0 A1 A2 --arity n");
  PgAmalgamResult r =
      PregeomAmalgam(PregeometryArg(c, 0), PregeometryArg(c, 1),
                     PregeometryArg(c, 2), c.flags.arity, c.limits);
  c.out.Value("from_a1", MapJson(r.from_a1), MapText(r.from_a1));
  c.out.Value("from_a2", MapJson(r.from_a2), MapText(r.from_a2));
  EmitPregeometry(c, "P", r.p);
  return kExitOk;
}

int CmdPGeneric(Context& c) {
  NeedNames(c, 0, "pgeneric --arity n --catalog k --rounds r");
  PregeometryChain chain = PclassGenericBuild(c.flags.arity, ChainOptions(c));
  ChainSummary(c, chain.chain);
  Json ranks = Json::array();
  std::string ranks_text;
  Json tables = Json::array();
  std::string text;
  for (size_t i = 0; i < chain.chain.stages.size(); ++i) {
    const RelStructure& s = chain.chain.stages[i];
    const int64_t r = Dimension(s, FullSet(s));
    ranks.push_back(r);
    ranks_text += (ranks_text.empty() ? "" : " ") + std::to_string(r);
    if (chain.tables[i]) {
      tables.push_back(PregeometryJson(*chain.tables[i]));
      if (c.flags.print) {
        text += SerializePregeometry("PG" + std::to_string(i),
                                     *chain.tables[i]);
      }
    } else {
      tables.push_back(nullptr);
    }
  }
  c.out.Value("stage_ranks", ranks, ranks_text);
  c.out.Block("tables", c.flags.print ? tables : Json(nullptr), text);
  return kExitOk;
}

int CmdProptest(Context& c) {
  NeedNames(c, 0, "proptest --suite NAME --trials N --seed S");
  if (c.flags.suite.empty()) throw ArgumentError("--suite is required");
  ProptestOptions o;
  o.trials = c.flags.trials;
  o.seed = c.seed;
  o.max_points = c.flags.max_points;
  o.limits = c.limits;
  ProptestReport r = RunProptest(c.flags.suite, o);
  c.out.Value("suite", r.suite, r.suite);
  c.out.Value("trials", r.trials, std::to_string(r.trials));
  c.out.Value("seed", r.seed, std::to_string(r.seed));
  c.out.Value("checks", r.checks, std::to_string(r.checks));
  c.out.Value("result", r.pass ? "pass" : "fail", r.pass ? "pass" : "FAIL");
  if (!r.warning.empty()) c.out.Value("warning", r.warning, r.warning);
  if (!r.pass) {
    c.out.Value("failing_trial", *r.failing_trial,
                std::to_string(*r.failing_trial));
    c.out.Value("failure", r.failure, r.failure);
    c.out.Block("counterexample", r.counterexample,
                "# counterexample\n" + r.counterexample);
  }
  return r.pass ? kExitOk : kExitDomain;
}

struct Command {
  const char* name;
  const char* help;
  std::function<int(Context&)> run;
  // Option groups.
  bool subset = false;
  bool arity = false;
  bool chain = false;
};

const std::vector<Command>& Commands() {
  static const auto* commands = new std::vector<Command>{
      {"delta", "predimension of a subset (default: all points)", CmdDelta,
       true},
      {"inclass", "class membership", CmdInClass},
      {"ssuff", "is the subset self-sufficient", CmdSsuff, true},
      {"ssclosure", "self-sufficient closure", CmdSsClosure, true},
      {"dim", "dimension of a subset (default: all points)", CmdDim, true},
      {"dclosure", "closure under the dimension", CmdDClosure, true},
      {"reldim", "d(X u Z) - d(Z) for --subset X --base Z", CmdRelDim, true},
      {"pg", "extracted pregeometry", CmdPg},
      {"pgiso", "pregeometry isomorphism or embedding", CmdPgIso},
      {"localize", "localization at --subset Z", CmdLocalize, true},
      {"replace", "replace a substructure", CmdReplace},
      {"pireduce", "rewrite symbols by --target", CmdPiReduce},
      {"derive", "replace wide tuples by ternary ones", CmdDerive},
      {"pad", "pad ternary tuples to --arity", CmdPad, false, true},
      {"diag", "diagonal tuples on --subset", CmdDiag, true, true},
      {"amalgam", "free amalgam over --subset", CmdAmalgam, true},
      {"generic", "build a generic chain", CmdGeneric, false, true, true},
      {"extcheck", "check the extension property of a chain", CmdExtCheck,
       false, true, true},
      {"lift", "search for a lift of a pregeometry", CmdLift, false, true},
      {"strongsub", "is A strong in B", CmdStrongSub, false, true},
      {"pgamalgam", "amalgamate pregeometries", CmdPgAmalgam, false, true},
      {"pgeneric", "generic chain of pregeometries", CmdPGeneric, false, true,
       true},
      {"proptest", "run a property suite", CmdProptest},
  };
  return *commands;
}

int ReadCap(const std::string& text, const char* source) {
  int v = 0;
  try {
    size_t used = 0;
    v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw ArgumentError(std::string(source) + " is not an integer: " + text);
  }
  if (v < 0 || v > kHardUniverseCap) {
    throw ArgumentError(std::string(source) + " must be in [0, " +
                        std::to_string(kHardUniverseCap) + "]");
  }
  return v;
}

int Execute(const Command& cmd, Flags& flags, std::ostream& out,
            std::ostream& err) {
  Context c;
  c.flags = flags;
  for (const std::string& arg : flags.args) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
      c.flags.files.push_back(arg);
    } else {
      c.names.push_back(arg);
    }
  }
  for (const std::string& path : c.flags.files) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot read " + path);
    std::stringstream text;
    text << in.rdbuf();
    try {
      c.ws.Merge(Parse(text.str()));
    } catch (const ParseError& e) {
      err << path << ":" << e.what() << "\n";
      return kExitParse;
    }
  }
  const Limits from_file = c.ws.limits();
  if (c.ws.config.count("cap")) {
    c.limits.universe_cap = ReadCap(std::to_string(c.ws.config.at("cap")),
                                    "config cap");
  }
  if (const char* env = std::getenv("HRUSH_CAP")) {
    c.limits.universe_cap = ReadCap(env, "HRUSH_CAP");
  }
  c.limits.lift_ground_cap = from_file.lift_ground_cap;
  c.limits.lift_arity_cap = from_file.lift_arity_cap;
  c.limits.catalog_cap = from_file.catalog_cap;
  if (flags.cap >= 0) {
    c.limits.universe_cap = ReadCap(std::to_string(flags.cap), "--cap");
  }
  if (flags.seed >= 0) {
    c.seed = static_cast<uint64_t>(flags.seed);
  } else if (c.ws.config.count("seed")) {
    c.seed = static_cast<uint64_t>(c.ws.config.at("seed"));
  }
  const int code = cmd.run(c);
  c.out.Write(out, flags.json);
  return code;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Predimension, closure and pregeometry toolkit", "hrush"};
  app.require_subcommand(1);
  Flags flags;
  app.add_flag("--json", flags.json, "structured output (sorted keys)");
  app.add_option("--cap", flags.cap, "universe cap for exhaustive tables");
  app.add_option("--seed", flags.seed, "random seed");
  app.add_option("-f,--file", flags.files, "input file");
  const Command* chosen = nullptr;
  for (const Command& cmd : Commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->fallthrough();
    sub->add_option("args", flags.args, "names and input files");
    if (cmd.subset) {
      sub->add_option("--subset", flags.subset, "points, as a,b or {a,b}");
    }
    if (cmd.arity) sub->add_option("--arity", flags.arity, "arity n");
    if (cmd.chain) {
      sub->add_option("--catalog", flags.catalog, "catalog size bound k");
      sub->add_option("--rounds", flags.rounds, "rounds");
      sub->add_option("--budget", flags.budget, "gluings per pair per round");
      sub->add_flag("--print", flags.print, "print every stage");
    }
    const std::string name = cmd.name;
    if (name == "reldim") sub->add_option("--base", flags.base, "base set Z");
    if (name == "pgiso") {
      sub->add_flag("--embed", flags.embed, "look for an embedding");
      sub->add_flag("--geometry", flags.geometry, "compare simplifications");
    }
    if (name == "replace") {
      sub->add_flag("--same-pg", flags.same_pg,
                    "require the same pregeometry on the replaced part");
    }
    if (name == "pireduce") {
      sub->add_option("--target", flags.target, "symbol map FROM=TO,...");
    }
    if (name == "derive") {
      sub->add_option("--tuple", flags.tuple, "one tuple SYM:a,b,c,d");
    }
    if (name == "extcheck") {
      sub->add_option("--max-failures", flags.max_failures,
                      "failures to list");
    }
    if (name == "proptest") {
      sub->add_option("--suite", flags.suite, "suite name");
      sub->add_option("--trials", flags.trials, "number of trials");
      sub->add_option("--max-points", flags.max_points,
                      "largest random universe");
    }
    sub->callback([&chosen, &cmd] { chosen = &cmd; });
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    const CLI::Option* opt = sub->get_option_no_throw("--subset");
    if (opt != nullptr && opt->count() > 0) flags.has_subset = true;
  }
  if (chosen == nullptr) return kExitParse;
  try {
    return Execute(*chosen, flags, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << "\n";
    return kExitSizeLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace hrush
