#include "diffalg/session.hpp"

#include <functional>
#include <optional>
#include <sstream>

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include "diffalg/jet.hpp"

namespace diffalg {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw SessionError(SessionError::Kind::Parse, what); }
[[noreturn]] void semantic_fail(const std::string& what) { throw SessionError(SessionError::Kind::Semantic, what); }

const YAML::Node need(const YAML::Node& node, const char* key, const std::string& where) {
  if (!node.IsMap()) parse_fail(where + ": expected a mapping");
  const YAML::Node v = node[key];
  if (!v) parse_fail(where + ": missing key '" + key + "'");
  return v;
}

std::string scalar(const YAML::Node& node, const std::string& where) {
  if (!node.IsScalar()) parse_fail(where + ": expected a scalar");
  return node.as<std::string>();
}

std::size_t natural(const YAML::Node& node, const std::string& where) {
  const std::string s = scalar(node, where);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) parse_fail(where + ": expected a natural number");
  return std::stoul(s);
}

std::vector<std::string> scalar_list(const YAML::Node& node, const std::string& where) {
  std::vector<std::string> out;
  if (!node) return out;
  if (!node.IsSequence()) parse_fail(where + ": expected a list");
  for (const auto& x : node) out.push_back(scalar(x, where));
  return out;
}

RatFun element(const std::string& text, const FieldSpec& field, const std::string& where) {
  try {
    return parse_ratfun(text, field);
  } catch (const ParseError& e) {
    parse_fail(where + ": " + e.what());
  }
}

Matrix matrix(const YAML::Node& node, const FieldSpec& field, const std::string& where) {
  if (!node.IsSequence()) parse_fail(where + ": a matrix is a list of rows");
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : node) {
    if (!row.IsSequence()) parse_fail(where + ": malformed matrix row");
    rows.push_back(scalar_list(row, where));
    if (rows.back().size() != rows.front().size()) parse_fail(where + ": matrix rows differ in length");
  }
  if (rows.empty() || rows.front().empty()) parse_fail(where + ": empty matrix");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = element(rows[r][c], field, where);
  return m;
}

json to_json(const YAML::Node& node) {
  if (node.IsMap()) {
    json out = json::object();
    for (const auto& kv : node) out[kv.first.as<std::string>()] = to_json(kv.second);
    return out;
  }
  if (node.IsSequence()) {
    json out = json::array();
    for (const auto& x : node) out.push_back(to_json(x));
    return out;
  }
  if (node.IsScalar()) return node.as<std::string>();
  return nullptr;
}

struct StructureDef {
  FieldSpec field;
  std::vector<Derivation> principal, parameter;
  std::vector<std::string> constants;
  std::optional<DiffStructure> full;
  StructurePtr param;
};

struct ModuleEntry {
  std::string structure;
  DiffModule module;
};

struct RingMorphism {
  std::string source, target;
  DiffMorphism phi;
};

struct ModuleMorphism {
  std::string src, dst;
  Matrix t;
};

struct Outcome {
  std::string verdict;
  json witness = nullptr;
  json artifacts = json::object();
  bool ok = true;
};

}  // namespace

struct Session::State {
  std::map<std::string, StructureDef> structures;
  std::map<std::string, RingMorphism> rings;
  std::map<std::string, ModuleEntry> modules;
  std::map<std::string, ModuleMorphism> morphisms;
  YAML::Node commands;
  std::string digest;

  bool taken(const std::string& name) const {
    return structures.count(name) || rings.count(name) || modules.count(name) || morphisms.count(name);
  }
  void claim(const std::string& name) {
    if (taken(name)) semantic_fail("name '" + name + "' is defined twice");
  }

  StructureDef& structure(const std::string& name) {
    auto it = structures.find(name);
    if (it == structures.end()) semantic_fail("undefined structure '" + name + "'");
    return it->second;
  }
  const DiffStructure& full(const std::string& name) {
    StructureDef& s = structure(name);
    if (!s.full) {
      std::vector<Derivation> basis = s.principal;
      basis.insert(basis.end(), s.parameter.begin(), s.parameter.end());
      try {
        s.full = build_structure(s.field, basis);
      } catch (const Error& e) {
        semantic_fail("structure '" + name + "': " + e.what());
      }
    }
    return *s.full;
  }
  StructurePtr param(const std::string& name) {
    StructureDef& s = structure(name);
    if (!s.param) {
      try {
        s.param = std::make_shared<const ParamStructure>(
            build_param_structure(s.field, s.principal, s.parameter, s.constants));
      } catch (const Error& e) {
        semantic_fail("structure '" + name + "': " + e.what());
      }
    }
    return s.param;
  }
  ModuleEntry& module(const std::string& name) {
    auto it = modules.find(name);
    if (it == modules.end()) semantic_fail("undefined module '" + name + "'");
    return it->second;
  }

  json module_json(const ModuleEntry& e) const {
    json out;
    out["structure"] = e.structure;
    out["rank"] = e.module.rank();
    json mats = json::array();
    for (const auto& a : e.module.conn) mats.push_back(render(a, e.module.field()));
    out["matrices"] = mats;
    return out;
  }

  void load(const YAML::Node& root);
  Outcome execute(const std::string& op, const YAML::Node& args, const SessionOptions& options);
  void store(const std::string& name, ModuleEntry entry) {
    claim(name);
    modules.emplace(name, std::move(entry));
  }
};

namespace {

std::vector<Derivation> derivations(const YAML::Node& node, const FieldSpec& field, const std::string& where) {
  std::vector<Derivation> out;
  if (!node) return out;
  if (!node.IsSequence()) parse_fail(where + ": expected a list of derivations");
  for (const auto& d : node) {
    if (!d.IsMap()) parse_fail(where + ": a derivation maps variables to coefficients");
    Derivation der{std::vector<RatFun>(field.size(), RatFun::constant(field.size(), 0))};
    for (const auto& kv : d) {
      const std::string var = scalar(kv.first, where);
      der.coeffs[field.index_of(var)] = element(scalar(kv.second, where), field, where);
    }
    out.push_back(std::move(der));
  }
  return out;
}

}  // namespace

void Session::State::load(const YAML::Node& root) {
  if (!root.IsMap()) parse_fail("session: top level must be a mapping");
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (key != "structures" && key != "ring_morphisms" && key != "modules" && key != "morphisms" && key != "commands")
      parse_fail("session: unknown section '" + key + "'");
  }
  if (const auto node = root["structures"]) {
    if (!node.IsMap()) parse_fail("structures: expected a mapping");
    for (const auto& kv : node) {
      const std::string name = kv.first.as<std::string>(), where = "structure '" + name + "'";
      claim(name);
      StructureDef def;
      def.field = FieldSpec(scalar_list(need(kv.second, "field", where), where));
      def.principal = derivations(kv.second["principal"], def.field, where);
      def.parameter = derivations(kv.second["parameter"], def.field, where);
      def.constants = scalar_list(kv.second["constants"], where);
      for (const auto& c : def.constants) def.field.index_of(c);
      structures.emplace(name, std::move(def));
    }
  }
  if (const auto node = root["ring_morphisms"]) {
    if (!node.IsMap()) parse_fail("ring_morphisms: expected a mapping");
    for (const auto& kv : node) {
      const std::string name = kv.first.as<std::string>(), where = "ring morphism '" + name + "'";
      claim(name);
      RingMorphism rm{scalar(need(kv.second, "source", where), where), scalar(need(kv.second, "target", where), where),
                      {}};
      const DiffStructure& src = full(rm.source);
      const DiffStructure& dst = full(rm.target);
      const YAML::Node images = need(kv.second, "images", where);
      if (!images.IsMap()) parse_fail(where + ": images map source variables to target elements");
      std::vector<RatFun> gen(src.base().size());
      std::vector<bool> seen(gen.size(), false);
      for (const auto& im : images) {
        const std::size_t v = src.base().index_of(scalar(im.first, where));
        gen[v] = element(scalar(im.second, where), dst.base(), where);
        seen[v] = true;
      }
      for (std::size_t v = 0; v < seen.size(); ++v)
        if (!seen[v]) semantic_fail(where + ": no image for '" + src.base().name(v) + "'");
      Matrix w = matrix(need(kv.second, "omega_matrix", where), dst.base(), where);
      if (w.rows() != dst.dim() || w.cols() != src.dim())
        semantic_fail(where + ": omega_matrix must be " + std::to_string(dst.dim()) + "x" + std::to_string(src.dim()));
      rm.phi = DiffMorphism{src, dst, std::move(gen), std::move(w)};
      rings.emplace(name, std::move(rm));
    }
  }
  if (const auto node = root["modules"]) {
    if (!node.IsMap()) parse_fail("modules: expected a mapping");
    for (const auto& kv : node) {
      const std::string name = kv.first.as<std::string>(), where = "module '" + name + "'";
      const std::string sname = scalar(need(kv.second, "structure", where), where);
      const std::size_t rank = natural(need(kv.second, "rank", where), where);
      StructurePtr ps = param(sname);
      const YAML::Node mats = need(kv.second, "matrices", where);
      if (!mats.IsSequence()) parse_fail(where + ": matrices is a list of matrices");
      std::vector<Matrix> conn;
      for (const auto& m : mats) {
        conn.push_back(matrix(m, ps->full.base(), where));
        if (conn.back().rows() != rank || conn.back().cols() != rank)
          semantic_fail(where + ": connection matrices must be " + std::to_string(rank) + "x" + std::to_string(rank));
      }
      try {
        store(name, {sname, make_module(ps, std::move(conn))});
      } catch (const StructureMismatch& e) {
        semantic_fail(where + ": " + e.what());
      }
    }
  }
  if (const auto node = root["morphisms"]) {
    if (!node.IsMap()) parse_fail("morphisms: expected a mapping");
    for (const auto& kv : node) {
      const std::string name = kv.first.as<std::string>(), where = "morphism '" + name + "'";
      claim(name);
      ModuleMorphism mm{scalar(need(kv.second, "src", where), where), scalar(need(kv.second, "dst", where), where), {}};
      const ModuleEntry &src = module(mm.src), &dst = module(mm.dst);
      if (src.structure != dst.structure) semantic_fail(where + ": modules over different structures");
      mm.t = matrix(need(kv.second, "matrix", where), src.module.field(), where);
      if (mm.t.rows() != dst.module.rank() || mm.t.cols() != src.module.rank())
        semantic_fail(where + ": matrix must be " + std::to_string(dst.module.rank()) + "x" +
                      std::to_string(src.module.rank()));
      morphisms.emplace(name, std::move(mm));
    }
  }
  if (const auto node = root["commands"]) {
    if (!node.IsSequence()) parse_fail("commands: expected a list");
    commands = node;
  }
}

Outcome Session::State::execute(const std::string& op, const YAML::Node& args, const SessionOptions& options) {
  const std::string where = "command '" + op + "'";
  auto arg = [&](const char* key) { return scalar(need(args, key, where), where); };
  auto opt_natural = [&](const char* key, std::size_t fallback) {
    return args && args.IsMap() && args[key] ? natural(args[key], where) : fallback;
  };
  Outcome out;

  if (op == "check-structure") {
    const std::string name = arg("structure");
    const StructureDef& def = structure(name);
    std::vector<Derivation> basis = def.principal;
    basis.insert(basis.end(), def.parameter.begin(), def.parameter.end());
    DiffStructure s;
    try {
      s = build_structure(def.field, basis);
    } catch (const NotIndependent&) {
      out.verdict = "NotIndependent";
      out.ok = false;
      return out;
    } catch (const NotClosed& e) {
      out.verdict = "NotClosed";
      out.ok = false;
      json d = json::object();
      for (std::size_t v = 0; v < def.field.size(); ++v)
        if (!e.witness().coeffs[v].is_zero()) d[def.field.name(v)] = to_string(e.witness().coeffs[v], def.field);
      out.witness = {{"pair", {e.i(), e.j()}}, {"bracket", d}};
      return out;
    }
    out.artifacts["dim"] = s.dim();
    out.artifacts["p"] = def.principal.size();
    out.artifacts["q"] = def.parameter.size();
    json consts = json::array();
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = i + 1; j < s.dim(); ++j)
        for (std::size_t q = 0; q < s.dim(); ++q)
          if (!s.c(i, j, q).is_zero()) consts.push_back({{"i", i}, {"j", j}, {"q", q}, {"value", to_string(s.c(i, j, q), def.field)}});
    out.artifacts["structure_constants"] = consts;
    try {
      build_param_structure(def.field, def.principal, def.parameter, def.constants);
      out.verdict = "Ok";
    } catch (const NotCommuting& e) {
      out.verdict = "NotCommuting";
      out.witness = e.what();
      out.ok = false;
    } catch (const PrincipalMovesConstants& e) {
      out.verdict = "PrincipalMovesConstants";
      out.witness = e.what();
      out.ok = false;
    }
    return out;
  }

  if (op == "check-morphism") {
    const std::string name = arg("morphism");
    if (auto it = rings.find(name); it != rings.end()) {
      const MorphismCheck c = check_morphism(it->second.phi);
      const FieldSpec& tf = it->second.phi.target.base();
      switch (c.kind) {
        case MorphismCheck::Kind::Ok:
          out.verdict = "Ok";
          break;
        case MorphismCheck::Kind::DCompatFail:
          out.verdict = "DCompatFail";
          out.witness = {{"variable", it->second.phi.source.base().name(c.index)},
                         {"form", render(c.dcompat_witness.coeffs, tf)}};
          break;
        case MorphismCheck::Kind::IntegrabilityFail:
          out.verdict = "IntegrabilityFail";
          out.witness = {{"index", c.index}, {"two_form", render(c.integrability_witness, tf)}};
          break;
      }
      out.ok = c.ok();
      return out;
    }
    auto it = morphisms.find(name);
    if (it == morphisms.end()) semantic_fail("undefined morphism '" + name + "'");
    const ModuleEntry &src = module(it->second.src), &dst = module(it->second.dst);
    const MorphismResidual r = morphism_check(it->second.t, src.module, dst.module);
    out.verdict = r.ok ? "Ok" : "Fail";
    if (!r.ok) out.witness = {{"i", r.i}, {"residual", render(r.residual, src.module.field())}};
    out.ok = r.ok;
    return out;
  }

  if (op == "check-integrability") {
    const ModuleEntry& m = module(arg("module"));
    const IntegrabilityCheck c = check_integrability(m.module);
    out.verdict = c.flat ? "Flat" : "Curved";
    if (!c.flat) out.witness = {{"i", c.i}, {"j", c.j}, {"residual", render(c.witness, m.module.field())}};
    out.ok = c.flat;
    return out;
  }

  auto emit = [&](ModuleEntry e) {
    out.verdict = "Ok";
    out.artifacts["module"] = module_json(e);
    if (args && args["__as"]) store(args["__as"].as<std::string>(), std::move(e));
  };

  if (op == "tensor" || op == "hom" || op == "direct-sum") {
    const bool is_hom = op == "hom";
    const ModuleEntry &a = module(arg(is_hom ? "src" : "a")), &b = module(arg(is_hom ? "dst" : "b"));
    if (a.structure != b.structure) semantic_fail(where + ": modules over different structures");
    DiffModule m = op == "tensor" ? tensor(a.module, b.module)
                   : is_hom       ? hom(a.module, b.module)
                                  : direct_sum(a.module, b.module);
    emit({a.structure, std::move(m)});
    if (is_hom) out.artifacts["vectorization"] = "row-major: entry (r, c) of an n x m matrix at index r*m + c";
    return out;
  }
  if (op == "dual") {
    const ModuleEntry& a = module(arg("module"));
    emit({a.structure, dual(a.module)});
    return out;
  }
  if (op == "extend-scalars") {
    const std::string mname = arg("morphism");
    auto it = rings.find(mname);
    if (it == rings.end()) semantic_fail("undefined ring morphism '" + mname + "'");
    const ModuleEntry& m = module(arg("module"));
    if (m.structure != it->second.source) semantic_fail(where + ": module does not live over the morphism's source");
    try {
      DiffModule e = extend_scalars(it->second.phi, param(it->second.target), m.module);
      emit({it->second.target, std::move(e)});
    } catch (const MorphismInvalid& e) {
      out.verdict = "MorphismInvalid";
      out.witness = e.what();
      out.ok = false;
    } catch (const DenominatorVanishes& e) {
      out.verdict = "DenominatorVanishes";
      out.witness = e.what();
      out.ok = false;
    }
    return out;
  }
  if (op == "prolong") {
    try {
      if (args && args.IsMap() && args["morphism"]) {
        const std::string name = arg("morphism");
        auto it = morphisms.find(name);
        if (it == morphisms.end()) semantic_fail("undefined module morphism '" + name + "'");
        const ModuleEntry &src = module(it->second.src), &dst = module(it->second.dst);
        const ModMorphism p = prolong_morphism({src.module, dst.module, it->second.t});
        out.verdict = "Ok";
        out.artifacts["src"] = module_json({src.structure, p.src});
        out.artifacts["dst"] = module_json({dst.structure, p.dst});
        out.artifacts["matrix"] = render(p.t, src.module.field());
        return out;
      }
      const ModuleEntry& m = module(arg("module"));
      ProlongedModule p = prolong_module(m.module);
      const FieldSpec& f = m.module.field();
      out.artifacts["parent_rank"] = p.parent_rank;
      out.artifacts["q"] = p.q;
      out.artifacts["incl"] = render(p.incl, f);
      out.artifacts["proj"] = render(p.proj, f);
      emit({m.structure, std::move(p.core)});
    } catch (const NotFlat&) {
      out.verdict = "NotFlat";
      out.ok = false;
    } catch (const MorphismInvalid& e) {
      out.verdict = "MorphismInvalid";
      out.witness = e.what();
      out.ok = false;
    }
    return out;
  }
  if (op == "at2") {
    const ModuleEntry& m = module(arg("module"));
    try {
      At2Module a = at2_module(m.module);
      out.artifacts["incl"] = render(a.incl, m.module.field());
      emit({m.structure, std::move(a.core)});
    } catch (const NotFlat&) {
      out.verdict = "NotFlat";
      out.ok = false;
    } catch (const RestrictionFails&) {
      out.verdict = "RestrictionFails";
      out.ok = false;
    }
    return out;
  }
  if (op == "baer-check") {
    const ModuleEntry &a = module(arg("a")), &b = module(arg("b"));
    if (a.structure != b.structure) semantic_fail(where + ": modules over different structures");
    try {
      out.ok = check_tensor_compat(a.module, b.module);
      out.verdict = out.ok ? "Ok" : "Fail";
    } catch (const NotFlat&) {
      out.verdict = "NotFlat";
      out.ok = false;
    }
    return out;
  }
  if (op == "closure") {
    const ModuleEntry& m = module(arg("module"));
    ClosureLimits limits;
    limits.depth = static_cast<unsigned>(opt_natural("depth", options.depth));
    limits.rank_cap = opt_natural("rank_cap", options.rank_cap);
    try {
      const Closure c = generate_closure(m.module, limits);
      json entries = json::array();
      for (const auto& e : c.entries)
        entries.push_back({{"label", e.label}, {"rank", e.module.rank()}, {"prolongations", e.prolongations}});
      out.verdict = "Ok";
      out.artifacts["depth"] = limits.depth;
      out.artifacts["rank_cap"] = limits.rank_cap;
      out.artifacts["entries"] = entries;
      out.artifacts["truncated"] = c.truncated;
    } catch (const NotFlat&) {
      out.verdict = "NotFlat";
      out.ok = false;
    }
    return out;
  }
  if (op == "horizontal") {
    const ModuleEntry& m = module(arg("module"));
    const unsigned bound = static_cast<unsigned>(opt_natural("degree_bound", options.degree_bound));
    json vectors = json::array();
    for (const auto& v : horizontal_space(m.module, bound)) vectors.push_back(render(v, m.module.field()));
    out.verdict = "Ok";
    out.artifacts["degree_bound"] = bound;
    out.artifacts["dimension"] = vectors.size();
    out.artifacts["vectors"] = vectors;
    return out;
  }
  if (op == "jet-eval") {
    const std::string sname = arg("structure");
    const DiffStructure& s = full(sname);
    const FieldSpec& f = s.base();
    const RatFun a = element(arg("element"), f, where);
    const Jet1Element l1 = jet1_l(a, s), r1 = jet1_r(a, s);
    const Jet2Element r2 = jet2_r(a, s);
    out.artifacts["d"] = render(deRham_d0(a, s).coeffs, f);
    out.artifacts["jet1_r"] = {{"a", to_string(r1.a, f)}, {"w", render(r1.w.coeffs, f)}};
    out.artifacts["jet2_r"] = {{"a", to_string(r2.a, f)}, {"w", render(r2.w.coeffs, f)}, {"eta", render(r2.eta, f)}};
    const bool ok = jet1_e(l1) == a && jet1_e(r1) == a && jet2_e(r2) == a && jet2_e(jet2_l(a, s)) == a &&
                    jet2_is_member(r2, s);
    out.verdict = ok ? "Ok" : "Fail";
    out.ok = ok;
    return out;
  }
  if (op == "constants-check") {
    StructurePtr ps = param(arg("structure"));
    const bool c = constants_check(element(arg("element"), ps->full.base(), where), *ps);
    out.verdict = c ? "Constant" : "NotConstant";
    return out;
  }
  semantic_fail("unknown command '" + op + "'");
}

Session::Session(const std::string& text) : state_(std::make_unique<State>()) {
  state_->digest = sha256_hex(text);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    parse_fail(std::string("YAML: ") + e.what());
  }
  try {
    state_->load(root);
  } catch (const SessionError&) {
    throw;
  } catch (const YAML::Exception& e) {
    parse_fail(std::string("YAML: ") + e.what());
  } catch (const ParseError& e) {
    parse_fail(e.what());
  } catch (const Error& e) {
    semantic_fail(e.what());
  }
}

Session::~Session() = default;

const DiffModule& Session::module(const std::string& name) const { return state_->module(name).module; }

SessionResult Session::run(const SessionOptions& options) {
  SessionResult result;
  json& cert = result.certificate;
  cert["tool"] = kToolName;
  cert["version"] = kToolVersion;
  cert["input_digest"] = state_->digest;
  cert["results"] = json::array();
  if (!state_->commands) return result;
  std::size_t index = 0;
  for (const auto& cmd : state_->commands) {
    const std::string where = "command " + std::to_string(index++);
    try {
      const std::string op = scalar(need(cmd, "op", where), where);
      YAML::Node args = cmd["args"] ? YAML::Clone(cmd["args"]) : YAML::Node(YAML::NodeType::Map);
      if (!args.IsMap()) parse_fail(where + ": args must be a mapping");
      json echo;
      echo["op"] = op;
      echo["args"] = to_json(args);
      if (cmd["as"]) {
        const std::string as = scalar(cmd["as"], where);
        echo["as"] = as;
        args["__as"] = as;
      }
      std::optional<std::string> expect;
      if (cmd["expect"]) {
        expect = scalar(cmd["expect"], where);
        echo["expect"] = *expect;
      }
      Outcome o = state_->execute(op, args, options);
      const bool ok = expect ? o.verdict == *expect : o.ok;
      if (!ok) result.verdicts_ok = false;
      json r;
      r["command"] = echo;
      r["verdict"] = o.verdict;
      r["witness"] = o.witness;
      r["artifacts"] = o.artifacts;
      cert["results"].push_back(r);
    } catch (const SessionError&) {
      throw;
    } catch (const YAML::Exception& e) {
      parse_fail(where + ": " + e.what());
    } catch (const ParseError& e) {
      parse_fail(where + ": " + e.what());
    } catch (const Error& e) {
      semantic_fail(where + ": " + e.what());
    }
  }
  return result;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string certificate_text(const json& certificate) { return certificate.dump(2) + "\n"; }

}  // namespace diffalg
