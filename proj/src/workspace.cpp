#include "impasm/workspace.hpp"

#include <fstream>
#include <sstream>

namespace impasm {

namespace {

struct Directive {
  std::string key;
  std::vector<std::string> tokens;
  int line;
};

struct Section {
  std::vector<std::string> header;  // tokens inside [...]
  std::vector<Directive> directives;
  std::vector<std::string> raw;     // raw lines, for term sections
  int line;
};

[[noreturn]] void fail(const std::string& file, int line, const std::string& msg) {
  throw Error(file + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<Section> split_sections(std::string_view text, const std::string& file) {
  std::vector<Section> sections;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  bool in_term = false;
  while (std::getline(is, line)) {
    ++lineno;
    std::string trimmed = line;
    size_t b = trimmed.find_first_not_of(" \t\r");
    trimmed = b == std::string::npos ? "" : trimmed.substr(b);
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
      trimmed.pop_back();
    if (trimmed.empty()) continue;
    if (trimmed.front() == '[') {
      if (trimmed.back() != ']') fail(file, lineno, "unterminated section header");
      Section sec;
      sec.line = lineno;
      sec.header = tokenize(trimmed.substr(1, trimmed.size() - 2));
      if (sec.header.empty()) fail(file, lineno, "empty section header");
      sections.push_back(std::move(sec));
      in_term = sections.back().header.front() == "term";
      continue;
    }
    if (in_term && !sections.empty()) {
      sections.back().raw.push_back(trimmed);
      continue;
    }
    if (trimmed.front() == '#') continue;  // comment
    if (sections.empty()) fail(file, lineno, "content before any section");
    size_t colon = trimmed.find(':');
    bool is_directive =
        colon != std::string::npos && trimmed.find_first_of(" \t") > colon;
    if (is_directive) {
      Directive d;
      d.key = trimmed.substr(0, colon);
      d.tokens = tokenize(trimmed.substr(colon + 1));
      d.line = lineno;
      sections.back().directives.push_back(std::move(d));
    } else {
      if (sections.back().directives.empty())
        fail(file, lineno, "expected a 'key:' directive");
      auto extra = tokenize(trimmed);
      auto& toks = sections.back().directives.back().tokens;
      toks.insert(toks.end(), extra.begin(), extra.end());
    }
  }
  return sections;
}

const Directive* find_directive(const Section& sec, const std::string& key) {
  for (const auto& d : sec.directives)
    if (d.key == key) return &d;
  return nullptr;
}

const Directive& need_directive(const Section& sec, const std::string& key,
                                const std::string& file) {
  const Directive* d = find_directive(sec, key);
  if (!d) fail(file, sec.line, "section is missing the '" + key + ":' directive");
  return *d;
}

// "(a,b)" -> {a, b}
std::pair<std::string, std::string> parse_pair_token(const std::string& tok,
                                                     const std::string& file,
                                                     int line) {
  if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
    fail(file, line, "expected a pair token '(a,b)', got '" + tok + "'");
  size_t comma = tok.find(',');
  if (comma == std::string::npos)
    fail(file, line, "expected a pair token '(a,b)', got '" + tok + "'");
  return {tok.substr(1, comma - 1), tok.substr(comma + 1, tok.size() - comma - 2)};
}

void load_algebra(Workspace& ws, const Section& sec, bool validate,
                  const std::string& file) {
  if (sec.header.size() != 2) fail(file, sec.line, "usage: [algebra NAME]");
  const std::string& name = sec.header[1];
  if (ws.algebras.count(name)) fail(file, sec.line, "duplicate algebra " + name);
  auto elems = need_directive(sec, "elements", file).tokens;
  std::vector<std::pair<std::string, std::string>> pairs;
  if (const Directive* d = find_directive(sec, "order")) {
    if (d->tokens.size() % 3 != 0) fail(file, d->line, "order wants triples 'a <= b'");
    for (size_t i = 0; i < d->tokens.size(); i += 3) {
      if (d->tokens[i + 1] != "<=") fail(file, d->line, "order wants 'a <= b'");
      pairs.push_back({d->tokens[i], d->tokens[i + 2]});
    }
  }
  Lattice lat = Lattice::from_order_pairs(elems, pairs);

  const Directive& imp = need_directive(sec, "imp", file);
  if (imp.tokens.empty()) fail(file, imp.line, "imp wants 'heyting' or 'table ...'");
  std::optional<ImplicativeStructure> str;
  if (imp.tokens[0] == "heyting") {
    str.emplace(derive_heyting(lat));
  } else if (imp.tokens[0] == "table") {
    int n = lat.size();
    std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n, -1));
    if ((imp.tokens.size() - 1) % 5 != 0)
      fail(file, imp.line, "imp table wants rows 'a -> b = c'");
    for (size_t i = 1; i < imp.tokens.size(); i += 5) {
      if (imp.tokens[i + 1] != "->" || imp.tokens[i + 3] != "=")
        fail(file, imp.line, "imp table wants rows 'a -> b = c'");
      table[lat.elem(imp.tokens[i])][lat.elem(imp.tokens[i + 2])] =
          lat.elem(imp.tokens[i + 4]);
    }
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (table[a][b] < 0)
          fail(file, imp.line,
               "imp table is missing " + lat.name(a) + " -> " + lat.name(b));
    str.emplace(lat, std::move(table));
  } else {
    fail(file, imp.line, "imp wants 'heyting' or 'table'");
  }
  if (validate) {
    auto rep = validate_implicative_structure(*str);
    if (!rep.ok())
      fail(file, sec.line, "invalid implicative structure: " + rep.violations.front());
  }

  const Directive& sep = need_directive(sec, "separator", file);
  if (sep.tokens.size() < 2 ||
      (sep.tokens[0] != "generators" && sep.tokens[0] != "members"))
    fail(file, sep.line, "separator wants 'generators ...' or 'members ...'");
  Mask gens = 0;
  for (size_t i = 1; i < sep.tokens.size(); ++i)
    gens |= bit(str->lat().elem(sep.tokens[i]));
  auto alg = sep.tokens[0] == "generators"
                 ? ImplicativeAlgebra::from_generators(std::move(*str), gens)
                 : ImplicativeAlgebra(std::move(*str), gens);
  if (validate) {
    auto rep = validate_separator(alg);
    if (!rep.ok()) fail(file, sep.line, "invalid separator: " + rep.violations.front());
    for (const auto& w : rep.warnings) ws.warnings.push_back(name + ": " + w);
  }
  ws.algebras.emplace(name,
                      std::make_shared<const ImplicativeAlgebra>(std::move(alg)));
}

void load_subset(Workspace& ws, const Section& sec, const std::string& file) {
  if (sec.header.size() != 4 || sec.header[2] != "of")
    fail(file, sec.line, "usage: [subset NAME of ALGEBRA]");
  const std::string& name = sec.header[1];
  if (ws.subsets.count(name)) fail(file, sec.line, "duplicate subset " + name);
  const auto& alg = ws.algebra(sec.header[3]);
  Mask m = 0;
  for (const auto& t : need_directive(sec, "members", file).tokens)
    m |= bit(alg->lat().elem(t));
  ws.subsets.emplace(name, Workspace::Subset{sec.header[3], m});
}

void load_assembly(Workspace& ws, const Section& sec, bool validate,
                   const std::string& file) {
  if (sec.header.size() != 4 || sec.header[2] != "over")
    fail(file, sec.line, "usage: [assembly NAME over ALGEBRA]");
  const std::string& name = sec.header[1];
  if (ws.assemblies.count(name)) fail(file, sec.line, "duplicate assembly " + name);
  const auto& alg = ws.algebra(sec.header[3]);
  auto carrier = need_directive(sec, "carrier", file).tokens;
  const Directive& ex = need_directive(sec, "exist", file);
  if (ex.tokens.size() % 3 != 0) fail(file, ex.line, "exist wants triples 'x = a'");
  std::map<std::string, std::string> assign;
  for (size_t i = 0; i < ex.tokens.size(); i += 3) {
    if (ex.tokens[i + 1] != "=") fail(file, ex.line, "exist wants 'x = a'");
    assign[ex.tokens[i]] = ex.tokens[i + 2];
  }
  std::vector<Elem> exist;
  for (const auto& p : carrier) {
    auto it = assign.find(p);
    if (it == assign.end()) fail(file, ex.line, "missing existence for point " + p);
    exist.push_back(alg->lat().elem(it->second));
  }
  try {
    if (validate)
      ws.assemblies.emplace(name, make_assembly(alg, carrier, exist));
    else
      ws.assemblies.emplace(
          name, std::make_shared<Assembly>(Assembly::unchecked(alg, carrier, exist)));
  } catch (const Error& e) {
    fail(file, sec.line, std::string("invalid assembly: ") + e.what());
  }
}

std::vector<int> parse_map(const Directive& d, const Assembly& src,
                           const Assembly& dst, const std::string& file) {
  if (d.tokens.size() % 3 != 0) fail(file, d.line, d.key + " wants triples 'x -> y'");
  std::vector<int> map(src.size(), -1);
  for (size_t i = 0; i < d.tokens.size(); i += 3) {
    if (d.tokens[i + 1] != "->") fail(file, d.line, d.key + " wants 'x -> y'");
    map[src.point(d.tokens[i])] = dst.point(d.tokens[i + 2]);
  }
  for (int i = 0; i < src.size(); ++i)
    if (map[i] < 0)
      fail(file, d.line, d.key + " is not total: missing " + src.point_name(i));
  return map;
}

void load_morphism(Workspace& ws, const Section& sec, const std::string& file) {
  if (sec.header.size() != 6 || sec.header[2] != ":" || sec.header[4] != "->")
    fail(file, sec.line, "usage: [morphism NAME : SRC -> DST]");
  const std::string& name = sec.header[1];
  if (ws.morphisms.count(name)) fail(file, sec.line, "duplicate morphism " + name);
  auto src = ws.assembly(sec.header[3]);
  auto dst = ws.assembly(sec.header[5]);
  auto map = parse_map(need_directive(sec, "map", file), *src, *dst, file);
  ws.morphisms.emplace(name, AsmMorphism{src, dst, std::move(map)});
}

void load_groupoid(Workspace& ws, const Section& sec, bool validate,
                   const std::string& file) {
  if (sec.header.size() != 2) fail(file, sec.line, "usage: [groupoid NAME]");
  const std::string& name = sec.header[1];
  if (ws.groupoids.count(name)) fail(file, sec.line, "duplicate groupoid " + name);
  auto x0 = ws.assembly(need_directive(sec, "vertices", file).tokens.at(0));
  auto x1 = ws.assembly(need_directive(sec, "edges", file).tokens.at(0));
  auto s = parse_map(need_directive(sec, "s", file), *x1, *x0, file);
  auto t = parse_map(need_directive(sec, "t", file), *x1, *x0, file);
  auto rho = parse_map(need_directive(sec, "rho", file), *x0, *x1, file);
  auto sigma = parse_map(need_directive(sec, "sigma", file), *x1, *x1, file);
  const Directive& taud = need_directive(sec, "tau", file);
  if (taud.tokens.size() % 3 != 0)
    fail(file, taud.line, "tau wants triples '(e,e) -> e'");
  std::map<std::pair<int, int>, int> tau_map;
  for (size_t i = 0; i < taud.tokens.size(); i += 3) {
    auto [a, b] = parse_pair_token(taud.tokens[i], file, taud.line);
    if (taud.tokens[i + 1] != "->") fail(file, taud.line, "tau wants '(e,e) -> e'");
    tau_map[{x1->point(a), x1->point(b)}] = x1->point(taud.tokens[i + 2]);
  }
  auto tau = [&tau_map, &file, &sec, &x1](int e, int ep) {
    auto it = tau_map.find({e, ep});
    if (it == tau_map.end())
      fail(file, sec.line,
           "tau is missing the composable pair (" + x1->point_name(e) + "," +
               x1->point_name(ep) + ")");
    return it->second;
  };
  auto g = make_pseudo_groupoid(x0, x1, s, t, rho, sigma, tau);
  if (validate) {
    auto rep = validate_pseudo_groupoid(*g);
    if (!rep.ok())
      fail(file, sec.line, "invalid pseudo-groupoid: " + rep.violations.front());
  }
  ws.groupoids.emplace(name, std::move(g));
}

void load_iset(Workspace& ws, const Section& sec, bool validate,
               const std::string& file) {
  if (sec.header.size() != 4 || sec.header[2] != "over")
    fail(file, sec.line, "usage: [implicative-set NAME over ALGEBRA]");
  const std::string& name = sec.header[1];
  if (ws.isets.count(name)) fail(file, sec.line, "duplicate implicative set " + name);
  const auto& alg = ws.algebra(sec.header[3]);
  auto carrier = need_directive(sec, "carrier", file).tokens;
  const Directive& eqd = need_directive(sec, "eq", file);
  if (eqd.tokens.size() % 3 != 0) fail(file, eqd.line, "eq wants triples '(x,y) = a'");
  int n = static_cast<int>(carrier.size());
  auto point = [&](const std::string& p) -> int {
    for (int i = 0; i < n; ++i)
      if (carrier[i] == p) return i;
    fail(file, eqd.line, "unknown carrier point " + p);
  };
  std::vector<std::vector<Elem>> eq(n, std::vector<Elem>(n, -1));
  for (size_t i = 0; i < eqd.tokens.size(); i += 3) {
    auto [a, b] = parse_pair_token(eqd.tokens[i], file, eqd.line);
    if (eqd.tokens[i + 1] != "=") fail(file, eqd.line, "eq wants '(x,y) = a'");
    eq[point(a)][point(b)] = alg->lat().elem(eqd.tokens[i + 2]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (eq[i][j] < 0)
        fail(file, eqd.line, "eq is missing (" + carrier[i] + "," + carrier[j] + ")");
  auto e = make_implicative_set(alg, carrier, std::move(eq));
  if (validate) {
    auto rep = validate_implicative_set(*e);
    if (!rep.ok())
      fail(file, sec.line, "invalid implicative set: " + rep.violations.front());
  }
  ws.isets.emplace(name, std::move(e));
}

void load_relation(Workspace& ws, const Section& sec, bool validate,
                   const std::string& file) {
  if (sec.header.size() != 6 || sec.header[2] != ":" || sec.header[4] != "->")
    fail(file, sec.line, "usage: [relation NAME : SRC -> DST]");
  const std::string& name = sec.header[1];
  if (ws.relations.count(name)) fail(file, sec.line, "duplicate relation " + name);
  auto src = ws.iset(sec.header[3]);
  auto dst = ws.iset(sec.header[5]);
  const Directive& vd = need_directive(sec, "values", file);
  if (vd.tokens.size() % 3 != 0)
    fail(file, vd.line, "values wants triples '(x,y) = a'");
  std::vector<std::vector<Elem>> vals(src->size(), std::vector<Elem>(dst->size(), -1));
  for (size_t i = 0; i < vd.tokens.size(); i += 3) {
    auto [a, b] = parse_pair_token(vd.tokens[i], file, vd.line);
    if (vd.tokens[i + 1] != "=") fail(file, vd.line, "values wants '(x,y) = a'");
    vals[src->point(a)][dst->point(b)] = src->alg->lat().elem(vd.tokens[i + 2]);
  }
  for (int i = 0; i < src->size(); ++i)
    for (int j = 0; j < dst->size(); ++j)
      if (vals[i][j] < 0)
        fail(file, vd.line,
             "values is missing (" + src->carrier[i] + "," + dst->carrier[j] + ")");
  FunctionalRelation f{src, dst, std::move(vals)};
  if (validate) {
    auto rep = validate_frel(f);
    if (!rep.ok())
      fail(file, sec.line, "invalid functional relation: " + rep.violations.front());
  }
  ws.relations.emplace(name, std::move(f));
}

void load_term(Workspace& ws, const Section& sec, const std::string& file) {
  if (sec.header.size() != 2) fail(file, sec.line, "usage: [term NAME]");
  const std::string& name = sec.header[1];
  if (ws.terms.count(name)) fail(file, sec.line, "duplicate term " + name);
  std::string text;
  for (const auto& l : sec.raw) {
    if (!text.empty()) text += "\n";
    text += l;
  }
  try {
    ws.terms.emplace(name, parse_term(text));
  } catch (const ParseError& e) {
    fail(file, sec.line, std::string("term does not parse: ") + e.what());
  }
}

}  // namespace

const AlgebraPtr& Workspace::algebra(const std::string& name) const {
  auto it = algebras.find(name);
  if (it == algebras.end()) throw Error("unknown algebra: " + name);
  return it->second;
}
const Workspace::Subset& Workspace::subset(const std::string& name) const {
  auto it = subsets.find(name);
  if (it == subsets.end()) throw Error("unknown subset: " + name);
  return it->second;
}
const AsmPtr& Workspace::assembly(const std::string& name) const {
  auto it = assemblies.find(name);
  if (it == assemblies.end()) throw Error("unknown assembly: " + name);
  return it->second;
}
const AsmMorphism& Workspace::morphism(const std::string& name) const {
  auto it = morphisms.find(name);
  if (it == morphisms.end()) throw Error("unknown morphism: " + name);
  return it->second;
}
const GrpdPtr& Workspace::groupoid(const std::string& name) const {
  auto it = groupoids.find(name);
  if (it == groupoids.end()) throw Error("unknown groupoid: " + name);
  return it->second;
}
const ISetPtr& Workspace::iset(const std::string& name) const {
  auto it = isets.find(name);
  if (it == isets.end()) throw Error("unknown implicative set: " + name);
  return it->second;
}
const FunctionalRelation& Workspace::relation(const std::string& name) const {
  auto it = relations.find(name);
  if (it == relations.end()) throw Error("unknown relation: " + name);
  return it->second;
}

Workspace parse_workspace_text(std::string_view text, bool validate,
                               const std::string& filename) {
  Workspace ws;
  for (const auto& sec : split_sections(text, filename)) {
    const std::string& kind = sec.header.front();
    if (kind == "algebra") load_algebra(ws, sec, validate, filename);
    else if (kind == "subset") load_subset(ws, sec, filename);
    else if (kind == "assembly") load_assembly(ws, sec, validate, filename);
    else if (kind == "morphism") load_morphism(ws, sec, filename);
    else if (kind == "groupoid") load_groupoid(ws, sec, validate, filename);
    else if (kind == "implicative-set") load_iset(ws, sec, validate, filename);
    else if (kind == "relation") load_relation(ws, sec, validate, filename);
    else if (kind == "term") load_term(ws, sec, filename);
    else fail(filename, sec.line, "unknown section kind: " + kind);
  }
  return ws;
}

Workspace parse_workspace(const std::vector<std::string>& paths, bool validate) {
  std::string all;
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) throw Error("cannot open workspace file: " + p);
    std::stringstream ss;
    ss << in.rdbuf();
    all += ss.str();
    all += "\n";
  }
  return parse_workspace_text(all, validate, paths.empty() ? "<none>" : paths.front());
}

std::string emit_canonical(const Workspace& w) {
  std::ostringstream os;
  for (const auto& [name, alg] : w.algebras) {
    const auto& lat = alg->lat();
    os << "[algebra " << name << "]\n";
    os << "elements:";
    for (int i = 0; i < lat.size(); ++i) os << " " << lat.name(i);
    os << "\norder:";
    for (Elem a = 0; a < lat.size(); ++a)
      for (Elem b = 0; b < lat.size(); ++b)
        if (a != b && lat.leq(a, b)) os << " " << lat.name(a) << " <= " << lat.name(b);
    os << "\nimp: table\n";
    for (Elem a = 0; a < lat.size(); ++a) {
      os << " ";
      for (Elem b = 0; b < lat.size(); ++b)
        os << " " << lat.name(a) << " -> " << lat.name(b) << " = "
           << lat.name(alg->imp(a, b));
      os << "\n";
    }
    os << "separator: members";
    for (Elem e = 0; e < lat.size(); ++e)
      if (alg->in_sep(e)) os << " " << lat.name(e);
    os << "\n\n";
  }
  auto algebra_name = [&](const AlgebraPtr& a) -> std::string {
    for (const auto& [n, alg] : w.algebras)
      if (alg == a) return n;
    return "?";
  };
  for (const auto& [name, sub] : w.subsets) {
    os << "[subset " << name << " of " << sub.algebra << "]\nmembers:";
    const auto& lat = w.algebra(sub.algebra)->lat();
    for (Elem e = 0; e < lat.size(); ++e)
      if (has(sub.mask, e)) os << " " << lat.name(e);
    os << "\n\n";
  }
  for (const auto& [name, a] : w.assemblies) {
    os << "[assembly " << name << " over " << algebra_name(a->alg()) << "]\ncarrier:";
    for (const auto& p : a->carrier()) os << " " << p;
    os << "\nexist:";
    for (int i = 0; i < a->size(); ++i)
      os << " " << a->point_name(i) << " = " << a->alg()->lat().name(a->exist(i));
    os << "\n\n";
  }
  auto assembly_name = [&](const AsmPtr& x) -> std::string {
    for (const auto& [n, a] : w.assemblies)
      if (a == x || same_assembly(*a, *x)) return n;
    return "?";
  };
  for (const auto& [name, f] : w.morphisms) {
    os << "[morphism " << name << " : " << assembly_name(f.src) << " -> "
       << assembly_name(f.dst) << "]\nmap:";
    for (int i = 0; i < f.src->size(); ++i)
      os << " " << f.src->point_name(i) << " -> " << f.dst->point_name(f.map[i]);
    os << "\n\n";
  }
  for (const auto& [name, g] : w.groupoids) {
    os << "[groupoid " << name << "]\n";
    os << "vertices: " << assembly_name(g->q.x0) << "\n";
    os << "edges: " << assembly_name(g->q.x1) << "\n";
    os << "s:";
    for (int e = 0; e < g->q.x1->size(); ++e)
      os << " " << g->q.x1->point_name(e) << " -> "
         << g->q.x0->point_name(g->q.s.map[e]);
    os << "\nt:";
    for (int e = 0; e < g->q.x1->size(); ++e)
      os << " " << g->q.x1->point_name(e) << " -> "
         << g->q.x0->point_name(g->q.t.map[e]);
    os << "\nrho:";
    for (int v = 0; v < g->q.x0->size(); ++v)
      os << " " << g->q.x0->point_name(v) << " -> "
         << g->q.x1->point_name(g->rho.map[v]);
    os << "\nsigma:";
    for (int e = 0; e < g->q.x1->size(); ++e)
      os << " " << g->q.x1->point_name(e) << " -> "
         << g->q.x1->point_name(g->sigma.map[e]);
    os << "\ntau:";
    for (size_t p = 0; p < g->comp_pairs.size(); ++p)
      os << " (" << g->q.x1->point_name(g->comp_pairs[p].first) << ","
         << g->q.x1->point_name(g->comp_pairs[p].second) << ") -> "
         << g->q.x1->point_name(g->tau.map[p]);
    os << "\n\n";
  }
  for (const auto& [name, e] : w.isets) {
    os << "[implicative-set " << name << " over " << algebra_name(e->alg)
       << "]\ncarrier:";
    for (const auto& p : e->carrier) os << " " << p;
    os << "\neq:";
    for (int i = 0; i < e->size(); ++i)
      for (int j = 0; j < e->size(); ++j)
        os << " (" << e->carrier[i] << "," << e->carrier[j]
           << ") = " << e->alg->lat().name(e->eq[i][j]);
    os << "\n\n";
  }
  auto iset_name = [&](const ISetPtr& x) -> std::string {
    for (const auto& [n, e] : w.isets)
      if (e == x || same_iset(*e, *x)) return n;
    return "?";
  };
  for (const auto& [name, f] : w.relations) {
    os << "[relation " << name << " : " << iset_name(f.src) << " -> "
       << iset_name(f.dst) << "]\nvalues:";
    for (int i = 0; i < f.src->size(); ++i)
      for (int j = 0; j < f.dst->size(); ++j)
        os << " (" << f.src->carrier[i] << "," << f.dst->carrier[j]
           << ") = " << f.src->alg->lat().name(f.values[i][j]);
    os << "\n\n";
  }
  for (const auto& [name, t] : w.terms)
    os << "[term " << name << "]\n" << pretty(t) << "\n\n";
  return os.str();
}

}  // namespace impasm
