#include "commands.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "reldiff/error.hpp"

namespace reldiff {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- rendering

namespace {

std::string scalar(const json& v)
{
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_null())
    return "null";
  return v.dump();
}

bool is_leaf(const json& v)
{
  return !v.is_structured() || v.empty();
}

std::string leaf(const json& v)
{
  if (v.is_array() && v.empty())
    return "[]";
  if (v.is_object() && v.empty())
    return "{}";
  return scalar(v);
}

void render_into(std::ostringstream& os, const json& v, int indent);

void render_object(std::ostringstream& os, const json& v, int indent, bool first_inline)
{
  bool first = true;
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (!(first && first_inline))
      os << std::string(indent, ' ');
    first = false;
    os << it.key() << ":";
    if (is_leaf(it.value())) {
      os << " " << leaf(it.value()) << "\n";
    } else {
      os << "\n";
      render_into(os, it.value(), indent + 2);
    }
  }
}

void render_into(std::ostringstream& os, const json& v, int indent)
{
  if (v.is_object()) {
    render_object(os, v, indent, false);
    return;
  }
  for (const auto& item : v) {
    os << std::string(indent, ' ') << "-";
    if (is_leaf(item)) {
      os << " " << leaf(item) << "\n";
    } else if (item.is_array() && std::all_of(item.begin(), item.end(), [](const json& x) { return !x.is_structured(); })) {
      std::string line;
      for (const auto& x : item)
        line += (line.empty() ? "" : ", ") + scalar(x);
      os << " [" << line << "]\n";
    } else if (item.is_object()) {
      os << " ";
      render_object(os, item, indent + 2, true);
    } else {
      os << "\n";
      render_into(os, item, indent + 2);
    }
  }
}

}  // namespace

std::string render_text(const json& doc)
{
  std::ostringstream os;
  if (is_leaf(doc))
    os << leaf(doc) << "\n";
  else
    render_into(os, doc, 0);
  return os.str();
}

std::string Report::render(bool structured) const
{
  if (raw)
    return *raw;
  if (structured)
    return doc.dump(2) + "\n";
  return render_text(doc);
}

// ------------------------------------------------------------------ helpers

namespace {

struct Ctx {
  Session& s;
  const RunOptions& opts;

  const FieldDescriptor& field() const { return s.field(); }
  Ring& ring() { return s.ring(); }

  std::string str(const RatFun& f) const { return s.ring().str(f); }
  std::string str(const Poly& p) const { return s.ring().str(p); }

  json tuple(const std::vector<RatFun>& t) const
  {
    json a = json::array();
    for (const auto& e : t)
      a.push_back(str(e));
    return a;
  }

  std::string lifted_name(std::size_t i) const { return field().derivation(field().lifted()[i]).name; }

  json taupoint(const TauPoint& p) const
  {
    json o;
    o["base"] = tuple(p.base);
    json f = json::object();
    for (std::size_t i = 0; i < p.fibers.size(); ++i)
      f[lifted_name(i)] = tuple(p.fibers[i]);
    o["fibers"] = f;
    return o;
  }

  json section(const std::vector<std::vector<RatFun>>& sec) const
  {
    json o = json::object();
    for (std::size_t i = 0; i < sec.size(); ++i)
      o[lifted_name(i)] = tuple(sec[i]);
    return o;
  }

  std::string theta(const MultiIndex& t) const
  {
    std::string out;
    for (std::size_t d = 0; d < field().derivation_count(); ++d) {
      if (t[d] == 0)
        continue;
      if (!out.empty())
        out += " ";
      out += "d[" + field().derivation(d).name + "]";
      if (t[d] > 1)
        out += "^" + std::to_string(t[d]);
    }
    return out.empty() ? "1" : out;
  }

  json certificate(const ReductionCertificate& c) const
  {
    json o;
    o["input"] = str(c.input);
    json mult;
    mult["unit"] = str(c.unit);
    json ex = json::array();
    for (std::size_t k = 0; k < c.exponents.size(); ++k) {
      if (c.exponents[k].first == 0 && c.exponents[k].second == 0)
        continue;
      json e;
      e["element"] = str(c.elements[k]);
      e["initial"] = c.exponents[k].first;
      e["separant"] = c.exponents[k].second;
      ex.push_back(e);
    }
    mult["powers"] = ex;
    o["multiplier"] = mult;
    json comb = json::array();
    for (const auto& [key, coeff] : c.combination) {
      json e;
      e["element"] = str(c.elements[key.first]);
      e["operator"] = theta(key.second);
      e["coefficient"] = str(coeff);
      comb.push_back(e);
    }
    o["combination"] = comb;
    o["remainder"] = str(c.remainder);
    return o;
  }

  json check(const ResidualCheck& c) const
  {
    json o;
    o["label"] = c.label;
    o["membership"] = membership_name(c.membership);
    o["residual"] = str(c.residual);
    o["certificate"] = certificate(c.certificate);
    return o;
  }

  json checks(const CheckReport& r) const
  {
    json a = json::array();
    for (const auto& c : r.checks)
      a.push_back(check(c));
    return a;
  }

  json block(const CheckReport& r) const
  {
    json o;
    o["verdict"] = verdict_name(r.verdict);
    o["checks"] = checks(r);
    return o;
  }

  json matrix(const Matrix& m) const
  {
    json a = json::array();
    for (const auto& row : m)
      a.push_back(tuple(row));
    return a;
  }
};

Verdict combine(Verdict a, Verdict b)
{
  if (a == Verdict::Fail || b == Verdict::Fail)
    return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive)
    return Verdict::Inconclusive;
  return Verdict::Pass;
}

Verdict membership_to_verdict(Membership m)
{
  switch (m) {
  case Membership::InIdeal: return Verdict::Pass;
  case Membership::NotInIdeal: return Verdict::Fail;
  case Membership::Unknown: return Verdict::Inconclusive;
  }
  return Verdict::Inconclusive;
}

void expect_args(const std::vector<std::string>& w, std::size_t n, const char* usage)
{
  if (w.size() != n + 1)
    throw Error(ErrorCode::Semantic, std::string("usage: ") + usage);
}

void require_commuting(const Session& s)
{
  if (s.noncommuting())
    throw Error(ErrorCode::NonCommutingTable, "the derivation table does not commute; run field-check");
}

json field_summary(Ctx& c)
{
  const auto& f = c.field();
  json o;
  json ds = json::array();
  for (const auto& d : f.derivations()) {
    json e;
    e["name"] = d.name;
    e["class"] = d.cls == DerivationClass::Base ? "base" : "lifted";
    ds.push_back(e);
  }
  o["derivations"] = ds;
  o["generators"] = f.generators();
  json t = json::array();
  for (std::size_t d = 0; d < f.derivation_count(); ++d)
    for (std::size_t g = 0; g < f.generator_count(); ++g) {
      json e;
      e["entry"] = "d[" + f.derivation(d).name + "](" + f.generator(g) + ")";
      e["value"] = c.str(f.table(d, g));
      t.push_back(e);
    }
  o["table"] = t;
  return o;
}

// ---------------------------------------------------------------- commands

void cmd_field_check(Ctx& c, const std::vector<std::string>& w, Report& r)
{
  expect_args(w, 0, "field-check");
  const auto& f = c.field();
  r.doc["field"] = field_summary(c);
  std::size_t pairs = f.derivation_count() * (f.derivation_count() - (f.derivation_count() ? 1 : 0)) / 2;
  r.doc["brackets_checked"] = pairs * f.generator_count();
  if (const auto& nc = c.s.noncommuting()) {
    r.verdict = Verdict::Fail;
    json e;
    e["generator"] = f.generator(nc->generator);
    e["bracket"] = "[" + f.derivation(nc->first).name + ", " + f.derivation(nc->second).name + "]";
    e["residual"] = c.str(nc->residual);
    r.doc["noncommuting"] = e;
  }
}

void cmd_prolong(Ctx& c, const std::vector<std::string>& w, Report& r)
{
  expect_args(w, 1, "prolong <variety>");
  const std::string vname = c.s.variety_of(w[1]);
  const auto& decl = c.s.variety_decl(vname);
  Variety v = c.s.variety(vname);
  ProlongationPresentation p =
      decl.fibers.empty() ? prolongation_gens(c.ring(), v.equations(), v.coords)
                          : prolongation_gens(c.field(), v.equations(), v.coords, [&] {
                              std::vector<std::vector<std::uint32_t>> f;
                              for (const auto& names : decl.fibers)
                                f.push_back(c.s.indices(names));
                              return f;
                            }());
  r.doc["variety"] = vname;
  r.doc["coords"] = decl.coords;
  r.doc["equations"] = c.tuple(p.base);
  json lifted = json::array();
  for (std::size_t i = 0; i < p.lifted.size(); ++i) {
    json e;
    e["derivation"] = c.lifted_name(i);
    json fib = json::array();
    for (auto idx : p.fibers[i])
      fib.push_back(c.ring().indeterminate_name(idx));
    e["fibers"] = fib;
    e["generators"] = c.tuple(p.lifted[i]);
    lifted.push_back(e);
  }
  r.doc["prolongation"] = lifted;
}

void cmd_dvariety_check(Ctx& c, const std::vector<std::string>& w, Report& r)
{
  expect_args(w, 1, "dvariety-check <dvariety>");
  c.s.require(w[1], {ObjectKind::DVariety, ObjectKind::Group});
  DVariety dv = c.s.dvariety(w[1]);
  check_section_shape(c.field(), dv);
  r.doc["dvariety"] = w[1];
  r.doc["variety"] = c.s.variety_of(w[1]);
  r.doc["prime"] = dv.V.ideal.prime();
  r.doc["section"] = c.section(dv.section);
  CheckReport sec = validate_section(c.ring(), dv);
  CheckReport integ = check_integrability(c.ring(), dv);
  r.doc["section_check"] = c.block(sec);
  r.doc["integrability"] = c.block(integ);
  r.verdict = combine(sec.verdict, integ.verdict);
}

void cmd_dgroup_check(Ctx& c, const std::vector<std::string>& w, Report& r)
{
  expect_args(w, 1, "dgroup-check <group>");
  DGroup g = c.s.group(w[1]);
  check_section_shape(c.field(), g.dv);
  r.doc["group"] = w[1];
  r.doc["prime"] = g.G().ideal.prime();
  r.doc["section"] = c.section(g.dv.section);
  std::vector<std::pair<std::string, CheckReport>> parts;
  parts.emplace_back("group_law", check_group_law(c.ring(), g, c.opts.check_assoc));
  parts.emplace_back("section_check", validate_section(c.ring(), g.dv));
  parts.emplace_back("integrability", check_integrability(c.ring(), g.dv));
  parts.emplace_back("section_homomorphism", check_section_hom(c.ring(), g));
  parts.emplace_back("nabla_homomorphism", check_nabla_hom(c.ring(), g));
  parts.emplace_back("crossed_homomorphism", check_crossed_hom(c.ring(), g));
  for (const auto& [name, rep] : parts) {
    r.doc[name] = c.block(rep);
    r.verdict = combine(r.verdict, rep.verdict);
  }
}

void require_on_variety(Ctx& c, const Variety& v, const std::vector<RatFun>& a, ErrorCode code,
                        const std::string& what)
{
  if (a.size() != v.coords.size())
    throw Error(ErrorCode::DimensionMismatch, what + " has length " + std::to_string(a.size()) + ", expected " +
                                                  std::to_string(v.coords.size()));
  Substitution at = make_substitution(v.coords, a);
  for (const auto& e : v.equations())
    if (!substitute(c.field(), e, at).is_zero())
      throw Error(code, what + " does not satisfy " + c.str(e));
}

void cmd_logderiv(Ctx& c, const std::vector<std::string>& w, Report& r)
{
  expect_args(w, 1, "logderiv <group> [--at <point> | --symbolic]");
  if (c.opts.at && c.opts.symbolic)
    throw Error(ErrorCode::Semantic, "--at and --symbolic are exclusive");
  DGroup g = c.s.group(w[1]);
  check_section_shape(c.field(), g.dv);
  std::vector<RatFun> a;
  r.doc["group"] = w[1];
  if (c.opts.at) {
    a = c.s.point(*c.opts.at);
    require_on_variety(c, g.G(), a, ErrorCode::NotOnGroup, "point '" + *c.opts.at + "'");
    r.doc["at"] = *c.opts.at;
    r.doc["point"] = c.tuple(a);
  } else {
    for (auto x : g.coords())
      a.push_back(RatFun::variable(Var::indeterminate(x)));
    r.doc["at"] = "symbolic";
  }
  r.doc["log_derivative"] = c.taupoint(log_derivative(c.ring(), g, a));
}

void cmd_integrable(Ctx& c, const std::vector<std::string>& w, Report& r)
{
  expect_args(w, 2, "integrable <group> <taupoint> [--witness <point>]");
  DGroup g = c.s.group(w[1]);
  check_section_shape(c.field(), g.dv);
  const TauPoint& alpha = c.s.taupoint(w[2]);
  if (alpha.base.size() != g.coords().size())
    throw Error(ErrorCode::DimensionMismatch, "taupoint '" + w[2] + "' does not fit group '" + w[1] + "'");
  r.doc["group"] = w[1];
  r.doc["alpha"] = c.taupoint(alpha);
  CheckReport rep;
  if (c.opts.witness) {
    const auto& a = c.s.point(*c.opts.witness);
    r.doc["path"] = "witness";
    r.doc["witness"] = c.tuple(a);
    rep = integrable_by_witness(c.ring(), g, alpha, a);
  } else {
    r.doc["path"] = "definition";
    DVariety tw = twisted(c.ring(), g, alpha);
    r.doc["twisted_section"] = c.section(tw.section);
    rep = integrable_point_check(c.ring(), g, alpha);
  }
  r.doc["checks"] = c.checks(rep);
  r.verdict = rep.verdict;
}

void cmd_ppv(Ctx& c, const std::vector<std::string>& w, Report& r)
{
  expect_args(w, 1, "ppv <matrices>");
  const auto& m = c.s.matrices(w[1]);
  LinearReport rep = linear_integrability(c.field(), m.matrices);
  r.doc["matrices"] = w[1];
  json ms = json::object();
  for (std::size_t i = 0; i < m.matrices.size(); ++i)
    ms[c.lifted_name(i)] = c.matrix(m.matrices[i]);
  r.doc["A"] = ms;
  r.doc["vacuous"] = m.matrices.size() < 2;
  json pairs = json::array();
  for (const auto& p : rep.pairs) {
    json e;
    e["pair"] = "[" + c.lifted_name(p.i) + ", " + c.lifted_name(p.j) + "]";
    e["zero"] = p.zero;
    e["residual"] = c.matrix(p.residual);
    pairs.push_back(e);
  }
  r.doc["pairs"] = pairs;
  r.verdict = rep.verdict;
}

json leaders_json(const LeaderSet& l, const std::vector<std::string>& labels)
{
  json o = json::object();
  for (std::size_t i = 0; i < l.leaders.size(); ++i) {
    json a = json::array();
    for (const auto& e : l.leaders[i]) {
      json v = json::array();
      for (std::size_t k = 0; k < l.m; ++k)
        v.push_back(e[k]);
      a.push_back(v.dump());
    }
    o[i < labels.size() ? labels[i] : std::to_string(i)] = a;
  }
  return o;
}

json type_json(const std::pair<int, Integer>& t)
{
  json o;
  o["type"] = t.first;
  o["dimension"] = t.second.get_str();
  return o;
}

void cmd_kolchin(Ctx& c, const std::vector<std::string>& w, Report& r)
{
  expect_args(w, 1, "kolchin <leaders|dvariety|group>");
  const long hmax = c.opts.max_order;
  if (hmax < 0)
    throw Error(ErrorCode::Semantic, "--max-order must be non-negative");
  auto k = c.s.require(w[1], {ObjectKind::Leaders, ObjectKind::DVariety, ObjectKind::Group});
  if (k == ObjectKind::Leaders) {
    const auto& d = c.s.leaders(w[1]);
    NumericalPolynomial p = dim_poly(d.set);
    r.doc["leaders"] = w[1];
    r.doc["m"] = d.set.m;
    r.doc["antichains"] = leaders_json(d.set, d.labels);
    r.doc["polynomial"] = p.str();
    auto t = type_and_dim(p);
    r.doc["type"] = t.first;
    r.doc["dimension"] = t.second.get_str();
    json rows = json::array();
    const long lo = exact_from(d.set);
    r.doc["exact_from"] = lo;
    for (long h = lo; h <= lo + hmax; ++h) {
      Integer e = brute_force_count(d.set, h), v = p(h);
      json row;
      row["h"] = h;
      row["polynomial"] = v.get_str();
      row["enumerated"] = e.get_str();
      rows.push_back(row);
      if (e != v)
        r.verdict = Verdict::Fail;
    }
    r.doc["oracle"] = rows;
    return;
  }
  DVariety dv = c.s.dvariety(w[1]);
  check_section_shape(c.field(), dv);
  SharpBoundReport rep = sharp_bound_check(c.field(), dv, hmax);
  const auto& coords = c.s.variety_decl(c.s.variety_of(w[1])).coords;
  r.doc["dvariety"] = w[1];
  r.doc["mu"] = rep.mu;
  r.doc["variety_leaders"] = leaders_json(rep.v_leaders, coords);
  r.doc["sharp_leaders"] = leaders_json(rep.sharp_leaders, coords);
  r.doc["omega_variety"] = rep.omega_v.str();
  r.doc["omega_sharp"] = rep.omega_sharp.str();
  r.doc["polynomial"] = rep.omega_sharp.str();
  r.doc["variety_type"] = type_json(rep.type_v);
  r.doc["sharp_type"] = type_json(rep.type_sharp);
  r.doc["type"] = rep.type_sharp.first;
  r.doc["dimension"] = rep.type_sharp.second.get_str();
  json rows = json::array();
  for (const auto& row : rep.rows) {
    json e;
    e["h"] = row.h;
    e["sharp"] = row.sharp.get_str();
    e["bound"] = row.bound.get_str();
    e["ok"] = row.ok;
    rows.push_back(e);
  }
  r.doc["bound"] = rows;
  r.verdict = rep.pass ? Verdict::Pass : Verdict::Fail;
}

void cmd_reduce(Ctx& c, const std::vector<std::string>& w, Report& r)
{
  auto mod = std::find(w.begin(), w.end(), "mod");
  if (mod == w.end() || mod == w.begin() + 1 || mod + 2 != w.end())
    throw Error(ErrorCode::Semantic, "usage: reduce <poly|expression> mod <variety>");
  std::string ftext;
  for (auto it = w.begin() + 1; it != mod; ++it)
    ftext += (ftext.empty() ? "" : " ") + *it;
  RatFun f = c.s.kind(ftext) == ObjectKind::Poly ? c.s.poly(ftext) : c.s.parse_expression(ftext);
  Variety v = c.s.variety(*(mod + 1));
  MembershipResult m = membership_verdict(c.field(), f, v.ideal);
  r.doc["input"] = c.str(f);
  r.doc["ideal"] = c.s.variety_of(*(mod + 1));
  json els = json::array();
  for (const auto& e : v.ideal.elements())
    els.push_back(c.str(e));
  r.doc["elements"] = els;
  r.doc["prime"] = v.ideal.prime();
  r.doc["membership"] = membership_name(m.verdict);
  r.doc["remainder"] = c.str(m.certificate.remainder);
  r.doc["certificate"] = c.certificate(m.certificate);
  r.verdict = membership_to_verdict(m.verdict);
}

void cmd_sharp(Ctx& c, const std::vector<std::string>& w, Report& r)
{
  expect_args(w, 2, "sharp <dvariety> <point>");
  DVariety dv = c.s.dvariety(w[1]);
  check_section_shape(c.field(), dv);
  const auto& a = c.s.point(w[2]);
  if (a.size() != dv.V.coords.size())
    throw Error(ErrorCode::DimensionMismatch, "point '" + w[2] + "' does not fit '" + w[1] + "'");
  SharpResult s = sharp_member(c.field(), dv, a);
  r.doc["dvariety"] = w[1];
  r.doc["point"] = c.tuple(a);
  r.doc["sharp"] = s.sharp;
  r.doc["differences"] = c.section(s.differences);
  r.verdict = s.sharp ? Verdict::Pass : Verdict::Fail;
}

void cmd_subdvariety(Ctx& c, const std::vector<std::string>& w, Report& r)
{
  expect_args(w, 2, "subdvariety <W> <V>");
  DVariety sub = c.s.dvariety(w[1]);
  DVariety sup = c.s.dvariety(w[2]);
  check_section_shape(c.field(), sub);
  check_section_shape(c.field(), sup);
  if (sub.V.coords != sup.V.coords)
    throw Error(ErrorCode::DimensionMismatch, "'" + w[1] + "' and '" + w[2] + "' use different coordinates");
  CheckReport rep = subdvariety_report(c.field(), sub, sup);
  r.doc["sub"] = w[1];
  r.doc["ambient"] = w[2];
  r.doc["checks"] = c.checks(rep);
  r.verdict = rep.verdict;
}

}  // namespace

Report run_command(Session& session, const std::vector<std::string>& words, const RunOptions& opts)
{
  if (words.empty())
    throw Error(ErrorCode::Semantic, "no command given");
  Report r;
  std::string echo;
  for (const auto& w : words)
    echo += (echo.empty() ? "" : " ") + w;
  if (opts.at)
    echo += " --at " + *opts.at;
  if (opts.symbolic)
    echo += " --symbolic";
  if (opts.witness)
    echo += " --witness " + *opts.witness;
  r.doc["command"] = echo;
  Ctx c{session, opts};
  const std::string& cmd = words[0];
  using Handler = void (*)(Ctx&, const std::vector<std::string>&, Report&);
  static const std::map<std::string, Handler> handlers = {
      {"field-check", cmd_field_check}, {"prolong", cmd_prolong},   {"dvariety-check", cmd_dvariety_check},
      {"dgroup-check", cmd_dgroup_check}, {"logderiv", cmd_logderiv}, {"integrable", cmd_integrable},
      {"ppv", cmd_ppv},                   {"kolchin", cmd_kolchin},   {"reduce", cmd_reduce},
      {"sharp", cmd_sharp},               {"subdvariety", cmd_subdvariety},
  };
  if (cmd == "print") {
    expect_args(words, 0, "print");
    r.raw = session.print();
    return r;
  }
  auto it = handlers.find(cmd);
  if (it == handlers.end())
    throw Error(ErrorCode::Semantic, "unknown command '" + cmd + "'");
  if (cmd != "field-check")
    require_commuting(session);
  it->second(c, words, r);
  r.doc["verdict"] = verdict_name(r.verdict);
  return r;
}

}  // namespace reldiff
