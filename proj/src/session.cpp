#include "reldiff/session.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "reldiff/error.hpp"

namespace reldiff {

const char* object_kind_name(ObjectKind k)
{
  switch (k) {
  case ObjectKind::Variety: return "variety";
  case ObjectKind::DVariety: return "dvariety";
  case ObjectKind::Group: return "group";
  case ObjectKind::Point: return "point";
  case ObjectKind::TauPoint: return "taupoint";
  case ObjectKind::Matrices: return "matrices";
  case ObjectKind::Leaders: return "leaders";
  case ObjectKind::Poly: return "poly";
  }
  return "?";
}

std::vector<std::vector<TupleEntry>> split_tuple(std::string_view text, char open, char close)
{
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1])))
    --e;
  if (e - b < 2 || text[b] != open || text[e - 1] != close)
    throw ParseError(std::string("expected a tuple in '") + open + close + "'", 1, static_cast<int>(b) + 1);
  std::vector<std::vector<TupleEntry>> rows(1);
  int depth = 0;
  std::size_t start = b + 1;
  auto flush = [&](std::size_t end) {
    std::string_view s = text.substr(start, end - start);
    std::size_t lead = 0;
    while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead])))
      ++lead;
    std::size_t tail = s.size();
    while (tail > lead && std::isspace(static_cast<unsigned char>(s[tail - 1])))
      --tail;
    if (tail == lead)
      return false;
    rows.back().push_back({std::string(s.substr(lead, tail - lead)), static_cast<int>(start + lead)});
    return true;
  };
  for (std::size_t i = b + 1; i < e - 1; ++i) {
    char c = text[i];
    if (c == '(' || c == '[')
      ++depth;
    else if (c == ')' || c == ']') {
      if (--depth < 0)
        throw ParseError("unbalanced brackets", 1, static_cast<int>(i) + 1);
    } else if (depth == 0 && (c == ',' || c == ';')) {
      if (!flush(i))
        throw ParseError("empty tuple entry", 1, static_cast<int>(i) + 1);
      start = i + 1;
      if (c == ';')
        rows.emplace_back();
    }
  }
  if (depth != 0)
    throw ParseError("unbalanced brackets", 1, static_cast<int>(e));
  bool any = flush(e - 1);
  if (!any && (rows.size() > 1 || !rows.back().empty()))
    throw ParseError("empty tuple entry", 1, static_cast<int>(e));
  return rows;
}

namespace {

struct Word {
  std::string text;
  int col;  // 1-based
};

struct Line {
  int number;
  std::string text;

  std::vector<Word> words() const
  {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
      std::size_t s = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
      if (i > s)
        out.push_back({text.substr(s, i - s), static_cast<int>(s) + 1});
    }
    return out;
  }
};

std::vector<Line> split_lines(std::string_view text)
{
  std::vector<Line> out;
  int n = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos)
      nl = text.size();
    std::string s(text.substr(pos, nl - pos));
    ++n;
    if (auto h = s.find('#'); h != std::string::npos)
      s.erase(h);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.pop_back();
    if (!s.empty() && s.find_first_not_of(" \t\r") != std::string::npos)
      out.push_back({n, s});
    pos = nl + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

class SessionParser {
public:
  SessionParser(std::string_view text) : lines_(split_lines(text)) {}

  Session run()
  {
    while (pos_ < lines_.size()) {
      const Line& l = lines_[pos_];
      auto w = l.words();
      const std::string& kw = w[0].text;
      if (kw == "field") {
        if (s_.field_)
          fail(l, w[0], "duplicate field block");
        expect_words(l, w, 1);
        ++pos_;
        field_block();
        continue;
      }
      if (!s_.field_)
        make_field(l, {}, {}, {});
      if (kw == "indeterminates") {
        for (std::size_t i = 1; i < w.size(); ++i)
          declare(l, w[i]);
        ++pos_;
      } else if (kw == "variety") {
        variety_block(l, w);
      } else if (kw == "dvariety") {
        dvariety_block(l, w);
      } else if (kw == "group") {
        group_block(l, w);
      } else if (kw == "matrices") {
        matrices_block(l, w);
      } else if (kw == "leaders") {
        leaders_block(l, w);
      } else if (kw == "point" || kw == "taupoint" || kw == "poly") {
        single_line(l, w);
        ++pos_;
      } else {
        fail(l, w[0], "unknown declaration '" + kw + "'");
      }
    }
    if (!s_.field_)
      make_field(Line{0, ""}, {}, {}, {});
    return std::move(s_);
  }

private:
  [[noreturn]] static void fail(const Line& l, const Word& w, const std::string& msg,
                                ErrorCode code = ErrorCode::Parse)
  {
    throw ParseError(msg, l.number, w.col, code);
  }

  static void expect_words(const Line& l, const std::vector<Word>& w, std::size_t n)
  {
    if (w.size() != n)
      fail(l, w.size() > n ? w[n] : w.back(), "wrong number of words");
  }

  void declare(const Line& l, const Word& w)
  {
    if (s_.ring_->find_indeterminate(w.text))
      return;
    try {
      s_.ring_->ensure_indeterminate(w.text);
    } catch (const Error& e) {
      fail(l, w, e.what(), ErrorCode::Semantic);
    }
    s_.declared_.push_back(w.text);
  }

  void new_object(const Line& l, const std::vector<Word>& w, ObjectKind k)
  {
    if (w.size() < 2)
      fail(l, w[0], "missing object name");
    const std::string& name = w[1].text;
    if (!is_identifier(name))
      fail(l, w[1], "invalid object name '" + name + "'");
    if (s_.kind(name))
      fail(l, w[1], "duplicate object name '" + name + "'", ErrorCode::Semantic);
    s_.order_.emplace_back(k, name);
  }

  // Text after the first '=' on the line, with its column.
  static std::pair<std::string_view, int> rhs(const Line& l, const Word& after)
  {
    auto eq = l.text.find('=', after.col - 1);
    if (eq == std::string::npos)
      fail(l, after, "expected '='");
    return {std::string_view(l.text).substr(eq + 1), static_cast<int>(eq) + 2};
  }

  RatFun expr(const Line& l, std::string_view text, int col)
  {
    return s_.ring_->parse(text, ParseOptions{l.number, col});
  }

  std::vector<std::vector<RatFun>> tuple(const Line& l, std::string_view text, int col, char open = '(',
                                         char close = ')')
  {
    std::vector<std::vector<TupleEntry>> rows;
    try {
      rows = split_tuple(text, open, close);
    } catch (const ParseError& e) {
      std::string what = e.what();
      what = what.substr(what.find(": ") + 2);
      throw ParseError(what, l.number, col + e.column() - 1);
    }
    std::vector<std::vector<RatFun>> out;
    for (const auto& row : rows) {
      std::vector<RatFun> r;
      for (const auto& e : row)
        r.push_back(expr(l, e.text, col + e.offset));
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<RatFun> flat_tuple(const Line& l, std::string_view text, int col)
  {
    auto rows = tuple(l, text, col);
    if (rows.size() != 1)
      throw ParseError("expected a single tuple without ';'", l.number, col);
    return rows[0];
  }

  void make_field(const Line& l, std::vector<DerivationName> ds, std::vector<std::string> gs,
                  FieldDescriptor::Table table)
  {
    try {
      s_.field_ = std::make_shared<FieldDescriptor>(
          FieldDescriptor::declare_unchecked(std::move(ds), std::move(gs), std::move(table)));
    } catch (const Error& e) {
      throw ParseError(e.what(), l.number, 1, e.code());
    }
    s_.noncommuting_ = find_noncommuting(*s_.field_);
    s_.ring_ = std::make_unique<Ring>(s_.field_);
  }

  void field_block()
  {
    std::vector<DerivationName> ds;
    std::vector<std::string> gs;
    std::vector<Line> entries;
    const Line* last = nullptr;
    for (; pos_ < lines_.size(); ++pos_) {
      const Line& l = lines_[pos_];
      last = &l;
      auto w = l.words();
      if (w[0].text == "end") {
        expect_words(l, w, 1);
        ++pos_;
        build_field(l, std::move(ds), std::move(gs), entries);
        return;
      }
      if (w[0].text == "derivation") {
        expect_words(l, w, 3);
        DerivationClass c;
        if (w[2].text == "base")
          c = DerivationClass::Base;
        else if (w[2].text == "lifted")
          c = DerivationClass::Lifted;
        else
          fail(l, w[2], "derivation class must be 'base' or 'lifted'");
        ds.push_back({w[1].text, c});
      } else if (w[0].text == "generators") {
        for (std::size_t i = 1; i < w.size(); ++i)
          gs.push_back(w[i].text);
      } else if (w[0].text.rfind("d[", 0) == 0) {
        entries.push_back(l);
      } else {
        fail(l, w[0], "unexpected '" + w[0].text + "' in field block");
      }
    }
    throw ParseError("field block is not closed with 'end'", last ? last->number : 0, 1);
  }

  void build_field(const Line& end_line, std::vector<DerivationName> ds, std::vector<std::string> gs,
                   const std::vector<Line>& entries)
  {
    std::vector<std::string> none;
    NameTable names{ds, gs, none};
    Deriver no_derivatives = [](std::size_t, const RatFun&) -> RatFun {
      throw Error(ErrorCode::Semantic, "derivatives are not allowed in table entries");
    };
    FieldDescriptor::Table table(ds.size(), std::vector<RatFun>(gs.size()));
    std::vector<std::vector<bool>> seen(ds.size(), std::vector<bool>(gs.size(), false));
    for (const auto& l : entries) {
      // d[<derivation>](<generator>) = <expr>
      const std::string& t = l.text;
      auto p0 = t.find("d[");
      auto p1 = t.find(']', p0);
      auto p2 = t.find('(', p1 == std::string::npos ? p0 : p1);
      auto p3 = t.find(')', p2 == std::string::npos ? p0 : p2);
      auto eq = t.find('=', p3 == std::string::npos ? p0 : p3);
      if (p1 == std::string::npos || p2 != p1 + 1 || p3 == std::string::npos || eq == std::string::npos)
        throw ParseError("expected 'd[derivation](generator) = expression'", l.number, static_cast<int>(p0) + 1);
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t"));
        s.erase(s.find_last_not_of(" \t") + 1);
        return s;
      };
      std::string dn = trim(t.substr(p0 + 2, p1 - p0 - 2));
      std::string gn = trim(t.substr(p2 + 1, p3 - p2 - 1));
      auto di = std::find_if(ds.begin(), ds.end(), [&](const DerivationName& d) { return d.name == dn; });
      auto gi = std::find(gs.begin(), gs.end(), gn);
      if (di == ds.end())
        throw ParseError("undefined derivation '" + dn + "'", l.number, static_cast<int>(p0) + 3,
                         ErrorCode::UndefinedSymbol);
      if (gi == gs.end())
        throw ParseError("undefined generator '" + gn + "'", l.number, static_cast<int>(p2) + 2,
                         ErrorCode::UndefinedSymbol);
      std::size_t d = di - ds.begin(), g = gi - gs.begin();
      if (seen[d][g])
        throw ParseError("duplicate table entry", l.number, static_cast<int>(p0) + 1, ErrorCode::Semantic);
      seen[d][g] = true;
      try {
        table[d][g] = parse_expression(std::string_view(t).substr(eq + 1), names, no_derivatives,
                                       ParseOptions{l.number, static_cast<int>(eq) + 2});
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), l.number, static_cast<int>(eq) + 2, e.code());
      }
    }
    make_field(end_line, std::move(ds), std::move(gs), std::move(table));
  }

  // Iterates the body lines of a block, calling f(line, words) until 'end'.
  template <class F>
  void block(const Line& head, F f)
  {
    ++pos_;
    for (; pos_ < lines_.size(); ++pos_) {
      const Line& l = lines_[pos_];
      auto w = l.words();
      if (w[0].text == "end") {
        expect_words(l, w, 1);
        ++pos_;
        return;
      }
      try {
        f(l, w);
      } catch (const ParseError& e) {
        auto hw = head.words();
        if (e.code() == ErrorCode::Parse || hw.size() < 2)
          throw;
        const std::string owner = hw[0].text + " '" + hw[1].text + "'";
        if (e.detail().rfind(owner, 0) == 0 || e.detail().find("'" + hw[1].text + "'") != std::string::npos)
          throw;
        throw ParseError(owner + ": " + e.detail(), e.line(), e.column(), e.code());
      }
    }
    throw ParseError("block is not closed with 'end'", head.number, 1);
  }

  std::vector<std::vector<RatFun>> section_line(const Line& l, const std::vector<Word>& w,
                                                std::vector<std::vector<RatFun>>& section, std::size_t n)
  {
    if (w.size() < 3)
      fail(l, w[0], "expected 'section <derivation> = (...)'");
    auto d = s_.field_->find_derivation(w[1].text);
    if (!d)
      fail(l, w[1], "undefined derivation '" + w[1].text + "'", ErrorCode::UndefinedSymbol);
    if (s_.field_->derivation(*d).cls != DerivationClass::Lifted)
      fail(l, w[1], "section entries belong to lifted derivations", ErrorCode::Semantic);
    auto lifted = s_.field_->lifted();
    std::size_t i = std::find(lifted.begin(), lifted.end(), *d) - lifted.begin();
    if (section.empty())
      section.resize(lifted.size());
    if (!section[i].empty())
      fail(l, w[1], "duplicate section entry", ErrorCode::Semantic);
    auto [text, col] = rhs(l, w[1]);
    auto t = flat_tuple(l, text, col);
    if (t.size() != n)
      throw ParseError("section tuple has length " + std::to_string(t.size()) + ", expected " +
                           std::to_string(n),
                       l.number, col, ErrorCode::DimensionMismatch);
    for (const auto& c : t)
      if (!uses_only(c, s_.field_->base_mask()))
        throw ParseError("section entries may only use base derivations", l.number, col, ErrorCode::Semantic);
    section[i] = std::move(t);
    return section;
  }

  void check_section_complete(const Line& head, const std::string& name, std::vector<std::vector<RatFun>>& section,
                              std::size_t n)
  {
    auto lifted = s_.field_->lifted();
    if (section.empty())
      section.resize(lifted.size());
    for (std::size_t i = 0; i < lifted.size(); ++i)
      if (section[i].empty() && n > 0)
        throw ParseError("'" + name + "' has no section for derivation " +
                             s_.field_->derivation(lifted[i]).name,
                         head.number, 1, ErrorCode::Semantic);
  }

  const VarietyDecl& variety_ref(const Line& l, const Word& w)
  {
    auto it = s_.varieties_.find(w.text);
    if (it == s_.varieties_.end())
      fail(l, w, "undefined variety '" + w.text + "'", ErrorCode::UndefinedSymbol);
    return it->second;
  }

  void variety_block(const Line& head, const std::vector<Word>& hw)
  {
    new_object(head, hw, ObjectKind::Variety);
    expect_words(head, hw, 2);
    std::string name = hw[1].text;
    VarietyDecl v;
    bool have_coords = false;
    block(head, [&](const Line& l, const std::vector<Word>& w) {
      if (w[0].text == "coords") {
        if (have_coords)
          fail(l, w[0], "duplicate coords");
        have_coords = true;
        for (std::size_t i = 1; i < w.size(); ++i) {
          declare(l, w[i]);
          if (std::find(v.coords.begin(), v.coords.end(), w[i].text) != v.coords.end())
            fail(l, w[i], "repeated coordinate", ErrorCode::Semantic);
          v.coords.push_back(w[i].text);
        }
      } else if (w[0].text == "fibers") {
        if (!have_coords)
          fail(l, w[0], "coords must precede fibers", ErrorCode::Semantic);
        if (w.size() < 2)
          fail(l, w[0], "expected 'fibers <derivation> <names>'");
        auto d = s_.field_->find_derivation(w[1].text);
        if (!d || s_.field_->derivation(*d).cls != DerivationClass::Lifted)
          fail(l, w[1], "'" + w[1].text + "' is not a lifted derivation", ErrorCode::UndefinedSymbol);
        auto lifted = s_.field_->lifted();
        std::size_t i = std::find(lifted.begin(), lifted.end(), *d) - lifted.begin();
        if (v.fibers.empty())
          v.fibers.resize(lifted.size());
        if (!v.fibers[i].empty())
          fail(l, w[1], "duplicate fibers", ErrorCode::Semantic);
        if (w.size() - 2 != v.coords.size())
          fail(l, w[0], "need one fiber name per coordinate", ErrorCode::DimensionMismatch);
        for (std::size_t k = 2; k < w.size(); ++k) {
          if (std::find(v.coords.begin(), v.coords.end(), w[k].text) != v.coords.end())
            fail(l, w[k], "fiber names must differ from coordinates", ErrorCode::Semantic);
          declare(l, w[k]);
          v.fibers[i].push_back(w[k].text);
        }
      } else if (w[0].text == "eq") {
        if (!have_coords)
          fail(l, w[0], "coords must precede equations", ErrorCode::Semantic);
        int col = w[0].col + 2;
        RatFun e = expr(l, std::string_view(l.text).substr(col - 1), col);
        auto idx = s_.indices(v.coords);
        for (const auto& var : e.variables())
          if (var.is_indeterminate() && std::find(idx.begin(), idx.end(), var.index) == idx.end())
            fail(l, w[0], "equation mentions '" + s_.ring_->indeterminate_name(var.index) +
                              "', which is not a coordinate of '" + name + "'",
                 ErrorCode::Semantic);
        if (!uses_only(e, s_.field_->base_mask()))
          fail(l, w[0], "variety equations may only use base derivations", ErrorCode::Semantic);
        v.equations.push_back(std::move(e));
      } else if (w[0].text == "prime") {
        expect_words(l, w, 1);
        v.prime = true;
      } else {
        fail(l, w[0], "unexpected '" + w[0].text + "' in variety block");
      }
    });
    try {
      AutoreducedSet(v.equations, s_.field_->base_mask(), v.prime);
    } catch (const Error& e) {
      throw ParseError("variety '" + name + "': " + e.what(), head.number, 1, e.code());
    }
    for (std::size_t i = 0; i < v.fibers.size(); ++i)
      if (v.fibers[i].empty())
        throw ParseError("variety '" + name + "' has fibers for some lifted derivations only", head.number, 1,
                         ErrorCode::Semantic);
    s_.varieties_.emplace(name, std::move(v));
  }

  void dvariety_block(const Line& head, const std::vector<Word>& hw)
  {
    new_object(head, hw, ObjectKind::DVariety);
    expect_words(head, hw, 2);
    std::string name = hw[1].text;
    DVarietyDecl d;
    std::size_t n = 0;
    block(head, [&](const Line& l, const std::vector<Word>& w) {
      if (w[0].text == "variety") {
        expect_words(l, w, 2);
        n = variety_ref(l, w[1]).coords.size();
        d.variety = w[1].text;
      } else if (w[0].text == "section") {
        if (d.variety.empty())
          fail(l, w[0], "variety must precede the section", ErrorCode::Semantic);
        section_line(l, w, d.section, n);
      } else {
        fail(l, w[0], "unexpected '" + w[0].text + "' in dvariety block");
      }
    });
    if (d.variety.empty())
      throw ParseError("dvariety '" + name + "' names no variety", head.number, 1, ErrorCode::Semantic);
    check_section_complete(head, name, d.section, n);
    s_.dvarieties_.emplace(name, std::move(d));
  }

  void group_block(const Line& head, const std::vector<Word>& hw)
  {
    new_object(head, hw, ObjectKind::Group);
    expect_words(head, hw, 2);
    std::string name = hw[1].text;
    GroupDecl g;
    std::size_t n = 0;
    bool have_mul = false, have_inv = false, have_id = false;
    block(head, [&](const Line& l, const std::vector<Word>& w) {
      const std::string& k = w[0].text;
      if (k == "variety") {
        expect_words(l, w, 2);
        n = variety_ref(l, w[1]).coords.size();
        g.variety = w[1].text;
        return;
      }
      if (g.variety.empty())
        fail(l, w[0], "variety must come first in a group block", ErrorCode::Semantic);
      if (k == "other") {
        for (std::size_t i = 1; i < w.size(); ++i) {
          const auto& coords = s_.varieties_.at(g.variety).coords;
          if (std::find(coords.begin(), coords.end(), w[i].text) != coords.end())
            fail(l, w[i], "other coordinates must differ from the group's coordinates", ErrorCode::Semantic);
          declare(l, w[i]);
          g.other.push_back(w[i].text);
        }
        if (g.other.size() != n)
          fail(l, w[0], "need " + std::to_string(n) + " other coordinates", ErrorCode::DimensionMismatch);
      } else if (k == "mul" || k == "inv" || k == "identity") {
        auto [text, col] = rhs(l, w[0]);
        auto t = flat_tuple(l, text, col);
        if (t.size() != n)
          throw ParseError(k + " has length " + std::to_string(t.size()) + ", expected " + std::to_string(n),
                           l.number, col, ErrorCode::DimensionMismatch);
        if (k == "mul") {
          if (g.other.empty() && n > 0)
            fail(l, w[0], "'other' must precede 'mul'", ErrorCode::Semantic);
          g.mul = std::move(t), have_mul = true;
        } else if (k == "inv") {
          g.inv = std::move(t), have_inv = true;
        } else {
          for (const auto& c : t)
            if (c.has_indeterminates())
              throw ParseError("identity must be a tuple of field elements", l.number, col, ErrorCode::Semantic);
          g.identity = std::move(t), have_id = true;
        }
      } else if (k == "section") {
        section_line(l, w, g.section, n);
      } else {
        fail(l, w[0], "unexpected '" + k + "' in group block");
      }
    });
    if (g.variety.empty() || !have_mul || !have_inv || !have_id)
      throw ParseError("group '" + name + "' needs variety, mul, inv and identity", head.number, 1,
                       ErrorCode::Semantic);
    check_section_complete(head, name, g.section, n);
    s_.groups_.emplace(name, std::move(g));
  }

  void matrices_block(const Line& head, const std::vector<Word>& hw)
  {
    new_object(head, hw, ObjectKind::Matrices);
    expect_words(head, hw, 2);
    std::string name = hw[1].text;
    auto lifted = s_.field_->lifted();
    std::vector<std::optional<Matrix>> ms(lifted.size());
    block(head, [&](const Line& l, const std::vector<Word>& w) {
      if (w[0].text != "A" || w.size() < 3)
        fail(l, w[0], "expected 'A <derivation> = [[...], ...]'");
      auto d = s_.field_->find_derivation(w[1].text);
      if (!d || s_.field_->derivation(*d).cls != DerivationClass::Lifted)
        fail(l, w[1], "'" + w[1].text + "' is not a lifted derivation", ErrorCode::UndefinedSymbol);
      std::size_t i = std::find(lifted.begin(), lifted.end(), *d) - lifted.begin();
      if (ms[i])
        fail(l, w[1], "duplicate matrix", ErrorCode::Semantic);
      auto [text, col] = rhs(l, w[1]);
      std::vector<std::vector<TupleEntry>> outer;
      try {
        outer = split_tuple(text, '[', ']');
      } catch (const ParseError& e) {
        throw ParseError("malformed matrix", l.number, col + e.column() - 1);
      }
      if (outer.size() != 1)
        throw ParseError("rows are separated by ','", l.number, col);
      Matrix m;
      for (const auto& row : outer[0]) {
        auto r = tuple(l, row.text, col + row.offset, '[', ']');
        if (r.size() != 1)
          throw ParseError("entries are separated by ','", l.number, col + row.offset);
        for (const auto& e : r[0])
          if (e.has_indeterminates())
            throw ParseError("matrix entries must be field elements", l.number, col + row.offset,
                             ErrorCode::Semantic);
        m.push_back(std::move(r[0]));
      }
      for (const auto& r : m)
        if (r.size() != m.size())
          throw ParseError("matrix must be square", l.number, col, ErrorCode::DimensionMismatch);
      ms[i] = std::move(m);
    });
    MatricesDecl decl;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (!ms[i])
        throw ParseError("'" + name + "' has no matrix for derivation " + s_.field_->derivation(lifted[i]).name,
                         head.number, 1, ErrorCode::Semantic);
      if (!decl.matrices.empty() && ms[i]->size() != decl.matrices[0].size())
        throw ParseError("matrices of '" + name + "' differ in size", head.number, 1, ErrorCode::DimensionMismatch);
      decl.matrices.push_back(std::move(*ms[i]));
    }
    s_.matrices_.emplace(name, std::move(decl));
  }

  void leaders_block(const Line& head, const std::vector<Word>& hw)
  {
    new_object(head, hw, ObjectKind::Leaders);
    expect_words(head, hw, 2);
    std::string name = hw[1].text;
    LeadersDecl d;
    bool have_m = false;
    block(head, [&](const Line& l, const std::vector<Word>& w) {
      if (w[0].text == "m") {
        expect_words(l, w, 2);
        if (have_m)
          fail(l, w[0], "duplicate 'm'");
        try {
          std::size_t used = 0;
          long m = std::stol(w[1].text, &used);
          if (used != w[1].text.size() || m < 0 || m > static_cast<long>(kMaxDerivations))
            throw std::invalid_argument("m");
          d.set.m = static_cast<std::size_t>(m);
        } catch (const std::logic_error&) {
          fail(l, w[1], "m must be an integer between 0 and " + std::to_string(kMaxDerivations));
        }
        have_m = true;
        return;
      }
      if (!have_m)
        fail(l, w[0], "'m' must come first in a leaders block", ErrorCode::Semantic);
      if (!is_identifier(w[0].text))
        fail(l, w[0], "expected an indeterminate label");
      d.labels.push_back(w[0].text);
      std::vector<MultiIndex> ls;
      std::string rest = l.text.substr(w[0].col - 1 + w[0].text.size());
      std::size_t p = 0;
      const int base = w[0].col + static_cast<int>(w[0].text.size());
      while (true) {
        p = rest.find_first_not_of(" \t", p);
        if (p == std::string::npos)
          break;
        if (rest[p] != '(')
          throw ParseError("expected '('", l.number, base + static_cast<int>(p));
        auto q = rest.find(')', p);
        if (q == std::string::npos)
          throw ParseError("expected ')'", l.number, base + static_cast<int>(p));
        std::string inner = rest.substr(p + 1, q - p - 1);
        MultiIndex e{};
        std::size_t k = 0;
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ',')) {
          item.erase(0, item.find_first_not_of(" \t"));
          item.erase(item.find_last_not_of(" \t") + 1);
          if (k >= d.set.m || item.empty() || item.find_first_not_of("0123456789") != std::string::npos ||
              item.size() > 4)
            throw ParseError("multi-index must have " + std::to_string(d.set.m) + " small non-negative entries",
                             l.number, base + static_cast<int>(p));
          e[k++] = static_cast<std::uint16_t>(std::stoi(item));
        }
        if (k != d.set.m && !(d.set.m == 0 && inner.find_first_not_of(" \t") == std::string::npos))
          throw ParseError("multi-index must have " + std::to_string(d.set.m) + " entries", l.number,
                           base + static_cast<int>(p), ErrorCode::DimensionMismatch);
        ls.push_back(e);
        p = q + 1;
      }
      d.set.leaders.push_back(std::move(ls));
    });
    d.set.normalize();
    s_.leaders_.emplace(name, std::move(d));
  }

  void single_line(const Line& l, const std::vector<Word>& w)
  {
    const std::string& kw = w[0].text;
    ObjectKind k = kw == "point" ? ObjectKind::Point : kw == "taupoint" ? ObjectKind::TauPoint : ObjectKind::Poly;
    new_object(l, w, k);
    const std::string& name = w[1].text;
    auto [text, col] = rhs(l, w[1]);
    if (k == ObjectKind::Poly) {
      s_.polys_.emplace(name, expr(l, text, col));
    } else if (k == ObjectKind::Point) {
      s_.points_.emplace(name, flat_tuple(l, text, col));
    } else {
      auto rows = tuple(l, text, col);
      const auto r = s_.field_->lifted().size();
      if (rows.size() != r + 1)
        throw ParseError("taupoint needs a base and " + std::to_string(r) + " fibers", l.number, col,
                         ErrorCode::DimensionMismatch);
      TauPoint p;
      p.base = rows[0];
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != p.base.size())
          throw ParseError("fiber length differs from base length", l.number, col, ErrorCode::DimensionMismatch);
        p.fibers.push_back(rows[i]);
      }
      s_.taupoints_.emplace(name, std::move(p));
    }
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  Session s_;
};

Session Session::parse(std::string_view text)
{
  return SessionParser(text).run();
}

Session Session::load(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::Semantic, "cannot open session file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

// ----------------------------------------------------------------- printing

std::string Session::print() const
{
  std::ostringstream os;
  const auto& f = *field_;
  auto names = ring_->names();
  auto fmt = [&](const RatFun& r) { return format_ratfun(r, names); };
  auto tup = [&](const std::vector<RatFun>& t) {
    std::vector<std::string> s;
    for (const auto& e : t)
      s.push_back(fmt(e));
    return "(" + join(s, ", ") + ")";
  };
  auto sections = [&](const std::vector<std::vector<RatFun>>& sec) {
    auto lifted = f.lifted();
    for (std::size_t i = 0; i < sec.size() && i < lifted.size(); ++i)
      os << "  section " << f.derivation(lifted[i]).name << " = " << tup(sec[i]) << "\n";
  };

  os << "field\n";
  for (const auto& d : f.derivations())
    os << "  derivation " << d.name << " " << (d.cls == DerivationClass::Base ? "base" : "lifted") << "\n";
  if (f.generator_count())
    os << "  generators " << join(f.generators(), " ") << "\n";
  for (std::size_t d = 0; d < f.derivation_count(); ++d)
    for (std::size_t g = 0; g < f.generator_count(); ++g)
      if (!f.table(d, g).is_zero())
        os << "  d[" << f.derivation(d).name << "](" << f.generator(g) << ") = " << fmt(f.table(d, g)) << "\n";
  os << "end\n";
  if (!declared_.empty())
    os << "\nindeterminates " << join(declared_, " ") << "\n";

  for (const auto& [kind, name] : order_) {
    os << "\n";
    switch (kind) {
    case ObjectKind::Variety: {
      const auto& v = varieties_.at(name);
      os << "variety " << name << "\n  coords " << join(v.coords, " ") << "\n";
      for (std::size_t i = 0; i < v.fibers.size(); ++i)
        if (!v.fibers[i].empty())
          os << "  fibers " << f.derivation(f.lifted()[i]).name << " " << join(v.fibers[i], " ") << "\n";
      for (const auto& e : v.equations)
        os << "  eq " << fmt(e) << "\n";
      if (v.prime)
        os << "  prime\n";
      os << "end\n";
      break;
    }
    case ObjectKind::DVariety: {
      const auto& d = dvarieties_.at(name);
      os << "dvariety " << name << "\n  variety " << d.variety << "\n";
      sections(d.section);
      os << "end\n";
      break;
    }
    case ObjectKind::Group: {
      const auto& g = groups_.at(name);
      os << "group " << name << "\n  variety " << g.variety << "\n";
      if (!g.other.empty())
        os << "  other " << join(g.other, " ") << "\n";
      os << "  mul = " << tup(g.mul) << "\n";
      os << "  inv = " << tup(g.inv) << "\n";
      os << "  identity = " << tup(g.identity) << "\n";
      sections(g.section);
      os << "end\n";
      break;
    }
    case ObjectKind::Point:
      os << "point " << name << " = " << tup(points_.at(name)) << "\n";
      break;
    case ObjectKind::TauPoint: {
      const auto& p = taupoints_.at(name);
      std::string s = tup(p.base);
      s.pop_back();
      for (const auto& fib : p.fibers) {
        std::string t = tup(fib);
        s += "; " + t.substr(1, t.size() - 2);
      }
      os << "taupoint " << name << " = " << s << ")\n";
      break;
    }
    case ObjectKind::Matrices: {
      const auto& m = matrices_.at(name);
      os << "matrices " << name << "\n";
      auto lifted = f.lifted();
      for (std::size_t i = 0; i < m.matrices.size(); ++i) {
        std::vector<std::string> rows;
        for (const auto& r : m.matrices[i]) {
          std::string t = tup(r);
          rows.push_back("[" + t.substr(1, t.size() - 2) + "]");
        }
        os << "  A " << f.derivation(lifted[i]).name << " = [" << join(rows, ", ") << "]\n";
      }
      os << "end\n";
      break;
    }
    case ObjectKind::Leaders: {
      const auto& l = leaders_.at(name);
      os << "leaders " << name << "\n  m " << l.set.m << "\n";
      for (std::size_t i = 0; i < l.labels.size(); ++i) {
        os << "  " << l.labels[i];
        for (const auto& e : l.set.leaders[i]) {
          os << " (";
          for (std::size_t k = 0; k < l.set.m; ++k)
            os << (k ? "," : "") << e[k];
          os << ")";
        }
        os << "\n";
      }
      os << "end\n";
      break;
    }
    case ObjectKind::Poly:
      os << "poly " << name << " = " << fmt(polys_.at(name)) << "\n";
      break;
    }
  }
  return os.str();
}

// ------------------------------------------------------------------ lookup

std::optional<ObjectKind> Session::kind(const std::string& name) const
{
  for (const auto& [k, n] : order_)
    if (n == name)
      return k;
  return std::nullopt;
}

ObjectKind Session::require(const std::string& name, std::initializer_list<ObjectKind> allowed) const
{
  auto k = kind(name);
  if (!k)
    throw Error(ErrorCode::UndefinedSymbol, "no object named '" + name + "'");
  if (std::find(allowed.begin(), allowed.end(), *k) == allowed.end()) {
    std::vector<std::string> want;
    for (auto a : allowed)
      want.push_back(object_kind_name(a));
    throw Error(ErrorCode::Semantic, "'" + name + "' is a " + object_kind_name(*k) + ", expected " + join(want, " or "));
  }
  return *k;
}

void Session::assert_prime(const std::string& name)
{
  require(name, {ObjectKind::Variety, ObjectKind::DVariety, ObjectKind::Group});
  varieties_.at(variety_of(name)).prime = true;
}

std::string Session::variety_of(const std::string& name) const
{
  switch (require(name, {ObjectKind::Variety, ObjectKind::DVariety, ObjectKind::Group})) {
  case ObjectKind::Variety: return name;
  case ObjectKind::DVariety: return dvarieties_.at(name).variety;
  default: return groups_.at(name).variety;
  }
}

std::vector<std::uint32_t> Session::indices(const std::vector<std::string>& names) const
{
  std::vector<std::uint32_t> out;
  for (const auto& n : names)
    out.push_back(ring_->indeterminate(n));
  return out;
}

Variety Session::variety(const std::string& name) const
{
  const auto& v = varieties_.at(variety_of(name));
  return Variety::make(*field_, indices(v.coords), v.equations, v.prime);
}

DVariety Session::dvariety(const std::string& name) const
{
  auto k = require(name, {ObjectKind::DVariety, ObjectKind::Group});
  const auto& sec = k == ObjectKind::DVariety ? dvarieties_.at(name).section : groups_.at(name).section;
  return DVariety{variety(name), sec};
}

DGroup Session::group(const std::string& name) const
{
  require(name, {ObjectKind::Group});
  const auto& g = groups_.at(name);
  DGroup out{dvariety(name), GroupLaw{}};
  out.law.x = out.dv.V.coords;
  out.law.y = indices(g.other);
  out.law.mul = g.mul;
  out.law.inv = g.inv;
  out.law.identity = g.identity;
  return out;
}

const std::vector<RatFun>& Session::point(const std::string& name) const
{
  require(name, {ObjectKind::Point});
  return points_.at(name);
}

const TauPoint& Session::taupoint(const std::string& name) const
{
  require(name, {ObjectKind::TauPoint});
  return taupoints_.at(name);
}

const MatricesDecl& Session::matrices(const std::string& name) const
{
  require(name, {ObjectKind::Matrices});
  return matrices_.at(name);
}

const LeadersDecl& Session::leaders(const std::string& name) const
{
  require(name, {ObjectKind::Leaders});
  return leaders_.at(name);
}

const RatFun& Session::poly(const std::string& name) const
{
  require(name, {ObjectKind::Poly});
  return polys_.at(name);
}

}  // namespace reldiff
