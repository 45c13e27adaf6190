#pragma once

// Session files: a line-oriented declarative format.
//
//   # comment
//   field
//     derivation d base
//     derivation D lifted
//     generators alpha alpha1
//     d[d](alpha) = alpha1
//   end
//   indeterminates x y
//   variety Gm
//     coords x y
//     fibers D u v
//     eq x*y - 1
//     eq x*d[d]^2(x) - d[d](x)^2
//     prime
//   end
//   dvariety Gm_alpha
//     variety Gm
//     section D = (x, alpha*x)
//   end
//   group Ga
//     variety A
//     other y
//     mul = (x + y)
//     inv = (-x)
//     identity = (0)
//     section D = (0)
//   end
//   point a = (1, 0)
//   taupoint alpha = (1, 0; 0, 0; 2*t, 2)
//   matrices single
//     A dw = [[t/w]]
//   end
//   leaders ex3
//     m 2
//     x (0,1)
//     y (0,1)
//   end
//   poly f = x*d[d]^3(x) - d[d](x)*d[d]^2(x)
//
// Missing table entries are zero. Names are unique across objects.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reldiff/dgroup.hpp"
#include "reldiff/kolchin.hpp"

namespace reldiff {

struct VarietyDecl {
  std::vector<std::string> coords;
  std::vector<RatFun> equations;
  bool prime = false;
  /// Optional fiber names per lifted derivation, used by prolong.
  std::vector<std::vector<std::string>> fibers;
};

struct DVarietyDecl {
  std::string variety;
  std::vector<std::vector<RatFun>> section;  // per lifted derivation
};

struct GroupDecl {
  std::string variety;
  std::vector<std::string> other;
  std::vector<RatFun> mul;
  std::vector<RatFun> inv;
  std::vector<RatFun> identity;
  std::vector<std::vector<RatFun>> section;
};

struct MatricesDecl {
  std::vector<Matrix> matrices;  // per lifted derivation
};

struct LeadersDecl {
  std::vector<std::string> labels;
  LeaderSet set;
};

enum class ObjectKind { Variety, DVariety, Group, Point, TauPoint, Matrices, Leaders, Poly };
const char* object_kind_name(ObjectKind k);

class Session {
public:
  /// Throws ParseError with line and column, or Error for semantic problems.
  static Session parse(std::string_view text);
  static Session load(const std::string& path);

  /// Canonical text; parse(print()) prints identically.
  std::string print() const;

  const FieldDescriptor& field() const { return *field_; }
  std::shared_ptr<const FieldDescriptor> field_ptr() const { return field_; }
  /// Set when the derivation table does not commute.
  const std::optional<BracketResidual>& noncommuting() const { return noncommuting_; }
  Ring& ring() { return *ring_; }
  const Ring& ring() const { return *ring_; }

  std::optional<ObjectKind> kind(const std::string& name) const;
  /// Throws Error(UndefinedSymbol) / Error(Semantic) naming the object.
  ObjectKind require(const std::string& name, std::initializer_list<ObjectKind> allowed) const;

  void assert_prime(const std::string& variety);

  Variety variety(const std::string& name) const;
  /// Accepts a dvariety or a group name.
  DVariety dvariety(const std::string& name) const;
  DGroup group(const std::string& name) const;
  const std::vector<RatFun>& point(const std::string& name) const;
  const TauPoint& taupoint(const std::string& name) const;
  const MatricesDecl& matrices(const std::string& name) const;
  const LeadersDecl& leaders(const std::string& name) const;
  const RatFun& poly(const std::string& name) const;

  /// Variety underlying a variety, dvariety or group.
  std::string variety_of(const std::string& name) const;
  const VarietyDecl& variety_decl(const std::string& name) const { return varieties_.at(name); }

  std::vector<std::uint32_t> indices(const std::vector<std::string>& names) const;
  RatFun parse_expression(std::string_view text) const { return ring_->parse(text); }

private:
  std::shared_ptr<FieldDescriptor> field_;
  std::unique_ptr<Ring> ring_;
  std::optional<BracketResidual> noncommuting_;
  std::vector<std::string> declared_;  // user indeterminates, declaration order
  std::vector<std::pair<ObjectKind, std::string>> order_;
  std::map<std::string, VarietyDecl> varieties_;
  std::map<std::string, DVarietyDecl> dvarieties_;
  std::map<std::string, GroupDecl> groups_;
  std::map<std::string, std::vector<RatFun>> points_;
  std::map<std::string, TauPoint> taupoints_;
  std::map<std::string, MatricesDecl> matrices_;
  std::map<std::string, LeadersDecl> leaders_;
  std::map<std::string, RatFun> polys_;

  friend class SessionParser;
};

/// Splits "(a, b; c, d)" into rows separated by ';' and entries separated by
/// ','. Nested brackets are respected. Returns entry texts with their column
/// offsets relative to `text`.
struct TupleEntry {
  std::string text;
  int offset;
};
std::vector<std::vector<TupleEntry>> split_tuple(std::string_view text, char open, char close);

}  // namespace reldiff
