#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bundlekit/term.hpp"
#include "bundlekit/worldset.hpp"

namespace bundlekit {

// Two-family neighborhood model: N+ lists the sets the argument formula must
// cover, N- the sets it must avoid.
struct ConvexNbhModel {
  int n_worlds = 0;
  std::vector<std::vector<WorldSet>> nplus, nminus;
  std::map<std::string, WorldSet> valuation;
  std::vector<std::string> world_names;

  void init(int worlds);
  void normalize();  // sort + dedup both families
  std::string world_name(int w) const;
  int world_index(std::string_view name) const;
  std::string set_name(WorldSet s) const;
};

// Extension of f; metavals resolves metavariable propositions for schema
// instantiation.
WorldSet nbh_extension(const ConvexNbhModel& n, const FormulaPtr& f,
                       std::span<const WorldSet> metavals = {});
bool nsat(const ConvexNbhModel& n, int w, const FormulaPtr& f);

struct CoreResult {
  bool ok = true;
  std::string detail;
};

CoreResult is_core(const ConvexNbhModel& n);

enum class PropertyKind {
  Sym, Pur, Ser, Refl, DBd, PIprime, Coa,
  SBd, PIdoubleprime, PItripleprime, NItripleprime, Emp, Id,
};

struct FrameProperty {
  PropertyKind kind;
  bool minus = false;  // the +/- dual swaps the two families
  int n = 0;           // DBd, Coa, SBd

  static FrameProperty parse(std::string_view name, int n = 0);
  std::string name() const;
};

struct PropertyResult {
  bool ok = true;
  int world = -1;
  std::string detail;
};

PropertyResult property_check(const ConvexNbhModel& n, FrameProperty p);

struct Schema {
  std::string id;
  int metavars = 0;
  FormulaPtr body;
};

// id is one of CONV, EQU, N, D, T, Cn, 5Cn, DIVn, 4p, 4pp, 4ppp, 5ppp, DE, R1
// with a +/- suffix (except CONV/EQU); n parameterizes Cn/5Cn/DIVn.
Schema make_schema(std::string_view id, int n = 0);
std::vector<std::string> schema_ids();

struct SchemaResult {
  bool valid = true;
  int world = -1;
  std::vector<WorldSet> assignment;  // falsifying metavariable values
};

SchemaResult schema_valid_on_frame(const ConvexNbhModel& frame, const Schema& s,
                                   const Caps& caps = {});

struct Submodel {
  ConvexNbhModel model;
  std::vector<int> embedding;  // new index -> old index
};

Submodel generated_submodel(const ConvexNbhModel& n, int w);
bool is_generated_from(const ConvexNbhModel& n, int w);

enum class DerivedCheck { IntrospectivePlus, ColorablePlus, SerialPlus };

struct DerivedResult {
  bool ok = true;
  std::string detail;
  std::map<WorldSet, int> coloring;  // ColorablePlus certificate: set -> color
};

DerivedResult derived_property(const ConvexNbhModel& n, DerivedCheck check,
                               int colors = 0);

}  // namespace bundlekit
