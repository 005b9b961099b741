#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bundlekit/kripke.hpp"

namespace bundlekit {

struct Relation {
  std::vector<std::pair<int, int>> pairs;

  bool contains(int w, int v) const;
  void add(int w, int v);
  std::vector<WorldSet> forward_images(int n_worlds) const;   // Z[w]
  std::vector<WorldSet> backward_images(int n_worlds) const;  // Z^-1[v]
  static Relation full(int n_worlds);
  static Relation identity(int n_worlds);
};

enum class ViolationKind { Inv, Coh, Zig, Zag };

struct Violation {
  ViolationKind kind;
  int w = -1, v = -1;
  WorldSet x = 0, y = 0;
  std::string detail;
};

struct BisimResult {
  bool ok = true;
  std::optional<Violation> violation;
};

bool z_coherent(const KripkeModel& m, const TermPtr& tau, const Relation& z,
                int w, int v, WorldSet x, WorldSet y);

BisimResult is_bisimulation(const KripkeModel& m, const Relation& z,
                            const TermPtr& tau, const Caps& caps = {});
Relation largest_bisimulation(const KripkeModel& m, const TermPtr& tau,
                              const Caps& caps = {});
bool bisimilar(const KripkeModel& m, int w, const KripkeModel& n, int v,
               const TermPtr& tau, const Caps& caps = {});

BisimResult is_convex_bisimulation(const KripkeModel& m, const Relation& z,
                                   const TermPtr& tau, const Caps& caps = {});
Relation largest_convex_bisimulation(const KripkeModel& m, const TermPtr& tau,
                                     const Caps& caps = {});
bool convex_bisimilar(const KripkeModel& m, int w, const KripkeModel& n, int v,
                      const TermPtr& tau, const Caps& caps = {});

// Least family containing the valuations and W, closed under complement,
// binary intersection, and the map sending an extension U to the extension of
// the modal operator applied to a formula with extension U. These are exactly
// the definable extensions over the model, which makes the family an
// equivalence oracle independent of the fixpoint computations.
std::vector<WorldSet> definable_extensions(const KripkeModel& m,
                                           const TermPtr& tau,
                                           const Caps& caps = {});
std::vector<int> equiv_partition(const KripkeModel& m, const TermPtr& tau,
                                 const Caps& caps = {});

}  // namespace bundlekit
