#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ptk/setcore.hpp"

namespace ptk {

/// Lazily-enumerable symbolic family of finite subsets of N. Immutable;
/// shared by value through a const node pointer.
class Family;
using FamilyPtr = std::shared_ptr<const Family>;

enum class FamilyKind {
  KSubsets,     // [N]^k
  Schreier,     // maximal elements of the xi-Schreier family S_xi; order w^xi
  Explicit,     // finite list
  Restrict,     // F|L = {s in F : s subset of L}
  Shift,        // F(L) = {L(s) : s in F}
  Preimage,     // F(L^-1) = {t : L(t) in F}
  Quotient,     // F/L, hanging F by min L over odd positions
  DerivedAt,    // F_(n) = {s : n < s and {n} u s in F}
  Section,      // F_[t] = {s in F : t initial segment of s}
  DirectSum,    // G + F = {s u t : s in G, t in F, s < t}; left block from G
  Closure,      // initial-segment closure of F
  MaxElements,  // initial-segment-maximal members of F
};

enum class Verdict { Yes, No, UnknownAtHorizon };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::UnknownAtHorizon: return "unknown-at-horizon";
  }
  return "?";
}

struct PredicateReport {
  Verdict thin = Verdict::UnknownAtHorizon;
  Verdict hereditary = Verdict::UnknownAtHorizon;  // of the closure, under subsets
  Verdict spreading = Verdict::UnknownAtHorizon;   // of the closure
  Verdict regular_thin = Verdict::UnknownAtHorizon;
  std::optional<FinSet> thin_witness;
};

/// Order of a family: -1 for the empty family, otherwise an ordinal < w^w.
struct OrderValue {
  bool minus_one = false;
  OrdinalCNF ordinal;
  std::string note;  // set when the value relies on an order-preservation fact

  static OrderValue empty_family() { return {true, OrdinalCNF(), ""}; }
  static OrderValue of(OrdinalCNF o, std::string n = "") { return {false, std::move(o), std::move(n)}; }
  std::string to_string() const { return minus_one ? "-1" : ordinal.to_string(); }
};

class Family : public std::enable_shared_from_this<Family> {
 public:
  static FamilyPtr k_subsets(int k);
  static FamilyPtr schreier(OrdinalCNF xi);
  static FamilyPtr explicit_family(std::vector<FinSet> sets);
  static FamilyPtr restrict(FamilyPtr base, Window L);
  static FamilyPtr shift(FamilyPtr base, Window L);
  static FamilyPtr preimage(FamilyPtr base, Window L);
  static FamilyPtr quotient(FamilyPtr base, Window L);
  static FamilyPtr derived_at(FamilyPtr base, int n);
  static FamilyPtr section(FamilyPtr base, FinSet t);
  static FamilyPtr direct_sum(FamilyPtr left, FamilyPtr right);
  static FamilyPtr closure_of(FamilyPtr base);
  static FamilyPtr max_elements(FamilyPtr base);

  FamilyKind kind() const { return kind_; }
  int k_param() const { return k_; }
  const OrdinalCNF& xi_param() const { return xi_; }
  const std::vector<FinSet>& explicit_sets() const { return sets_; }
  const Window& window() const { return window_; }
  const FamilyPtr& base() const { return base_; }
  const FamilyPtr& right_base() const { return right_; }
  int n_param() const { return n_; }
  const FinSet& t_param() const { return t_; }

  /// Membership. Total; throws HorizonRequired when a window is too short
  /// to decide.
  bool contains(const FinSet& s) const;

  /// Membership in the initial-segment closure. Exact for the catalogue
  /// kinds (k-subsets, Schreier, explicit and their symbolic combinations);
  /// for quotient bases it searches extensions within a bounded slack past
  /// max(t) and is documented as bounded-closure semantics.
  bool closure_contains(const FinSet& s) const;

  /// All members contained in [1..N], sorted lexicographically.
  std::vector<FinSet> members(int N) const;

  /// All initial segments (including the empty set) of members within [1..N].
  std::vector<FinSet> closure_members(int N) const;

  OrderValue order() const;  // throws OrderUnknown when not derivable

  PredicateReport predicates(int N) const;

  /// The unique member that is an initial segment of the window prefix.
  FinSet initial_segment_in(const Window& L) const;

  Verdict is_very_large(const Window& L) const;

  /// true when the kind is known to produce a regular thin family.
  bool known_regular_thin() const;
  /// true when the kind is known to produce a regular (hereditary) family.
  bool known_regular() const;

  std::string describe() const;

 private:
  Family() = default;

  bool schreier_hereditary_contains(const FinSet& s, const OrdinalCNF& xi) const;

  FamilyKind kind_ = FamilyKind::KSubsets;
  int k_ = 0;
  OrdinalCNF xi_;
  std::vector<FinSet> sets_;
  Window window_;
  FamilyPtr base_;
  FamilyPtr right_;
  int n_ = 0;
  FinSet t_;
};

/// Membership in the hereditary xi-Schreier family S_xi (the closure of the
/// regular thin family of order w^xi).
bool schreier_family_contains(const FinSet& s, const OrdinalCNF& xi);

enum class TransformOp { Restrict, DerivedAt, Section, Shift, Preimage, Quotient, DirectSum };

struct TransformArgs {
  std::optional<Window> window;
  std::optional<int> n;
  std::optional<FinSet> t;
  FamilyPtr other;
};

FamilyPtr transform(FamilyPtr f, TransformOp op, const TransformArgs& args);

}  // namespace ptk
