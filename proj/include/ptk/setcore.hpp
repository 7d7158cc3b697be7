#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptk/errors.hpp"

namespace ptk {

/// A finite subset of the positive integers, kept as a strictly increasing
/// sequence. The empty set is allowed. Elements are 1-based values and
/// s(k) denotes the k-th smallest element.
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<int> elems);

  static FinSet parse(const std::string& text);  // "1,3,7"; "" is the empty set

  int size() const { return static_cast<int>(elems_.size()); }
  bool empty() const { return elems_.empty(); }
  /// k-th smallest element, 1 <= k <= |s|.
  int at(int k) const;
  int min() const { return at(1); }
  int max() const { return at(size()); }

  const std::vector<int>& elems() const { return elems_; }

  /// s|k, the first k elements. s|0 is the empty set.
  FinSet initial_segment(int k) const;
  /// true iff *this is an initial segment of t (this ⊑ t).
  bool is_initial_segment_of(const FinSet& t) const;
  bool is_proper_initial_segment_of(const FinSet& t) const;
  /// true iff max(*this) < min(t); empty sets compare as < everything.
  bool entirely_below(const FinSet& t) const;
  bool contains(int v) const;
  bool is_subset_of(const FinSet& t) const;
  /// pointwise domination of same-size sets: this(i) <= t(i) for all i.
  bool dominated_by(const FinSet& t) const;

  FinSet unite(const FinSet& t) const;
  FinSet intersect(const FinSet& t) const;
  FinSet append(int v) const;  // v must exceed max()

  std::string to_string() const;

  auto operator<=>(const FinSet&) const = default;

 private:
  std::vector<int> elems_;
};

/// s2/[s1] = s2 ∩ {1,...,max s1}. s1 must be nonempty.
FinSet set_quotient(const FinSet& s1, const FinSet& s2);

/// A finite prefix of an "infinite" increasing set L. Exactly `horizon`
/// elements are known; any request past the horizon is an error, never a
/// guess.
class Window {
 public:
  Window() = default;
  explicit Window(std::vector<int> elems);

  static Window identity(int h);
  static Window evens(int h);
  static Window odds(int h);
  static Window arithmetic(int first, int step, int h);

  int horizon() const { return static_cast<int>(elems_.size()); }
  /// L(n), 1-based. Throws IndexBeyondHorizon past the horizon.
  int at(int n) const;
  const std::vector<int>& elems() const { return elems_; }
  int last() const { return at(horizon()); }

  /// L(s) = {L(s(1)),...,L(s(|s|))}.
  FinSet apply(const FinSet& s) const;
  /// Position of value v in the window, if v is one of the known elements.
  std::optional<int> position_of(int v) const;
  /// true iff v is among the known elements.
  bool contains_value(int v) const { return position_of(v).has_value(); }
  /// All positions decoded, or nullopt if some element is not in the window.
  /// Throws HorizonRequired when an element exceeds the last known element
  /// (it could be an unknown member of L past the horizon).
  std::optional<FinSet> positions_of(const FinSet& s) const;

  /// Sub-window of the even positions {L(2),L(4),...} (resp. odd).
  Window even_positions() const;
  Window odd_positions() const;

  FinSet prefix_set(int k) const;  // {L(1),...,L(k)}

 private:
  std::vector<int> elems_;
};

/// An ordinal below w^w in Cantor normal form: sum of w^exp * coeff with
/// strictly decreasing exponents and positive coefficients.
class OrdinalCNF {
 public:
  OrdinalCNF() = default;  // zero
  explicit OrdinalCNF(std::uint64_t n);
  OrdinalCNF(std::vector<std::pair<std::uint32_t, std::uint64_t>> terms);

  static OrdinalCNF omega();
  static OrdinalCNF omega_pow(std::uint32_t e, std::uint64_t c = 1);
  static OrdinalCNF parse(const std::string& text);  // "w^2*3+w+4", "17"

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  std::uint64_t finite_value() const;  // requires is_finite()
  const std::vector<std::pair<std::uint32_t, std::uint64_t>>& terms() const { return terms_; }

  bool is_successor() const;
  OrdinalCNF predecessor() const;  // requires is_successor
  bool is_limit() const { return !is_zero() && !is_successor(); }
  /// n-th element (n >= 1) of the canonical fundamental sequence of a limit
  /// ordinal: for ... + w^e*c the sequence is ... + w^e*(c-1) + w^(e-1)*n.
  OrdinalCNF fundamental(std::uint64_t n) const;

  std::string to_string() const;

  auto operator<=>(const OrdinalCNF&) const = default;

 private:
  void canonicalize();
  std::vector<std::pair<std::uint32_t, std::uint64_t>> terms_;  // descending exponents
};

/// Non-commutative ordinal addition in CNF.
OrdinalCNF ord_add(const OrdinalCNF& a, const OrdinalCNF& b);

/// apply_set(L, s) = L(s); errors IndexBeyondHorizon when max(s) > horizon.
FinSet apply_set(const Window& L, const FinSet& s);

}  // namespace ptk
