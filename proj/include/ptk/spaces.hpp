#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ptk/families.hpp"
#include "ptk/setcore.hpp"

namespace ptk {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational parse_rational(const std::string& text);  // "p/q" or decimal string
std::string rational_to_string(const Rational& r);
double rational_to_double(const Rational& r);

/// A nonnegative value closed under the operations the norms need: either a
/// rational or the square root of a rational. Comparisons go through the
/// square.
struct ExactVal {
  Rational sq;   // the value squared
  bool is_rat = true;
  Rational rat;  // valid when is_rat

  static ExactVal zero() { return {Rational(0), true, Rational(0)}; }
  static ExactVal of_rational(const Rational& r);
  static ExactVal sqrt_of(const Rational& s);  // collapses to rational on perfect squares

  double to_double() const;
  std::string to_string() const;  // "3/2" or "sqrt(1/3)"

  bool operator==(const ExactVal& o) const { return sq == o.sq; }
  bool operator<(const ExactVal& o) const { return sq < o.sq; }
  bool operator<=(const ExactVal& o) const { return sq <= o.sq; }

  ExactVal scale(const Rational& c) const;  // |c| * value
};

ExactVal max(const ExactVal& a, const ExactVal& b);

enum class SpaceKind { XiPlegmaL1, XiPlegmaL2L1, FrakX, QP, SchreierHash, MixedW, Tsirelson };
enum class QPBase { L1, Tsirelson };

/// Closed-form parameter rule: value(j) = base^(j + shift) for the linear
/// kind and base^((j + shift)^2) for the quadratic kind.
struct SeqRule {
  enum class Kind { PowLinear, PowSquare };
  Kind kind = Kind::PowLinear;
  int base = 4;
  int shift = 1;

  BigInt at(int j) const;
};

struct MixedWParams {
  SeqRule m{SeqRule::Kind::PowLinear, 4, 1};    // m_j = 4^(j+1)
  SeqRule n{SeqRule::Kind::PowSquare, 2, 1};    // n_j = 2^((j+1)^2)

  /// Checks the three construction constraints; throws BadInput on failure.
  /// Returns sum 1/m_j as an exact rational.
  Rational validate() const;
  /// Exact tail sum_{j>=J} 1/m_j^2.
  Rational tail_inv_m_sq(int J) const;
};

struct SpaceDesc {
  SpaceKind kind = SpaceKind::Tsirelson;
  FamilyPtr family;  // XiPlegmaL1 / XiPlegmaL2L1
  int k = 0;         // FrakX: coordinates are (k+1)-subsets; QP: k-subsets
  Rational q, p;     // QP exponents, 1 < q < p
  QPBase base = QPBase::L1;
  MixedWParams mw;

  static SpaceDesc xi_plegma_l1(FamilyPtr F);
  static SpaceDesc xi_plegma_l2l1(FamilyPtr F);
  static SpaceDesc frak_x(int k);
  static SpaceDesc qp(int k, Rational q, Rational p, QPBase base);
  static SpaceDesc schreier_hash();
  static SpaceDesc mixed_w(MixedWParams params = {});
  static SpaceDesc tsirelson();

  bool valid_coordinate(const FinSet& s) const;
  std::string kind_name() const;
};

/// Sparse exactly-represented vector over a space's coordinates.
struct SpaceVec {
  SpaceDesc space;
  std::map<FinSet, Rational> entries;  // nonzero coefficients only

  SpaceVec() = default;
  explicit SpaceVec(SpaceDesc s) : space(std::move(s)) {}

  void set(const FinSet& idx, const Rational& coeff);  // throws BadIndex
  void add(const FinSet& idx, const Rational& coeff);
  int support_size() const { return static_cast<int>(entries.size()); }
  Rational l1() const;
  Rational max_abs() const;
  SpaceVec scaled(const Rational& c) const;
  SpaceVec plus(const SpaceVec& o) const;
};

/// Certified norm value: an interval [lower, upper]; exact results carry the
/// common value as an ExactVal.
struct NormResult {
  bool exact = false;
  ExactVal value;  // when exact
  double lower = 0.0, upper = 0.0;
  bool tolerance_met = true;
  std::shared_ptr<nlohmann::json> witness;  // achieving-functional description

  static NormResult from_exact(ExactVal v, nlohmann::json w);
  static NormResult from_interval(double lo, double hi, bool met, nlohmann::json w);
};

}  // namespace ptk
