#include "ptk/spaces.hpp"

#include <nlohmann/json.hpp>

namespace ptk {

Rational parse_rational(const std::string& text) {
  if (text.empty()) fail(Err::BadInput, "empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) fail(Err::BadInput, "zero denominator");
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(BigInt(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  bool neg = !digits.empty() && digits[0] == '-';
  std::size_t frac_len = text.size() - dot - 1;
  BigInt num(digits);
  BigInt den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  (void)neg;
  return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

double rational_to_double(const Rational& r) { return static_cast<double>(r); }

ExactVal ExactVal::of_rational(const Rational& r) {
  Rational a = r < 0 ? Rational(-r) : r;
  return {a * a, true, a};
}

namespace {

std::optional<BigInt> exact_isqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

}  // namespace

ExactVal ExactVal::sqrt_of(const Rational& s) {
  if (s < 0) fail(Err::BadInput, "negative radicand");
  auto rn = exact_isqrt(numerator(s));
  auto rd = exact_isqrt(denominator(s));
  if (rn && rd) return {s, true, Rational(*rn, *rd)};
  return {s, false, Rational(0)};
}

double ExactVal::to_double() const {
  if (is_rat) return rational_to_double(rat);
  return std::sqrt(rational_to_double(sq));
}

std::string ExactVal::to_string() const {
  if (is_rat) return rational_to_string(rat);
  return "sqrt(" + rational_to_string(sq) + ")";
}

ExactVal ExactVal::scale(const Rational& c) const {
  Rational a = c < 0 ? Rational(-c) : c;
  if (is_rat) return of_rational(rat * a);
  return {sq * a * a, false, Rational(0)};
}

ExactVal max(const ExactVal& a, const ExactVal& b) { return a.sq >= b.sq ? a : b; }

BigInt SeqRule::at(int j) const {
  if (j < 1) fail(Err::BadInput, "sequence index must be >= 1");
  long long e = kind == Kind::PowLinear
                    ? static_cast<long long>(j) + shift
                    : static_cast<long long>(j + shift) * (j + shift);
  if (e < 0) fail(Err::BadInput, "negative exponent in sequence rule");
  return pow(BigInt(base), static_cast<unsigned>(e));
}

Rational MixedWParams::validate() const {
  if (m.kind != SeqRule::Kind::PowLinear || n.kind != SeqRule::Kind::PowSquare)
    fail(Err::BadInput, "mixed_w needs a linear-exponent m rule and a square-exponent n rule");
  if (m.base < 2 || n.base < 2) fail(Err::BadInput, "sequence bases must be >= 2");
  // (i) sum 1/m_j = 1/(base^shift * (base-1)) <= 1/10, exactly.
  Rational sum_inv = Rational(1, pow(BigInt(m.base), static_cast<unsigned>(m.shift)) * (m.base - 1));
  if (sum_inv > Rational(1, 10)) fail(Err::BadInput, "sum 1/m_j exceeds 1/10");
  // (ii) proxy for n_j^a/m_j -> oo: n_j >= m_j^2 from some j0 on. The n rule
  // has a quadratic exponent against m's linear one, so dominance from j0
  // through a long probe certifies the tail.
  int j0 = -1;
  for (int j = 1; j <= 32 && j0 < 0; ++j)
    if (n.at(j) >= m.at(j) * m.at(j)) j0 = j;
  if (j0 < 0) fail(Err::BadInput, "n_j >= m_j^2 fails through j = 32");
  for (int j = j0; j <= j0 + 48; ++j)
    if (n.at(j) < m.at(j) * m.at(j)) fail(Err::BadInput, "n_j >= m_j^2 breaks after onset");
  // (iii) n_j/n_{j+1} < 1/m_j for every j: exact through the probe range,
  // then for good: the exponent gap of n grows linearly while m's exponent
  // is linear with slope log(m.base) <= 2 log(n.base) when n.base^2 >= m.base.
  for (int j = 1; j <= 80; ++j)
    if (n.at(j) * m.at(j) >= n.at(j + 1)) fail(Err::BadInput, "n_j * m_j < n_{j+1} fails");
  if (BigInt(n.base) * n.base < m.base)
    fail(Err::BadInput, "n growth cannot dominate m in the tail");
  return sum_inv;
}

Rational MixedWParams::tail_inv_m_sq(int J) const {
  // sum_{j>=J} base^(-2(j+shift)) = 1 / (base^(2(J+shift)-2) * (base^2 - 1))
  long long e = 2LL * (J + m.shift) - 2;
  return Rational(1, pow(BigInt(m.base), static_cast<unsigned>(e)) * (BigInt(m.base) * m.base - 1));
}

SpaceDesc SpaceDesc::xi_plegma_l1(FamilyPtr F) {
  SpaceDesc s;
  s.kind = SpaceKind::XiPlegmaL1;
  s.family = std::move(F);
  return s;
}

SpaceDesc SpaceDesc::xi_plegma_l2l1(FamilyPtr F) {
  SpaceDesc s;
  s.kind = SpaceKind::XiPlegmaL2L1;
  s.family = std::move(F);
  return s;
}

SpaceDesc SpaceDesc::frak_x(int k) {
  if (k < 1) fail(Err::BadInput, "frak_x needs k >= 1");
  SpaceDesc s;
  s.kind = SpaceKind::FrakX;
  s.k = k;
  return s;
}

SpaceDesc SpaceDesc::qp(int k, Rational q, Rational p, QPBase base) {
  if (k < 1) fail(Err::BadInput, "qp needs k >= 1");
  if (!(Rational(1) < q && q < p)) fail(Err::BadInput, "qp needs 1 < q < p");
  SpaceDesc s;
  s.kind = SpaceKind::QP;
  s.k = k;
  s.q = std::move(q);
  s.p = std::move(p);
  s.base = base;
  return s;
}

SpaceDesc SpaceDesc::schreier_hash() {
  SpaceDesc s;
  s.kind = SpaceKind::SchreierHash;
  return s;
}

SpaceDesc SpaceDesc::mixed_w(MixedWParams params) {
  params.validate();
  SpaceDesc s;
  s.kind = SpaceKind::MixedW;
  s.mw = params;
  return s;
}

SpaceDesc SpaceDesc::tsirelson() {
  SpaceDesc s;
  s.kind = SpaceKind::Tsirelson;
  return s;
}

bool SpaceDesc::valid_coordinate(const FinSet& s) const {
  switch (kind) {
    case SpaceKind::XiPlegmaL1:
    case SpaceKind::XiPlegmaL2L1:
      return !s.empty() && family->contains(s);
    case SpaceKind::FrakX:
      return s.size() == k + 1;
    case SpaceKind::QP:
      return s.size() == k;
    case SpaceKind::SchreierHash:
      return schreier_family_contains(s, OrdinalCNF(1));
    case SpaceKind::MixedW:
    case SpaceKind::Tsirelson:
      return s.size() == 1;
  }
  return false;
}

std::string SpaceDesc::kind_name() const {
  switch (kind) {
    case SpaceKind::XiPlegmaL1: return "xi_plegma_l1";
    case SpaceKind::XiPlegmaL2L1: return "xi_plegma_l2l1";
    case SpaceKind::FrakX: return "frak_x";
    case SpaceKind::QP: return "qp";
    case SpaceKind::SchreierHash: return "schreier_hash";
    case SpaceKind::MixedW: return "mixed_w";
    case SpaceKind::Tsirelson: return "tsirelson";
  }
  return "?";
}

void SpaceVec::set(const FinSet& idx, const Rational& coeff) {
  if (!space.valid_coordinate(idx))
    fail(Err::BadIndex, "{" + idx.to_string() + "} is not a coordinate of " + space.kind_name());
  if (coeff == 0)
    entries.erase(idx);
  else
    entries[idx] = coeff;
}

void SpaceVec::add(const FinSet& idx, const Rational& coeff) {
  auto it = entries.find(idx);
  Rational next = coeff + (it == entries.end() ? Rational(0) : it->second);
  set(idx, next);
}

Rational SpaceVec::l1() const {
  Rational s = 0;
  for (const auto& [_, c] : entries) s += c < 0 ? Rational(-c) : c;
  return s;
}

Rational SpaceVec::max_abs() const {
  Rational m = 0;
  for (const auto& [_, c] : entries) {
    Rational a = c < 0 ? Rational(-c) : c;
    if (a > m) m = a;
  }
  return m;
}

SpaceVec SpaceVec::scaled(const Rational& c) const {
  SpaceVec out(space);
  if (c == 0) return out;
  for (const auto& [idx, v] : entries) out.entries[idx] = v * c;
  return out;
}

SpaceVec SpaceVec::plus(const SpaceVec& o) const {
  SpaceVec out = *this;
  for (const auto& [idx, v] : o.entries) out.add(idx, v);
  return out;
}

NormResult NormResult::from_exact(ExactVal v, nlohmann::json w) {
  NormResult r;
  r.exact = true;
  r.value = v;
  r.lower = r.upper = v.to_double();
  r.tolerance_met = true;
  r.witness = std::make_shared<nlohmann::json>(std::move(w));
  return r;
}

NormResult NormResult::from_interval(double lo, double hi, bool met, nlohmann::json w) {
  NormResult r;
  r.exact = false;
  r.lower = lo;
  r.upper = hi;
  r.tolerance_met = met;
  r.witness = std::make_shared<nlohmann::json>(std::move(w));
  return r;
}

}  // namespace ptk
