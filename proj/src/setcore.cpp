#include "ptk/setcore.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ptk {

FinSet::FinSet(std::vector<int> elems) : elems_(std::move(elems)) {
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (elems_[i] < 1) fail(Err::BadInput, "FinSet elements must be positive");
    if (i > 0 && elems_[i] <= elems_[i - 1])
      fail(Err::BadInput, "FinSet elements must be strictly increasing");
  }
}

FinSet FinSet::parse(const std::string& text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || text[i] == ' ')) ++i;
    if (i >= text.size()) break;
    int v = 0;
    auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc()) fail(Err::BadInput, "bad FinSet text: " + text);
    out.push_back(v);
    i = static_cast<std::size_t>(p - text.data());
  }
  return FinSet(std::move(out));
}

int FinSet::at(int k) const {
  if (k < 1 || k > size()) fail(Err::OutOfRange, "FinSet index " + std::to_string(k));
  return elems_[static_cast<std::size_t>(k - 1)];
}

FinSet FinSet::initial_segment(int k) const {
  if (k < 0 || k > size()) fail(Err::OutOfRange, "initial segment length " + std::to_string(k));
  return FinSet(std::vector<int>(elems_.begin(), elems_.begin() + k));
}

bool FinSet::is_initial_segment_of(const FinSet& t) const {
  if (size() > t.size()) return false;
  return std::equal(elems_.begin(), elems_.end(), t.elems_.begin());
}

bool FinSet::is_proper_initial_segment_of(const FinSet& t) const {
  return size() < t.size() && is_initial_segment_of(t);
}

bool FinSet::entirely_below(const FinSet& t) const {
  if (empty() || t.empty()) return true;
  return max() < t.min();
}

bool FinSet::contains(int v) const {
  return std::binary_search(elems_.begin(), elems_.end(), v);
}

bool FinSet::is_subset_of(const FinSet& t) const {
  return std::includes(t.elems_.begin(), t.elems_.end(), elems_.begin(), elems_.end());
}

bool FinSet::dominated_by(const FinSet& t) const {
  if (size() != t.size()) return false;
  for (int i = 0; i < size(); ++i)
    if (elems_[static_cast<std::size_t>(i)] > t.elems_[static_cast<std::size_t>(i)]) return false;
  return true;
}

FinSet FinSet::unite(const FinSet& t) const {
  std::vector<int> out;
  std::set_union(elems_.begin(), elems_.end(), t.elems_.begin(), t.elems_.end(),
                 std::back_inserter(out));
  return FinSet(std::move(out));
}

FinSet FinSet::intersect(const FinSet& t) const {
  std::vector<int> out;
  std::set_intersection(elems_.begin(), elems_.end(), t.elems_.begin(), t.elems_.end(),
                        std::back_inserter(out));
  return FinSet(std::move(out));
}

FinSet FinSet::append(int v) const {
  if (!empty() && v <= max()) fail(Err::BadInput, "append value must exceed max");
  std::vector<int> out = elems_;
  out.push_back(v);
  return FinSet(std::move(out));
}

std::string FinSet::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) os << ',';
    os << elems_[i];
  }
  return os.str();
}

FinSet set_quotient(const FinSet& s1, const FinSet& s2) {
  if (s1.empty()) fail(Err::EmptyBase, "set_quotient needs a nonempty base set");
  std::vector<int> out;
  for (int v : s2.elems())
    if (v <= s1.max()) out.push_back(v);
  return FinSet(std::move(out));
}

Window::Window(std::vector<int> elems) : elems_(std::move(elems)) {
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (elems_[i] < 1) fail(Err::BadInput, "Window elements must be positive");
    if (i > 0 && elems_[i] <= elems_[i - 1])
      fail(Err::BadInput, "Window elements must be strictly increasing");
  }
}

Window Window::identity(int h) { return arithmetic(1, 1, h); }
Window Window::evens(int h) { return arithmetic(2, 2, h); }
Window Window::odds(int h) { return arithmetic(1, 2, h); }

Window Window::arithmetic(int first, int step, int h) {
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(h));
  for (int i = 0; i < h; ++i) v.push_back(first + i * step);
  return Window(std::move(v));
}

int Window::at(int n) const {
  if (n < 1) fail(Err::OutOfRange, "window position " + std::to_string(n));
  if (n > horizon())
    fail(Err::IndexBeyondHorizon,
         "position " + std::to_string(n) + " beyond horizon " + std::to_string(horizon()));
  return elems_[static_cast<std::size_t>(n - 1)];
}

FinSet Window::apply(const FinSet& s) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(s.size()));
  for (int k : s.elems()) out.push_back(at(k));
  return FinSet(std::move(out));
}

std::optional<int> Window::position_of(int v) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), v);
  if (it == elems_.end() || *it != v) return std::nullopt;
  return static_cast<int>(it - elems_.begin()) + 1;
}

std::optional<FinSet> Window::positions_of(const FinSet& s) const {
  std::vector<int> out;
  for (int v : s.elems()) {
    auto p = position_of(v);
    if (!p) {
      if (!elems_.empty() && v > elems_.back())
        fail(Err::HorizonRequired, "value " + std::to_string(v) + " is past the window horizon");
      return std::nullopt;
    }
    out.push_back(*p);
  }
  return FinSet(std::move(out));
}

Window Window::even_positions() const {
  std::vector<int> v;
  for (int n = 2; n <= horizon(); n += 2) v.push_back(at(n));
  return Window(std::move(v));
}

Window Window::odd_positions() const {
  std::vector<int> v;
  for (int n = 1; n <= horizon(); n += 2) v.push_back(at(n));
  return Window(std::move(v));
}

FinSet Window::prefix_set(int k) const {
  if (k > horizon()) fail(Err::IndexBeyondHorizon, "prefix length beyond horizon");
  return FinSet(std::vector<int>(elems_.begin(), elems_.begin() + k));
}

FinSet apply_set(const Window& L, const FinSet& s) { return L.apply(s); }

OrdinalCNF::OrdinalCNF(std::uint64_t n) {
  if (n > 0) terms_.push_back({0, n});
}

OrdinalCNF::OrdinalCNF(std::vector<std::pair<std::uint32_t, std::uint64_t>> terms)
    : terms_(std::move(terms)) {
  canonicalize();
}

void OrdinalCNF::canonicalize() {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
  for (const auto& t : terms_) {
    if (t.second == 0) continue;
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(t);
  }
  terms_ = std::move(out);
}

OrdinalCNF OrdinalCNF::omega() { return omega_pow(1); }

OrdinalCNF OrdinalCNF::omega_pow(std::uint32_t e, std::uint64_t c) {
  OrdinalCNF o;
  if (c > 0) o.terms_.push_back({e, c});
  return o;
}

bool OrdinalCNF::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

std::uint64_t OrdinalCNF::finite_value() const {
  if (!is_finite()) fail(Err::BadInput, "ordinal is not finite");
  return terms_.empty() ? 0 : terms_[0].second;
}

bool OrdinalCNF::is_successor() const {
  return !terms_.empty() && terms_.back().first == 0;
}

OrdinalCNF OrdinalCNF::predecessor() const {
  if (!is_successor()) fail(Err::BadInput, "not a successor ordinal");
  OrdinalCNF o = *this;
  if (--o.terms_.back().second == 0) o.terms_.pop_back();
  return o;
}

OrdinalCNF OrdinalCNF::fundamental(std::uint64_t n) const {
  if (!is_limit()) fail(Err::BadInput, "fundamental sequence needs a limit ordinal");
  OrdinalCNF o = *this;
  auto [e, c] = o.terms_.back();
  o.terms_.pop_back();
  if (c > 1) o.terms_.push_back({e, c - 1});
  if (n > 0) o.terms_.push_back({e - 1, n});
  o.canonicalize();
  return o;
}

std::string OrdinalCNF::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << '+';
    first = false;
    if (e == 0) {
      os << c;
    } else {
      if (e == 1)
        os << 'w';
      else
        os << "w^" << e;
      if (c != 1) os << '*' << c;
    }
  }
  return os.str();
}

OrdinalCNF OrdinalCNF::parse(const std::string& text) {
  std::vector<std::pair<std::uint32_t, std::uint64_t>> terms;
  std::size_t i = 0;
  auto read_nat = [&](std::uint64_t& out) {
    std::size_t start = i;
    std::uint64_t v = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
      ++i;
    }
    if (i == start) fail(Err::BadInput, "bad ordinal literal: " + text);
    out = v;
  };
  while (i < text.size()) {
    if (text[i] == '+' || text[i] == ' ') {
      ++i;
      continue;
    }
    std::uint32_t e = 0;
    std::uint64_t c = 1;
    if (text[i] == 'w') {
      ++i;
      e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::uint64_t ev;
        read_nat(ev);
        e = static_cast<std::uint32_t>(ev);
      }
      if (i < text.size() && text[i] == '*') {
        ++i;
        read_nat(c);
      }
    } else {
      read_nat(c);
      e = 0;
    }
    terms.push_back({e, c});
  }
  return OrdinalCNF(std::move(terms));
}

OrdinalCNF ord_add(const OrdinalCNF& a, const OrdinalCNF& b) {
  if (b.is_zero()) return a;
  auto lead = b.terms().front().first;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> terms;
  for (const auto& t : a.terms()) {
    if (t.first > lead) terms.push_back(t);
    if (t.first == lead) terms.push_back(t);  // merges with b's leading term
  }
  for (const auto& t : b.terms()) terms.push_back(t);
  return OrdinalCNF(std::move(terms));
}

}  // namespace ptk
