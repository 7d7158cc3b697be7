#include "ptk/json_io.hpp"

namespace ptk {

Json finset_to_json(const FinSet& s) { return Json(s.elems()); }

FinSet finset_from_json(const Json& j) { return FinSet(j.get<std::vector<int>>()); }

Json window_to_json(const Window& w) { return Json(w.elems()); }

Window window_from_json(const Json& j) { return Window(j.get<std::vector<int>>()); }

Json family_to_json(const FamilyPtr& f) {
  Json j;
  switch (f->kind()) {
    case FamilyKind::KSubsets:
      j = {{"kind", "k_subsets"}, {"k", f->k_param()}};
      break;
    case FamilyKind::Schreier:
      j = {{"kind", "schreier"}, {"xi", f->xi_param().to_string()}};
      break;
    case FamilyKind::Explicit: {
      Json sets = Json::array();
      for (const auto& s : f->explicit_sets()) sets.push_back(finset_to_json(s));
      j = {{"kind", "explicit"}, {"sets", sets}};
      break;
    }
    case FamilyKind::Restrict:
      j = {{"kind", "restrict"}, {"base", family_to_json(f->base())},
           {"window", window_to_json(f->window())}};
      break;
    case FamilyKind::Shift:
      j = {{"kind", "shift"}, {"base", family_to_json(f->base())},
           {"window", window_to_json(f->window())}};
      break;
    case FamilyKind::Preimage:
      j = {{"kind", "preimage"}, {"base", family_to_json(f->base())},
           {"window", window_to_json(f->window())}};
      break;
    case FamilyKind::Quotient:
      j = {{"kind", "quotient"}, {"base", family_to_json(f->base())},
           {"window", window_to_json(f->window())}};
      break;
    case FamilyKind::DerivedAt:
      j = {{"kind", "derived_at"}, {"base", family_to_json(f->base())}, {"n", f->n_param()}};
      break;
    case FamilyKind::Section:
      j = {{"kind", "section"}, {"base", family_to_json(f->base())},
           {"t", finset_to_json(f->t_param())}};
      break;
    case FamilyKind::DirectSum:
      j = {{"kind", "direct_sum"}, {"left", family_to_json(f->base())},
           {"right", family_to_json(f->right_base())}};
      break;
    case FamilyKind::Closure:
      j = {{"kind", "closure"}, {"base", family_to_json(f->base())}};
      break;
    case FamilyKind::MaxElements:
      j = {{"kind", "max_elements"}, {"base", family_to_json(f->base())}};
      break;
  }
  return j;
}

FamilyPtr family_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "k_subsets") return Family::k_subsets(j.at("k").get<int>());
  if (kind == "schreier") {
    const auto& xi = j.at("xi");
    if (xi.is_number()) return Family::schreier(OrdinalCNF(xi.get<std::uint64_t>()));
    return Family::schreier(OrdinalCNF::parse(xi.get<std::string>()));
  }
  if (kind == "explicit") {
    std::vector<FinSet> sets;
    for (const auto& sj : j.at("sets")) sets.push_back(finset_from_json(sj));
    return Family::explicit_family(std::move(sets));
  }
  if (kind == "restrict")
    return Family::restrict(family_from_json(j.at("base")), window_from_json(j.at("window")));
  if (kind == "shift")
    return Family::shift(family_from_json(j.at("base")), window_from_json(j.at("window")));
  if (kind == "preimage")
    return Family::preimage(family_from_json(j.at("base")), window_from_json(j.at("window")));
  if (kind == "quotient")
    return Family::quotient(family_from_json(j.at("base")), window_from_json(j.at("window")));
  if (kind == "derived_at")
    return Family::derived_at(family_from_json(j.at("base")), j.at("n").get<int>());
  if (kind == "section")
    return Family::section(family_from_json(j.at("base")), finset_from_json(j.at("t")));
  if (kind == "direct_sum")
    return Family::direct_sum(family_from_json(j.at("left")), family_from_json(j.at("right")));
  if (kind == "closure") return Family::closure_of(family_from_json(j.at("base")));
  if (kind == "max_elements") return Family::max_elements(family_from_json(j.at("base")));
  fail(Err::BadInput, "unknown family kind: " + kind);
}

Json space_to_json(const SpaceDesc& s) {
  Json j = {{"kind", s.kind_name()}};
  switch (s.kind) {
    case SpaceKind::XiPlegmaL1:
    case SpaceKind::XiPlegmaL2L1:
      j["family"] = family_to_json(s.family);
      break;
    case SpaceKind::FrakX:
      j["k"] = s.k;
      break;
    case SpaceKind::QP:
      j["k"] = s.k;
      j["q"] = rational_to_string(s.q);
      j["p"] = rational_to_string(s.p);
      j["base"] = s.base == QPBase::L1 ? "l1" : "tsirelson";
      break;
    case SpaceKind::MixedW:
      j["m"] = {{"base", s.mw.m.base}, {"shift", s.mw.m.shift}};
      j["n"] = {{"base", s.mw.n.base}, {"shift", s.mw.n.shift}};
      break;
    case SpaceKind::SchreierHash:
    case SpaceKind::Tsirelson:
      break;
  }
  return j;
}

SpaceDesc space_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "xi_plegma_l1") return SpaceDesc::xi_plegma_l1(family_from_json(j.at("family")));
  if (kind == "xi_plegma_l2l1") return SpaceDesc::xi_plegma_l2l1(family_from_json(j.at("family")));
  if (kind == "frak_x") return SpaceDesc::frak_x(j.at("k").get<int>());
  if (kind == "qp") {
    auto parse_exp = [&](const Json& e) {
      return e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long long>());
    };
    QPBase base = j.at("base").get<std::string>() == "tsirelson" ? QPBase::Tsirelson : QPBase::L1;
    return SpaceDesc::qp(j.at("k").get<int>(), parse_exp(j.at("q")), parse_exp(j.at("p")), base);
  }
  if (kind == "schreier_hash") return SpaceDesc::schreier_hash();
  if (kind == "mixed_w") {
    MixedWParams params;
    if (j.contains("m")) {
      params.m.base = j.at("m").at("base").get<int>();
      params.m.shift = j.at("m").at("shift").get<int>();
    }
    if (j.contains("n")) {
      params.n.base = j.at("n").at("base").get<int>();
      params.n.shift = j.at("n").at("shift").get<int>();
    }
    return SpaceDesc::mixed_w(params);
  }
  if (kind == "tsirelson") return SpaceDesc::tsirelson();
  fail(Err::BadInput, "unknown space kind: " + kind);
}

Json vector_to_json(const SpaceVec& v) {
  Json entries = Json::array();
  for (const auto& [s, c] : v.entries)
    entries.push_back({{"set", finset_to_json(s)}, {"coeff", rational_to_string(c)}});
  return {{"space", space_to_json(v.space)}, {"entries", entries}};
}

SpaceVec vector_from_json(const Json& j) {
  SpaceVec v(space_from_json(j.at("space")));
  for (const auto& e : j.at("entries")) {
    const auto& cj = e.at("coeff");
    Rational c = cj.is_string() ? parse_rational(cj.get<std::string>())
                                : Rational(cj.get<long long>());
    v.add(finset_from_json(e.at("set")), c);
  }
  return v;
}

Json norm_result_to_json(const NormResult& r) {
  Json j;
  if (r.exact) {
    j["lower"] = r.value.to_string();
    j["upper"] = r.value.to_string();
  } else {
    j["lower"] = r.lower;
    j["upper"] = r.upper;
  }
  j["exact"] = r.exact;
  j["tolerance_met"] = r.tolerance_met;
  j["witness"] = r.witness ? *r.witness : Json();
  return j;
}

Json search_outcome_to_json(const SearchOutcome& o) {
  Json j;
  j["status"] = o.found ? "found" : "exhausted";
  j["checked"] = o.checked;
  if (o.found) {
    j["witness"] = window_to_json(*o.witness);
    if (o.color >= 0) j["color"] = o.color;
  }
  return j;
}

Json seq_to_json(const SeqDesc& s) {
  switch (s.kind) {
    case SeqDesc::Kind::Basis:
      return {{"kind", "basis"}, {"space", space_to_json(s.space)},
              {"family", family_to_json(s.family)}};
    case SeqDesc::Kind::CumulativeChain:
      return {{"kind", "cumulative_chain"}};
    case SeqDesc::Kind::ExplicitTable: {
      Json table = Json::array();
      for (const auto& [idx, vec] : s.table) {
        Json entries = Json::array();
        for (const auto& [set, c] : vec.entries)
          entries.push_back({{"set", finset_to_json(set)}, {"coeff", rational_to_string(c)}});
        table.push_back({{"s", finset_to_json(idx)}, {"entries", entries}});
      }
      return {{"kind", "explicit_table"}, {"space", space_to_json(s.space)},
              {"family", family_to_json(s.family)}, {"table", table}};
    }
  }
  fail(Err::BadInput, "unknown sequence kind");
}

SeqDesc seq_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "basis")
    return SeqDesc::basis(space_from_json(j.at("space")), family_from_json(j.at("family")));
  if (kind == "cumulative_chain") return SeqDesc::cumulative_chain();
  if (kind == "explicit_table") {
    SpaceDesc space = space_from_json(j.at("space"));
    std::map<FinSet, SpaceVec> table;
    for (const auto& row : j.at("table")) {
      SpaceVec v(space);
      for (const auto& e : row.at("entries")) {
        const auto& cj = e.at("coeff");
        Rational c = cj.is_string() ? parse_rational(cj.get<std::string>())
                                    : Rational(cj.get<long long>());
        v.add(finset_from_json(e.at("set")), c);
      }
      table[finset_from_json(row.at("s"))] = std::move(v);
    }
    return SeqDesc::explicit_table(std::move(space), family_from_json(j.at("family")),
                                   std::move(table));
  }
  fail(Err::BadInput, "unknown sequence kind: " + kind);
}

Json profile_to_json(const SMProfile& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(rational_to_string(c));
  Json steps = Json::array();
  for (const auto& st : p.steps) {
    Json tuple = Json::array();
    for (const auto& s : st.tuple) tuple.push_back(finset_to_json(s));
    Json value = st.value.exact ? Json(st.value.value.to_string())
                                : Json((st.value.lower + st.value.upper) / 2);
    steps.push_back({{"n", st.n}, {"tuple", tuple}, {"value", value}});
  }
  Json deltas = Json::array();
  for (double d : p.delta_trace) deltas.push_back(d);
  return {{"coeffs", coeffs}, {"steps", steps}, {"delta_trace", deltas}, {"seed", p.seed}};
}

}  // namespace ptk
