#pragma once

#include <nlohmann/json.hpp>

#include "ptk/families.hpp"
#include "ptk/ramsey.hpp"
#include "ptk/spaces.hpp"
#include "ptk/spreading.hpp"

namespace ptk {

using Json = nlohmann::json;

Json window_to_json(const Window& w);
Window window_from_json(const Json& j);

Json family_to_json(const FamilyPtr& f);
FamilyPtr family_from_json(const Json& j);

Json space_to_json(const SpaceDesc& s);
SpaceDesc space_from_json(const Json& j);

Json vector_to_json(const SpaceVec& v);
SpaceVec vector_from_json(const Json& j);

Json norm_result_to_json(const NormResult& r);

Json search_outcome_to_json(const SearchOutcome& o);

Json profile_to_json(const SMProfile& p);

Json finset_to_json(const FinSet& s);
FinSet finset_from_json(const Json& j);

Json seq_to_json(const SeqDesc& s);
SeqDesc seq_from_json(const Json& j);

}  // namespace ptk
