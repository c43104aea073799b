#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "funtf/construct.hpp"
#include "funtf/erasure.hpp"
#include "funtf/frame.hpp"
#include "funtf/pi2.hpp"
#include "funtf/space.hpp"

namespace funtf {

using Json = nlohmann::json;

// Scalars follow the owning space's field: real numbers are plain JSON
// numbers, complex numbers are [re, im] pairs.
Json vec_to_json(const CVec& v, bool real_field);
CVec vec_from_json(const Json& j, bool real_field);

Json space_to_json(const SpaceSpec& space);
SpaceSpec space_from_json(const Json& j);

Json frame_to_json(const FrameSystem& frame);
FrameSystem frame_from_json(const Json& j);

// Matrix as a list of rows, entries following the field convention.
Json matrix_to_json(const CMat& m, bool real_field);
CMat matrix_from_json(const Json& j, bool real_field);

Json pi2_result_to_json(const Pi2Result& result);
Json erasure_report_to_json(const ErasureReport& report);
Json classification_to_json(const Classification& cls);
Json search_result_to_json(const SearchResult& result);
Json smoothness_report_to_json(const SmoothnessReport& report);

// Serializer with every number printed to 17 significant digits so doubles
// survive a save/load round trip bit-identically.
std::string dump_json_17(const Json& j, int indent = -1);

}  // namespace funtf
