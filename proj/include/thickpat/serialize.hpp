#pragma once

#include <json.hpp>

#include "thickpat/appendix.hpp"
#include "thickpat/bounds.hpp"
#include "thickpat/game.hpp"
#include "thickpat/patterns.hpp"
#include "thickpat/set_descriptor.hpp"
#include "thickpat/thickness.hpp"

namespace thickpat {

using Json = nlohmann::ordered_json;

/// Schema or value errors while reading JSON.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const Interval& iv);
Interval interval_from_json(const Json& j);
Json to_json(const IntervalUnion& u);
IntervalUnion union_from_json(const Json& j);

/// Exact reals as "p/q"; computed reals as {"label", "lo", "hi"} with the 128-bit
/// enclosure endpoints, read back as a computed real pinned to that enclosure.
Json to_json(const Real& r);
Real real_from_json(const Json& j);

/// {"hull":[a,b],"kind":"gaps"|"ifs"|"middle","gaps":[[a,b],...],"ifs":{"ratios":[..],"offsets":[..]},"epsilon":"p/q"}
Json to_json(const SetDescriptor& d);
SetDescriptor descriptor_from_json(const Json& j);

Json to_json(const ThicknessValue& t);
ThicknessValue thickness_from_json(const Json& j);

Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json to_json(const CapacityResult& c);
CapacityResult capacity_from_json(const Json& j);

Json to_json(const GameParams& p);
GameParams game_params_from_json(const Json& j);
Json to_json(const Ball& b);
Ball ball_from_json(const Json& j);
Json to_json(const GameTranscript& t);
GameTranscript transcript_from_json(const Json& j);

/// Tree dump: one record per node with level, parent index, z and good-children counts.
Json to_json(const FractalTree& t);

}  // namespace thickpat
