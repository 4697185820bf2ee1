#pragma once

// Text form of piecewise functions.
//
// JSON:      {"breakpoints": [0, 1, "inf"],
//             "pieces": [[{"c": 1, "a": 0, "k": 0}], []]}
// Shorthand: chi(l,r) | pow(a,l,r), optionally prefixed by "c*", joined by
//            "+"; endpoints may be "inf". Example: "chi(0,1)+2*pow(-2,1,inf)".

#include <string>
#include <string_view>

#include <json.hpp>

#include "hardylab/funcmodel.hpp"

namespace hardylab {

/// Parses either form (JSON when the text starts with '{'). The result's
/// nonnegativity flag is set by sampling. Throws ParseError (with the
/// character position) and the make_piecewise validation errors.
PiecewiseFn parse_function_spec(std::string_view text);

/// JSON form; the last breakpoint is written as "inf".
nlohmann::json function_to_json(const PiecewiseFn& f);

}  // namespace hardylab
