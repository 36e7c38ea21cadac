#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "mpfock/types.hpp"

namespace mpfock {

using Json = nlohmann::ordered_json;

// deterministic serialization: insertion-ordered keys, every float printed
// with %.17g (exact round-trip), NaN/Inf as null, no timestamps
void write_json(std::ostream& out, const Json& j, int indent = 0);
std::string dump_json(const Json& j);

std::string format_double(double v);

// common envelope: tool id, version, conventions, truncation echo, input echo
Json envelope(const Json& input_echo, const Json& truncation, Json payload);

Json truncation_echo(const TruncationConfig& config, double tail_budget);

}  // namespace mpfock
