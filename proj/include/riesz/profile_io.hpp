#pragma once

#include "riesz/radial.hpp"

#include <string>

namespace riesz {

// Profile file schema (dimension-independent):
//   {"nodes": [...], "values": [...], "monotone": bool,
//    "tail": {"A": num, "beta": num} | null, "cutoff": num | null}
RadialProfile parse_profile_json(const std::string& text);

// Reads a profile file; parse errors are reported with a line number.
RadialProfile load_profile_json(const std::string& path);

std::string profile_to_json(const RadialProfile& f);

} // namespace riesz
