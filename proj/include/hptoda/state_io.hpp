#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hptoda/lattice.hpp"

namespace hptoda {

/// State file: {"N":2,"M":1,"t":0,"I":[["1","2"]],"V":["3","4"]}, rationals
/// as strings of the form [sign]digits[/digits]. Throws ParseError (with the
/// position or field) or ValidationError.
TodaState parse_state_text(std::string_view text);
TodaState parse_state(const std::filesystem::path& path);

/// Canonical single-line form; parse_state_text inverts it exactly.
std::string serialize_state(const TodaState& state);

/// JSON array of canonical states, one per line.
std::string serialize_trajectory(const std::vector<TodaState>& trajectory);

}  // namespace hptoda
