#pragma once

#include <iosfwd>
#include <string>

#include "tg/game.hpp"

namespace tg {

/// Newline-delimited JSON transcript: a header record, one record per
/// half-round, and an outcome trailer. write/read round-trip exactly.
void write_transcript(std::ostream& os, const Transcript& t);
std::string transcript_to_string(const Transcript& t);

Transcript read_transcript(std::istream& is);
Transcript transcript_from_string(const std::string& text);

}  // namespace tg
