#pragma once

#include <string>

#include "loopforge/loop.hpp"

namespace loopforge {

/// Cayley JSON: {"order": n, "elements": [...], "table": [[...], ...]} in
/// that key order, compact, newline-terminated. Byte-stable for a given loop.
std::string LoopToJson(const FiniteLoop& loop);
/// Parses and validates Cayley JSON (Latin square, identity at 0).
FiniteLoop LoopFromJson(const std::string& text);

void SaveLoop(const FiniteLoop& loop, const std::string& path);
FiniteLoop LoadLoop(const std::string& path);

/// A readable file path is loaded as Cayley JSON, anything else is resolved
/// as a builtin name.
FiniteLoop ResolveLoop(const std::string& file_or_builtin);

}  // namespace loopforge
