#pragma once

#include <string>

#include "gemc/bridge.hpp"
#include "gemc/gem.hpp"
#include "gemc/gm.hpp"

namespace gemc {

/// 64-bit FNV-1a of the document, hex encoded; identifies report inputs.
std::string content_digest(const std::string& text);

/// Machine-readable record of all invariants, bounds and cross-check
/// outcomes for one gem input, as a single JSON object (one line).
/// When crosscheck_equal is given it receives the cross-check verdict.
std::string complexity_report_json(const Gem& g, const std::string& source_text,
                                   const GmOptions& opt, bool* crosscheck_equal = nullptr);

}  // namespace gemc
