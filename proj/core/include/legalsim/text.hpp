#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace legalsim::text {

std::string trim(std::string_view s);
std::string lower(std::string_view s);

// Collapses runs of whitespace to single spaces and trims the ends.
std::string collapse_ws(std::string_view s);

// Matching form used across metrics: lowercase, whitespace collapsed,
// ASCII punctuation stripped.
std::string normalize_for_match(std::string_view s);

// Canonical form for statute identifiers: full-width ASCII folded to
// half-width, whitespace removed, clause punctuation dropped, lowercased.
// "Civil Code Article 1079(2)" and "civil code article１０７９（２）"
// normalize identically.
std::string normalize_citation(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// True if needle (normalized for matching) occurs in haystack (same form).
bool contains_normalized(std::string_view haystack, std::string_view needle);

bool starts_with(std::string_view s, std::string_view prefix);

// Whitespace-delimited tokens of the matching form.
std::vector<std::string> match_tokens(std::string_view s);

}  // namespace legalsim::text
