#include "legalsim/text.hpp"

#include <algorithm>
#include <cctype>

namespace legalsim::text {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

// Folds the common full-width forms (U+FF01..U+FF5E) and ideographic
// space to their ASCII counterparts. Other code points pass through.
void append_folded(std::string& out, std::string_view s, std::size_t& i) {
  unsigned char c0 = static_cast<unsigned char>(s[i]);
  if (c0 == 0xEF && i + 2 < s.size()) {
    unsigned char c1 = static_cast<unsigned char>(s[i + 1]);
    unsigned char c2 = static_cast<unsigned char>(s[i + 2]);
    // U+FF01..U+FF5E  ->  0x21..0x7E
    unsigned int cp = 0xF000u | (static_cast<unsigned int>(c1 & 0x3F) << 6) | (c2 & 0x3F);
    if (cp >= 0xFF01 && cp <= 0xFF5E) {
      out.push_back(static_cast<char>(cp - 0xFF01 + 0x21));
      i += 3;
      return;
    }
  }
  if (c0 == 0xE3 && i + 2 < s.size() &&
      static_cast<unsigned char>(s[i + 1]) == 0x80 &&
      static_cast<unsigned char>(s[i + 2]) == 0x80) {  // U+3000 ideographic space
    out.push_back(' ');
    i += 3;
    return;
  }
  out.push_back(s[i]);
  ++i;
}

std::string fold_width(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) append_folded(out, s, i);
  return out;
}

}  // namespace

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool in_ws = true;  // swallow leading whitespace
  for (unsigned char c : s) {
    if (is_space(c)) {
      if (!in_ws) out.push_back(' ');
      in_ws = true;
    } else {
      out.push_back(static_cast<char>(c));
      in_ws = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string normalize_for_match(std::string_view s) {
  std::string folded = fold_width(s);
  std::string out;
  out.reserve(folded.size());
  for (unsigned char c : folded) {
    if (std::ispunct(c)) continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return collapse_ws(out);
}

std::string normalize_citation(std::string_view s) {
  std::string folded = fold_width(s);
  std::string out;
  out.reserve(folded.size());
  for (unsigned char c : folded) {
    if (is_space(c)) continue;
    // Clause punctuation: parentheses, brackets, dots, commas, colons.
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == '.' || c == ',' ||
        c == ':' || c == ';' || c == '-')
      continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool contains_normalized(std::string_view haystack, std::string_view needle) {
  std::string h = normalize_for_match(haystack);
  std::string n = normalize_for_match(needle);
  if (n.empty()) return false;
  return h.find(n) != std::string::npos;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

std::vector<std::string> match_tokens(std::string_view s) {
  std::string norm = normalize_for_match(s);
  std::vector<std::string> toks;
  for (auto& t : split(norm, ' '))
    if (!t.empty()) toks.push_back(std::move(t));
  return toks;
}

}  // namespace legalsim::text
