#pragma once

#include <string>

#include "legalsim/domain.hpp"

namespace legalsim {

// Output contracts the orchestrator parses. These are injected into the
// relevant system prompts and recognized by the detectors in envs.
inline constexpr const char* kDocumentBegin = "===DOCUMENT BEGIN===";
inline constexpr const char* kDocumentEnd = "===DOCUMENT END===";
inline constexpr const char* kJudgmentBegin = "===JUDGMENT BEGIN===";
inline constexpr const char* kJudgmentEnd = "===JUDGMENT END===";

namespace prompts {

// Environment rule text for a role in an environment: task framing, output
// contracts (fences, @addressee directives, topic markers), and behavioral
// instructions. Versioned resource; the builtin table is the source of
// truth and prompt_templates_json_text() is its resource-file form.
std::string environment_rules(EnvKind env, RoleKind role);

std::string prompt_templates_json_text();

}  // namespace prompts
}  // namespace legalsim
