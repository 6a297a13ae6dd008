#pragma once

#include <set>
#include <string>

#include "legalsim/domain.hpp"

namespace legalsim::procedures {

// Built-in stage/action checklists for the two courts. The civil court has
// five stages, the criminal court three; every stage carries the mandatory
// actions the presiding judge must perform, each with keyword patterns the
// matcher recognizes.
const ProcedureSpec& civil_court();
const ProcedureSpec& criminal_court();

const ProcedureSpec& default_procedure(EnvKind kind);  // CI or CR only

// Stage ids whose completeness enters the PFS denominators. The civil
// court is scored on its first four stages, the criminal court on its
// pre-decision stages. Overridable where a different denominator is wanted.
std::set<std::string> default_evaluated_stages(const ProcedureSpec& spec);

// Fallback addressee (by role kind) per stage, used when a judge turn
// carries no parseable directive and classification fails.
RoleKind default_addressee_kind(EnvKind kind, const std::string& stage_id);

std::string procedures_json_text();  // both specs, resource-file form

}  // namespace legalsim::procedures
