#pragma once

#include <optional>
#include <string>

#include "legalsim/domain.hpp"

namespace legalsim {
class JudgeBackend;
}

namespace legalsim::personality {

enum class TraitProvenance { Backend, Seeded, SeededFallback };

struct TraitAssignment {
  PersonalityTraits traits;
  TraitProvenance provenance = TraitProvenance::Seeded;
};

// Assigns one of three levels per dimension. With a judge backend the
// levels are inferred from the role context; without one (or when the
// backend output is malformed) they are drawn uniformly from a stream
// seeded by (context, seed), so the same inputs always yield the same
// traits.
TraitAssignment assign_traits(const std::string& role_context, std::uint64_t seed,
                              JudgeBackend* backend = nullptr);

// Reassigns every Medium dimension independently to high/medium/low with
// probabilities 2/5, 1/5, 2/5. High and Low dimensions pass through.
PersonalityTraits redistribute_medium(const PersonalityTraits& traits, std::uint64_t seed);

// Fragment table keyed by (dimension, level); three fragments per cell.
class StyleTemplateLibrary {
 public:
  static const StyleTemplateLibrary& builtin();
  static StyleTemplateLibrary load(const std::string& json_path);

  const std::vector<std::string>& fragments(int dimension, TraitLevel level) const;
  std::string to_json_text() const;

  bool operator==(const StyleTemplateLibrary&) const = default;

 private:
  // [dimension][level(High,Medium,Low)] -> fragments
  std::vector<std::vector<std::vector<std::string>>> cells_;
};

// Renders a behavioral-style paragraph, one fragment per dimension. The
// fragment choice is seeded from (traits, role_context): identical inputs
// produce identical text. A judge backend, when supplied and healthy, may
// rewrite the description; failures fall back to the template output.
std::string render_style(const PersonalityTraits& traits, const std::string& role_context,
                         JudgeBackend* backend = nullptr,
                         const StyleTemplateLibrary& library = StyleTemplateLibrary::builtin());

}  // namespace legalsim::personality
