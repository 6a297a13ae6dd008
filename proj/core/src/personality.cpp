#include "legalsim/personality.hpp"

#include "legalsim/json_io.hpp"
#include "legalsim/judge.hpp"
#include "legalsim/rng.hpp"
#include "legalsim/text.hpp"

namespace legalsim::personality {

namespace {

TraitLevel level_from_index(std::uint64_t i) {
  switch (i) {
    case 0: return TraitLevel::High;
    case 1: return TraitLevel::Medium;
    default: return TraitLevel::Low;
  }
}

int level_index(TraitLevel l) {
  switch (l) {
    case TraitLevel::High: return 0;
    case TraitLevel::Medium: return 1;
    default: return 2;
  }
}

PersonalityTraits sample_uniform(const std::string& context, std::uint64_t seed) {
  Rng rng(fnv1a_mix(fnv1a(context), seed));
  PersonalityTraits t;
  for (int d = 0; d < kTraitDimensions; ++d) set_dimension(t, d, level_from_index(rng.next_below(3)));
  return t;
}

std::optional<PersonalityTraits> traits_from_backend(const std::string& context,
                                                     JudgeBackend& backend) {
  PersonalityTraits t;
  for (int d = 0; d < kTraitDimensions; ++d) {
    JudgeRequest req;
    req.task_id = "trait_level";
    req.rubric_prompt = "Given the person's context, assign their " +
                        trait_dimension_names()[d] +
                        " as one of: high, medium, low. Reply with one word.";
    req.payload = "CONTEXT:\n" + context;
    req.schema = JudgeSchema::label_set({"high", "medium", "low"});
    try {
      auto verdict = backend.evaluate(req);
      auto level = trait_level_from_code(verdict.label);
      if (!level) return std::nullopt;
      set_dimension(t, d, *level);
    } catch (const JudgeError&) {
      return std::nullopt;
    }
  }
  return t;
}

}  // namespace

TraitAssignment assign_traits(const std::string& role_context, std::uint64_t seed,
                              JudgeBackend* backend) {
  if (role_context.empty())
    throw std::invalid_argument("assign_traits requires a non-empty role context");
  if (backend) {
    if (auto traits = traits_from_backend(role_context, *backend))
      return {*traits, TraitProvenance::Backend};
    return {sample_uniform(role_context, seed), TraitProvenance::SeededFallback};
  }
  return {sample_uniform(role_context, seed), TraitProvenance::Seeded};
}

PersonalityTraits redistribute_medium(const PersonalityTraits& traits, std::uint64_t seed) {
  Rng rng(fnv1a_mix(fnv1a("medium-redistribution"), seed));
  PersonalityTraits out = traits;
  for (int d = 0; d < kTraitDimensions; ++d) {
    // One draw per dimension keeps the streams independent of which
    // dimensions happen to be Medium.
    std::uint64_t r = rng.next_below(5);
    if (get_dimension(traits, d) != TraitLevel::Medium) continue;
    // 2:1:2 over high/medium/low.
    TraitLevel level = r < 2 ? TraitLevel::High : (r < 3 ? TraitLevel::Medium : TraitLevel::Low);
    set_dimension(out, d, level);
  }
  return out;
}

// ---------------------------------------------------------------------------
// style templates
// ---------------------------------------------------------------------------

namespace {

// dimension-major, level order High/Medium/Low, three fragments per cell
const char* kFragments[5][3][3] = {
    {
        {"speaks up readily and keeps the conversation moving",
         "volunteers details before being asked",
         "greets others warmly and talks at length"},
        {"speaks when spoken to and keeps answers measured",
         "alternates between chatty and reserved moments",
         "engages politely without dominating the exchange"},
        {"answers briefly and rarely volunteers information",
         "prefers short, quiet replies",
         "avoids small talk and sticks to what was asked"},
    },
    {
        {"stays calm even when the discussion turns stressful",
         "keeps an even tone under pressure",
         "responds to setbacks without agitation"},
        {"mostly keeps composure but shows occasional worry",
         "is steady until the stakes feel personal",
         "lets mild frustration show now and then"},
        {"grows anxious quickly and seeks reassurance",
         "voices worry about worst-case outcomes",
         "reacts sharply when challenged"},
    },
    {
        {"asks exploratory questions beyond the immediate issue",
         "welcomes unfamiliar ideas and hypotheticals",
         "connects the matter to broader principles"},
        {"considers new angles when prompted",
         "weighs novel suggestions cautiously",
         "mixes practical focus with occasional curiosity"},
        {"sticks to concrete, familiar ground",
         "distrusts speculation and hypotheticals",
         "wants plain answers to the question asked"},
    },
    {
        {"accommodates the other side's framing readily",
         "seeks common ground and avoids confrontation",
         "thanks others often and concedes small points"},
        {"cooperates but pushes back when it matters",
         "is courteous yet firm on key interests",
         "negotiates in good faith without yielding easily"},
        {"challenges statements bluntly",
         "concedes nothing without proof",
         "keeps exchanges adversarial and guarded"},
    },
    {
        {"brings documents and dates in precise order",
         "answers step by step and checks each detail",
         "follows instructions to the letter"},
        {"is generally organized with occasional gaps",
         "keeps loose track of paperwork and timelines",
         "prepares the essentials but misses minor details"},
        {"jumps between points without finishing them",
         "forgets dates and mixes up documents",
         "gives fragmented, unordered accounts"},
    },
};

}  // namespace

const StyleTemplateLibrary& StyleTemplateLibrary::builtin() {
  static const StyleTemplateLibrary lib = [] {
    StyleTemplateLibrary l;
    l.cells_.resize(kTraitDimensions);
    for (int d = 0; d < kTraitDimensions; ++d) {
      l.cells_[d].resize(3);
      for (int lv = 0; lv < 3; ++lv)
        for (int f = 0; f < 3; ++f) l.cells_[d][lv].push_back(kFragments[d][lv][f]);
    }
    return l;
  }();
  return lib;
}

StyleTemplateLibrary StyleTemplateLibrary::load(const std::string& json_path) {
  auto j = parse_json(read_text_file(json_path));
  JsonReader r(j);
  StyleTemplateLibrary lib;
  lib.cells_.resize(kTraitDimensions);
  for (int d = 0; d < kTraitDimensions; ++d) {
    auto dim = r.at(trait_dimension_names()[d]);
    lib.cells_[d].resize(3);
    const char* levels[3] = {"high", "medium", "low"};
    for (int lv = 0; lv < 3; ++lv) {
      auto arr = dim.at(levels[lv]);
      if (arr.array_size() == 0) arr.fail("fragment list must be non-empty");
      for (std::size_t f = 0; f < arr.array_size(); ++f)
        lib.cells_[d][lv].push_back(arr.at(f).get_string());
    }
  }
  return lib;
}

const std::vector<std::string>& StyleTemplateLibrary::fragments(int dimension,
                                                                TraitLevel level) const {
  return cells_[dimension][level_index(level)];
}

std::string StyleTemplateLibrary::to_json_text() const {
  Json j = Json::object();
  const char* levels[3] = {"high", "medium", "low"};
  for (int d = 0; d < kTraitDimensions; ++d) {
    Json dim = Json::object();
    for (int lv = 0; lv < 3; ++lv) dim[levels[lv]] = cells_[d][lv];
    j[trait_dimension_names()[d]] = std::move(dim);
  }
  return dump_canonical(j);
}

std::string render_style(const PersonalityTraits& traits, const std::string& role_context,
                         JudgeBackend* backend, const StyleTemplateLibrary& library) {
  std::uint64_t h = fnv1a(role_context);
  for (int d = 0; d < kTraitDimensions; ++d)
    h = fnv1a_mix(h, static_cast<std::uint64_t>(level_index(get_dimension(traits, d))));
  Rng rng(h);

  std::string style = "This person ";
  for (int d = 0; d < kTraitDimensions; ++d) {
    const auto& frags = library.fragments(d, get_dimension(traits, d));
    if (d > 0) style += d + 1 == kTraitDimensions ? ", and " : ", ";
    style += frags[rng.next_below(frags.size())];
  }
  style += ".";

  if (backend) {
    JudgeRequest req;
    req.task_id = "style_rewrite";
    req.rubric_prompt =
        "Rewrite the behavioral description as a short second-person talking-style instruction. "
        "Reply with one paragraph.";
    req.payload = "CONTEXT:\n" + role_context + "\nDESCRIPTION:\n" + style;
    req.schema = JudgeSchema::label_set({});  // free text; any non-empty reply is accepted
    try {
      auto verdict = backend->evaluate(req);
      if (!text::trim(verdict.label).empty()) return verdict.label;
    } catch (const JudgeError&) {
      // fall through to the template output
    }
  }
  return style;
}

}  // namespace legalsim::personality
