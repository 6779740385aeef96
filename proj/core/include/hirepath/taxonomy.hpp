#pragma once

#include <string>
#include <string_view>

namespace hirepath {

// Low-level journal discipline taxonomy (144 categories) and department
// subfields (24). Discipline and subfield ids are 1-based.
inline constexpr int kNumDisciplines = 144;
inline constexpr int kNumSubfields = 24;

inline bool valid_discipline(int id) { return id >= 1 && id <= kNumDisciplines; }
inline bool valid_subfield(int id) { return id >= 1 && id <= kNumSubfields; }

enum class Gender { Woman, Man, Unknown };

inline std::string to_string(Gender g) {
  switch (g) {
    case Gender::Woman: return "woman";
    case Gender::Man: return "man";
    default: return "unknown";
  }
}

// Accepts the canonical names plus single-letter shorthand; anything else
// maps to Unknown.
inline Gender parse_gender(std::string_view s) {
  if (s == "woman" || s == "w" || s == "f" || s == "female") return Gender::Woman;
  if (s == "man" || s == "m" || s == "male") return Gender::Man;
  return Gender::Unknown;
}

}  // namespace hirepath
