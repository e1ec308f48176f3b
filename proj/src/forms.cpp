#include "siegel/forms.hpp"

#include <cctype>
#include <stdexcept>

namespace siegel {

unsigned weight(FormKind form) {
  switch (form) {
    case FormKind::E4: return 4;
    case FormKind::E6: return 6;
    case FormKind::E10:
    case FormKind::Chi10: return 10;
    case FormKind::E12:
    case FormKind::Chi12: return 12;
  }
  return 0;
}

bool is_cusp_form(FormKind form) { return form == FormKind::Chi10 || form == FormKind::Chi12; }

std::string name(FormKind form) {
  switch (form) {
    case FormKind::E4: return "E4";
    case FormKind::E6: return "E6";
    case FormKind::E10: return "E10";
    case FormKind::E12: return "E12";
    case FormKind::Chi10: return "CHI10";
    case FormKind::Chi12: return "CHI12";
  }
  return "?";
}

FormKind parse_form(std::string_view text) {
  std::string upper;
  for (char c : text) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  for (FormKind f : kAllForms) {
    if (name(f) == upper) return f;
  }
  throw std::invalid_argument("unknown form '" + std::string(text) + "'");
}

}  // namespace siegel
