#pragma once

#include <array>
#include <string>
#include <string_view>

namespace siegel {

/// The Siegel modular forms of degree two handled here.
enum class FormKind { E4, E6, E10, E12, Chi10, Chi12 };

inline constexpr std::array<FormKind, 6> kAllForms = {FormKind::E4,  FormKind::E6,    FormKind::E10,
                                                      FormKind::E12, FormKind::Chi10, FormKind::Chi12};

unsigned weight(FormKind form);
bool is_cusp_form(FormKind form);
/// "E4", "E6", "E10", "E12", "CHI10", "CHI12".
std::string name(FormKind form);
/// Case-insensitive inverse of name(). Throws std::invalid_argument.
FormKind parse_form(std::string_view text);

}  // namespace siegel
