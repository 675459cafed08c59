#pragma once

#include <string>
#include <string_view>

#include "blockalg/core.hpp"

namespace blockalg {

// {"gamma": {"generators": [["1","0"], ["0","1"]]}, "J": ["N","N"], "mode": "auto"}
// Rationals are strings ("1/2"); plain JSON integers are accepted too.

/// Throws Error(SpecInvalid) on malformed content, plus the errors of spec_validate.
SpecPtr parse_spec_text(std::string_view text);
SpecPtr load_spec_file(const std::string& path);
std::string spec_to_text(const AlgebraSpec& spec);

}  // namespace blockalg
