#pragma once

namespace pam {

inline constexpr const char* kCodeVersion = "0.1.0";

} // namespace pam
