#pragma once

namespace mediatone {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace mediatone
