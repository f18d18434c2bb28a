#pragma once

namespace crackhash {

inline constexpr const char* kVersion = "0.1.0";

// Version of all emitted file formats (reports, tables, model files).
inline constexpr int kSchemaVersion = 1;

}  // namespace crackhash
