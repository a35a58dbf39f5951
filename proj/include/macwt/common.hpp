#pragma once

#include <cstdint>

namespace macwt {

// Cap on elementary terms for exact enumerations (y/z sequence spaces times
// codebook sizes). Exceeding it raises BudgetExceeded, never a silent fallback.
inline constexpr std::int64_t kDefaultBudget = 100'000'000;

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace macwt
