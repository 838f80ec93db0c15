#ifndef PSDE_TEST_FIXTURES_HPP
#define PSDE_TEST_FIXTURES_HPP

#include <cstddef>

namespace psde::fixtures {

struct BracketEntry {
  int i, j, k;  // [B_i, B_j] = v * B_k, 1-based, i < j
  long v;
};

// nonzero brackets in the A-operator basis
inline constexpr BracketEntry kATable[] = {
    {1, 2, 1, 2},  {1, 3, 2, 1},  {1, 5, 7, 1},  {1, 8, 6, 1},  {2, 3, 3, 2},   {2, 5, 5, 1},
    {2, 6, 6, -1}, {2, 7, 7, -1}, {2, 8, 8, 1},  {3, 6, 8, -1}, {3, 7, 5, -1},  {4, 5, 8, -1},
    {4, 6, 7, -1}, {4, 7, 6, -1}, {4, 8, 5, -1}, {5, 7, 9, -2}, {6, 8, 9, -2},
};
inline constexpr size_t kATableSize = sizeof(kATable) / sizeof(kATable[0]);

// nonzero brackets in the X-field basis
inline constexpr BracketEntry kXTable[] = {
    {1, 2, 1, 2},  {1, 3, 2, 1},  {1, 5, 7, 1},  {1, 8, 6, -1}, {2, 3, 3, 2},  {2, 5, 5, 1},
    {2, 6, 6, -1}, {2, 7, 7, -1}, {2, 8, 8, 1},  {3, 6, 8, 1},  {3, 7, 5, -1}, {4, 5, 8, -1},
    {4, 6, 7, 1},  {4, 7, 6, 1},  {4, 8, 5, -1}, {5, 7, 9, 2},  {6, 8, 9, -2},
};
inline constexpr size_t kXTableSize = sizeof(kXTable) / sizeof(kXTable[0]);

} // namespace psde::fixtures

#endif
