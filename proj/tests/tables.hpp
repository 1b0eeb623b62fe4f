#pragma once

#include "starspec/starspec.hpp"

namespace starspec::testing {

// Printed representatives of the delta-series, extending vertex g1.
inline const std::vector<IVec> kPrintedDeltaF = {
    {0, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1, 1}, {0, 0, 0, 0, 1, 1, 0},
    {0, 0, 0, 0, 1, 1, 1}, {0, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 1}, {0, 0, 0, 1, 0, 1, 1},
    {0, 0, 0, 1, 1, 1, 1}, {0, 0, 1, 1, 0, 0, 0}, {0, 0, 1, 1, 0, 0, 1}, {0, 0, 1, 1, 0, 1, 1}, {0, 0, 1, 1, 1, 1, 1},
    {0, 1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 1}, {0, 1, 0, 0, 0, 1, 1}, {0, 1, 0, 0, 1, 1, 1}, {0, 1, 0, 1, 0, 0, 1},
    {0, 1, 0, 1, 0, 1, 1}, {0, 1, 0, 1, 0, 1, 2}, {0, 1, 0, 1, 1, 1, 1}, {0, 1, 0, 1, 1, 1, 2}, {0, 1, 0, 1, 1, 2, 2},
    {0, 1, 1, 1, 0, 0, 1}, {0, 1, 1, 1, 0, 1, 1}, {0, 1, 1, 1, 0, 1, 2}, {0, 1, 1, 1, 1, 1, 1}, {0, 1, 1, 1, 1, 1, 2},
    {0, 1, 1, 1, 1, 2, 2}, {0, 1, 1, 2, 0, 1, 2}, {0, 1, 1, 2, 1, 1, 2}, {0, 1, 1, 2, 1, 2, 2}, {0, 1, 1, 2, 1, 2, 3},
    {0, 2, 1, 2, 1, 2, 3}};

inline const std::vector<IVec> kPrintedK1 = {
    {0, -2, -1, -2, -1, -2, -3}, {0, -1, -1, -2, -1, -2, -3}, {0, -1, -1, -1, -1, -1, -1}, {0, -1, 0, 0, 0, 0, -1},
    {0, 0, -1, -1, -1, -1, -1},  {0, 0, 0, -1, 0, -1, -1},    {0, 0, 0, 1, 0, 1, 1},       {0, 0, 1, 1, 1, 1, 1},
    {0, 1, 0, 0, 0, 0, 1},       {0, 1, 1, 1, 1, 1, 1},       {0, 1, 1, 2, 1, 2, 3},       {0, 2, 1, 2, 1, 2, 3}};

inline const std::vector<IVec> kPrintedK2 = {{0, -1, -1, -2, -1, -2, -2}, {0, -1, -1, -1, -1, -1, -2}, {0, -1, 0, 0, 0, 0, 0},
                                      {0, 1, 0, 0, 0, 0, 0},       {0, 1, 1, 1, 1, 1, 2},       {0, 1, 1, 2, 1, 2, 2}};

inline const std::vector<IVec> kPrintedK3 = {{0, -1, 0, -1, 0, -1, -1}, {0, 0, 0, 0, 0, 0, -1}, {0, 0, 0, 0, 0, 0, 1}, {0, 1, 0, 1, 0, 1, 1}};

} // namespace starspec::testing
