#pragma once

// Published one-sided p-values of the pair statistic for ten food-web
// compartments, upper triangle in the printed row/column order.

#include <array>
#include <cstddef>

namespace food_web {

inline constexpr std::array<std::size_t, 10> nodes{4, 6, 13, 11, 12, 14, 15, 2, 22, 8};

// published[r][c] for r < c, indexed by position in `nodes`.
inline constexpr double published[10][10] = {
    {0, 0.277, 0.156, 0.090, 0.053, 0.031, 0.019, 0.012, 0.007, 0.004},
    {0, 0, 0.316, 0.189, 0.110, 0.063, 0.035, 0.019, 0.011, 0.006},
    {0, 0, 0, 0.337, 0.213, 0.128, 0.074, 0.042, 0.023, 0.012},
    {0, 0, 0, 0, 0.350, 0.230, 0.143, 0.085, 0.049, 0.027},
    {0, 0, 0, 0, 0, 0.360, 0.243, 0.156, 0.095, 0.055},
    {0, 0, 0, 0, 0, 0, 0.367, 0.254, 0.167, 0.104},
    {0, 0, 0, 0, 0, 0, 0, 0.373, 0.263, 0.176},
    {0, 0, 0, 0, 0, 0, 0, 0, 0.378, 0.271},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0.382},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
};

inline constexpr double tolerance = 0.001;

}  // namespace food_web
