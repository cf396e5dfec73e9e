#ifndef PROJCONN_TESTS_TORUS_GOLDEN_HPP_
#define PROJCONN_TESTS_TORUS_GOLDEN_HPP_

// Expected components for the translation-invariant torus family
// (coordinates tau, z1, z2 = 0, 1, 2). Each row is R(X, Y)Z written as
// coefficients of (d/dtau, d/dz1, d/dz2).

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace golden
{

struct VectorRow
{
    std::size_t x, y, z;
    std::array<char const*, 3> value;
};

struct ScalarRow
{
    std::size_t i, j;
    char const* value;
};

constexpr std::size_t tau = 0, z1 = 1, z2 = 2;

inline std::vector<VectorRow> const& curvature()
{
    static std::vector<VectorRow> const rows{
        {tau, z1, z1, {"C^2/4", "-C*E/4", "0"}},
        {tau, z2, z2, {"D^2/4", "0", "-D*E/4"}},
        {z1, z2, z1, {"0", "C*D/4", "(D^2 - 2*C*D)/4"}},
        {z1, z2, z2, {"0", "(2*C*D - C^2)/4", "-C*D/4"}},
        {tau, z1, z2, {"(C^2 + D^2 - C*D)/4", "-D*E/4", "0"}},
        {tau, z2, z1, {"(C^2 + D^2 - C*D)/4", "0", "-C*E/4"}},
        {z1, z2, tau, {"0", "D*E/4", "-C*E/4"}},
        {tau, z1, tau, {"E*C/4", "-E^2/4 - C*(A + B)/2", "B*(C - D)/2"}},
        {tau, z2, tau, {"D*E/4", "A*(D - C)/2", "-E^2/4 - D*(A + B)/2"}},
    };
    return rows;
}

inline std::vector<ScalarRow> const& ricci()
{
    static std::vector<ScalarRow> const rows{
        {tau, tau, "E^2/2 + (A + B)*(C + D)/2"},
        {tau, z1, "C*E/2"},
        {z1, tau, "C*E/2"},
        {tau, z2, "D*E/2"},
        {z2, tau, "D*E/2"},
        {z1, z1, "(C^2 + 2*C*D - D^2)/4"},
        {z1, z2, "(C^2 + D^2)/4"},
        {z2, z1, "(C^2 + D^2)/4"},
        {z2, z2, "(D^2 + 2*C*D - C^2)/4"},
    };
    return rows;
}

inline std::vector<VectorRow> const& weyl()
{
    static std::vector<VectorRow> const rows{
        {z1, z2, z2, {"0", "-(C - D)^2/8", "(C - D)^2/8"}},
        {z1, z2, z1, {"0", "-(C - D)^2/8", "(C - D)^2/8"}},
        {z1, z2, tau, {"0", "0", "0"}},
        {tau, z1, z2, {"(C - D)^2/8", "0", "0"}},
        {tau, z1, z1, {"(C - D)^2/8", "0", "0"}},
        {tau, z2, z2, {"(C - D)^2/8", "0", "0"}},
        {tau, z1, tau, {"0", "(A + B)*(D - C)/4", "B*(C - D)/2"}},
        {z2, tau, tau, {"0", "A*(C - D)/2", "(A + B)*(D - C)/4"}},
        {z2, tau, z1, {"-(C - D)^2/8", "0", "0"}},
    };
    return rows;
}

} // namespace golden
#endif // PROJCONN_TESTS_TORUS_GOLDEN_HPP_
