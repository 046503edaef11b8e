#ifndef FREEPLANE_RANDOM_HPP
#define FREEPLANE_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "freeplane/structure.hpp"

namespace freeplane {

struct RandomStructureOptions {
    std::size_t max_points = 10;
    std::size_t max_lines = 10;
    double incidence_probability = 0.35;
    /// Drop incidences that would give two points a second common line.
    bool linear = false;
};

/**
 * Test-data generator: uniform point and line counts in [0, max], each
 * incidence kept with the given probability. Points are named p<i>, lines
 * L<j>. Only the seeded engine drives the choices.
 */
inline IncidenceStructure random_structure(std::mt19937_64& rng, const RandomStructureOptions& opt = {}) {
    std::uniform_int_distribution<std::size_t> np(0, opt.max_points), nl(0, opt.max_lines);
    std::bernoulli_distribution keep(opt.incidence_probability);
    std::size_t points = np(rng), lines = nl(rng);
    StructureBuilder b;
    for (std::size_t i = 0; i < points; ++i) b.add_point("p" + std::to_string(i));
    std::vector<std::vector<char>> joined(points, std::vector<char>(points, 0));
    for (std::size_t j = 0; j < lines; ++j) {
        std::string name = "L" + std::to_string(j);
        b.add_line(name);
        std::vector<std::size_t> on;
        for (std::size_t i = 0; i < points; ++i) {
            if (!keep(rng)) continue;
            if (opt.linear) {
                bool clash = false;
                for (std::size_t q : on) clash = clash || joined[q][i];
                if (clash) continue;
            }
            on.push_back(i);
        }
        for (std::size_t x : on) {
            b.add_incidence("p" + std::to_string(x), name);
            for (std::size_t y : on) joined[x][y] = joined[y][x] = x != y;
        }
    }
    return b.build();
}

inline IncidenceStructure random_structure(std::uint64_t seed, const RandomStructureOptions& opt = {}) {
    std::mt19937_64 rng(seed);
    return random_structure(rng, opt);
}

} // namespace freeplane

#endif
