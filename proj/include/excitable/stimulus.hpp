#pragma once

#include <cstddef>
#include <string>

#include "excitable/lattice.hpp"

namespace excitable {

/// Square solid domain of excitation: u is set to `level` over an
/// edge x edge square of excitable nodes.
struct StimulusSpec {
    Coord origin;  // top-left corner
    int edge = 20;
    double level = 1.0;
    std::string label;

    bool operator==(const StimulusSpec&) const = default;
};

/// Sets u := level at every excitable node inside the square; v and nodes
/// outside the square are untouched. The square is clipped by the grid and
/// the mask. Returns the number of nodes written; throws VoidStimulus when
/// the square contains no excitable node.
std::size_t apply(MediumState& state, const StimulusSpec& spec);

/// Spec for a square of the given edge centred on `site`.
StimulusSpec centered_square(Coord site, int edge = 20, double level = 1.0,
                             std::string label = {});

}  // namespace excitable
