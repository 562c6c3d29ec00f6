#include <doctest.h>

#include "excitable/errors.hpp"
#include "excitable/stimulus.hpp"

using namespace excitable;

TEST_SUITE("stimulus") {

TEST_CASE("full square inside a wide street sets exactly 400 nodes") {
    DomainMask mask(64, 64, true);
    MediumState state(mask);
    StimulusSpec spec;
    spec.origin = {10, 12};
    CHECK(apply(state, spec) == 400);
    std::size_t hot = 0;
    for (int y = 0; y < 64; ++y) {
        for (int x = 0; x < 64; ++x) {
            if (state.u(x, y) == 1.0) ++hot;
            CHECK(state.v(x, y) == 0.0);
        }
    }
    CHECK(hot == 400);
}

TEST_CASE("square clipped by a street keeps only the overlap") {
    DomainMask mask(64, 64);
    for (int y = 20; y < 30; ++y) {  // horizontal street of width 10
        for (int x = 0; x < 64; ++x) mask.set_excitable(x, y, true);
    }
    MediumState state(mask);
    StimulusSpec spec;
    spec.origin = {5, 25};  // lower half overlaps the street
    CHECK(apply(state, spec) == 20 * 5);
}

TEST_CASE("square on non-street nodes is a void stimulus") {
    DomainMask mask(64, 64);
    for (int x = 0; x < 64; ++x) mask.set_excitable(x, 0, true);
    MediumState state(mask);
    StimulusSpec spec;
    spec.origin = {10, 30};
    CHECK_THROWS_AS(apply(state, spec), VoidStimulus);
}

TEST_CASE("apply is idempotent and leaves the outside untouched") {
    DomainMask mask(40, 40, true);
    MediumState state(mask);
    state.set_u(0, 0, 0.25);
    StimulusSpec spec;
    spec.origin = {15, 15};
    spec.edge = 6;
    spec.level = 0.8;
    apply(state, spec);
    MediumState after_once = state;
    apply(state, spec);
    for (int y = 0; y < 40; ++y) {
        for (int x = 0; x < 40; ++x) {
            CHECK(state.u(x, y) == after_once.u(x, y));
        }
    }
    CHECK(state.u(0, 0) == 0.25);
}

TEST_CASE("centered square clips at the grid edge") {
    DomainMask mask(30, 30, true);
    MediumState state(mask);
    CHECK(apply(state, centered_square({0, 0}, 20)) == 100);  // quarter fits
}

}  // TEST_SUITE
