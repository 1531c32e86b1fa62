#pragma once

#include "mosco1d/char_set.hpp"
#include "mosco1d/interval_scale.hpp"

namespace mosco1d {

// s~(x) = int_e^x 1_G ds; e defaults to the base point of G's interval.
ScaleFunction scale_from_set(const CharacteristicSet& G);
ScaleFunction scale_from_set(const CharacteristicSet& G, double e);

// Inverse of scale_from_set; Identity maps to the full set.
CharacteristicSet set_from_scale(const ScaleFunction& s);

// Whether ds~/ds is {0,1}-valued ds-a.e. with s~(e) = 0.
bool is_admissible_scaling(const ScaleFunction& s_tilde, const ScaleFunction& s);

// Window on which sampled checks run: I clipped to [e - radius, e + radius].
std::pair<double, double> sampling_window(const Interval& I, double radius = 8.0);

} // namespace mosco1d
