#pragma once

#include <cstdint>

#include "mafr/smoothing.hpp"

namespace mafr {

enum class ScaleInterpretation { StdDev, Variance };

// Synthetic dataset: independent normal coefficients with exponentially
// decaying scale over an orthonormal Fourier system on [0, 1]. With the StdDev
// interpretation, coefficient j has standard deviation exp(-j * scale_decay).
struct SimulationSpec {
    std::size_t num_curves = 100;
    std::size_t num_basis = 25;
    double scale_decay = 0.25;
    ScaleInterpretation scale_interpretation = ScaleInterpretation::StdDev;
    std::uint64_t seed = 1;
};

// Deterministic for a given seed (fixed generator and normal transform).
FunctionalDataSet simulate(const SimulationSpec& spec);

} // namespace mafr
