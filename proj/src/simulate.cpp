#include "mafr/simulate.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "mafr/errors.hpp"

namespace mafr {

namespace {

// Box-Muller on explicit 53-bit uniforms; std::normal_distribution is
// implementation-defined and would break seed reproducibility across builds.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    double next() {
        const double u1 = unit_open();
        const double u2 = unit_open();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    double unit_open() {
        // (0, 1]: keeps the log argument away from zero
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
};

} // namespace

FunctionalDataSet simulate(const SimulationSpec& spec) {
    if (spec.num_curves < 1) throw ParameterError("simulate: need at least one curve");
    if (spec.num_basis < 1) throw ParameterError("simulate: need at least one basis function");
    if (!(spec.scale_decay > 0.0)) throw ParameterError("simulate: scale decay must be positive");

    const BasisSystem basis = orthonormalized(fourier_basis(Interval(0.0, 1.0), spec.num_basis));

    std::vector<double> sd(spec.num_basis);
    for (std::size_t j = 0; j < spec.num_basis; ++j) {
        const double value = std::exp(-static_cast<double>(j) * spec.scale_decay);
        sd[j] = spec.scale_interpretation == ScaleInterpretation::StdDev ? value
                                                                         : std::sqrt(value);
    }

    NormalSampler sampler(spec.seed);
    Matrix coefs(spec.num_curves, spec.num_basis);
    std::vector<std::string> ids(spec.num_curves);
    for (std::size_t i = 0; i < spec.num_curves; ++i) {
        for (std::size_t j = 0; j < spec.num_basis; ++j) {
            coefs(i, j) = sd[j] * sampler.next();
        }
        ids[i] = std::to_string(i + 1);
    }
    return {basis, std::move(coefs), std::move(ids)};
}

} // namespace mafr
