#include "podsolid/viscosity.hpp"

#include <algorithm>
#include <cmath>

#include "podsolid/errors.hpp"

namespace podsolid {

void ViscosityModel::validate() const {
    if (!(mu_liquid > 0.0) || !std::isfinite(mu_liquid)) throw ArgumentError("mu_liquid must be positive");
    if (!std::isfinite(t_freeze)) throw ArgumentError("t_freeze must be finite");
    if (!(mushy_coeff > 0.0) || !std::isfinite(mushy_coeff)) throw ArgumentError("mushy_coeff must be positive");
    if (!(jump_factor >= 1e3) || !std::isfinite(jump_factor)) throw ArgumentError("jump_factor must be >= 1e3");
    if (!(mu_cap >= mu_liquid) || !std::isfinite(mu_cap)) throw ArgumentError("mu_cap must be >= mu_liquid");
}

double viscosity_of(const ViscosityModel& model, double temp) {
    if (!(temp < model.t_freeze)) return model.mu_liquid;
    if (model.kind == ViscosityKind::sharp_jump) return model.mu_liquid * model.jump_factor;
    const double undercool = temp - model.t_freeze;
    return std::min(model.mu_cap, model.mu_liquid + model.mushy_coeff * undercool * undercool);
}

}  // namespace podsolid
