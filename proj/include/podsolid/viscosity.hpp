#pragma once

namespace podsolid {

enum class ViscosityKind {
    mushy,       ///< mu_liquid + coeff * (T - t_freeze)^2 below the freezing point, clamped at mu_cap
    sharp_jump,  ///< mu_liquid * jump_factor below the freezing point
};

struct ViscosityModel {
    ViscosityKind kind = ViscosityKind::mushy;
    double mu_liquid = 1.0;
    double t_freeze = 650.0;
    double mushy_coeff = 10.0;
    double jump_factor = 1e6;
    double mu_cap = 1e7;

    /// Throws ArgumentError if a coefficient is out of range.
    void validate() const;
};

/// Dynamic viscosity at temperature `temp` (degrees C). Density is 1, so
/// this is also the kinematic viscosity used by the momentum solve.
double viscosity_of(const ViscosityModel& model, double temp);

}  // namespace podsolid
