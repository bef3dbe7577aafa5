#pragma once

#include "frontfix/types.hpp"

namespace frontfix {

/// One step of the explicit front-fixing scheme used as comparison
/// baseline. The interior update applies level-n central differences for
/// diffusion and drift; the front-motion convection term carries the
/// unknown S_f^{n+1} linearly, so combining the j = 1 update with the
/// boundary closure yields S_f^{n+1} in closed form, after which all
/// interior values follow explicitly.
///
/// As in the implicit solver, the level-n boundary pair (p_0, p_1) entering
/// the update is taken as the closure evaluated at S_f^n.
///
/// Guards: S_f^{n+1} outside (0, S_f^n + 1e-12] raises InstabilityError;
/// any |p| > 10 or a non-finite value raises OverflowError.
FrontFixedState explicit_step(const FrontFixedState& state_n, const GridSpec& grid,
                              const ModelParams& params, Exec exec = Exec::Parallel);

FrontFixedSolution explicit_solve(const ModelParams& params, const GridSpec& grid,
                                  Exec exec = Exec::Parallel);

} // namespace frontfix
