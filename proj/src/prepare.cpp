#include "klein/prepare.hpp"

#include "klein/krylov.hpp"

namespace klein {

namespace {

FockVector apply_kick(const FockVector& state, double p0) {
    if (p0 == 0.0) return state;
    const HamiltonianSpec kick = build_kick_hamiltonian(p0, state.cutoff);
    FockVector out = state;
    out.amp = expm_action(kick.assemble(), state.amp, 1.0);
    if (out.top_level_occupation() >= 1e-6)
        throw CutoffOverflowError("prepare_initial: cutoff too small for kick");
    return out;
}

}  // namespace

FockVector prepare_initial(const IonParams& ion, const PrepRecipe& recipe) {
    ion.validate();
    const int n = ion.fock_cutoff;
    const double s = 1.0 / std::sqrt(2.0);
    const Complex q2u = recipe.qubit2 == PrepRecipe::Qubit2::SigmaXPlus ? s : 1.0;
    const Complex q2d = recipe.qubit2 == PrepRecipe::Qubit2::SigmaXPlus ? s : 0.0;
    switch (recipe.kind) {
        case PrepRecipe::Kind::MomentumKick:
            return apply_kick(fock_product_state(n, s, s, q2u, q2d), recipe.p0);
        case PrepRecipe::Kind::Prep2:
        case PrepRecipe::Kind::Prep2PlusKick: {
            // Qubit1 in |0> during the preparation pulse.
            FockVector v = fock_product_state(n, 1.0, 0.0, q2u, q2d);
            const HamiltonianSpec prep = build_prep_hamiltonian(ion);
            v.amp = expm_action(prep.assemble(), v.amp, recipe.duration_us);
            v.time = 0.0;
            if (v.top_level_occupation() >= 1e-6)
                throw CutoffOverflowError(
                    "prepare_initial: cutoff too small for prep pulse");
            if (recipe.kind == PrepRecipe::Kind::Prep2PlusKick)
                v = apply_kick(v, recipe.p0);
            return v;
        }
    }
    throw std::logic_error("prepare_initial: unknown recipe");
}

}  // namespace klein
