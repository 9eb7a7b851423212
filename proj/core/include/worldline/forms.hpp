#pragma once
// Cartan calculus on algebras that carry d-symbols: exterior derivative,
// interior products with (possibly ghost-graded) vector fields, and
// coefficient extraction from one-forms.

#include "worldline/calculus.hpp"

namespace worldline {

// de Rham differential: x -> dx on every field/antifield generator, d o d = 0
inline GradedExpr exterior_d(const GradedExpr& e) { return field_variation(e); }

// contraction with the vector field sum_z comps[z] d/dz; vf_parity is the
// parity of the field itself, the returned derivation has parity vf_parity+1
Derivation interior_product(const Algebra& alg, int vf_parity,
                            const std::map<GenId, GradedExpr>& comps);

// contraction with the ghost-number Euler field sum_z gh(z) z d/dz
Derivation ghost_euler_interior(const Algebra& alg);

// split a one-form into (coordinate, left coefficient) pairs:
// form = sum_z d(z) * coeff_z
std::vector<std::pair<GenId, GradedExpr>> one_form_coefficients(const GradedExpr& form);

}  // namespace worldline
