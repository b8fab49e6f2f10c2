// Builders for the bundled examples: the group-algebra and matrix-algebra
// extensions of the ground field, the column/row context over M2, the
// Sweedler algebra with its standard functional, and k[X]/(X^2).

#pragma once

#include "sepeq/frobenius.hpp"

namespace sepeq {

/// k[C2] >= k with E = coefficient-of-1 and dual bases ({1, g}, {1, g}).
FrobeniusExtensionData c2_extension_data(const FieldSpec& f);

/// M2(k) >= k.1 with E = trace and dual bases ({E_ij}, {E_ji}).
FrobeniusExtensionData m2_extension_data(const FieldSpec& f);

/// k[X]/(X^2) >= k with E = coefficient-of-X and dual bases ({1, X}, {X, 1}).
FrobeniusExtensionData kx2_extension_data(const FieldSpec& f);

/// Column space k^2 as an (M2, k)-bimodule.
BimoduleRef m2_column_bimodule(const FieldSpec& f);
/// Row space as a (k, M2)-bimodule.
BimoduleRef m2_row_bimodule(const FieldSpec& f);

/// The column/row context over (M2(k), k): nu(col_i (x) row_j) = E_ij,
/// mu(row (x) col) = scalar product.
Context m2_column_row_context(const FieldSpec& f);

/// Coefficient-of-gx functional on the Sweedler algebra basis {1, g, x, gx}.
Matrix sweedler_gx_functional(const FieldSpec& f);

/// Coefficient-of-X functional on k[X]/(X^2).
Matrix kx2_x_functional(const FieldSpec& f);

}  // namespace sepeq
